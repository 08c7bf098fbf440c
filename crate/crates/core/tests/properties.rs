use herglotz_core::asymptotics::{expand_at_infinity, expand_at_zero};
use herglotz_core::bounds::{h_delta, resistance_integral, verify_amplitude_bound, BandSpec, SLACK_TOL};
use herglotz_core::circuits::{admittance_energy, herglotz_to_pr, pr_to_herglotz, Circuit, EnergySource, PrFunction};
use herglotz_core::grid::upper_half_plane;
use herglotz_core::herglotz::{is_symmetric, positivity_violation, HerglotzFn, HerglotzRep};
use herglotz_core::measures::{DensityComponent, MeasureSpec};
use herglotz_core::passive_approx::{assemble, solve, ApproxProblem, Norm, SolverConfig};
use herglotz_core::splinehilbert::{ansatz_imag, ansatz_real, bspline_eval, DensityAnsatz, SplineBasis};
use herglotz_core::Complex64;
use proptest::prelude::*;

fn knots(start: f64, gaps: &[f64]) -> Vec<f64> {
    let mut k = vec![start];
    for g in gaps {
        let last = *k.last().unwrap();
        k.push(last + g);
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn h_delta_is_herglotz(re in -50.0f64..50.0, im in 1e-6f64..50.0, delta in 0.01f64..10.0) {
        prop_assert!(h_delta(Complex64::new(re, im), delta).unwrap().im >= 0.0);
    }

    #[test]
    fn canonical_reps_are_herglotz(
        a in -2.0f64..2.0, b in 0.0f64..2.0,
        masses in proptest::collection::vec((-5.0f64..5.0, 0.01f64..3.0), 0..4),
        lo in -3.0f64..3.0, width in 0.1f64..3.0, c in 0.0f64..2.0,
    ) {
        let mu = MeasureSpec::discrete(masses).with_density(DensityComponent::constant(lo, lo + width, c).unwrap());
        let f = HerglotzFn::canonical(HerglotzRep::new(a, b, mu).unwrap());
        prop_assert!(positivity_violation(&f, &upper_half_plane(200, 1.0)) <= 1e-12);
    }

    #[test]
    fn partition_of_unity(order in 2usize..=5, start in -3.0f64..3.0, gaps in proptest::collection::vec(0.1f64..2.0, 12), u in 0.0f64..1.0) {
        let k = knots(start, &gaps);
        let basis = SplineBasis::new(order, k.clone()).unwrap();
        let (lo, hi) = (k[order - 1], k[k.len() - order]);
        let x = lo + (hi - lo) * u * 0.999_999;
        let s: f64 = (0..basis.len()).map(|n| bspline_eval(&basis, n, x).unwrap()).sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ansatz_parity(
        zeta in proptest::collection::vec(0.0f64..2.0, 5), zeta0 in 0.0f64..1.0, b in 0.0f64..2.0, x in 0.05f64..4.0,
    ) {
        let basis = SplineBasis::uniform(3, 0.3, 3.0, 5).unwrap();
        let d = DensityAnsatz::new(basis, zeta, zeta0, b).unwrap();
        let (ip, im) = (ansatz_imag(&d, x), ansatz_imag(&d, -x));
        prop_assert!(ip >= 0.0 && (ip - im).abs() <= 1e-14 * ip.max(1.0));
        let (rp, rm) = (ansatz_real(&d, x).unwrap(), ansatz_real(&d, -x).unwrap());
        prop_assert!((rp + rm).abs() <= 1e-12 * rp.abs().max(1.0));
    }

    #[test]
    fn objective_is_convex(
        u in proptest::collection::vec(0.0f64..2.0, 8), v in proptest::collection::vec(0.0f64..2.0, 8), lam in 0.0f64..1.0,
    ) {
        let band = BandSpec::new(1.0, 0.2).unwrap();
        let mut pr = ApproxProblem::metamaterial(-2.0, band, 6, 3, 30).unwrap();
        for p in [Norm::LInf, Norm::L2] {
            pr.p = p;
            let sys = assemble(&pr).unwrap();
            let w: Vec<f64> = u.iter().zip(&v).map(|(a, b)| lam * a + (1.0 - lam) * b).collect();
            let lhs = sys.objective(&w, p);
            let rhs = lam * sys.objective(&u, p) + (1.0 - lam) * sys.objective(&v, p);
            prop_assert!(lhs <= rhs + 1e-12);
        }
    }

    #[test]
    fn rotation_round_trip(l in 0.0f64..3.0, r in 0.01f64..3.0, c in 0.1f64..3.0, re in 0.01f64..5.0, im in -5.0f64..5.0) {
        for circuit in [Circuit::series_rl(l, r).unwrap(), Circuit::shunt_c(c, Circuit::series_rl(l, r).unwrap()).unwrap()] {
            let f = circuit.herglotz().unwrap();
            prop_assert!(is_symmetric(&f, &upper_half_plane(64, 1.0), 1e-10));
            let back = herglotz_to_pr(pr_to_herglotz(PrFunction::Circuit { circuit: circuit.clone() }).unwrap()).unwrap();
            let s = Complex64::new(re, im);
            let z = circuit.impedance(s).unwrap();
            prop_assert!((back.eval(s) - z).norm() <= 1e-12 * z.norm().max(1.0));
        }
    }

    #[test]
    fn shunt_c_energy_is_nonnegative(l in 0.0f64..2.0, r in 0.05f64..2.0, c in 0.1f64..2.0, width in 0.5f64..2.0) {
        let circuit = Circuit::shunt_c(c, Circuit::series_rl(l, r).unwrap()).unwrap();
        let dt = 1e-3;
        let n = (width / dt) as usize + 1;
        let u: Vec<f64> = (0..n).map(|j| (std::f64::consts::PI * j as f64 * dt / width).sin().powi(2)).collect();
        let scale: f64 = u.iter().map(|v| v * v).sum::<f64>() * dt;
        for k in 1..=6 {
            let t_end = 1.5 * width * k as f64 / 6.0;
            let e = admittance_energy(&u, EnergySource::Circuit(&circuit), t_end, dt).unwrap();
            prop_assert!(e.energy >= -1e-9 * scale.max(1.0), "T={t_end}: {}", e.energy);
        }
    }

    #[test]
    fn amplitude_bound_holds(b in 0.0f64..3.0, w in 0.0f64..2.0, h0 in 0.0f64..3.0, lo in 0.8f64..1.6) {
        let mu = MeasureSpec::zero().with_density(DensityComponent::constant(0.7, 1.9, w).unwrap());
        let h = HerglotzFn::canonical(HerglotzRep::new(0.0, b, mu).unwrap());
        let r = verify_amplitude_bound(&h, h0, (lo, lo + 0.2), 11).unwrap();
        prop_assert!(r.holds(SLACK_TOL), "{r:?}");
    }
}

#[test]
fn resistance_integral_grows_to_inverse_capacitance() {
    for (c, r) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.3)] {
        let circuit = Circuit::shunt_c(c, Circuit::resistor(r).unwrap()).unwrap();
        let mut last = 0.0;
        for w in [1.0, 10.0, 100.0, 1000.0] {
            let v = resistance_integral(&circuit, w).unwrap();
            let window = 2.0 / std::f64::consts::PI * v.window_integral;
            assert!(window > last && window <= 1.0 / c + 1e-12);
            last = window;
        }
        let v = resistance_integral(&circuit, 1e3).unwrap();
        assert!((v.normalized - 1.0 / c).abs() < 1e-6 / c, "{v:?}");
    }
}

#[test]
fn shunt_c_asymptotics() {
    let c = 0.8;
    let h = Circuit::shunt_c(c, Circuit::series_rl(0.5, 1.2).unwrap()).unwrap().herglotz().unwrap();
    let inf = expand_at_infinity(&h, 1).unwrap();
    assert!((inf.coefficient(-1).unwrap() + 1.0 / c).abs() < 1e-9, "{inf:?}");
    let zero = expand_at_zero(&h, 0).unwrap();
    assert!(zero.coefficient(-1).unwrap().abs() < 1e-9, "{zero:?}");
}

#[test]
fn metamaterial_error_trends() {
    let cfg = SolverConfig::default();
    let mut last = 0.0;
    for b in [0.05, 0.1, 0.2] {
        let pr = ApproxProblem::metamaterial(-2.0, BandSpec::new(1.0, b).unwrap(), 20, 4, 80).unwrap();
        let s = solve(&pr, &cfg).unwrap();
        assert!(s.achieved_error > last, "B={b}: {}", s.achieved_error);
        last = s.achieved_error;
    }
    // grid refinement
    let band = BandSpec::new(1.0, 0.1).unwrap();
    let e1 = solve(&ApproxProblem::metamaterial(-2.0, band, 20, 4, 100).unwrap(), &cfg).unwrap().achieved_error;
    let e2 = solve(&ApproxProblem::metamaterial(-2.0, band, 20, 4, 200).unwrap(), &cfg).unwrap().achieved_error;
    assert!((e1 - e2).abs() < 0.01 * e2, "{e1} vs {e2}");
}

#[test]
fn solutions_are_passive() {
    let pr = ApproxProblem::metamaterial(-2.0, BandSpec::new(1.0, 0.1).unwrap(), 20, 4, 80).unwrap();
    let s = solve(&pr, &SolverConfig::default()).unwrap();
    let f = s.herglotz().unwrap();
    assert_eq!(positivity_violation(&f, &upper_half_plane(500, 1.0)), 0.0);
}
