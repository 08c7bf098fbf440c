use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use herglotz_core::asymptotics::{expand_at_infinity, expand_at_zero, sum_rule_at_infinity, sum_rule_at_zero, symmetric_sum_rule};
use herglotz_core::boundary::{point_mass_at, stieltjes_invert, Extrapolation, LimitSchedule};
use herglotz_core::bounds::{
    amplitude_lower_bound, bandwidth_resistance_bound, metamaterial_bound, resistance_integral_bound, verify_resistance_integral,
    BoundReport,
};
use herglotz_core::circuits::{admittance_energy, Circuit, EnergySource};
use herglotz_core::herglotz::{HerglotzFn, HerglotzRep};
use herglotz_core::passive_approx::{bound_gap_report, solve, ApproxProblem, Norm, SolverConfig};
use herglotz_core::{Complex64, Error};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: &str = "herglotz-kit/1";

#[derive(Parser)]
#[command(name = "herglotz-kit", version, about = "Herglotz-Nevanlinna functions, sum rules and passive approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at one point, or along a horizontal line as CSV.
    Eval(EvalArgs),
    /// Recover measure mass on an interval or at a point.
    Invert(InvertArgs),
    /// Asymptotic expansion at infinity or at the origin.
    Expand(ExpandArgs),
    /// Evaluate an integral identity.
    Sumrule(SumRuleArgs),
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Solve a passive approximation problem.
    Approx(ApproxArgs),
    #[command(subcommand)]
    Circuit(CircuitCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Identity,
    Tan,
    Log,
    Sqrt,
    HDelta,
}

#[derive(Args)]
struct FnArgs {
    /// Canonical representation JSON {a, b, mu}.
    #[arg(long, group = "source")]
    rep: Option<PathBuf>,
    /// Function descriptor JSON.
    #[arg(long, group = "source")]
    function: Option<PathBuf>,
    /// Built-in function.
    #[arg(long = "fn", group = "source")]
    builtin: Option<Builtin>,
    /// Half-width for `--fn h-delta`.
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Comma-separated decreasing heights for the y limit.
    #[arg(long, value_delimiter = ',')]
    y_values: Option<Vec<f64>>,
    /// Comma-separated decreasing cutoffs for the eps limit.
    #[arg(long, value_delimiter = ',')]
    eps_values: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    extrapolation: Option<ExtrapolationArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtrapolationArg {
    None,
    Richardson,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    f: FnArgs,
    /// Point such as `0+1i`, `-2.5i` or `3`.
    #[arg(long, conflicts_with = "x_from", allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "x_to")]
    x_from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_to: Option<f64>,
    #[arg(long, default_value_t = 101)]
    count: usize,
    /// Height of the evaluation line.
    #[arg(long, default_value_t = 1e-3)]
    y: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvertArgs {
    #[command(flatten)]
    f: FnArgs,
    #[command(flatten)]
    schedule: ScheduleArgs,
    #[arg(long, allow_hyphen_values = true, requires = "x2")]
    x1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x2: Option<f64>,
    /// Point mass location.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "x1")]
    point: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum At {
    Infinity,
    Zero,
    Symmetric,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    f: FnArgs,
    #[arg(long, value_enum, default_value = "infinity")]
    at: At,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    order: i32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SumRuleArgs {
    #[command(flatten)]
    f: FnArgs,
    #[command(flatten)]
    schedule: ScheduleArgs,
    #[arg(long, value_enum, default_value = "zero")]
    at: At,
    /// Index of the identity: `p` for `x^-p` at zero, `n` for `x^n` at infinity.
    #[arg(long, allow_hyphen_values = true)]
    p: i32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Integrated resistance of a shunt capacitance.
    Resistance {
        #[arg(long = "C")]
        c: f64,
        /// Optional circuit JSON to compare against numerically.
        #[arg(long)]
        circuit: Option<PathBuf>,
        #[arg(long, default_value_t = 1e3)]
        window: f64,
    },
    /// Bandwidth-resistance product over [omega1, omega2].
    Bandwidth {
        #[arg(long)]
        omega1: f64,
        #[arg(long)]
        omega2: f64,
        #[arg(long = "C")]
        c: f64,
    },
    /// Amplitude lower bound over an interval.
    Amplitude {
        #[arg(long)]
        b1: f64,
        #[arg(long = "b1-0")]
        b1_0: f64,
        #[arg(long)]
        omega_length: f64,
    },
    /// Approximation error floor for a negative target permittivity.
    Metamaterial {
        #[arg(long, allow_hyphen_values = true)]
        eps_t: f64,
        #[arg(long, allow_hyphen_values = true)]
        eps_inf: f64,
        #[arg(long = "B")]
        b: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    #[value(name = "2")]
    Two,
    Inf,
}

#[derive(Args)]
struct ApproxArgs {
    #[arg(long)]
    problem: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the norm in the problem file.
    #[arg(long, value_enum)]
    p: Option<NormArg>,
    #[arg(long, default_value_t = 64)]
    kgon: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
}

#[derive(Subcommand)]
enum CircuitCommand {
    /// Energy `int_0^T v u dt` delivered by a sampled input (CSV with columns t,u).
    Energy {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t_end: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frequency response `Z(-i omega)` on a grid, as CSV omega,re,im.
    Impedance {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        omega_from: f64,
        #[arg(long)]
        omega_to: f64,
        #[arg(long, default_value_t = 101)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_fn(a: &FnArgs) -> Outcome<HerglotzFn> {
    let f = if let Some(p) = &a.rep {
        HerglotzFn::canonical(read_json::<HerglotzRep>(p)?)
    } else if let Some(p) = &a.function {
        read_json::<HerglotzFn>(p)?
    } else if let Some(b) = a.builtin {
        match b {
            Builtin::Identity => HerglotzFn::Identity,
            Builtin::Tan => HerglotzFn::Tan,
            Builtin::Log => HerglotzFn::Log,
            Builtin::Sqrt => HerglotzFn::Sqrt,
            Builtin::HDelta => HerglotzFn::h_delta(a.delta)?,
        }
    } else {
        return Err(input("one of --rep, --function or --fn is required"));
    };
    f.validate()?;
    Ok(f)
}

fn schedule(a: &ScheduleArgs) -> Outcome<LimitSchedule> {
    let mut s = LimitSchedule::default();
    if let Some(y) = &a.y_values {
        s.y_values = y.clone();
    }
    if let Some(e) = &a.eps_values {
        s.eps_values = e.clone();
    }
    match a.extrapolation {
        Some(ExtrapolationArg::None) => s.extrapolation = Extrapolation::None,
        Some(ExtrapolationArg::Richardson) => s.extrapolation = Extrapolation::Richardson,
        None => {}
    }
    s.validate()?;
    Ok(s)
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (`j` is accepted for `i`).
fn parse_complex(s: &str) -> Outcome<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || input(format!("cannot parse complex number {s:?}"));
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(num(&t)?, 0.0));
    };
    // split at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(x),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Outcome<Vec<f64>> {
    if n < 2 || !(hi > lo) {
        return Err(input("grid needs count >= 2 and an increasing range"));
    }
    Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect())
}

fn envelope<T: Serialize>(kind: &str, result: &T, provenance: Value) -> Outcome<String> {
    let v = json!({ "schema": SCHEMA, "kind": kind, "result": result, "provenance": provenance });
    serde_json::to_string_pretty(&v).map(|s| s + "\n").map_err(|e| input(e.to_string()))
}

fn csv_rows(header: [&str; 3], rows: &[(f64, f64, f64)]) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| input(e.to_string());
    w.write_record(header).map_err(err)?;
    for (x, re, im) in rows {
        w.write_record([x.to_string(), re.to_string(), im.to_string()]).map_err(err)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| input(e.to_string()))?).map_err(|e| input(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| input(e.to_string())),
    }
}

fn eval(a: &EvalArgs) -> Outcome<String> {
    let f = load_fn(&a.f)?;
    if let Some(z) = &a.z {
        let z = parse_complex(z)?;
        let w = f.eval(z)?;
        return match a.format {
            Format::Json => envelope("eval", &json!({ "z": [z.re, z.im], "value": [w.re, w.im] }), json!({})),
            Format::Csv => csv_rows(["x", "re", "im"], &[(z.re, w.re, w.im)]),
        };
    }
    let (Some(lo), Some(hi)) = (a.x_from, a.x_to) else {
        return Err(input("either --z or --x-from/--x-to is required"));
    };
    let mut rows = Vec::new();
    for x in linspace(lo, hi, a.count)? {
        let w = f.eval(Complex64::new(x, a.y))?;
        rows.push((x, w.re, w.im));
    }
    match a.format {
        Format::Csv => csv_rows(["x", "re", "im"], &rows),
        Format::Json => {
            let pts: Vec<[f64; 3]> = rows.iter().map(|r| [r.0, r.1, r.2]).collect();
            envelope("eval", &json!({ "y": a.y, "points": pts }), json!({}))
        }
    }
}

fn invert(a: &InvertArgs) -> Outcome<String> {
    let f = load_fn(&a.f)?;
    let s = schedule(&a.schedule)?;
    let prov = json!({ "schedule": s });
    if let Some(alpha) = a.point {
        return envelope("point_mass", &point_mass_at(&f, alpha, &s)?, prov);
    }
    let (Some(x1), Some(x2)) = (a.x1, a.x2) else {
        return Err(input("either --point or --x1/--x2 is required"));
    };
    envelope("interval_mass", &stieltjes_invert(&f, x1, x2, &s)?, prov)
}

fn expand(a: &ExpandArgs) -> Outcome<String> {
    let f = load_fn(&a.f)?;
    let e = match a.at {
        At::Infinity => expand_at_infinity(&f, a.order)?,
        At::Zero => expand_at_zero(&f, a.order)?,
        At::Symmetric => return Err(input("--at symmetric applies to sumrule only")),
    };
    envelope("expansion", &e, json!({}))
}

fn sumrule(a: &SumRuleArgs) -> Outcome<String> {
    let f = load_fn(&a.f)?;
    let s = schedule(&a.schedule)?;
    let r = match a.at {
        At::Zero => sum_rule_at_zero(&f, a.p, &s)?,
        At::Infinity => sum_rule_at_infinity(&f, a.p, &s)?,
        At::Symmetric => symmetric_sum_rule(&f, a.p, &s)?,
    };
    if !r.converged {
        return Err(Failure::Lib(Error::Convergence {
            what: format!("sum rule lhs {} (error {:.1e}) vs closed form {:?}", r.lhs_estimate, r.lhs_error, r.rhs_closed_form),
            samples: Vec::new(),
        }));
    }
    envelope("sum_rule", &r, json!({ "schedule": s }))
}

fn bound(cmd: &BoundCommand) -> Outcome<String> {
    let report = match cmd {
        BoundCommand::Resistance { c, circuit, window } => match circuit {
            Some(p) => verify_resistance_integral(&read_json::<Circuit>(p)?, *window)?,
            None => BoundReport::new("resistance", resistance_integral_bound(*c)?, json!({ "C": c })),
        },
        BoundCommand::Bandwidth { omega1, omega2, c } => BoundReport::new(
            "bandwidth",
            bandwidth_resistance_bound(*omega1, *omega2, *c)?,
            json!({ "omega1": omega1, "omega2": omega2, "C": c }),
        ),
        BoundCommand::Amplitude { b1, b1_0, omega_length } => BoundReport::new(
            "amplitude",
            amplitude_lower_bound(*b1, *b1_0, *omega_length)?,
            json!({ "b1": b1, "b1_0": b1_0, "omega_length": omega_length }),
        ),
        BoundCommand::Metamaterial { eps_t, eps_inf, b } => BoundReport::new(
            "metamaterial",
            metamaterial_bound(*eps_t, *eps_inf, *b)?,
            json!({ "eps_t": eps_t, "eps_inf": eps_inf, "B": b }),
        ),
    };
    envelope("bound", &report, json!({}))
}

fn approx(a: &ApproxArgs) -> Outcome<()> {
    let mut problem: ApproxProblem = read_json(&a.problem)?;
    match a.p {
        Some(NormArg::Two) => problem.p = Norm::L2,
        Some(NormArg::Inf) => problem.p = Norm::LInf,
        None => {}
    }
    let cfg = SolverConfig { kgon: a.kgon, tol: a.tol, max_iter: a.max_iter };
    let sol = solve(&problem, &cfg)?;
    // the bound only applies to metamaterial-style targets
    let report = bound_gap_report(&sol, &problem).ok();
    let text = envelope("approx", &json!({ "solution": sol, "bound": report }), json!({ "solver": cfg, "p": problem.p }))?;
    emit(&text, a.out.as_deref())?;
    if a.out.is_some() {
        eprintln!("achieved error {:.6e} ({:?})", sol.achieved_error, sol.solver_status);
    }
    Ok(())
}

fn read_series(path: &Path) -> Outcome<(Vec<f64>, f64)> {
    let mut r = csv::Reader::from_path(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let headers = r.headers().map_err(|e| input(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name).ok_or_else(|| input(format!("missing column {name:?}")));
    let (ct, cu) = (col("t")?, col("u")?);
    let mut t = Vec::new();
    let mut u = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| input(e.to_string()))?;
        let num = |k: usize| rec[k].trim().parse::<f64>().map_err(|e| input(format!("bad value {:?}: {e}", &rec[k])));
        t.push(num(ct)?);
        u.push(num(cu)?);
    }
    if t.len() < 2 {
        return Err(input("input needs at least two samples"));
    }
    if t[0] != 0.0 {
        return Err(input("samples must start at t = 0"));
    }
    let dt = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
    if t.iter().enumerate().any(|(k, &tk)| (tk - k as f64 * dt).abs() > 1e-9 * dt.max(tk.abs())) {
        return Err(input("samples must be uniformly spaced"));
    }
    Ok((u, dt))
}

fn circuit(cmd: &CircuitCommand) -> Outcome<()> {
    match cmd {
        CircuitCommand::Energy { circuit, input: path, t_end, out } => {
            let c: Circuit = read_json(circuit)?;
            c.validate()?;
            let (u, dt) = read_series(path)?;
            let e = admittance_energy(&u, EnergySource::Circuit(&c), *t_end, dt)?;
            emit(&envelope("energy", &e, json!({ "dt": dt, "samples": u.len() }))?, out.as_deref())
        }
        CircuitCommand::Impedance { circuit, omega_from, omega_to, count, out } => {
            let c: Circuit = read_json(circuit)?;
            c.validate()?;
            let rows: Vec<_> = linspace(*omega_from, *omega_to, *count)?
                .into_iter()
                .map(|w| {
                    let z = c.frequency_response(w);
                    (w, z.re, z.im)
                })
                .collect();
            emit(&csv_rows(["omega", "re", "im"], &rows)?, out.as_deref())
        }
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    match &cli.command {
        Command::Eval(a) => emit(&eval(a)?, a.out.as_deref()),
        Command::Invert(a) => emit(&invert(a)?, a.out.as_deref()),
        Command::Expand(a) => emit(&expand(a)?, a.out.as_deref()),
        Command::Sumrule(a) => emit(&sumrule(a)?, a.out.as_deref()),
        Command::Bound(b) => emit(&bound(b)?, None),
        Command::Approx(a) => approx(a),
        Command::Circuit(c) => circuit(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_convergence() { 3 } else { 2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |s: &str| parse_complex(s).unwrap();
        assert_eq!(c("0+1i"), Complex64::new(0.0, 1.0));
        assert_eq!(c("-2.5i"), Complex64::new(0.0, -2.5));
        assert_eq!(c("3"), Complex64::new(3.0, 0.0));
        assert_eq!(c("1e-3-2e+1j"), Complex64::new(1e-3, -20.0));
        assert_eq!(c("i"), Complex64::new(0.0, 1.0));
        assert_eq!(c("2-i"), Complex64::new(2.0, -1.0));
        assert!(parse_complex("1+xi").is_err());
    }
}
