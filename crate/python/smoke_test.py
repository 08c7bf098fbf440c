"""Smoke test for the herglotz_kit extension module."""
import json
import math

import herglotz_kit as hk


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    f = hk.HerglotzFunction.canonical(0.3, 0.0, [(3.0, 1.0)])
    w = f(1j)
    close(w.real, 0.3, 1e-14)
    close(w.imag, 0.1, 1e-14)
    assert f.positivity_violation() == 0.0

    g = hk.HerglotzFunction.from_json(f.to_json())
    assert g(2 + 0.5j) == f(2 + 0.5j)

    tan = hk.HerglotzFunction.tan()
    r = hk.sum_rule(tan, 2)
    assert r["converged"]
    close(r["value"], 1.0, 1e-5)
    m = hk.point_mass_at(tan, math.pi / 2)
    close(m["value"], 1.0, 1e-6)

    close(hk.metamaterial_bound(-2.0, 1.0, 0.1), 1.0 / 7.0, 1e-15)
    close(hk.resistance_integral_bound(0.5), math.pi, 1e-14)

    c = hk.Circuit.shunt_c(1.0, hk.Circuit.series_rl(0.5, 1.0))
    h = c.herglotz()
    assert h(0.3 + 0.2j).imag > 0
    e = hk.expand_at_infinity(h, 1)
    assert e["coefficients"]

    problem = hk.metamaterial_problem(-2.0, 1.0, 0.1, 12, 4, 60)
    out = hk.solve_approx(problem, p="inf")
    assert out["solution"]["achieved_error"] >= out["bound"]["bound_value"] - 1e-9
    json.dumps(out)

    try:
        hk.metamaterial_bound(2.0, 1.0, 0.1)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
    # an under-resolved schedule reports non-convergence rather than raising
    assert not hk.sum_rule(tan, 2, y_values=[0.5], eps_values=[0.5])["converged"]
    assert issubclass(hk.ConvergenceError, Exception)

    print("smoke test ok")


if __name__ == "__main__":
    main()
