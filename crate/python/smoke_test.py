"""Smoke test for the xiform Python bindings.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import xiform
from xiform import Cochain, Poly, Polyvector


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAILED: {what}")
    print(f"ok  {what}")


def main():
    f = Poly("x1^2*x2", 2)
    check(str(f.partial(0)) == str(Poly("2*x1*x2", 2)), "partial derivative")
    check(f.eval(["1/2", 3]) == "3/4", "exact evaluation")
    check((f * Poly("x1", 2)) == Poly("x1^3*x2", 2), "polynomial product")

    v = Polyvector("x2 d1", 2)
    check(v.apply(f) == Poly("2*x1*x2^2", 2), "vector field action")
    check(Polyvector("d1", 2).wedge(Polyvector("d2", 2)) == Polyvector("d1^d2", 2), "wedge")
    check(Polyvector("d1", 1).schouten(Polyvector("x1 d1", 1)) == Polyvector("d1", 1), "Schouten bracket")

    e = Cochain("[1 ; 1]", 1, 1)
    check(e.evaluate([Poly("x1^2", 1)]) == Poly("2*x1", 1), "cochain evaluation")
    check(Cochain("[1 ; 2]", 1, 1).d() == Cochain("[-2 ; 1 | 1]", 1, 2), "Hochschild differential")
    check(e.brace([e]) == Cochain("[1 ; 2]", 1, 1), "brace")
    u = Polyvector("x1 d1^d2", 2)
    c = Cochain.hkr(u)
    check(c.d().is_zero() and c.to_polyvector() == u, "HKR cocycle and inverse")

    dims = xiform.hh_dims(2, 2, -2, 0)
    check(dims["hh"] == dims["polyvectors"] == 1, "HH^{2,-2} for two variables")
    check(xiform.witt_dim(3, 2) == 3, "Witt count")

    names = xiform.xi_basis(1, 1, 2, 1)
    check(names == [[["x1"]], [["x1", "d1"]], [["d1"]], [["x1*d1"]]], "Xi basis")
    check(xiform.xi_d(1, [["x1", "x1^2"]]) == [("1", [["x1^3"]])], "Xi differential")

    for which in ("vff", "vfv"):
        rep = xiform.obstruction_solve(which, seed=7)
        check(rep["unique"] and rep["rank"] == 2, f"{which} coefficients vanish")

    rows = xiform.harrison_window(1, 3, 3)
    check(all(r["dim"] == (1 if r["degree"] == 0 else 0) for r in rows), "Harrison window")

    run = xiform.verify_suites(["witt", "obstruction"], seed=1)
    check(run["passed"] and [r["suite"] for r in run["reports"]] == ["witt", "obstruction"], "verify suites")

    try:
        Poly("x1", 1) + Poly("x1", 2)
    except ValueError:
        check(True, "variable mismatch raises")
    else:
        raise SystemExit("FAILED: variable mismatch accepted")


if __name__ == "__main__":
    main()
