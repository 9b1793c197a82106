"""Smoke test for the Python bindings.

Build first, for example with
    pip install --no-build-isolation -e crates/affine-curves-py
then run
    python python/smoke_test.py
"""

import pathlib
import sys

import affine_curves_py as ac

CURVES = pathlib.Path(__file__).resolve().parent.parent / "curves"


def check(cond, msg):
    if not cond:
        print(f"FAIL: {msg}")
        sys.exit(1)
    print(f"ok: {msg}")


def main():
    ts = ac.templates(2)
    check(len(ts) == 1 and ts[0].startswith("F_1"), "one template for n = 2")

    p = ac.read_curve(str(CURVES / "spiral_p.curve"))
    q = ac.read_curve(str(CURVES / "spiral_q.curve"))
    check(p.dim == 3 and not p.is_rational, "spiral is an exp-type space curve")

    rep = ac.equivalences(p, q)
    check(rep.status == "equivalences-found", "spiral pair is equivalent")
    maps = sorted(e.phi for e in rep.equivalences)
    check(maps == ["-2*z", "2*z"], f"maps {maps}")
    first = next(e for e in rep.equivalences if e.phi == "-2*z")
    check(first.a == [["1", "-1", "1"], ["2", "-1", "1"], ["0", "0", "1"]], "matrix at w = -2z")
    check(first.b == ["0", "-1", "1"], "translation at w = -2z")

    cubic = ac.parse_curve("dim 2\nz\nz^3\n")
    check(cubic.symmetries().status == "degenerate-invariants", "(z, z^3) is degenerate")

    quartic = ac.parse_curve("dim 2\nz\nz^4 + z^2\n")
    sym = quartic.symmetries()
    tags = [t for e in sym.equivalences for t in e.tags]
    check("identity" in tags and len(sym) == 2, "plane quartic has identity and reflection")
    check(len(ac.invariants(quartic)) == 3, "three invariants I_0, I_1, I_2")

    try:
        ac.parse_curve("dim 2\nz\nz^2 +* 1\n")
    except ValueError as e:
        check("line 3" in str(e), "parse error names the line")
    else:
        check(False, "parse error raised")

    print("smoke test passed")


if __name__ == "__main__":
    main()
