"""Regenerate src/ballq/surface/data/*.json from hand-transcribed tables.

Development helper only (needs sympy); the package reads the JSON files.
Run from the repository root:  python3 tools/transcribe.py
"""

from __future__ import annotations

import sys
from pathlib import Path

import sympy as sp

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ballq.algebra.eqfile import dumps, equations_to_json, poly_to_json  # noqa: E402
from ballq.algebra.gaussian import GaussianRational  # noqa: E402
from ballq.algebra.poly import SparsePolynomial, VariableFrame  # noqa: E402

DATA = ROOT / "src" / "ballq" / "surface" / "data"

XY = [f"x{k}" for k in range(1, 7)] + [f"y{k}" for k in range(1, 8)]
Z = [f"z{k}" for k in range(1, 15)]
W = [f"W{k}" for k in range(8)]
U = [f"U{k}" for k in range(10)]

# Generator 1 sends x6 to "... + I*x4 - x6".  The printed coefficient of x6
# is -I, which gives a matrix of order 4 and trace -1-I; an involution in
# class 2a needs M^2 = 1 and trace -2, which forces the coefficient -1.
ACTION_G_XY = [
    """x2, x1, x4, x3, -x5, (-2 + I)*x1 - (2 - I)*x2 + I*x3 + I*x4 - x6,
       y2, y1, y4, y3, (1 + I)*y1 - (1 + I)*y2 - y3 + y4 + y5, y6, I*y3 - I*y4 + y7""",
    """x3, -I*x1 - x3, x5, x6, -I*x1 - I*x2 - x3, x1 + (1 - I)*x2 - I*x3 - x4 - x5 + x6,
       y3, y1, y5, y6, y7, -I*y2 - I*y3 - y4 - y6 - I*y7, -y1 + y2 + y3 - y5 + y7""",
]

ACTION_G21_XY = [
    """-I*x1 - x3, x3, x6, x5, I*x1 + I*x2 + x3,
       2*I*x1 - (1 - I)*x2 + I*x3 + x4 + (1 + I)*x5 - (1 - I)*x6,
       y1, y3, y6, y5, (-1 - I)*y1 + (1 + I)*y3 - y5 + y6 + y7,
       -I*y2 - I*y3 - y4 - y6 - I*y7,
       -y1 + y2 + y3 - (1 - I)*y5 - I*y6 + y7""",
    """(-1 - I)*x1 - x2 - (1 - I)*x3 - I*x4 + x5 - x6,
       I*x1 + (1 + I)*x2 + x3 - I*x5,
       -x1 - I*x2 - I*x3 - (1 - I)*x4 - 2*x5,
       (1 + I)*x1 + x2 + x3 + I*x6,
       -I*x2 - (1 + I)*x3 + I*x4 - (1 - I)*x5 - I*x6,
       2*x1 + x2 + (1 - I)*x3 + x6,
       y1,
       I*y1 - I*y2 - 2*I*y3 - y4 + (1 + I)*y5 - y6 - (1 + 2*I)*y7,
       -y3 + I*y4 + I*y6 - (1 - I)*y7,
       -y1 + (1 - I)*y2 - 2*I*y3 - y4 + I*y5 - y6 - I*y7,
       y4,
       (1 + I)*y1 - (1 + I)*y2 - y3 + y4 + y5,
       (1 + I)*y2 + (2 + I)*y3 + (2 - I)*y4 - y5 + (1 - 2*I)*y6 + (2 + I)*y7""",
]

ACTION_G_Z = [
    """z1, z4 - z5 + z6, z1 - z3, z2 - z5 + z6, z1 - z5, z1 - z6,
       z12 - z4 + z5 - z6, -z11 + z13, -z1 + z10 - z2 + z3 + z5 + z9,
       -z10 + z2 + z4 - z5 + z6, -z1 - z11, z2 + z7, -z1 - z11 + z8,
       z10 + z11 + z14 - z2 + z3""",
    """z2 + z3, -z2 - z7 + z9, z1 + z2, -z2 - z5 - z7 - z8, -z7, z2 + z6,
       z10 + z7, -z12, z11 + z7, z14 - z2 - z7, -z12 - z2 + z4, -z8,
       -z12 - z2 + z4 - z5, z12 + z13 - z4""",
]

ACTION_G21_Z = [
    """z2 + z3, -z5 + z6 - z8, -z1 + z3, z6 + z9, z2 + z3 + z7, z3 - z6,
       z5 - z6, -z5, z1 + z11 + z14 - z3 - z9, -z14 - z5 + z6 - z8 + z9,
       z12 - z3 - z4, z10 - z2 + z9, -z3 - z4, z1 + z13 + z14 - z9""",
    """z11 + z14 - z3 - z4 + z6 - z9, -z1 - z10 - z13 - z14 + z4 + z5 - z7 + z9,
       z12 + z14 - z3 - z4 + z5 + z8 - z9, -z10 - z13 - z14 + z2 + z4 + z9,
       z11 - z13 - z3 + z6, -z3 - z4 - z9, z1 + z10 + z13 - z4 - z5 - z8,
       -z1 - z11 + z5 + z8, z13 + z3 - z5 - z8,
       -z1 - z10 - z11 - z13 - z14 + z4 + z5 - z7 + z8 + z9,
       -z11 + z4 + z8, -z11 - z6 + z8, -z11 - z14 + z4 + z9,
       z11 + z3 - z5 - 2*z8""",
]

SEEDS = [
    """x1**2 + 2*(4*y1**2 + (2*I)*y1*y2 - (2 - 2*I)*y2**2 - 2*y3**2 + (3 - 5*I)*y3*y4
       + (1 - 2*I)*y4**2 - (2 - 2*I)*y3*y5 + (3 + 3*I)*y4*y5 - (2 - 2*I)*y5**2
       + (1 + 5*I)*y3*y6 - 12*y4*y6 - (1 + 5*I)*y5*y6 + (1 + 2*I)*y6**2
       + (1 + 5*I)*y3*y7 + 4*y4*y7 - (1 - 3*I)*y5*y7 + (2 - 12*I)*y6*y7
       + (1 + 2*I)*y7**2
       + (1 - I)*y1*((1 + I)*y3 + (1 - 4*I)*y4 + (1 - 3*I)*y5 + y6 + y7)
       + (1 - I)*y2*((5 + I)*y3 + 3*y4 + (3 - I)*y5 - (6 + 7*I)*y6 + (2 - 3*I)*y7))""",
    """(1 - I)*((-10 - 6*I)*x3*y1 - (4 + 10*I)*x4*y1 + (4 - 3*I)*x5*y1
       + (4 + I)*x6*y1 + (5 - 9*I)*x3*y2 + (2 - 4*I)*x4*y2 + x5*y2
       - (2 + 2*I)*x6*y2 - (10 + 9*I)*x3*y3 - (1 + I)*x4*y3 + (1 + 6*I)*x5*y3
       + (1 + 10*I)*x6*y3 + (2 - 6*I)*x3*y4 - (1 - 5*I)*x4*y4 - 8*x5*y4
       + (1 + 7*I)*x6*y4 + (2 + 9*I)*x3*y5 - (4 - 2*I)*x4*y5 + (1 + 3*I)*x5*y5
       - (5 + 2*I)*x6*y5 - (10 - 3*I)*x3*y6 + (2 + 2*I)*x4*y6 + 4*x5*y6
       + (13 - 5*I)*x6*y6
       + x1*((3 + 2*I)*y1 + (3 + 2*I)*y2
             - I*((13 + 3*I)*y3 + (1 + 3*I)*y4 + y5 + (1 - 12*I)*y6 - (2 + 3*I)*y7))
       + x2*((13 - 2*I)*y1 + (1 + 7*I)*y2 + (7 + 7*I)*y3 - (2 + 2*I)*y4
             - (5 + 2*I)*y5 + (7 - 2*I)*y6 - (2 + 5*I)*y7)
       + (5 + 9*I)*x3*y7 - (4 - 2*I)*x4*y7 + (1 - 6*I)*x5*y7 - (2 - I)*x6*y7)""",
]

H_FORM = "7*y1 + y2 + y3 - (2 + 3*I)*y4 - (2 + 3*I)*y5 + y6 + y7"

# (x1, ..., y7) as linear forms in (u, v)
SEED_LINE = """v, u, I*v + (1 - I)*u, (-1 - 2*I)*v + 2*I*u, (2 - I)*v - 2*u,
    (-2 + 2*I)*v + 3*u, (2 + 2*I)*v - (1 + 3*I)*u,
    (-1 - I)*v + (1 + 3*I)/2*u, (-3 - I)/2*v + (3 + 3*I)/2*u, (1 - I)/2*v - u,
    2*v - (2 + I)*u, (-3 + I)/2*v + (3 + I)/2*u, (-1 - I)/2*v + (1 + I)/2*u"""

Z1_EQUATIONS = [
    "-2*W1**2 + W2*W3 + W0*W7",
    """16*W0**5 + 152*W0**3*W1 + 21*W0*W1**2 + 2*W0*W2*W3 - W0*W3**2 - 16*W2*W5
       + 432*W0**2*W6 + 54*W1*W6""",
    """40*W0**3*W1 - 20*W0*W1**2 + 4*W0*W2**2 + 10*W0*W2*W3 - 108*W3*W4
       + 432*W0**2*W6 + 216*W1*W6 - W1*W7""",
    """8*W0**3*W2 + 68*W0*W1*W2 - 6*W0*W1*W3 - 432*W0**2*W4 - 216*W1*W4
       - 512*W0**2*W5 - 64*W1*W5 + 216*W2*W6 + 108*W3*W6 - W2*W7""",
    """-1280*W0**6 - 10624*W0**4*W1 + 7776*W0**2*W1**2 + 320*W1**3 - 80*W1*W2**2
       + 80*W0**2*W3**2 - 48*W1*W3**2 + 3456*W0*W2*W4 - 46656*W4**2
       + 512*W0*W3*W5 - 4096*W5**2 - 34560*W0**3*W6 - 1728*W0*W1*W6
       + 128*W0**3*W7 + W7**2""",
    """224*W0**4*W1 + 976*W0**2*W1**2 + 48*W1**3 - 18*W1*W2**2 - 2*W1*W3**2
       + 1080*W0*W2*W4 - 11664*W4**2 + 128*W0*W3*W5 - 3456*W0*W1*W6
       - 8*W0**3*W7 + 17*W0*W1*W7 + 54*W6*W7""",
    """64*W0**6 + 640*W0**4*W1 + 209*W0**2*W1**2 + 8*W1**3 - W0**2*W2**2
       - 4*W1*W2**2 - 4*W0**2*W3**2 + 324*W0*W2*W4 - 2916*W4**2
       + 1728*W0**3*W6 - 108*W0*W1*W6 + 2916*W6**2 - 8*W0**3*W7 + 2*W0*W1*W7""",
    """-160*W0**6 - 1520*W0**4*W1 - 334*W0**2*W1**2 - 8*W1**3 + W1*W2**2
       + 10*W0**2*W3**2 + W1*W3**2 + 1728*W4*W5 - 4320*W0**3*W6
       - 1188*W0*W1*W6 + 20*W0**3*W7 + 4*W0*W1*W7""",
    """-32*W0**4*W2 - 256*W0**2*W1*W2 - 34*W1**2*W2 + 2*W2**3 + 16*W0**4*W3
       + 176*W0**2*W1*W3 + 28*W1**2*W3 - W3**3 + 1728*W0**3*W4
       + 1080*W0*W1*W4 + 2048*W0**3*W5 + 512*W0*W1*W5 - 648*W0*W2*W6
       - W0*W2*W7 - 2*W0*W3*W7 + 54*W4*W7 + 16*W5*W7""",
    """32*W0**4*W2 + 316*W0**2*W1*W2 - 32*W1**2*W2 + 2*W2**3 + 8*W0**2*W1*W3
       + 20*W1**2*W3 - 432*W0*W1*W4 - 192*W0*W1*W5 + 1080*W0*W2*W6
       + 3456*W5*W6 - 9*W0*W2*W7 + 2*W0*W3*W7 + 54*W4*W7""",
    """-16*W0**4*W2 - 142*W0**2*W1*W2 - 8*W1**2*W2 + W2**3 - 8*W0**2*W1*W3
       + 2*W1**2*W3 + 1836*W0*W1*W4 - 256*W0**3*W5 - 128*W0*W1*W5
       - 324*W0*W2*W6 + 5832*W4*W6""",
]

CURVE_C_EQUATIONS = [
    "U0",
    "-8*U1**2 - 2*U1*U2 + 2*U2**2 - 2*U1*U3 + 3*U4*U9 + 6*U6*U9",
    "16*U1**2 + 4*U2**2 - 4*U3**2 + 3*U6*U7",
    "20*U1**2 + 12*U1*U2 + 8*U1*U3 + 2*U3**2 + U5*U9",
    "-4*U1**2 - 8*U1*U2 + 6*U2**2 - 4*U1*U3 + U5*U8",
    "4*U1**2 + 2*U1*U2 - 2*U2**2 - 2*U1*U3 + 2*U3**2 + 3*U4*U8",
    "-2*U1**2 + U2*U3",
    "-6*U1*U4 - 6*U3*U4 - U3*U5 + 12*U1*U6 - 12*U2*U6 + 6*U8*U9",
    "-36*U1*U4 - 12*U3*U4 - 4*U1*U5 - 2*U2*U5 - 4*U3*U5 + 24*U1*U6 + 3*U7*U9",
    "36*U1*U4 + 2*U2*U5 + 4*U3*U5 - 24*U1*U6 - 24*U2*U6 + 3*U7*U8",
    "6*U1*U4 + 6*U3*U4 + U3*U5 + 12*U3*U6",
    "6*U1*U4 + 3*U2*U4 + U1*U5 + 12*U1*U6",
    "18*U6**2 - 2*U1*U8 + 3*U2*U8 - 6*U1*U9 + 4*U2*U9 + 3*U3*U9",
    "U5*U6 + 2*U1*U8 + 2*U1*U9 + 2*U2*U9",
    "U5**2 + 12*U1*U7 + 3*U2*U7 + 6*U3*U7 - 16*U1*U8 + 48*U1*U9 - 4*U2*U9",
    "9*U4*U6 + 4*U1*U8 + 6*U1*U9 - 5*U2*U9 - 3*U3*U9",
    "3*U4*U5 - 3*U1*U7 - 3*U3*U7 - 8*U1*U8 - 36*U1*U9 + 4*U2*U9",
    "18*U4**2 + 3*U3*U7 - 16*U1*U8 + 8*U2*U9 + 12*U3*U9",
    "2*U1*U8 + U3*U8 + 2*U1*U9 - U2*U9",
]


def _coeff(c) -> GaussianRational:
    c = sp.nsimplify(c)
    re, im = sp.re(c), sp.im(c)
    re, im = sp.Rational(re), sp.Rational(im)
    den = sp.ilcm(re.q, im.q)
    return GaussianRational(int(re * den), int(im * den), int(den))


def to_poly(expr: str, names, weights=()) -> SparsePolynomial:
    syms = sp.symbols(names)
    e = sp.expand(sp.sympify(expr, locals={n: s for n, s in zip(names, syms)} | {"I": sp.I}))
    poly = sp.Poly(e, *syms)
    fr = VariableFrame(tuple(names), tuple(weights))
    return SparsePolynomial(fr, {m: _coeff(c) for m, c in poly.terms()})


def action_json(names, tables) -> dict:
    fr = VariableFrame(tuple(names))
    gens = []
    for table in tables:
        images = [s for s in (t.strip() for t in _split_top(table)) if s]
        if len(images) != len(names):
            raise ValueError(f"expected {len(names)} images, got {len(images)}")
        gens.append([poly_to_json(to_poly(s, names)) for s in images])
    return {"frame": list(fr.names), "grading": list(fr.weights), "generators": gens}


def _split_top(s: str) -> list:
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    files = {
        "action_g_xy.json": action_json(XY, ACTION_G_XY),
        "action_g21_xy.json": action_json(XY, ACTION_G21_XY),
        "action_g_z.json": action_json(Z, ACTION_G_Z),
        "action_g21_z.json": action_json(Z, ACTION_G21_Z),
    }
    xy = VariableFrame(tuple(XY))
    files["seeds_z3.json"] = equations_to_json(xy, [to_poly(s, XY) for s in SEEDS])
    files["h_form.json"] = equations_to_json(xy, [to_poly(H_FORM, XY)])
    uv = ["u", "v"]
    line = [to_poly(s, uv) for s in _split_top(SEED_LINE)]
    assert len(line) == 13
    files["seed_line.json"] = equations_to_json(VariableFrame(("u", "v")), line,
                                                coordinates=XY)
    wweights = (1, 2, 2, 2, 3, 3, 3, 3)
    files["z1_equations.json"] = equations_to_json(
        VariableFrame(tuple(W), wweights), [to_poly(s, W, wweights) for s in Z1_EQUATIONS])
    files["curve_c_equations.json"] = equations_to_json(
        VariableFrame(tuple(U)), [to_poly(s, U) for s in CURVE_C_EQUATIONS])
    for name, obj in files.items():
        (DATA / name).write_text(dumps(obj))
        print("wrote", name)


if __name__ == "__main__":
    main()
