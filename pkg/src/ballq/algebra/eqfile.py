"""JSON equation-set files.

Layout::

    {"frame": [names], "grading": [ints],
     "equations": [{"terms": [{"exp": [ints], "c": {"n": [re, im], "d": [re, im]}}]}]}

Gaussian integers are ``[re, im]`` pairs of decimal strings.  Writing is
deterministic (degrevlex term order, canonical coefficients), so a file
produced here round-trips byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .gaussian import GaussianInt, GaussianRational
from .poly import QQI, SparsePolynomial, VariableFrame


def _gi_to_json(re: int, im: int) -> list:
    return [str(re), str(im)]


def _gi_from_json(pair) -> GaussianInt:
    re, im = pair
    return GaussianInt(int(re), int(im))


def coeff_to_json(c: GaussianRational) -> dict:
    return {"n": _gi_to_json(c.re, c.im), "d": _gi_to_json(c.den, 0)}


def coeff_from_json(obj) -> GaussianRational:
    return GaussianRational.from_pair(_gi_from_json(obj["n"]), _gi_from_json(obj.get("d", ["1", "0"])))


def poly_to_json(poly: SparsePolynomial) -> dict:
    if poly.ring != QQI:
        raise TypeError("only Q(i) polynomials are serialized")
    return {"terms": [{"exp": list(e), "c": coeff_to_json(c)} for e, c in poly.sorted_terms()]}


def poly_from_json(obj, fr: VariableFrame) -> SparsePolynomial:
    terms = {}
    for t in obj["terms"]:
        exp = tuple(int(e) for e in t["exp"])
        c = coeff_from_json(t["c"])
        terms[exp] = terms.get(exp, 0) + c
    return SparsePolynomial(fr, terms)


def frame_to_json(fr: VariableFrame) -> dict:
    return {"frame": list(fr.names), "grading": list(fr.weights)}


def frame_from_json(obj) -> VariableFrame:
    return VariableFrame(tuple(obj["frame"]), tuple(obj.get("grading") or ()))


def equations_to_json(fr: VariableFrame, equations: Sequence[SparsePolynomial], **extra) -> dict:
    out = frame_to_json(fr)
    out["equations"] = [poly_to_json(p) for p in equations]
    out.update(extra)
    return out


def equations_from_json(obj) -> tuple:
    fr = frame_from_json(obj)
    return fr, [poly_from_json(e, fr) for e in obj["equations"]]


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def write_equations(path, fr: VariableFrame, equations, **extra) -> None:
    Path(path).write_text(dumps(equations_to_json(fr, equations, **extra)))


def parse_polynomial(expr: str, fr: VariableFrame) -> SparsePolynomial:
    """Polynomial from text such as ``"U1*U2 - (2 + 3*I)/7*U3**2"`` (``I`` or ``i`` is sqrt(-1))."""
    import sympy as sp

    syms = sp.symbols(fr.names)
    names = dict(zip(fr.names, syms)) | {"I": sp.I, "i": sp.I}
    poly = sp.Poly(sp.expand(sp.sympify(expr, locals=names)), *syms)
    terms = {}
    for m, c in poly.terms():
        re, im = (sp.Rational(v) for v in c.as_real_imag())
        den = sp.ilcm(re.q, im.q)
        terms[tuple(int(e) for e in m)] = GaussianRational(int(re * den), int(im * den), int(den))
    return SparsePolynomial(fr, terms)


def parse_equations(text: str, names: Sequence[str] = (), weights: Sequence[int] = ()) -> tuple:
    """Text format: optional ``vars: U0 U1 ...`` line, then one polynomial per line; ``#`` starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if lines and lines[0].lower().startswith("vars:"):
        names = lines.pop(0)[5:].replace(",", " ").split()
    if not names:
        raise ValueError("no variable names given")
    fr = VariableFrame(tuple(names), tuple(weights))
    return fr, [parse_polynomial(ln.rstrip(",;"), fr) for ln in lines]


def read_equations(path, names: Sequence[str] = ()) -> tuple:
    """JSON equation file, or the text format of :func:`parse_equations`."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return equations_from_json(json.loads(text))
    return parse_equations(text, names)
