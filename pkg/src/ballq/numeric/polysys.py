"""Polynomial systems compiled for fast float, multiprecision and ball evaluation."""

from __future__ import annotations

from math import lcm

import numpy as np

from ..algebra.gaussian import GaussianRational
from ..algebra.poly import SparsePolynomial
from .ball import BallComplex, context


class PolynomialSystem:
    """Equations f_k(x) with exact Q(i) coefficients.

    Each equation is stored with its denominators cleared (a nonzero
    rescaling, harmless for zero sets) and, for floating evaluation,
    divided by its largest coefficient modulus.
    """

    def __init__(self, polys):
        polys = list(polys)
        if not polys:
            raise ValueError("empty system")
        self.frame = polys[0].frame
        self.n = len(self.frame)
        exps, eq, coef = [], [], []
        self.exact_terms = []
        for k, f in enumerate(polys):
            den = 1
            for c in f.terms.values():
                den = lcm(den, c.den)
            terms = [(e, (c.re * (den // c.den), c.im * (den // c.den))) for e, c in sorted(f.terms.items())]
            self.exact_terms.append(terms)
            big = max(abs(complex(a, b)) for _, (a, b) in terms) if terms else 1
            for e, (a, b) in terms:
                exps.append(e)
                eq.append(k)
                coef.append(complex(a, b) / big)
        self.polys = polys
        self.m = len(polys)
        self.E = np.array(exps, dtype=np.int64).reshape(-1, self.n)
        self.eq = np.array(eq, dtype=np.int64)
        self.coef = np.array(coef, dtype=complex)

    def __len__(self):
        return self.m

    # floating ---------------------------------------------------------------
    def _mon(self, x: np.ndarray, E: np.ndarray) -> np.ndarray:
        return np.prod(np.power(x[None, :], E), axis=1)

    def eval_float(self, x: np.ndarray) -> np.ndarray:
        vals = self.coef * self._mon(x, self.E)
        return np.bincount(self.eq, weights=vals.real, minlength=self.m) + \
            1j * np.bincount(self.eq, weights=vals.imag, minlength=self.m)

    def jacobian_float(self, x: np.ndarray) -> np.ndarray:
        J = np.zeros((self.m, self.n), dtype=complex)
        for j in range(self.n):
            sel = self.E[:, j] > 0
            if not sel.any():
                continue
            Ej = self.E[sel].copy()
            Ej[:, j] -= 1
            vals = self.coef[sel] * self.E[sel, j] * self._mon(x, Ej)
            np.add.at(J[:, j], self.eq[sel], vals)
        return J

    # multiprecision -----------------------------------------------------------
    def eval_mp(self, x, bits: int) -> list:
        """Values of the denominator-cleared (unnormalized) equations at an mpc point."""
        ctx = context(bits)
        out = []
        powers: dict = {}
        for terms in self.exact_terms:
            s = ctx.mpc(0)
            for e, (a, b) in terms:
                t = ctx.mpc(a, b)
                for j, k in enumerate(e):
                    if k:
                        key = (j, k)
                        if key not in powers:
                            powers[key] = x[j] ** k
                        t *= powers[key]
                s += t
            out.append(s)
        return out

    def eval_ball(self, x) -> list:
        """Ball enclosures of the equation values at a vector of balls.

        For exact midpoints (all radii zero) the value is computed once in
        mpmath and the radius comes from a running error bound: a term of
        total degree d incurs at most d + 1 roundings, the sum at most one
        per term, each of relative size 2^(1 - prec).
        """
        if all(not b.rad for b in x):
            return self._eval_exact_point(x)
        out = []
        powers: dict = {}
        ctx = x[0].ctx
        for terms in self.exact_terms:
            s = BallComplex(0, 0, ctx=ctx)
            for e, (a, b) in terms:
                t = BallComplex(ctx.mpc(a, b), 0, ctx=ctx)
                for j, k in enumerate(e):
                    if k:
                        key = (j, k)
                        if key not in powers:
                            powers[key] = x[j] ** k
                        t = t * powers[key]
                s = s + t
            out.append(s)
        return out

    def _eval_exact_point(self, x) -> list:
        ctx = x[0].ctx
        pts = [b.mid for b in x]
        absx = [abs(v) for v in pts]
        u = ctx.ldexp(1, 1 - ctx.prec)
        out = []
        for terms in self.exact_terms:
            s = ctx.mpc(0)
            a = ctx.mpf(0)
            nops = 0
            for e, (re, im) in terms:
                t = ctx.mpc(re, im)
                m = ctx.mpf(abs(complex(re, im))) * 2
                for j, k in enumerate(e):
                    if k:
                        t *= pts[j] ** k
                        m *= absx[j] ** k
                s += t
                a += m
                nops = max(nops, sum(e) + 1)
            nops += len(terms)
            rad = a * u * 4 * (nops + 2) * (1 + u * 16)
            out.append(BallComplex(s, rad, ctx=ctx))
        return out

    def scale_factors(self) -> list:
        """Largest coefficient modulus per equation (for relative residuals)."""
        return [max(abs(complex(a, b)) for _, (a, b) in terms) for terms in self.exact_terms]


def exact_residuals(system: PolynomialSystem, point) -> list:
    """Exact equation values at a Q(i) point."""
    pt = [GaussianRational.coerce(c) for c in point]
    return [f.evaluate(pt) for f in system.polys]
