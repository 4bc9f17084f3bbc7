"""Lifting points of Z3 (in P^12) to P^26 and the U coordinates of Z.

Given (x, y) on Z3, z is cut out by linear relations and the chi1 + chi10
quadrics on z:

* the chi11 component of the y.z forms vanishes on the lift; at points of
  Z3 its 28 x 14 matrix has a two-dimensional kernel;
* on that kernel the 28 quadrics restrict to multiples of one binary form,
  whose two roots give two candidate directions for z;
* the chi2 diagonal relation  x^T B_k z + t y^T C_k z = 0  (B, C matched by
  an exact intertwiner) holds for exactly one candidate once t is fixed.
  The admissible t form a pair {t0, -t0}; ``sign`` picks one of them.

z is finally scaled so that the invariant cubics agree on y and z.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from ..algebra import linalg
from ..algebra.gaussian import GaussianRational
from ..algebra.poly import SparsePolynomial, monomials_of_degree
from ..errors import NoSolution, RankDefect, ResourceLimit
from .ball import DEFAULT_BITS, BallComplex, context
from .newton import VarietyPoint
from .polysys import PolynomialSystem

RATIO_TOL = 1e-30  # relative consistency required of the chi2 relation at a lifted point


def _bilinear(rows, mons, nleft: int, nz: int = 14) -> list:
    """Coefficient rows over monomials of a (left + z) frame -> nleft x nz exact matrices."""
    out = []
    zero = GaussianRational(0)
    for row in rows:
        M = [[zero] * nz for _ in range(nleft)]
        for c, m in zip(row, mons):
            if c:
                i, j = [k for k, e in enumerate(m) for _ in range(e)]
                if not i < nleft <= j:
                    raise ValueError("form is not bilinear in (left block, z)")
                M[i][j - nleft] = c
        out.append(M)
    return out


def _isotypic_forms(ctx, k: int, left: tuple) -> list:
    from ..grouprep.induced import isotypic_projector, isotypic_rank
    from ..surface.context import Z
    names = tuple(left) + Z
    chi = ctx.table.row(k)
    r = isotypic_rank(ctx.G, ctx.classes, chi, 2, names)
    rows = isotypic_projector(ctx.G, ctx.classes, chi, 2, names).image_basis(r)
    return _bilinear(rows, monomials_of_degree(len(names), 2), len(left))


def _gi_block(g, idx) -> list:
    return [[GaussianRational(int(g[0, i, j]), int(g[1, i, j])) for j in idx] for i in idx]


def _act(ML, A, MZ) -> list:
    """Substitution action on the bilinear form x^T A z: A -> ML A MZ^T."""
    return linalg_matmul(linalg_matmul(ML, A), linalg.transpose(MZ))


def linalg_matmul(A, B) -> list:
    from ..grouprep.matrices import exact_matmul
    return exact_matmul(A, B)


def _flat(A) -> list:
    return [c for row in A for c in row]


def _coords(basis_flat, pivots, v) -> list:
    """Coordinates of v in an RREF basis (read off at the pivots), checked exactly."""
    c = [v[p] for p in pivots]
    for j in range(len(v)):
        s = sum((ck * b[j] for ck, b in zip(c, basis_flat) if b[j]), GaussianRational(0))
        if s != v[j]:
            raise RankDefect("transformed form left the isotypic component")
    return c


def _rho(forms, ML_list, MZ_list) -> list:
    flat = [_flat(A) for A in forms]
    one = GaussianRational(1)
    pivots = [next(j for j, c in enumerate(f) if c == one and not any(g[j] for g in flat if g is not f))
              for f in flat]
    mats = []
    for ML, MZ in zip(ML_list, MZ_list):
        cols = [_coords(flat, pivots, _flat(_act(ML, A, MZ))) for A in forms]
        mats.append(linalg.transpose(cols))
    return mats


def intertwiner(rho_a: list, rho_b: list) -> list:
    """Phi with Phi rho_a(g) = rho_b(g) Phi for all generators; must be unique up to scale."""
    n = len(rho_a[0])
    zero = GaussianRational(0)
    eqs = []
    for A, B in zip(rho_a, rho_b):
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + A[k][j]  # (Phi A)_ij = sum_k Phi_ik A_kj
                    row[k * n + j] = row[k * n + j] - B[i][k]  # (B Phi)_ij = sum_k B_ik Phi_kj
                eqs.append(row)
    null = linalg.nullspace(eqs)
    if len(null) != 1:
        raise RankDefect(f"intertwiner space has dimension {len(null)}")
    v = null[0]
    return [[v[i * n + j] for j in range(n)] for i in range(n)]


def _quadric_matrix(poly: SparsePolynomial) -> list:
    n = len(poly.frame)
    zero = GaussianRational(0)
    S = [[zero] * n for _ in range(n)]
    half = GaussianRational(1, 0, 2)
    for e, c in poly.terms.items():
        i, j = [k for k, v in enumerate(e) for _ in range(v)]
        if i == j:
            S[i][i] = S[i][i] + c
        else:
            S[i][j] = S[i][j] + c * half
            S[j][i] = S[j][i] + c * half
    return S


@dataclass
class LiftData:
    """Exact ingredients of the lift."""

    chi11: list  # 28 matrices 7 x 14 (y, z)
    B: list  # 6 matrices 6 x 14 (x, z), chi2
    C: list  # 6 matrices 7 x 14 (y, z), chi2, matched to B by an intertwiner
    z_quadrics: list  # SparsePolynomial on z
    cubic_y: SparsePolynomial
    cubic_z: SparsePolynomial
    invariants: dict  # z-count -> list of G21-invariant quadrics on all 27 variables
    frame: object
    _num: dict = field(default_factory=dict, repr=False)

    def numeric(self, bits: int) -> dict:
        if bits not in self._num:
            ctx = context(bits)

            def mp(M):
                return ctx.matrix([[ctx.mpc(ctx.mpf(c.re) / c.den, ctx.mpf(c.im) / c.den) for c in row]
                                   for row in M])

            self._num[bits] = {
                "chi11": [mp(M) for M in self.chi11], "B": [mp(M) for M in self.B], "C": [mp(M) for M in self.C],
                "Q": [mp(_quadric_matrix(q)) for q in self.z_quadrics],
            }
        return self._num[bits]


@lru_cache(maxsize=2)
def _lift_data_cached(ctx) -> LiftData:
    from ..grouprep.induced import invariant_subspace, rows_to_polys
    from ..surface.context import XY, X, Y, Z
    from ..surface.invariants import z_relation_rows
    fr = ctx.G.rep.frame
    gens = [ctx.G.elements[k] for k in ctx.G.generator_ids]
    ix, iy, iz = range(0, 6), range(6, 13), range(13, 27)
    MX = [_gi_block(g, ix) for g in gens]
    MY = [_gi_block(g, iy) for g in gens]
    MZ = [_gi_block(g, iz) for g in gens]
    B = _isotypic_forms(ctx, 2, X)
    C = _isotypic_forms(ctx, 2, Y)
    phi = intertwiner(_rho(B, MX, MZ), _rho(C, MY, MZ))
    # C'_k = sum_j phi[j][k] C_j carries the same matrices as B_k
    Cm = [[[sum((phi[j][k] * C[j][a][b] for j in range(len(C)) if C[j][a][b]), GaussianRational(0))
            for b in range(14)] for a in range(7)] for k in range(len(B))]
    zfr = fr.sub(Z)
    zq = rows_to_polys(z_relation_rows(ctx), zfr, 2)
    cy = rows_to_polys(invariant_subspace(ctx.G, 3, Y, 1), fr.sub(Y), 3)[0]
    cz = rows_to_polys(invariant_subspace(ctx.G, 3, Z, 1), zfr, 3)[0]
    inv = rows_to_polys(invariant_subspace(ctx.G21, 2), fr, 2)
    by_z = {0: [], 1: [], 2: []}
    for q in inv:
        nz = {sum(e[13:]) for e in q.terms}
        if len(nz) != 1:
            raise RankDefect("invariant quadric mixes z-degrees")
        by_z[nz.pop()].append(q)
    return LiftData(_isotypic_forms(ctx, 11, Y), B, Cm, zq, cy, cz, by_z, fr)


def lift_data(ctx=None) -> LiftData:
    from ..surface.context import default_context
    return _lift_data_cached(ctx or default_context())


# -- numeric lift ------------------------------------------------------------------

def _vec(ctx, coords):
    return [ctx.mpc(c) for c in coords]


def _bil(ctx, a, M, z):
    s = ctx.mpc(0)
    for i in range(M.rows):
        if a[i] == 0:
            continue
        row = ctx.mpc(0)
        for j in range(M.cols):
            if M[i, j] != 0:
                row += M[i, j] * z[j]
        s += a[i] * row
    return s


def _kernel(ctx, rows: list, dim: int):
    M = ctx.matrix(rows)
    _, S, V = ctx.svd_c(M, full_matrices=True)
    n = M.cols
    sv = [S[k] for k in range(min(M.rows, n))]
    r = n - dim
    if sv[r - 1] < ctx.mpf(2) ** (-ctx.prec // 4) * sv[0] or (r < len(sv) and sv[r] > ctx.mpf(2) ** (-ctx.prec // 2) * sv[0]):
        raise RankDefect(f"expected a {dim}-dimensional kernel")
    return [[ctx.conj(V[k, j]) for j in range(n)] for k in range(r, n)]


@dataclass
class Candidate:
    z: list
    ratio: object  # least-squares t with u + t v = 0
    consistency: object  # |u + t v| / (|u| + |v|)


def z_candidates(data: LiftData, x, y, bits: int = DEFAULT_BITS) -> list:
    """The two z directions allowed by the chi11 forms and the z quadrics."""
    ctx = context(bits)
    num = data.numeric(bits)
    x, y = _vec(ctx, x), _vec(ctx, y)
    rows = [[sum((y[i] * M[i, j] for i in range(7) if M[i, j] != 0), ctx.mpc(0)) for j in range(14)]
            for M in num["chi11"]]
    K0, K1 = _kernel(ctx, rows, 2)
    k0, k1 = ctx.matrix(K0), ctx.matrix(K1)
    coeffs = []
    for S in num["Q"]:
        Sk0, Sk1 = S * k0, S * k1
        a = sum((k0[j] * Sk0[j] for j in range(14)), ctx.mpc(0))
        b = 2 * sum((k0[j] * Sk1[j] for j in range(14)), ctx.mpc(0))
        c = sum((k1[j] * Sk1[j] for j in range(14)), ctx.mpc(0))
        coeffs.append([a, b, c])
    _, S, V = ctx.svd_c(ctx.matrix(coeffs), full_matrices=False)
    if S[1] > ctx.mpf(2) ** (-ctx.prec // 2) * S[0]:
        raise NoSolution("the z quadrics restricted to the chi11 kernel are not proportional")
    a, b, c = (V[0, j] for j in range(3))
    disc = ctx.sqrt(b * b - 4 * a * c)
    out = []
    if abs(a) >= abs(c):
        params = [((-b + s * disc) / (2 * a), ctx.mpc(1)) for s in (1, -1)]
    else:
        params = [(ctx.mpc(1), (-b + s * disc) / (2 * c)) for s in (1, -1)]
    for p0, p1 in params:
        z = [p0 * K0[j] + p1 * K1[j] for j in range(14)]
        big = max(abs(v) for v in z)
        z = [v / big for v in z]
        u = [_bil(ctx, x, M, z) for M in num["B"]]
        v = [_bil(ctx, y, M, z) for M in num["C"]]
        vv = sum((abs(t) ** 2 for t in v), ctx.mpf(0))
        t = -sum((a_ * ctx.conj(b_) for a_, b_ in zip(u, v)), ctx.mpc(0)) / vv
        res = max(abs(a_ + t * b_) for a_, b_ in zip(u, v)) / (max(abs(w) for w in u) + max(abs(w) for w in v))
        out.append(Candidate(z, t, res))
    return out


def _normalize_sign(ctx, t):
    """Representative of {t, -t} with positive real part (positive imaginary part if real part is 0)."""
    if t.real < 0 or (t.real == 0 and t.imag < 0):
        return -t
    return t


@dataclass
class DiagonalRelation:
    t0: object  # normalized ratio; the relations are t = +t0 and t = -t0
    spread: float  # max relative deviation across the calibration points
    points: int


def diagonal_ratio(data: LiftData, points, bits: int = DEFAULT_BITS) -> DiagonalRelation:
    """The ratios t for which the chi2 diagonal relation admits a lift, from calibration points."""
    ctx = context(bits)
    ts = []
    for p in points:
        x, y = p.coords[:6], p.coords[6:13]
        cands = z_candidates(data, x, y, bits)
        good = [c for c in cands if c.consistency < RATIO_TOL]
        if len(good) != 2:
            raise NoSolution("calibration point without two consistent candidates")
        a, b = (_normalize_sign(ctx, c.ratio) for c in good)
        if abs(a - b) > ctx.mpf(RATIO_TOL) * abs(a):
            raise NoSolution("the two candidates do not differ by the sign of t")
        ts.append(a)
    t0 = ts[0]
    spread = max(float(abs(t - t0) / abs(t0)) for t in ts)
    if spread > RATIO_TOL:
        raise NoSolution(f"the diagonal ratio varies between points (spread {spread:.2e})")
    return DiagonalRelation(t0, spread, len(ts))


def _cube_root(ctx, w):
    return ctx.cbrt(w) if hasattr(ctx, "cbrt") else w ** (ctx.mpf(1) / 3)


def matching_branches(candidates, t) -> list:
    """Candidates satisfying the chi2 relation with ratio t."""
    return [c for c in candidates if abs(c.ratio - t) <= RATIO_TOL * abs(t) and c.consistency < RATIO_TOL]


def lift_to_z(point: VarietyPoint, sign: int, data: LiftData, relation: DiagonalRelation,
              bits: int = DEFAULT_BITS, candidates=None) -> VarietyPoint:
    """Point of P^26 over ``point`` for the diagonal relation t = sign * t0."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ctx = context(bits)
    coords = [ctx.mpc(c) for c in point.coords]
    x, y = coords[:6], coords[6:13]
    if candidates is None:
        candidates = z_candidates(data, x, y, bits)
    fits = matching_branches(candidates, sign * relation.t0)
    if not fits:
        raise NoSolution("no z-candidate satisfies this diagonal relation")
    if len(fits) > 1:
        raise RankDefect("both z-candidates satisfy the relation")
    z = fits[0].z
    num_y = data.cubic_y.evaluate(y, _coef(ctx))
    num_z = data.cubic_z.evaluate(z, _coef(ctx))
    if abs(num_z) < ctx.mpf(2) ** (-ctx.prec // 2):
        raise RankDefect("the z cubic vanishes at the candidate")
    lam = _cube_root(ctx, num_y / num_z)
    full = coords + [lam * v for v in z]
    pt = VarietyPoint(full, None, "lift", bits, point.chart, 0, {"sign": sign})
    pt.residual = lift_residual(data, pt, sign * relation.t0)
    return pt


def _coef(ctx):
    def f(c):
        c = GaussianRational.coerce(c)
        return ctx.mpc(ctx.mpf(c.re) / c.den, ctx.mpf(c.im) / c.den)
    return f


def lift_residual(data: LiftData, pt: VarietyPoint, t):
    """Ball bound on the z quadrics and the chi2 relation at the lifted point (chart-normalized)."""
    ctx = context(pt.bits)
    balls = [BallComplex(c, 0, ctx=ctx) for c in pt.coords]
    zs = PolynomialSystem(data.z_quadrics)
    vals = zs.eval_ball(balls[13:])
    worst = max(v.abs_upper() / s for v, s in zip(vals, zs.scale_factors()))
    num = data.numeric(pt.bits)
    x, y, z = pt.coords[:6], pt.coords[6:13], pt.coords[13:]
    rel = max(abs(_bil(ctx, x, B, z) + t * _bil(ctx, y, C, z)) for B, C in zip(num["B"], num["C"]))
    return max(worst, rel)


# -- U coordinates ----------------------------------------------------------------

def _eval_all(ctx, polys, coords) -> list:
    f = _coef(ctx)
    return [p.evaluate(coords, f) for p in polys]


def choose_u_basis(data: LiftData, points, bits: int = DEFAULT_BITS, split=(4, 3, 3)) -> dict:
    """Per z-count, invariants whose values on the lifted points are independent (pivoted QR)."""
    ctx = context(bits)
    choice = {}
    for nz, want in zip((0, 1, 2), split):
        polys = data.invariants[nz]
        A = np.array([[complex(v) for v in _eval_all(ctx, polys, p.coords)] for p in points])
        A = A / np.abs(A).max(axis=0, keepdims=True)
        chosen = []
        R = A.copy()
        for _ in range(len(polys)):
            norms = np.linalg.norm(R, axis=0)
            j = int(np.argmax(norms))
            if norms[j] < 1e-8 * np.linalg.norm(A):
                break
            chosen.append(j)
            q = R[:, j] / norms[j]
            R = R - np.outer(q, q.conj() @ R)
        if len(chosen) != want:
            raise RankDefect(f"{len(chosen)} independent invariants with {nz} z's, expected {want}")
        choice[nz] = sorted(chosen)
    return choice


def build_U_coordinates(lifted: VarietyPoint, data: LiftData, choice: dict) -> list:
    """U0..U9: the chosen invariant quadrics, ordered by z-count (4 / 3 / 3)."""
    ctx = context(lifted.bits)
    out = []
    for nz in (0, 1, 2):
        polys = [data.invariants[nz][j] for j in choice[nz]]
        out.extend(_eval_all(ctx, polys, lifted.coords))
    return out


def u_points(lifted, data: LiftData, choice: dict) -> list:
    out = []
    for p in lifted:
        u = build_U_coordinates(p, data, choice)
        big = max(range(10), key=lambda k: abs(u[k]))
        out.append(VarietyPoint([v / u[big] for v in u], p.residual, "U", p.bits, big))
    return out


# -- drivers -------------------------------------------------------------------------

def _z3_points(ws, count: int, salt: str) -> list:
    from .sampling import sample_points
    return sample_points(ws.system, ws.line_orbit.lines, count, ws.rng(salt), ws.config.bits)


def lift_kernel_dimensions(ws, budget: float, sign: int = 1, calibration: int = 3, deg2_points: int = 70,
                           deg3_points: int = 240) -> dict:
    """Sign branches, then the U-frame kernel dimensions in degrees 2 and 3."""
    from .kernel import numeric_kernel
    start = time.monotonic()
    bits = ws.config.bits

    def tick(stage):
        if budget and time.monotonic() - start > budget:
            raise ResourceLimit(f"lift budget of {budget}s used up during {stage}")

    data = lift_data(ws.ctx)
    calib = _z3_points(ws, calibration, "lift-calibration")
    rel = diagonal_ratio(data, calib, bits)
    tick("calibration")
    pts = _z3_points(ws, deg3_points, "lift-points")
    tick("sampling")
    per_point = []
    lifted = []
    for p in pts:
        cands = z_candidates(data, p.coords[:6], p.coords[6:13], bits)
        per_point.append(len(matching_branches(cands, sign * rel.t0)))
        try:
            lifted.append(lift_to_z(p, sign, data, rel, bits, cands))
        except (NoSolution, RankDefect):
            pass
    tick("lifting")
    choice = choose_u_basis(data, lifted[:40], bits)
    U = u_points(lifted, data, choice)
    k2 = numeric_kernel(monomials_of_degree(10, 2), U[:deg2_points], bits)
    tick("degree-2 kernel")
    k3 = numeric_kernel(monomials_of_degree(10, 3), U, bits)
    branches = 1 if all(n == 1 for n in per_point) else min(per_point, key=lambda n: (n == 1, n))
    return {"sign_branches": branches,
            "U_deg2_kernel": k2.dim, "U_deg3_kernel": k3.dim}


def lift_report(cfg, sign: str, count: int, out: str | None) -> dict:
    """CLI driver: lift ``count`` sampled Z3 points with the requested sign."""
    from ..pipeline import Workspace
    ws = Workspace(cfg)
    data = lift_data(ws.ctx)
    bits = cfg.bits
    calib = _z3_points(ws, 3, "lift-calibration")
    rel = diagonal_ratio(data, calib, bits)
    pts = _z3_points(ws, count, "lift-points")
    signs = [1, -1] if sign == "auto" else [1 if sign == "+" else -1]
    report = {"t0": [float(rel.t0.real), float(rel.t0.imag)], "points": count}
    lifted_all = {}
    for s in signs:
        got = []
        for p in pts:
            try:
                got.append(lift_to_z(p, s, data, rel, bits))
            except (NoSolution, RankDefect):
                pass
        lifted_all[s] = got
        report[f"lifted[{'+' if s > 0 else '-'}]"] = len(got)
    best = max(lifted_all, key=lambda s: len(lifted_all[s]))
    lifted = lifted_all[best]
    report["status"] = "ok" if len(lifted) == count else "partial"
    if lifted:
        report["max_residual"] = f"{float(max(p.residual for p in lifted)):.3e}"
    if out and lifted:
        choice = choose_u_basis(data, lifted, bits) if len(lifted) >= 12 else None
        doc = {"frame": list(data.frame.names), "bits": bits, "sign": best,
               "points": [p.to_json() | {"chart": p.chart} for p in lifted]}
        if choice:
            doc["U_choice"] = {str(k): v for k, v in choice.items()}
            doc["U_points"] = [p.to_json() | {"chart": p.chart} for p in u_points(lifted, data, choice)]
        Path(out).write_text(json.dumps(doc, indent=1) + "\n")
        report["written"] = out
    return report
