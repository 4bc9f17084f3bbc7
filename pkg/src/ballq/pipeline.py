"""The verification pipeline: every check, its anchor, expected value and comparison.

Checks run in dependency order against a shared :class:`Workspace` that
builds the expensive objects (closures, relation spans, line orbits, sample
points) once.  Heavy and stretch checks run only when a time budget is set.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .errors import BallqError, ConfigError, DatasetCorrupt, GapTooSmall, ResourceLimit

SCHEMA = "ballq.report/1"

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"


@dataclass(frozen=True)
class RunConfig:
    prime: int = 101
    bits: int = 256
    threads: int = 1
    budget: float = 0.0  # seconds granted to each heavy or stretch check; 0 disables them
    seed: int = 20170101
    with_z: str | None = None
    cache_dir: str | None = None
    trials: int = 100  # Gauss-Newton perturbation trials
    points: int = 150  # sample size for the numeric kernel
    recognitions: int = 1000

    def validate(self) -> "RunConfig":
        if self.prime != 101:
            # only (10 - i) gives the embedded tables a consistent reduction with i -> 10
            from .algebra.primefield import PrimeField
            try:
                PrimeField(self.prime)
            except Exception as exc:
                raise ConfigError(f"prime {self.prime}: {exc}") from exc
        if self.bits < 64:
            raise ConfigError("precision must be at least 64 bits")
        if self.threads < 1:
            raise ConfigError("thread count must be positive")
        if self.budget < 0:
            raise ConfigError("budget must be non-negative")
        if self.with_z is not None and not Path(self.with_z).is_file():
            raise ConfigError(f"Z equation file {self.with_z} not found")
        return self

    def precision(self, kind: str) -> str:
        return {"exact": "exact", "modp": f"F_{self.prime}", "ball": f"{self.bits} bits"}[kind]


@dataclass
class VerificationReport:
    check_id: str
    anchor: str
    expected: object
    computed: object
    status: str
    wall_time: float
    seed: int
    precision: str
    detail: str = ""

    def to_json(self, timings: bool = False) -> dict:
        out = asdict(self)
        if not timings:
            out.pop("wall_time")
        return out


@dataclass
class Check:
    check_id: str
    criterion: int
    anchor: str
    precision: str  # exact | modp | ball
    run: Callable  # (Workspace) -> (expected, computed) or (expected, computed, ok)
    heavy: bool = False
    needs_z: bool = False


class Workspace:
    """Lazily built shared objects for one run."""

    def __init__(self, config: RunConfig):
        self.config = config

    @cached_property
    def data(self):
        from .surface.dataset import load_dataset
        return load_dataset()

    @cached_property
    def ctx(self):
        from .surface.context import GroupContext
        return GroupContext(self.data, self.config.cache_dir)

    @cached_property
    def spans(self) -> tuple:
        from .surface.relations import orbit_span
        p = self.config.prime
        d = self.data
        return (orbit_span([d.seeds[0]], d.g_xy, p), orbit_span([d.seeds[1]], d.g_xy, p),
                orbit_span(d.seeds, d.g_xy, p))

    @property
    def span(self):
        return self.spans[2]

    @cached_property
    def line_orbit(self):
        from .surface.lines import ProjectiveLine, build_line_orbit
        seed = ProjectiveLine.through(self.data.line.A, self.data.line.B)
        return build_line_orbit(seed, self.data.g_xy, self.span)

    @cached_property
    def system(self):
        from .numeric.polysys import PolynomialSystem
        return PolynomialSystem(self.span.polynomials())

    @cached_property
    def z3_ideal(self):
        from .hilbert.macaulay import GradedIdeal
        return GradedIdeal(self.span.frame, self.span.polynomials(), "Z3")

    @cached_property
    def z_ideal(self):
        from .surface.zfile import load_z_file
        return load_z_file(self.config.with_z)

    def rng(self, salt: str) -> np.random.Generator:
        h = int.from_bytes(hashlib.sha256(f"{self.config.seed}:{salt}".encode()).digest()[:8], "big")
        return np.random.default_rng(h)


def _str_keys(d: dict) -> dict:
    return {str(k): v for k, v in d.items()}


# -- criterion 1 ---------------------------------------------------------------

def check_table(ws: Workspace):
    T = ws.ctx.table
    from .grouprep.numberfield import QI7
    gram = T.row_gram()
    rows_ok = all(gram[i][j] == QI7(int(i == j)) for i in range(14) for j in range(14))
    cz = T.centralizer_orders()
    cg = T.column_gram()
    cols_ok = all(cg[i][j] == QI7(cz[i] if i == j else 0) for i in range(14) for j in range(14))
    sq = sum(d * d for d in T.degrees)
    return ({"rows_orthonormal": True, "columns_orthogonal": True, "sum_deg_sq": 6048},
            {"rows_orthonormal": rows_ok, "columns_orthogonal": cols_ok, "sum_deg_sq": sq})


# -- criterion 2 ---------------------------------------------------------------

def check_closure(ws: Workspace):
    return 6048, ws.ctx.G.order


def check_classes(ws: Workspace):
    c = ws.ctx.classes
    return ({"classes": 14, "sizes_match_table": True},
            {"classes": c.n_classes, "sizes_match_table": tuple(c.sizes) == ws.ctx.table.class_sizes()})


def check_block_characters(ws: Workspace):
    from .grouprep.classes import identify
    got = {p: f"chi{identify(ws.ctx.block_character(p), ws.ctx.table)}" for p in "xyz"}
    return {"x": "chi2", "y": "chi4", "z": "chi6"}, got


# -- criterion 3 ---------------------------------------------------------------

DECOMPOSITIONS = {
    "Sym2(chi2)": "chi7",
    "Sym2(chi4)": "chi5 + chi7",
    "chi2*chi4": "chi6 + chi12",
    "Sym2(chi2+chi3)": "chi1 + chi7 + chi8 + chi9 + chi10",
    "Sym2(chi6)": "chi1 + chi6 + chi7 + chi8 + chi9 + chi10",
    "chi2*chi6": "chi2 + chi4 + chi5 + chi13 + chi14",
    "chi4*chi6": "chi2 + chi11 + chi13 + chi14",
}


def check_decompositions(ws: Workspace):
    from .grouprep.characters import add, decompose, format_decomposition, product, sym_power_character
    T, C = ws.ctx.table, ws.ctx.classes
    r = T.row
    chars = {
        "Sym2(chi2)": sym_power_character(r(2), 2, C),
        "Sym2(chi4)": sym_power_character(r(4), 2, C),
        "chi2*chi4": product(r(2), r(4)),
        "Sym2(chi2+chi3)": sym_power_character(add(r(2), r(3)), 2, C),
        "Sym2(chi6)": sym_power_character(r(6), 2, C),
        "chi2*chi6": product(r(2), r(6)),
        "chi4*chi6": product(r(4), r(6)),
    }
    return DECOMPOSITIONS, {k: format_decomposition(decompose(v, T)) for k, v in chars.items()}


# -- criterion 4 ---------------------------------------------------------------

def check_spans(ws: Workspace):
    a, b, s = ws.spans
    return [21, 14, 35], [a.dim, b.dim, s.dim]


def check_involution(ws: Workspace):
    from .surface.relations import verify_involution
    r = verify_involution(ws.data.g_xy, ws.span)
    return ({"commutes": True, "span_stable": True}, {"commutes": all(r.commutes), "span_stable": r.span_stable})


def check_projectors(ws: Workspace):
    """chi6 image (rank 14) plus the G-module of the chi7 seed equals the orbit span."""
    from .grouprep.induced import isotypic_projector, isotypic_rank
    from .surface.context import XY
    from .surface.relations import group_module_span, span_from_rows, sum_of_spans
    ctx, p = ws.ctx, ws.config.prime
    P6 = isotypic_projector(ctx.G, ctx.classes, ctx.table.row(6), 2, XY)
    r6 = isotypic_rank(ctx.G, ctx.classes, ctx.table.row(6), 2, XY)
    im6 = span_from_rows(P6.image_basis(r6, p), ws.data.xy_frame, 2)
    mod7 = group_module_span(ctx.G, ws.data.seeds[0], XY, p)
    total = sum_of_spans(im6, mod7)
    return ({"chi6_rank": 14, "chi7_module": 21, "dim": 35, "equal_to_orbit_span": True},
            {"chi6_rank": im6.dim, "chi7_module": mod7.dim, "dim": total.dim,
             "equal_to_orbit_span": total == ws.span})


# -- criterion 5 ---------------------------------------------------------------

def check_h_form(ws: Workspace):
    from .grouprep.induced import invariant_subspace
    from .surface.relations import span_from_rows
    rows = invariant_subspace(ws.ctx.G21_xy, 1)
    sp = span_from_rows(rows, ws.data.xy_frame, 1)
    return {"dim": 1, "contains_H": True}, {"dim": sp.dim, "contains_H": sp.contains(ws.data.h_form)}


# -- criterion 6 ---------------------------------------------------------------

def check_line_orbit(ws: Workspace):
    o = ws.line_orbit
    return {"lines": 126, "g_orbits": 2}, {"lines": len(o), "g_orbits": o.n_g_orbits}


def check_lines_on_h(ws: Workspace):
    from .surface.lines import lines_on_H
    return 42, len(lines_on_H(ws.line_orbit.lines, ws.data.h_form))


def check_incidence(ws: Workspace):
    from .surface.lines import line_incidence_graph
    g = line_incidence_graph(ws.line_orbit.lines, ws.config.prime)
    return {"connected": True}, {"connected": g.connected, "edges": len(g.edges)}, g.connected


def check_lines_in_ideal(ws: Workspace):
    from .surface.lines import verify_lines_in_ideal
    r = verify_lines_in_ideal(ws.line_orbit.lines, ws.span)
    return {"all_in_ideal": True}, {"all_in_ideal": r.ok, "checked": r.checked}, r.ok


# -- criterion 7 ---------------------------------------------------------------

def check_hilbert_z3(ws: Workspace):
    from .hilbert.hilbert import hilbert_function
    rec = hilbert_function(ws.z3_ideal, range(1, 5), ws.config.prime)
    return {"1": 13, "2": 56, "3": 140, "4": 266}, _str_keys(rec.values())


def check_hilbert_z3_deg5(ws: Workspace):
    from .hilbert.hilbert import hilbert_function
    rec = hilbert_function(ws.z3_ideal, [5], ws.config.prime, time_budget=ws.config.budget)
    return 434, rec.value(5)


# -- criterion 8 ---------------------------------------------------------------

def check_g21_xy(ws: Workspace):
    from .surface.invariants import xy_invariant_counts
    c = xy_invariant_counts(ws.span, (1, 2, 3), ws.ctx, ws.config.prime)
    return {"1": 1, "2": 4, "3": 8}, _str_keys(c.quotient)


def check_g21_quadrics(ws: Workspace):
    from .surface.invariants import xyz_quadric_counts
    c = xyz_quadric_counts(ws.span, ws.ctx, ws.config.prime)
    return {"0": 4, "1": 3, "2": 3, "total": 10}, {str(k): c.quotient[k] for k in (0, 1, 2, "total")}


def check_cubics(ws: Workspace):
    from .surface.invariants import cubic_invariant_dimension
    return {"y": 1, "z": 1}, {p: cubic_invariant_dimension(p, ws.ctx) for p in "yz"}


# -- criterion 9 ---------------------------------------------------------------

def check_z1(ws: Workspace):
    from .hilbert.hilbert import hilbert_function, stabilized_window
    from .hilbert.macaulay import GradedIdeal
    d = ws.data
    I = GradedIdeal(d.z1_frame, d.z1_equations, "Z1")  # validates weighted homogeneity
    rec = hilbert_function(I, range(1, 15), ws.config.prime)
    win = stabilized_window(rec.values(), lambda k: k * k - k + 2)
    ok = len(I.generators) == 11 and win is not None and win[1] - win[0] >= 2
    computed = {"equations": len(I.generators), "degrees": I.degrees(), "window": list(win) if win else None,
                "values": _str_keys(rec.values())}
    return {"equations": 11, "formula": "d^2 - d + 2 on a stabilized window"}, computed, ok


# -- criterion 10 --------------------------------------------------------------

def check_lefschetz(ws: Workspace):
    from .numeric.lefschetz import lefschetz_dimensions
    o = lefschetz_dimensions(63, 21, 0)
    k2 = lefschetz_dimensions(63, 210, 1)
    return {"structure_sheaf": [14, 14, -7], "2K_w": 77}, {"structure_sheaf": list(o), "2K_w": k2[1]}


# -- criterion 11 --------------------------------------------------------------

def check_recognition(ws: Workspace):
    from .algebra.gaussian import GaussianRational
    from .errors import InsufficientPrecision, NoCandidate
    from .numeric.ball import BallComplex
    from .numeric.recognize import recognize_gaussian_rational
    H = 10**12
    n = ws.config.recognitions
    rnd = random.Random(ws.config.seed)

    def comp():
        while True:
            a, b = rnd.randint(-10**6, 10**6), rnd.randint(-10**6, 10**6)
            if a * a + b * b <= H and (a or b):
                return GaussianRational(a, b)

    ok = flagged = wrong = 0
    for _ in range(n):
        v = comp() / comp()
        try:
            ok += recognize_gaussian_rational(BallComplex.exact(v, ws.config.bits), H) == v
        except (InsufficientPrecision, NoCandidate):
            flagged += 1
            continue
    wrong = n - ok - flagged
    passed = ok >= 0.99 * n and wrong == 0
    return ({"recovered_fraction": ">= 0.99", "misrecognized": 0},
            {"recovered": ok, "flagged": flagged, "misrecognized": wrong, "trials": n}, passed)


# -- criterion 12 --------------------------------------------------------------

def check_newton(ws: Workspace):
    from .numeric.sampling import perturbation_trial
    rng = ws.rng("newton")
    trials = [perturbation_trial(ws.system, ws.line_orbit.lines, rng, 1e-3, ws.config.bits, 1e-60)
              for _ in range(ws.config.trials)]
    good = sum(t.converged for t in trials)
    n = len(trials)
    return ({"converged_fraction": ">= 0.95", "residual": "< 1e-60"},
            {"converged": good, "trials": n}, good >= 0.95 * n)


def check_kernel(ws: Workspace):
    from .algebra.poly import monomials_of_degree
    from .numeric.kernel import kernel_with_escalation
    from .numeric.sampling import sample_points
    rng = ws.rng("kernel")

    def sampler(bits):
        return sample_points(ws.system, ws.line_orbit.lines, ws.config.points, rng, bits)

    k = kernel_with_escalation(monomials_of_degree(13, 2), sampler, ws.config.bits)
    return ({"dim": 35, "gap": ">= 1e8"},
            {"dim": k.dim, "rank": k.rank, "gap": f"{k.gap:.3e}", "bits": k.bits},
            k.dim == 35 and k.gap >= 1e8)


# -- criterion 13 --------------------------------------------------------------

def check_z_fit(ws: Workspace):
    from .surface.zfile import z_hilbert_fit
    _, fit = z_hilbert_fit(ws.z_ideal, p=ws.config.prime)
    return ({"polynomial": "18k^2 - 9k + 1", "D2": 36, "KD": 18, "chi": 1},
            {"polynomial": str(fit), "D2": int(fit.D2) if fit.D2.denominator == 1 else str(fit.D2),
             "KD": int(fit.KD) if fit.KD.denominator == 1 else str(fit.KD),
             "chi": int(fit.chi) if fit.chi.denominator == 1 else str(fit.chi)})


def check_z_curve(ws: Workspace):
    from .surface.zfile import CURVE_TOL, curve_check
    r = curve_check(ws.z_ideal, ws.rng("curve"), bits=ws.config.bits)
    mv = r.max_value
    return ({"curve_equations_vanish": True, "bound": f"< {CURVE_TOL:.0e}"},
            {"points": len(r.points), "max_value": None if mv is None else f"{float(mv):.3e}"}, r.ok)


# -- criterion 14 (stretch) ----------------------------------------------------

def check_z_relation_scheme(ws: Workspace):
    from .grouprep.induced import rows_to_polys
    from .hilbert.groebner import Budget, groebner_basis
    from .surface.context import Z
    from .surface.invariants import z_relation_rows
    fr = ws.ctx.G.rep.frame.sub(Z)
    polys = rows_to_polys(z_relation_rows(ws.ctx), fr, 2)
    G = groebner_basis(polys, fr, ws.config.prime, Budget(max_seconds=ws.config.budget))
    k = G.krull_dimension()
    return ({"krull_dimension": 6, "projective_dimension": 5},
            {"krull_dimension": k, "projective_dimension": k - 1, "relations": len(polys), "basis": len(G.polys)},
            k == 6)


def check_smooth_z3(ws: Workspace):
    from .hilbert.groebner import Budget
    from .hilbert.smooth import jacobian_minor_check
    rep = jacobian_minor_check(ws.z3_ideal, 10, p=ws.config.prime, projective=True,
                               budget=Budget(max_seconds=ws.config.budget))
    return "SUCCESS", rep.status


def check_lift(ws: Workspace):
    from .numeric.lift import lift_kernel_dimensions
    r = lift_kernel_dimensions(ws, budget=ws.config.budget)
    return ({"sign_branches": 1, "U_deg2_kernel": 1, "U_deg3_kernel": 84}, r)


CHECKS = [
    Check("c01.table.orthogonality", 1, "character table: row and column orthogonality, sum of squared degrees 6048",
          "exact", check_table),
    Check("c02.group.closure", 2, "the x, y, z generators generate U3(3) of order 6048", "exact", check_closure),
    Check("c02.group.classes", 2, "14 conjugacy classes of U3(3)", "exact", check_classes),
    Check("c02.group.block_characters", 2, "x, y, z blocks carry chi2, chi4, chi6", "exact", check_block_characters),
    Check("c03.chars.decompositions", 3, "symmetric squares and products of chi2, chi3, chi4, chi6", "exact",
          check_decompositions),
    Check("c04.relations.spans", 4, "G-translates of the two seed quadrics span 21 + 14 = 35", "modp",
          check_spans),
    Check("c04.relations.involution", 4, "the relations are stable under x -> -x", "exact", check_involution),
    Check("c04.relations.projectors", 4, "isotypic projectors reproduce the 35 relations", "exact",
          check_projectors),
    Check("c05.invariants.h_form", 5, "unique G21-invariant linear form 7y1 + y2 + y3 - (2+3i)y4 - ...", "exact",
          check_h_form),
    Check("c06.lines.orbit", 6, "126 lines on Z3 in two G-orbits", "exact", check_line_orbit),
    Check("c06.lines.on_h", 6, "42 lines lie on H", "exact", check_lines_on_h),
    Check("c06.lines.incidence", 6, "the line configuration is connected", "exact", check_incidence),
    Check("c06.lines.in_ideal", 6, "every line satisfies all 35 relations", "exact", check_lines_in_ideal),
    Check("c07.hilbert.z3", 7, "Hilbert function of Z3 ideal: 13, 56, 140, 266", "modp", check_hilbert_z3),
    Check("c07.hilbert.z3_deg5", 7, "Hilbert function of Z3 ideal in degree 5: 434", "modp",
          check_hilbert_z3_deg5, heavy=True),
    Check("c08.invariants.g21_xy", 8, "G21 invariants in 13 variables: 1, 4, 8", "modp", check_g21_xy),
    Check("c08.invariants.g21_quadrics", 8, "G21-invariant quadrics in 27 variables: 10 = 4 + 3 + 3", "modp",
          check_g21_quadrics),
    Check("c08.invariants.cubics", 8, "unique invariant cubic on y and on z", "exact", check_cubics),
    Check("c09.hilbert.z1", 9, "weighted Z1 ideal: Hilbert function d^2 - d + 2 for large d", "modp",
          check_z1),
    Check("c10.lefschetz", 10, "holomorphic Lefschetz: (14, 14, -7) and 77", "exact", check_lefschetz),
    Check("c11.recognize.roundtrip", 11, "Gaussian rational recognition from balls", "ball", check_recognition),
    Check("c12.sample.newton", 12, "Gauss-Newton from perturbed line points", "ball", check_newton),
    Check("c12.sample.kernel", 12, "numeric degree-2 relations at sampled points: 35", "ball", check_kernel),
    Check("c13.z.hilbert_fit", 13, "Hilbert polynomial 18k^2 - 9k + 1: D^2 = 36, K.D = 18, chi = 1", "modp",
          check_z_fit, needs_z=True),
    Check("c13.z.curve", 13, "embedded curve equations vanish on Z with U0 = 0", "ball", check_z_curve,
          needs_z=True),
    Check("c14.groebner.z_relations", 14, "chi1 + chi10 relations on z cut a dimension-5 scheme", "modp",
          check_z_relation_scheme, heavy=True),
    Check("c14.smooth.z3", 14, "Jacobian 10x10 minors: Z3 is smooth", "modp", check_smooth_z3, heavy=True),
    Check("c14.lift.u_kernels", 14, "z-lift for one sign; U-frame kernels 1 (degree 2) and 84 (degree 3)",
          "ball", check_lift, heavy=True),
]

STRETCH = {"c14.groebner.z_relations", "c14.smooth.z3", "c14.lift.u_kernels"}


def run_check(check: Check, ws: Workspace) -> VerificationReport:
    cfg = ws.config
    t0 = time.monotonic()

    def report(expected, computed, status, detail=""):
        return VerificationReport(check.check_id, check.anchor, expected, computed, status,
                                  round(time.monotonic() - t0, 3), cfg.seed, cfg.precision(check.precision), detail)

    if check.needs_z and not cfg.with_z:
        return report(None, None, SKIPPED, "no Z equation file given (--with-z)")
    if check.heavy and cfg.budget <= 0:
        return report(None, None, SKIPPED, "heavy check: set --budget to run it")
    try:
        out = check.run(ws)
    except (ResourceLimit, GapTooSmall) as exc:
        status = INCONCLUSIVE if check.check_id in STRETCH else FAIL
        return report(None, None, status, f"{type(exc).__name__}: {exc}")
    except (ConfigError, DatasetCorrupt):
        raise
    except BallqError as exc:
        status = INCONCLUSIVE if check.check_id in STRETCH else FAIL
        return report(None, None, status, f"{type(exc).__name__}: {exc}")
    expected, computed = out[0], out[1]
    ok = out[2] if len(out) > 2 else expected == computed
    if check.check_id in STRETCH and not ok:
        return report(expected, computed, INCONCLUSIVE, "stretch check did not confirm the claim")
    return report(expected, computed, PASS if ok else FAIL)


def select(only=None, criteria=None) -> list:
    out = CHECKS
    if criteria:
        out = [c for c in out if c.criterion in set(criteria)]
    if only:
        out = [c for c in out if any(c.check_id.startswith(o) for o in only)]
    return out


def verify_all(config: RunConfig, checks=None, progress: Callable | None = None) -> list:
    """Run the checks in dependency order (the order of CHECKS) and return their reports."""
    from .surface.dataset import verify_manifest
    config.validate()
    verify_manifest()
    ws = Workspace(config)
    out = []
    for chk in checks or CHECKS:
        rep = run_check(chk, ws)
        out.append(rep)
        if progress:
            progress(rep)
    return sorted(out, key=lambda r: r.check_id)


def exit_code(reports) -> int:
    if any(r.status == FAIL for r in reports):
        resource = [r for r in reports if r.status == FAIL and r.detail.startswith("ResourceLimit")]
        return 3 if resource and len(resource) == sum(r.status == FAIL for r in reports) else 1
    return 0


def reports_json(reports, config: RunConfig, timings: bool = False) -> str:
    doc = {"schema": SCHEMA, "version": __version__,
           "config": {k: v for k, v in asdict(config).items() if k != "cache_dir"},
           "reports": [r.to_json(timings) for r in reports]}
    return json.dumps(doc, indent=1, sort_keys=True, default=str) + "\n"


def summary_line(r: VerificationReport) -> str:
    tag = {PASS: "PASS", FAIL: "FAIL", INCONCLUSIVE: "INCONCLUSIVE", SKIPPED: "SKIP"}[r.status]
    extra = f"  ({r.detail})" if r.detail else ""
    return f"[{tag:>12}] {r.check_id:<30} {r.wall_time:8.2f}s  {r.anchor}{extra}"
