"""Acceptance criteria 1-14.

Each test runs the pipeline check(s) for one criterion, compares against an
independent oracle where one exists, and records a one-line verdict that is
printed in the "acceptance criteria" section of the pytest summary.

Environment:
  BALLQ_BUDGET   seconds for heavy checks (degree-5 Hilbert value, criterion 14); 0 skips them
  BALLQ_Z_FILE   Z equation file for criterion 13; skipped when unset
"""

import time
from types import SimpleNamespace

import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components

from ballq import pipeline
from ballq.grouprep.chartable import u33_table
from ballq.pipeline import FAIL, INCONCLUSIVE, PASS, SKIPPED, run_check

from conftest import ACCEPTANCE, budget


def record(k, label, status, detail=""):
    ACCEPTANCE.setdefault(k, []).append((label, status.upper(), detail))
    print(f"criterion {k}: {label}: {status.upper()} {detail}")


def run(ws, prefix):
    return [run_check(c, ws) for c in pipeline.select(only=[prefix])]


def verdict(k, label, reports, extra_ok=True, detail="", allow=(PASS,)):
    ok = extra_ok and all(r.status in allow for r in reports)
    bad = [f"{r.check_id}={r.status}" for r in reports if r.status not in allow]
    record(k, label, PASS if ok else FAIL, detail or ", ".join(bad))
    assert ok, [(r.check_id, r.status, r.computed, r.detail) for r in reports]


def cx(M):
    return np.array([[complex(v) for v in row] for row in M])


def gi(E, n=27):
    return (E[0] + 1j * E[1])[:n, :n]


def quadric_matrix(f, n=13):
    Q = np.zeros((n, n), complex)
    for e, c in f.terms.items():
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        Q[idx[0], idx[1]] += complex(c) / 2
        Q[idx[1], idx[0]] += complex(c) / 2
    return Q


def numeric_rank(A, tol=1e-8):
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


# -- 1 ------------------------------------------------------------------------

def test_criterion_01_table():
    t0 = time.monotonic()
    T = u33_table()
    ws = SimpleNamespace(ctx=SimpleNamespace(table=T), config=pipeline.RunConfig())
    rep = run_check(pipeline.select(only=["c01"])[0], ws)
    elapsed = time.monotonic() - t0
    # oracle: float orthogonality straight from the table values
    V = np.array([[complex(v) for v in row] for row in T.values])
    sizes = np.array(T.class_sizes(), float)
    gram = (V * sizes) @ V.conj().T / 6048
    float_ok = np.allclose(gram, np.eye(14)) and sum(d * d for d in T.degrees) == 6048
    verdict(1, "character table", [rep], float_ok and elapsed < 1.0, f"{elapsed:.3f}s")


# -- 2 ------------------------------------------------------------------------

def test_criterion_02_group(ws, ctx):
    reps = run(ws, "c02")
    # oracle: class sizes are |G| / centralizer orders read off the table columns
    V = np.array([[complex(v) for v in row] for row in u33_table().values])
    cent = np.sum(np.abs(V) ** 2, axis=0)
    ok = np.allclose(6048 / cent, ctx.classes.sizes) and sum(ctx.classes.sizes) == ctx.G.order
    verdict(2, "closure, classes, blocks", reps, ok)


# -- 3 ------------------------------------------------------------------------

def test_criterion_03_decompositions(ws, ctx):
    reps = run(ws, "c03")
    # oracle: Sym2 of the z block from traces of actual matrices, float inner products
    T = u33_table()
    V = np.array([[complex(v) for v in row] for row in T.values])
    sym = []
    for r in ctx.classes.representatives:
        M = gi(ctx.G.elements[r])[13:, 13:]
        sym.append((np.trace(M) ** 2 + np.trace(M @ M)) / 2)
    mult = (V.conj() * np.array(ctx.classes.sizes)) @ np.array(sym) / 6048
    want = np.zeros(14)
    want[[0, 5, 6, 7, 8, 9]] = 1
    verdict(3, "decompositions", reps, np.allclose(mult, want))


# -- 4 ------------------------------------------------------------------------

def test_criterion_04_spans(ws, ctx, data):
    reps = run(ws, "c04")
    # oracle: float rank of the G-translates M Q M^T of each seed quadric
    iu = np.triu_indices(13)
    mats = [gi(E, 13) for E in ctx.G.elements]
    ranks = []
    for seed in data.seeds:
        Q = quadric_matrix(seed)
        ranks.append(numeric_rank(np.array([(M @ Q @ M.T)[iu] for M in mats])))
    Qs = [quadric_matrix(s) for s in data.seeds]
    ranks.append(numeric_rank(np.array([(M @ Q @ M.T)[iu] for Q in Qs for M in mats])))
    verdict(4, "spans 21/14/35", reps, ranks == [21, 14, 35], f"float ranks {ranks}")


# -- 5 ------------------------------------------------------------------------

def test_criterion_05_h_form(ws, data):
    reps = run(ws, "c05")
    from ballq.algebra.poly import monomials_of_degree
    h = np.array([complex(c) for c in data.h_form.coefficient_vector(monomials_of_degree(data.xy_frame, 1))])
    # oracle: the printed form is fixed by each G21 generator, x_j -> sum_i M[i][j] x_i
    fixed = all(np.allclose(cx(M) @ h, h) for M in data.g21_xy.generators)
    verdict(5, "H-form", reps, fixed)


# -- 6 ------------------------------------------------------------------------

def test_criterion_06_lines(ws):
    t0 = time.monotonic()
    reps = run(ws, "c06")
    elapsed = time.monotonic() - t0
    # oracle: float incidence (two lines meet iff their four spanning vectors have rank 3)
    lines = ws.line_orbit.lines
    P = [np.array([[complex(c) for c in L.A], [complex(c) for c in L.B]]) for L in lines]
    P = [p / np.linalg.norm(p, axis=1, keepdims=True) for p in P]
    n = len(P)
    adj = np.zeros((n, n), bool)
    for i in range(n):
        for j in range(i + 1, n):
            s = np.linalg.svd(np.vstack([P[i], P[j]]), compute_uv=False)
            adj[i, j] = adj[j, i] = s[3] < 1e-9
    ncomp, _ = connected_components(adj, directed=False)
    ok = elapsed < 300 and n == 126 and ncomp == 1
    verdict(6, "126 lines", reps, ok, f"{elapsed:.1f}s, float components {ncomp}")


# -- 7 ------------------------------------------------------------------------

def test_criterion_07_hilbert_z3(ws):
    t0 = time.monotonic()
    rep = run_check(pipeline.select(only=["c07.hilbert.z3"])[0], ws)
    elapsed = time.monotonic() - t0
    # oracle: 21k(k-1) + 14 for k >= 2
    formula = rep.computed == {str(k): 21 * k * (k - 1) + 14 for k in (2, 3, 4)} | {"1": 13}
    verdict(7, "Z3 Hilbert 13/56/140/266", [rep], formula and elapsed < 120, f"{elapsed:.1f}s")


@pytest.mark.skipif(budget() <= 0, reason="set BALLQ_BUDGET to run the degree-5 value")
def test_criterion_07_hilbert_z3_degree5(ws):
    rep = run_check(pipeline.select(only=["c07.hilbert.z3_deg5"])[0], ws)
    verdict(7, "Z3 Hilbert degree 5 = 434", [rep], 21 * 5 * 4 + 14 == 434, rep.detail)


# -- 8 ------------------------------------------------------------------------

def test_criterion_08_invariants(ws, ctx):
    reps = run(ws, "c08")
    # oracle: 5 polynomial quadric invariants less the G21-fixed part of the chi6 + chi7 relations
    mult = [0] * 14
    mult[5] = mult[6] = 1
    verdict(8, "G21 invariants 1/4/8, 4/3/3", reps, 5 - ctx.fixed_dim(mult) == 4)


# -- 9 ------------------------------------------------------------------------

def test_criterion_09_z1(ws):
    (rep,) = run(ws, "c09")
    lo, hi = rep.computed["window"]
    vals = rep.computed["values"]
    formula = all(vals[str(d)] == d * d - d + 2 for d in range(lo, hi + 1))
    verdict(9, "Z1 d^2-d+2", [rep], formula and hi - lo >= 2, f"window {lo}..{hi}")


# -- 10 -----------------------------------------------------------------------

def test_criterion_10_lefschetz(ws):
    (rep,) = run(ws, "c10")
    verdict(10, "Lefschetz (14,14,-7), 77", [rep])


# -- 11 -----------------------------------------------------------------------

def test_criterion_11_recognition(ws):
    (rep,) = run(ws, "c11")
    c = rep.computed
    ok = c["trials"] == 1000 and c["recovered"] >= 990 and c["misrecognized"] == 0
    verdict(11, "recognition >= 99%", [rep], ok, f"{c['recovered']}/{c['trials']}, flagged {c['flagged']}")


# -- 12 -----------------------------------------------------------------------

def test_criterion_12_newton_kernel(ws):
    reps = run(ws, "c12")
    newton, kernel = sorted(reps, key=lambda r: r.check_id)[::-1]
    ok = (newton.computed["trials"] == 100 and newton.computed["converged"] >= 95
          and kernel.computed["dim"] == 35 and float(kernel.computed["gap"]) >= 1e8
          and ws.config.points >= 150)
    detail = f"converged {newton.computed['converged']}/100, kernel {kernel.computed['dim']} gap {kernel.computed['gap']}"
    verdict(12, "Gauss-Newton, kernel 35", reps, ok, detail)


# -- 13 -----------------------------------------------------------------------

def test_criterion_13_z_file(ws):
    if not ws.config.with_z:
        record(13, "Z file fit and curve", SKIPPED, "BALLQ_Z_FILE not set")
        pytest.skip("no Z equation file (BALLQ_Z_FILE)")
    reps = run(ws, "c13")
    verdict(13, "Z file fit and curve", reps)


# -- 14 (stretch) -------------------------------------------------------------

@pytest.mark.parametrize("prefix", ["c14.groebner", "c14.smooth", "c14.lift"])
def test_criterion_14_stretch(ws, prefix):
    if budget() <= 0:
        record(14, prefix, SKIPPED, "BALLQ_BUDGET not set")
        pytest.skip("stretch checks need BALLQ_BUDGET")
    (rep,) = run(ws, prefix)
    detail = rep.detail or str(rep.computed)
    record(14, prefix, rep.status, detail)
    assert rep.status in (PASS, INCONCLUSIVE), (rep.status, rep.computed, rep.detail)
