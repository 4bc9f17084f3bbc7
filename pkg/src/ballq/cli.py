"""ballq: command-line front end.

Exit codes: 0 pass, 1 check failure, 2 input or configuration error,
3 resource limit reached.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .errors import BallqError, ConfigError, DatasetCorrupt, ResourceLimit

log = logging.getLogger("ballq")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--prime", type=int, default=101, help="prime for modular ranks (default 101)")
    g.add_argument("--bits", type=int, default=256, help="working precision in bits (default 256)")
    g.add_argument("--threads", type=int, default=1, help="worker threads for BLAS (default 1)")
    g.add_argument("--budget", type=float, default=0.0,
                   help="seconds granted to each heavy/stretch step; 0 skips them")
    g.add_argument("--seed", type=int, default=20170101, help="random seed")
    g.add_argument("--json", action="store_true", help="print full JSON instead of a summary")
    g.add_argument("--with-z", metavar="PATH", help="equation file for Z in P^9 (U0..U9)")
    g.add_argument("--expect", metavar="FILE", help="JSON file of expected values")
    g.add_argument("--cache-dir", default=os.environ.get("BALLQ_CACHE"), help="closure cache directory")
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def _config(args):
    from .pipeline import RunConfig
    return RunConfig(prime=args.prime, bits=args.bits, threads=args.threads, budget=args.budget, seed=args.seed,
                     with_z=args.with_z, cache_dir=args.cache_dir).validate()


def _load_expect(args) -> dict | None:
    if not args.expect:
        return None
    try:
        return json.loads(Path(args.expect).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read --expect file: {exc}") from exc


def _emit(args, obj, lines=()) -> None:
    if args.json:
        sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True, default=str) + "\n")
    else:
        for ln in lines:
            print(ln)


def _run_checks(args, prefixes) -> int:
    from .pipeline import FAIL, exit_code, reports_json, select, summary_line, verify_all
    cfg = _config(args)
    checks = select(only=prefixes)
    expect = _load_expect(args) or {}
    progress = None if args.json else (lambda r: print(summary_line(r), flush=True))
    reports = verify_all(cfg, checks, progress)
    for r in reports:
        if r.check_id in expect and r.status != "skipped":
            r.expected = expect[r.check_id]
            if r.computed != r.expected:
                r.status = FAIL
    if args.json:
        sys.stdout.write(reports_json(reports, cfg, getattr(args, "timings", False)))
    else:
        counts = {}
        for r in reports:
            counts[r.status] = counts.get(r.status, 0) + 1
        print("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    if getattr(args, "out", None):
        Path(args.out).write_text(reports_json(reports, cfg, getattr(args, "timings", False)))
    return exit_code(reports)


# -- subcommands ---------------------------------------------------------------

def cmd_verify_all(args) -> int:
    return _run_checks(args, args.only)


def cmd_chars(args) -> int:
    return _run_checks(args, ["c01", "c03"])


def cmd_group(args) -> int:
    from .surface.context import GroupContext
    ctx = GroupContext(cache_dir=args.cache_dir)
    if args.rep == "g21":
        G = ctx.G21
    elif args.rep in ("xy", "z"):
        from .grouprep.closure import cached_closure
        G = cached_closure(ctx.data.g_xy if args.rep == "xy" else ctx.data.g_z, args.cache_dir)
    else:
        G = ctx.G
    out = {"rep": args.rep, "order": G.order, "hash": G.content_hash()}
    lines = [f"closure of {args.rep}: {G.order} elements", f"content hash {out['hash']}"]
    if args.rep == "full":
        from .grouprep.classes import identify
        c = ctx.classes
        out["classes"] = {lab: size for lab, size in zip(c.labels, c.sizes)}
        out["blocks"] = {p: f"chi{identify(ctx.block_character(p), ctx.table)}" for p in "xyz"}
        lines += [f"{c.n_classes} classes: " + " ".join(f"{lab}:{n}" for lab, n in zip(c.labels, c.sizes)),
                  "blocks: " + ", ".join(f"{k} -> {v}" for k, v in out["blocks"].items())]
        if c.ambiguous:
            lines.append("interchangeable labels: " + "; ".join("/".join(a) for a in c.ambiguous))
    _emit(args, out, lines)
    return EXIT_OK


def cmd_relations(args) -> int:
    return _run_checks(args, ["c04"])


def cmd_lines(args) -> int:
    return _run_checks(args, ["c06"])


def cmd_invariants(args) -> int:
    return _run_checks(args, ["c05", "c08"])


def _degrees(text: str) -> list:
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",")]


def _ideal(args):
    from .hilbert.macaulay import GradedIdeal
    from .surface.dataset import load_dataset
    if args.ideal == "z3":
        from .surface.relations import orbit_span
        d = load_dataset()
        s = orbit_span(d.seeds, d.g_xy, args.prime)
        return GradedIdeal(s.frame, s.polynomials(), "Z3")
    if args.ideal == "z1":
        d = load_dataset()
        return GradedIdeal(d.z1_frame, d.z1_equations, "Z1")
    path = args.path or args.with_z
    if not path:
        raise ConfigError("--ideal z-file needs a path (positional or --with-z)")
    from .surface.zfile import load_z_file
    return load_z_file(path)


def cmd_hilbert(args) -> int:
    from .hilbert.hilbert import fit_hilbert_polynomial, hilbert_function
    _config(args)
    ideal = _ideal(args)
    rec = hilbert_function(ideal, _degrees(args.degrees), args.prime,
                           time_budget=args.budget if args.budget > 0 else None)
    out = rec.to_json()
    lines = [f"h({d}) = {v}" for d, v in rec.values().items()] + [f"note: {rec.caveat}"]
    if args.fit_from is not None:
        fit = fit_hilbert_polynomial(rec, args.fit_from)
        out["fit"] = {"polynomial": str(fit), "D2": str(fit.D2), "KD": str(fit.KD), "chi": str(fit.chi)}
        lines.append(f"fit from degree {args.fit_from}: {fit}  (D^2 = {fit.D2}, K.D = {fit.KD}, chi = {fit.chi})")
    expect = _load_expect(args)
    code = EXIT_OK
    if expect is not None:
        bad = {d: (v, rec.value(int(d))) for d, v in expect.items()
               if int(d) in rec.entries and rec.value(int(d)) != v}
        missing = [d for d in expect if int(d) not in rec.entries]
        out["mismatches"] = {str(k): v for k, v in bad.items()}
        if bad or missing:
            code = EXIT_FAIL
            lines.append(f"mismatch: {bad or ''} missing degrees: {missing or ''}")
    _emit(args, out, lines)
    return code


def cmd_lefschetz(args) -> int:
    from .numeric.lefschetz import lefschetz_dimensions
    dims = lefschetz_dimensions(args.fixed_points, args.N, args.twist)
    _emit(args, {"characters": ["1", "w", "w^2"], "dimensions": list(dims)},
          [f"(1, w, w^2) components: {dims}"])
    return EXIT_OK


def _points_from_json(path, bits):
    from .numeric.ball import context
    from .numeric.newton import VarietyPoint
    ctx = context(bits)
    doc = json.loads(Path(path).read_text())
    out = []
    for p in doc["points"]:
        coords = [ctx.mpc(ctx.mpf(re), ctx.mpf(im)) for re, im in p["coords"]]
        res = ctx.mpf(p["residual"]) if p.get("residual") not in (None, "None") else ctx.mpf(0)
        out.append(VarietyPoint(coords, res, p.get("provenance", "file"), bits, p.get("chart", 0)))
    return out


def cmd_sample(args) -> int:
    import numpy as np
    from .numeric.polysys import PolynomialSystem
    from .numeric.sampling import sample_points
    from .surface.dataset import load_dataset
    from .surface.lines import ProjectiveLine, build_line_orbit
    from .surface.relations import orbit_span
    cfg = _config(args)
    d = load_dataset()
    if args.surface != "z3":
        raise ConfigError("only --surface z3 has exact starting lines")
    span = orbit_span(d.seeds, d.g_xy, cfg.prime)
    orbit = build_line_orbit(ProjectiveLine.through(d.line.A, d.line.B), d.g_xy, span)
    rng = np.random.default_rng(cfg.seed)
    pts = sample_points(PolynomialSystem(span.polynomials()), orbit.lines, args.slices * args.starts, rng, cfg.bits)
    doc = {"surface": args.surface, "frame": list(span.frame.names), "bits": cfg.bits,
           "points": [p.to_json() | {"chart": p.chart} for p in pts]}
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
    worst = max(p.residual for p in pts)
    _emit(args, doc if not args.out else {"written": args.out, "count": len(pts)},
          [f"{len(pts)} points, max certified residual {float(worst):.3e}"] +
          ([f"written to {args.out}"] if args.out else []))
    return EXIT_OK


def cmd_guess(args) -> int:
    from .algebra.poly import monomials_of_degree
    from .numeric.kernel import numeric_kernel
    from .numeric.recognize import recognize_gaussian_rational
    cfg = _config(args)
    if not args.points:
        raise ConfigError("guess needs --points FILE (from `ballq sample` or `ballq lift`)")
    pts = _points_from_json(args.points, cfg.bits)
    n = len(pts[0].coords)
    if args.frame == "u" and n != 10:
        raise ConfigError("--frame u expects 10 coordinates per point")
    mons = monomials_of_degree(n, args.degree)
    k = numeric_kernel(mons, pts, cfg.bits, want_basis=args.recognize)
    out = {"degree": args.degree, "points": len(pts), "monomials": len(mons), "kernel_dim": k.dim,
           "rank": k.rank, "gap": f"{k.gap:.3e}", "error_bound": f"{k.error_bound:.3e}"}
    lines = [f"degree {args.degree}: kernel dimension {k.dim} (rank {k.rank}, gap {k.gap:.3e})"]
    if args.recognize and k.dim == 1:
        from .numeric.ball import BallComplex, context
        ctx = context(cfg.bits)
        c = k.candidates[0]
        lead = max(range(len(c.coefficients)), key=lambda j: abs(c.coefficients[j]))
        rad = ctx.mpf(k.error_bound) * 10
        coeffs = []
        for v in c.coefficients:
            q = recognize_gaussian_rational(BallComplex(v / c.coefficients[lead], rad, ctx=ctx), args.height)
            coeffs.append(str(q))
        out["relation"] = coeffs
        lines.append("recognized coefficients: " + ", ".join(coeffs))
    _emit(args, out, lines)
    return EXIT_OK


def _parse_complex(text: str, ctx):
    t = text.replace(" ", "").replace("i", "j")
    if "," in t:
        re, im = t.split(",")
        return ctx.mpc(ctx.mpf(re), ctx.mpf(im))
    return ctx.mpc(complex(t)) if "j" in t else ctx.mpc(ctx.mpf(t))


def cmd_recognize(args) -> int:
    from .numeric.ball import BallComplex, context
    from .numeric.recognize import recognize_gaussian_rational
    ctx = context(args.bits)
    out, lines = [], []
    for v in args.values:
        x = BallComplex(_parse_complex(v, ctx), ctx.mpf(args.radius), ctx=ctx)
        q = recognize_gaussian_rational(x, int(args.height))
        out.append({"input": v, "value": str(q)})
        lines.append(f"{v} -> {q}")
    _emit(args, out, lines)
    return EXIT_OK


def cmd_smooth(args) -> int:
    from .hilbert.groebner import Budget
    from .hilbert.smooth import jacobian_minor_check
    _config(args)
    ideal = _ideal(args)
    budget = Budget(max_pairs=int(args.budget) if args.budget > 0 else 20000)
    rep = jacobian_minor_check(ideal, args.minor_size, p=args.prime, budget=budget,
                               projective=True, max_minors=args.max_minors)
    _emit(args, {"status": rep.status, "rows": list(rep.rows), "minors": rep.n_minors,
                 "krull_dimension": rep.krull_dimension},
          [f"{rep.status}: {rep.n_minors} minors of size {args.minor_size}, "
           f"Krull dimension of ideal + minors {rep.krull_dimension}"])
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_surface_invariants(args) -> int:
    from .hilbert.hilbert import fit_hilbert_polynomial, hilbert_function
    _config(args)
    ideal = _ideal(args)
    degs = _degrees(args.degrees)
    rec = hilbert_function(ideal, degs, args.prime)
    fit = fit_hilbert_polynomial(rec, args.fit_from)
    out = {"hilbert": {str(k): v for k, v in rec.values().items()}, "polynomial": str(fit),
           "D2": str(fit.D2), "KD": str(fit.KD), "chi": str(fit.chi), "caveat": rec.caveat}
    _emit(args, out, [f"Hilbert polynomial {fit}", f"D^2 = {fit.D2}, K.D = {fit.KD}, chi(O) = {fit.chi}"])
    return EXIT_OK


def cmd_lift(args) -> int:
    from .numeric.lift import lift_report
    cfg = _config(args)
    rep = lift_report(cfg, args.sign, args.count, args.out)
    _emit(args, rep, [f"{k}: {v}" for k, v in rep.items()])
    return EXIT_OK if rep.get("status") == "ok" else EXIT_FAIL


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="ballq", description=__doc__.splitlines()[0],
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-all", parents=[common], help="run every check")
    p.add_argument("--only", nargs="*", help="check id prefixes, e.g. c04 c06.lines")
    p.add_argument("--out", help="also write the JSON report here")
    p.add_argument("--timings", action="store_true", help="include wall times in JSON")
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("chars", parents=[common], help="character table and decompositions")
    p.add_argument("action", nargs="?", default="verify", choices=["verify"])
    p.set_defaults(func=cmd_chars)

    p = sub.add_parser("group", parents=[common], help="matrix group closures")
    p.add_argument("action", nargs="?", default="closure", choices=["closure"])
    p.add_argument("--rep", choices=["full", "xy", "z", "g21"], default="full")
    p.set_defaults(func=cmd_group)

    for name, fn, text in [("relations", cmd_relations, "relation span and involution"),
                           ("lines", cmd_lines, "the 126 lines"),
                           ("invariants", cmd_invariants, "G21 invariants")]:
        sub.add_parser(name, parents=[common], help=text).set_defaults(func=fn)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function by Macaulay ranks")
    p.add_argument("--ideal", choices=["z3", "z1", "z-file"], default="z3")
    p.add_argument("path", nargs="?", help="equation file for --ideal z-file")
    p.add_argument("--degrees", default="1..4", help="a..b or a,b,c")
    p.add_argument("--fit-from", type=int, help="fit a quadratic from this degree on")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("lefschetz", parents=[common], help="holomorphic Lefschetz dimensions")
    p.add_argument("--fixed-points", type=int, default=63)
    p.add_argument("--N", type=int, default=21)
    p.add_argument("--twist", type=int, choices=[0, 1], default=0)
    p.set_defaults(func=cmd_lefschetz)

    p = sub.add_parser("sample", parents=[common], help="sample points on a surface")
    p.add_argument("--surface", default="z3", choices=["z3"])
    p.add_argument("--slices", type=int, default=1)
    p.add_argument("--starts", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("lift", parents=[common], help="lift Z3 points to P^26 and build U coordinates")
    p.add_argument("--sign", choices=["auto", "+", "-"], default="auto")
    p.add_argument("--count", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("guess", parents=[common], help="numeric relation search on sampled points")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--frame", choices=["xy", "u"], default="xy")
    p.add_argument("--points", help="JSON points file")
    p.add_argument("--recognize", action="store_true", help="recognize a one-dimensional kernel exactly")
    p.add_argument("--height", type=float, default=1e12)
    p.set_defaults(func=cmd_guess)

    p = sub.add_parser("recognize", parents=[common], help="Gaussian rational recognition")
    p.add_argument("values", nargs="+", help="'re,im' or a Python complex literal")
    p.add_argument("--height", type=float, default=1e12)
    p.add_argument("--radius", type=float, default=0.0)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("smooth", parents=[common], help="Jacobian minor smoothness test")
    p.add_argument("--ideal", choices=["z3", "z1", "z-file"], default="z3")
    p.add_argument("path", nargs="?")
    p.add_argument("--minor-size", type=int, default=10)
    p.add_argument("--max-minors", type=int)
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("surface-invariants", parents=[common], help="D^2, K.D, chi from a Hilbert fit")
    p.add_argument("--ideal", choices=["z3", "z1", "z-file"], default="z-file")
    p.add_argument("path", nargs="?")
    p.add_argument("--degrees", default="1..6")
    p.add_argument("--fit-from", type=int, default=3)
    p.set_defaults(func=cmd_surface_invariants)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(args.threads))
    try:
        return args.func(args)
    except (ConfigError, DatasetCorrupt) as exc:
        print(f"ballq: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimit as exc:
        print(f"ballq: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BallqError as exc:
        print(f"ballq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
