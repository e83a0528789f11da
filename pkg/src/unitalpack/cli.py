"""Command-line front door.

Subcommands:
  build      pencil -> quality coloring -> pattern graphs, with certificate
  sparsify   Turanize each color, certify clique-freeness and subset cliques
  verify     re-verify previously exported pattern graphs
  semisat    affine semisaturation coloring plus extension certificate
  bounds     lower-bound table as CSV
  export     raw incidence structure and pencil summary

Every run is reproducible from (version, config, seed): all randomness
derives from the single --seed through named substreams, certificates are
canonical JSON, and wall-clock timings go to a separate timings.json so
certificate bytes never vary between reruns.  Exit status is 0 exactly
when all gating checks pass.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bounds as bounds_mod
from . import rng
from ._version import __version__
from .certificates import Certificate, canonical_json
from .coloring import ColoringSearchError, check_quality, find_good_coloring, sample_coloring
from .fields import is_prime
from .geometry import plane_for
from .pattern import build_pattern, export_graph, import_graph, verify_pattern
from .pencil import build_pencil, verify_tangency_partition
from .semisat import build_semisat, semisat_upper_bound
from .sparsify import (
    SparsifyParams,
    alpha_formula_value,
    check_alpha_k,
    check_kplus1_free,
    feasibility_report,
    sparse_graph_json,
    sparsify,
)

DEFAULT_OUT = "unitalpack-out"


class Phases:
    """Wall-clock per phase, written to the timings sidecar only."""

    def __init__(self):
        self.entries = []
        self._t = time.perf_counter()

    def mark(self, name):
        now = time.perf_counter()
        self.entries.append({"phase": name, "seconds": round(now - self._t, 6)})
        self._t = now

    def to_json(self):
        return canonical_json({"timings": self.entries})


def _outdir(args) -> Path:
    out = args.out or os.environ.get("UNITALPACK_OUTDIR") or DEFAULT_OUT
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write(path: Path, text: str):
    path.write_text(text)
    print(f"wrote {path}")


def _finish(outdir: Path, cert: Certificate, phases: Phases) -> int:
    _write(outdir / "certificate.json", cert.to_json())
    _write(outdir / "timings.json", phases.to_json())
    print(cert.summary())
    return 0 if cert.passed else 1


def _prime_arg(value: str) -> int:
    q = int(value)
    if not is_prime(q):
        raise argparse.ArgumentTypeError("q must be prime")
    return q


def _parse_lambda_values(text):
    if text is None:
        return None
    return tuple(int(t) for t in text.split(",") if t.strip() != "")


def _build_base(args, phases: Phases, cert: Certificate):
    """Shared pencil -> coloring -> graphs pipeline for build/sparsify."""
    pencil = build_pencil(args.q, args.lambda_size,
                          lambda_values=_parse_lambda_values(getattr(args, "lambda_values", None)))
    phases.mark("pencil")
    tangency = verify_tangency_partition(pencil)
    cert.extend(tangency, prefix="pencil/")
    phases.mark("tangency")

    relaxed = args.relaxed
    if relaxed:
        coloring = sample_coloring(pencil, args.c, args.seed)
    else:
        try:
            coloring = find_good_coloring(pencil, args.c, args.seed, max_retries=args.retries)
        except ColoringSearchError as exc:
            cert.add(
                "coloring/quality-windows",
                passed=False,
                retries=args.retries,
                best_violations=exc.best_quality.violation_count,
            )
            phases.mark("coloring")
            return pencil, None, None
    quality = check_quality(coloring, pencil)
    cert.add(
        "coloring/quality-windows",
        passed=quality.ok,
        gating=not relaxed,
        violations=quality.violation_count,
        class_sizes=quality.class_sizes,
        near_boundary=[list(v) for v in quality.near_boundary],
    )
    phases.mark("coloring")

    graphs = build_pattern(pencil, coloring, relaxed=relaxed)
    phases.mark("pattern")
    return pencil, coloring, graphs


def cmd_build(args) -> int:
    outdir = _outdir(args)
    phases = Phases()
    config = {
        "subcommand": "build",
        "tool_version": __version__,
        "q": args.q,
        "lambda_size": args.lambda_size,
        "lambda_values": args.lambda_values,
        "c": args.c,
        "seed": args.seed,
        "retries": args.retries,
        "relaxed": args.relaxed,
        "workers": args.workers,
    }
    cert = Certificate(config=config)
    pencil, coloring, graphs = _build_base(args, phases, cert)
    _write(outdir / "pencil.json", canonical_json(pencil.to_json_dict()))
    if graphs is None:
        print("no quality coloring found; rerun with --relaxed to build anyway",
              file=sys.stderr)
        return _finish(outdir, cert, phases)

    _write(outdir / "coloring.json", canonical_json(coloring.to_json_dict()))
    _write(outdir / "quality.json", canonical_json(check_quality(coloring, pencil).to_json_dict()))
    pcert = verify_pattern(graphs, pencil, windows_gating=not args.relaxed)
    cert.extend(pcert, prefix="pattern/")
    phases.mark("verify")
    for g in graphs:
        export_graph(g, outdir / f"graph-{g.color}.edges", outdir / f"graph-{g.color}.cliques.json")
    phases.mark("export")
    return _finish(outdir, cert, phases)


def cmd_sparsify(args) -> int:
    outdir = _outdir(args)
    phases = Phases()

    alpha_note = ""
    if args.alpha == "formula":
        if args.r is None:
            print("--alpha formula needs --r", file=sys.stderr)
            return 2
        value = alpha_formula_value(args.r, args.k)
        if value >= 1:
            alpha = 0.5
            alpha_note = (
                f"formula value {value:.6g} exceeds 1 at this scale; "
                f"fell back to alpha = 0.5"
            )
            print(f"warning: {alpha_note}", file=sys.stderr)
        else:
            alpha = value
    else:
        alpha = float(args.alpha)

    config = {
        "subcommand": "sparsify",
        "tool_version": __version__,
        "q": args.q,
        "lambda_size": args.lambda_size,
        "lambda_values": args.lambda_values,
        "c": args.c,
        "build_seed": args.build_seed,
        "k": args.k,
        "alpha": alpha,
        "alpha_arg": str(args.alpha),
        "alpha_note": alpha_note,
        "r": args.r,
        "seed": args.seed,
        "seeds": args.seeds,
        "retries": args.retries,
        "subset_samples": args.subset_samples,
        "subset_size": args.subset_size,
        "relaxed": args.relaxed,
        "workers": args.workers,
    }
    cert = Certificate(config=config)

    base_args = argparse.Namespace(
        q=args.q, lambda_size=args.lambda_size, lambda_values=args.lambda_values,
        c=args.c, seed=args.build_seed, retries=args.retries, relaxed=args.relaxed,
    )
    pencil, coloring, graphs = _build_base(base_args, phases, cert)
    if graphs is None:
        print("no quality coloring found; rerun with --relaxed", file=sys.stderr)
        return _finish(outdir, cert, phases)

    def turanize_color(g):
        # independent per (color, attempt) substreams, so colors can run in
        # any order or concurrently without changing a single draw
        per_seed = []
        first_free = None
        attempts = max(args.seeds, args.retries)
        for attempt in range(attempts):
            run_seed = rng.child_seed(args.seed, rng.RUN, g.color, attempt)
            sparse = sparsify(g, SparsifyParams(k=args.k, alpha=alpha, seed=run_seed))
            free = check_kplus1_free(sparse).passed
            if attempt < args.seeds:
                per_seed.append({"attempt": attempt, "kplus1_free": free})
            if free and first_free is None:
                first_free = (attempt, sparse)
            if first_free is not None and attempt + 1 >= args.seeds:
                break
        return g.color, per_seed, first_free

    if args.workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            results = sorted(pool.map(turanize_color, graphs))
    else:
        results = [turanize_color(g) for g in graphs]

    chosen = {}
    for color, per_seed, first_free in results:
        cert.add(
            f"sparsify/color-{color}/per-seed",
            passed=any(rec["kplus1_free"] for rec in per_seed) or first_free is not None,
            records=per_seed,
        )
        cert.add(
            f"sparsify/color-{color}/clique-free-found",
            passed=first_free is not None,
            chosen_attempt=None if first_free is None else first_free[0],
        )
        if first_free is not None:
            chosen[color] = first_free[1]
            _write(outdir / f"sparse-{color}.json", sparse_graph_json(first_free[1]))
    phases.mark("sparsify")

    if args.subset_samples > 0 and 0 in chosen:
        sparse0 = chosen[0]
        subset_size = args.subset_size or (sparse0.n + 3) // 4
        acert = check_alpha_k(
            sparse0, args.k, subset_size,
            mode="sampled", n_samples=args.subset_samples, seed=args.seed,
        )
        cert.extend(acert, prefix="sparsify/color-0/")
    phases.mark("subsets")

    if args.r is not None:
        rep = feasibility_report(args.q, args.k, args.r, args.c, alpha)
        cert.add(
            "feasibility/proof-regime",
            passed=rep.all_satisfied,
            gating=False,
            report=rep.to_dict(),
        )
    phases.mark("feasibility")
    return _finish(outdir, cert, phases)


def cmd_verify(args) -> int:
    outdir = _outdir(args)
    phases = Phases()
    graph_dir = Path(args.graphs)
    sidecars = sorted(graph_dir.glob("graph-*.cliques.json"))
    if not sidecars:
        print(f"no graph exports found in {graph_dir}", file=sys.stderr)
        return 2
    graphs = []
    for sc in sidecars:
        edges = sc.with_name(sc.name.replace(".cliques.json", ".edges"))
        graphs.append(import_graph(edges, sc))
    phases.mark("import")
    relaxed = any(g.relaxed for g in graphs)
    cert = Certificate(config={
        "subcommand": "verify",
        "tool_version": __version__,
        "source": str(graph_dir),
        "colors": len(graphs),
        "relaxed": relaxed,
    })
    cert.extend(verify_pattern(graphs, windows_gating=not relaxed))
    phases.mark("verify")
    return _finish(outdir, cert, phases)


def cmd_semisat(args) -> int:
    outdir = _outdir(args)
    phases = Phases()
    if args.k < 3:
        print("k must be at least 3; smaller targets degenerate", file=sys.stderr)
        return 2
    coloring = build_semisat(args.k, args.r, args.q)
    phases.mark("build")
    config = {
        "subcommand": "semisat",
        "tool_version": __version__,
        "k": args.k,
        "r": args.r,
        "q": coloring.q,
        "n": coloring.n,
        "extensions": args.extensions,
        "seed": args.seed,
    }
    cert = Certificate(config=config)
    cert.extend(coloring.structural_certificate(), prefix="structure/")
    phases.mark("structure")
    ecert, log = coloring.verify_extensions(args.extensions, args.seed)
    cert.extend(ecert, prefix="extensions/")
    phases.mark("extensions")
    _write(outdir / "coloring.txt", coloring.export_text())
    _write(
        outdir / "witnesses.log",
        "".join(json.dumps(entry, sort_keys=True) + "\n" for entry in log),
    )
    ub = semisat_upper_bound(args.k + 1, args.r)
    cert.add(
        "order-below-ceiling",
        passed=(coloring.n < ub.ceiling if args.q is None else True),
        n=coloring.n,
        ceiling=ub.ceiling,
    )
    phases.mark("export")
    return _finish(outdir, cert, phases)


def cmd_bounds(args) -> int:
    outdir = _outdir(args)
    phases = Phases()
    table = bounds_mod.lower_bound_table(args.k, args.rmax)
    phases.mark("table")
    cert = Certificate(config={
        "subcommand": "bounds",
        "tool_version": __version__,
        "k": args.k,
        "rmax": args.rmax,
    })
    cert.add(
        "recursion-dominates-closed-form",
        passed=table.recursion_dominates(),
        rows=[list(row) for row in table.rows],
    )
    _write(outdir / "bounds.csv", table.to_csv())
    phases.mark("export")
    return _finish(outdir, cert, phases)


def cmd_export(args) -> int:
    outdir = _outdir(args)
    phases = Phases()
    plane = plane_for(args.q)
    _write(outdir / "incidence.txt", plane.export_incidence())
    phases.mark("incidence")
    pencil = build_pencil(args.q, args.lambda_size,
                          lambda_values=_parse_lambda_values(args.lambda_values))
    tangency = verify_tangency_partition(pencil)
    _write(outdir / "pencil.json", canonical_json(pencil.to_json_dict(tangency)))
    cert = Certificate(config={
        "subcommand": "export",
        "tool_version": __version__,
        "q": args.q,
        "lambda_size": pencil.lambda_size,
    })
    cert.extend(tangency, prefix="pencil/")
    phases.mark("pencil")
    return _finish(outdir, cert, phases)


def _add_common(sub):
    sub.add_argument("--out", default=None, help="output directory (or $UNITALPACK_OUTDIR)")
    sub.add_argument("--workers", type=int, default=1, help="worker count knob")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitalpack",
        description="Clique-free color patterns from pencils of Hermitian unitals.",
    )
    parser.add_argument("--version", action="version", version=f"unitalpack {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    b = subs.add_parser("build", help="build pattern graphs with certificates")
    b.add_argument("--q", type=_prime_arg, required=True)
    b.add_argument("--lambda-size", dest="lambda_size", type=int, default=None)
    b.add_argument("--lambda-values", dest="lambda_values", default=None,
                   help="explicit Lambda as comma-separated residues, e.g. 0,2")
    b.add_argument("--c", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--retries", type=int, default=1000)
    b.add_argument("--relaxed", action="store_true",
                   help="build from a single sample even if quality windows fail")
    _add_common(b)
    b.set_defaults(func=cmd_build)

    s = subs.add_parser("sparsify", help="Turanize the pattern and certify")
    s.add_argument("--q", type=_prime_arg, required=True)
    s.add_argument("--lambda-size", dest="lambda_size", type=int, default=None)
    s.add_argument("--lambda-values", dest="lambda_values", default=None)
    s.add_argument("--c", type=int, default=1)
    s.add_argument("--build-seed", dest="build_seed", type=int, default=0)
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--alpha", default="0.5",
                   help='retention probability in [0,1], or "formula" for the '
                        'asymptotic r/k expression (falls back to 0.5 above 1)')
    s.add_argument("--r", type=int, default=None, help="color budget for feasibility/alpha")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--seeds", type=int, default=20, help="seeds to report per color")
    s.add_argument("--retries", type=int, default=1000)
    s.add_argument("--subset-samples", dest="subset_samples", type=int, default=0,
                   help="sampled subsets for the induced-clique check (0 = skip)")
    s.add_argument("--subset-size", dest="subset_size", type=int, default=None)
    s.add_argument("--relaxed", action="store_true")
    _add_common(s)
    s.set_defaults(func=cmd_sparsify)

    v = subs.add_parser("verify", help="re-verify exported pattern graphs")
    v.add_argument("--graphs", required=True, help="directory of graph-*.edges exports")
    _add_common(v)
    v.set_defaults(func=cmd_verify)

    m = subs.add_parser("semisat", help="semisaturation coloring and extensions")
    m.add_argument("--k", type=int, required=True,
                   help="extensions must create a new monochromatic K_{k+1}")
    m.add_argument("--r", type=int, required=True)
    m.add_argument("--q", type=_prime_arg, default=None)
    m.add_argument("--extensions", type=int, default=10000)
    m.add_argument("--seed", type=int, default=0)
    _add_common(m)
    m.set_defaults(func=cmd_semisat)

    t = subs.add_parser("bounds", help="lower-bound table")
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--rmax", type=int, required=True)
    _add_common(t)
    t.set_defaults(func=cmd_bounds)

    e = subs.add_parser("export", help="incidence structure export")
    e.add_argument("--q", type=_prime_arg, required=True)
    e.add_argument("--lambda-size", dest="lambda_size", type=int, default=None)
    e.add_argument("--lambda-values", dest="lambda_values", default=None)
    _add_common(e)
    e.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
