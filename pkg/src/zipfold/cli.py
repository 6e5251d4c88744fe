"""Command line front end.

Subcommands: validate, fold, verify, sample, sweep.  Exit codes: 0 all
checks pass, 1 hypothesis/verification failure, 2 input error, 3
inconclusive (budget-exhausted searches).  Reports never embed timestamps;
run metadata (timings) goes to a sidecar JSON so equal inputs give
byte-identical artifacts.
"""

import argparse
import csv
import json
import os
import sys

from . import gluing as gl
from .embed import embed, write_obj
from .errors import MalformedPolygonError, SamplingBudgetError, ZipfoldError
from .geodesic import tetra_metric
from .pipeline import (
    FAIL,
    INCONC,
    PASS,
    PipelineConfig,
    SWEEP_COLUMNS,
    summarize_records,
    sweep_one,
    verify_polygon,
)
from .polygon import Tolerances, check_independence, load_polygon, save_polygon, validate
from .svgout import svg_net, svg_polygon

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="zipfold",
        description=(
            "Fold equilateral convex polygons by perimeter halving, realize the "
            "hexagon cases as tetrahedra, and audit the zipper unfolding round trip."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=None, help="override the predicate tolerance (default 1e-9)")
        p.add_argument("--independence-bound", type=int, default=16, help="height bound for the rational dependence screen")
        p.add_argument("--dev-cap", type=int, default=100000, help="max developments per geodesic query")
        p.add_argument("--out-dir", default=None, help="output directory (default $ZIPFOLD_OUT_DIR or .)")

    p = sub.add_parser("validate", help="check the folding hypotheses on a polygon file")
    p.add_argument("--input", required=True)
    add_common(p)

    p = sub.add_parser("fold", help="fold a polygon and emit gluing reports / OBJ files")
    p.add_argument("--input", required=True)
    p.add_argument("--fold-index", default="all", help='halving index or "all"')
    p.add_argument("--emit-obj", action="store_true")
    p.add_argument("--emit-svg", action="store_true")
    add_common(p)

    p = sub.add_parser("verify", help="run the full folding audit on a polygon file")
    p.add_argument("--input", required=True)
    p.add_argument("--force", action="store_true", help="run the audit even when hypotheses fail")
    p.add_argument("--emit-svg", action="store_true")
    add_common(p)

    p = sub.add_parser("sample", help="sample polygons and run the pipeline per seed")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--thin", action="store_true", help="sample outside the fat range (controls)")
    p.add_argument("--save-polygons", action="store_true")
    add_common(p)

    p = sub.add_parser("sweep", help="seed-range sweep writing a CSV of records")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--thin", action="store_true")
    add_common(p)

    return parser


def _config(args):
    tol = Tolerances() if args.tol is None else Tolerances(
        tol_len=args.tol, tol_ang=args.tol, tol_convex=args.tol
    )
    return PipelineConfig(
        tolerances=tol,
        independence_bound=args.independence_bound,
        dev_cap=args.dev_cap,
        out_dir=_out_dir(args),
    )


def _out_dir(args):
    out = args.out_dir or os.environ.get("ZIPFOLD_OUT_DIR") or "."
    os.makedirs(out, exist_ok=True)
    return out


def cmd_validate(args):
    poly = load_polygon(args.input)
    cfg = _config(args)
    report = validate(poly, cfg.tolerances)
    ind = check_independence(report.angles, cfg.independence_bound)
    out = report.to_dict()
    out["independence"] = {
        "bound": ind.bound,
        "dependent_pairs": [list(p) for p in ind.dependent_pairs],
        "inconclusive_pairs": [list(p) for p in ind.inconclusive_pairs],
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    for i, j in ind.dependent_pairs:
        w = ind.pairs[(i, j)]
        x, y = w.direction
        print(
            f"warning: angles {x} and {y} are rationally dependent "
            f"(alpha_{y} = {w.witness[0]}*pi + {w.witness[1]}*alpha_{x})",
            file=sys.stderr,
        )
    return EXIT_OK if report.theorem_ok else EXIT_FAIL


def cmd_fold(args):
    poly = load_polygon(args.input)
    cfg = _config(args)
    n = poly.n
    if args.fold_index == "all":
        indices = list(range(n // 2))
    else:
        try:
            indices = [int(args.fold_index)]
        except ValueError as exc:
            raise MalformedPolygonError(f"bad fold index {args.fold_index!r}") from exc
        if not (0 <= indices[0] < n // 2):
            print(f"error: fold index must be in 0..{n // 2 - 1}", file=sys.stderr)
            return EXIT_INPUT

    prof_angles = validate(poly, cfg.tolerances).angles
    report = {
        "n": n,
        "halvings": [],
        "relation_diagnostics": [
            d for d in gl.curvature_collision_relations(prof_angles)
        ]
        if n == 6
        else [],
    }
    failures = 0
    tets = {}
    for i in indices:
        g = gl.glue_halving(poly, i)
        curv = gl.cone_angles(g, cfg.tolerances.tol_curvature)
        entry = json.loads(gl.gluing_report_json(g, curv))
        if n == 6:
            try:
                metric = tetra_metric(g, cfg=cfg.tolerances, dev_cap=cfg.dev_cap)
                tet = embed(metric, cfg.tolerances.tol_vol)
                tets[i] = tet
                entry["metric"] = metric.as_dict()
                entry["flat"] = tet.flat
                entry["volume2"] = tet.volume2
                if args.emit_obj:
                    path = os.path.join(cfg.out_dir, f"tetra_fold{i}.obj")
                    write_obj(tet, path)
                    entry["obj"] = path
                if args.emit_svg:
                    from .net import cut_and_unfold

                    net = cut_and_unfold(tet)
                    path = os.path.join(cfg.out_dir, f"net_fold{i}.svg")
                    with open(path, "w", encoding="utf-8") as fh:
                        fh.write(svg_net(net))
                    entry["svg"] = path
            except ZipfoldError as exc:
                entry["error"] = str(exc)
                failures += 1
        report["halvings"].append(entry)
    if len(tets) > 1:
        from .embed import congruent_tetrahedra

        report["congruent_pairs"] = [
            [i, j]
            for i in sorted(tets)
            for j in sorted(tets)
            if i < j and congruent_tetrahedra(tets[i], tets[j], 1e-9)
        ]
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_FAIL if failures else EXIT_OK


def cmd_verify(args):
    poly = load_polygon(args.input)
    cfg = _config(args)
    outcome = verify_polygon(poly, cfg, force=args.force)
    for name, status in outcome.scorecard():
        print(f"{status.upper():<13} {name}")
    if outcome.forced:
        print("note: hypotheses fail; lemma checks ran under --force", file=sys.stderr)
    if not outcome.hypotheses_ok and not args.force:
        print("hypothesis failure: lemma checks skipped (use --force to run them)", file=sys.stderr)
    if args.emit_svg and poly.n == 6:
        path = os.path.join(cfg.out_dir, "source_polygon.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg_polygon(poly))
    if outcome.status == PASS:
        return EXIT_OK
    if outcome.status == INCONC:
        return EXIT_INCONCLUSIVE
    return EXIT_FAIL


def _run_seeds(args, save_polygons=False):
    cfg = _config(args)
    records = []
    worst = EXIT_OK
    import time

    t0 = time.perf_counter()
    for seed in range(args.seed, args.seed + args.count):
        try:
            record, poly = sweep_one(seed, args.n, cfg, thin=args.thin)
        except SamplingBudgetError as exc:
            print(f"seed {seed}: {exc}", file=sys.stderr)
            worst = max(worst, EXIT_INCONCLUSIVE)
            continue
        records.append(record)
        if save_polygons:
            save_polygon(poly, os.path.join(cfg.out_dir, f"polygon_seed{seed}.json"))
    wall = time.perf_counter() - t0

    csv_path = os.path.join(cfg.out_dir, "sweep.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for r in records:
            writer.writerow(r.to_row())
    meta = {
        "wall_seconds": wall,
        "per_record_seconds": [r.wall_seconds for r in records],
        "summary": summarize_records(records),
    }
    with open(os.path.join(cfg.out_dir, "sweep_meta.json"), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
    print(json.dumps(meta["summary"], indent=2, sort_keys=True))
    print(f"wrote {csv_path} ({len(records)} records)")

    statuses = {r.status for r in records}
    if FAIL in statuses:
        return EXIT_FAIL
    if INCONC in statuses or worst == EXIT_INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_sample(args):
    return _run_seeds(args, save_polygons=args.save_polygons)


def cmd_sweep(args):
    return _run_seeds(args)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "validate": cmd_validate,
        "fold": cmd_fold,
        "verify": cmd_verify,
        "sample": cmd_sample,
        "sweep": cmd_sweep,
    }
    try:
        return handlers[args.command](args)
    except (MalformedPolygonError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ZipfoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
