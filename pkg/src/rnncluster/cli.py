"""Command-line interface.

Subcommands
-----------
cluster  run one algorithm at explicit parameters; emits a labels CSV and
         optionally an SVG plot
sweep    evaluate the full parameter grid; emits sweep results as JSON/CSV
report   aggregate sweep JSON files into result tables
bench    sequential wall-clock timing at pinned parameters
gen      write a labeled synthetic dataset as CSV

A config file of KEY=VALUE lines (`--config`) can pin defaults for data
paths, parameters, seeds and the output directory; explicit flags override
config values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .data import load_dataset, range_standardize
from .dbscan import DbscanParams, dbscan
from .dbscrn import DbscrnParams, dbscrn
from .isdbscan import IsdbscanParams, isdbscan
from .kmeans import KmeansParams, kmeans
from .neighbors import build_index
from .plotting import plot_clustering
from .sweep import (
    BenchSpec,
    SweepSpec,
    bench,
    best_ari_summary,
    dbcv_selection_summary,
    run_sweep,
    timing_summary,
    write_labels_csv,
    write_reports,
)
from .synthetic import generate_synthetic
from .validation import adjusted_rand_index

__all__ = ["main"]


def _read_config(path) -> dict:
    """KEY=VALUE lines; '#' starts a comment; keys are lower-cased."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_number}: expected KEY=VALUE, got {raw!r}")
            key, value = line.split("=", 1)
            values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


def _coerce(raw: str):
    lowered = raw.lower()
    if lowered in ("true", "yes", "on"):
        return True
    if lowered in ("false", "no", "off"):
        return False
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


def _apply_config(
    args: argparse.Namespace, parser: argparse.ArgumentParser, argv: list[str]
) -> None:
    if not getattr(args, "config", None):
        return
    config = _read_config(args.config)
    for key, raw in config.items():
        if not hasattr(args, key):
            continue
        current = getattr(args, key)
        if f"--{key.replace('_', '-')}" in argv or f"--{key}" in argv:
            continue  # explicit flag wins
        default = parser.get_default(key)
        if current != default:
            continue
        if isinstance(default, bool):
            setattr(args, key, raw.lower() in ("1", "true", "yes", "on"))
        elif isinstance(default, str):
            setattr(args, key, raw)
        else:
            setattr(args, key, _coerce(raw))


def _load(args) -> "DataSet":
    if args.data is None:
        raise SystemExit("--data is required (or set data= in the config file)")
    label_col = args.label_col
    return load_dataset(args.data, has_header=args.header, label_column=label_col)


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="rnncluster", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    command_parsers: dict[str, argparse.ArgumentParser] = {}

    def common(p):
        p.add_argument("--config", help="KEY=VALUE config file; flags override")
        p.add_argument("--data", help="input CSV path")
        p.add_argument("--header", action="store_true", help="skip the first CSV row")
        p.add_argument("--label-col", type=int, default=None, dest="label_col",
                       help="column index of the ground-truth labels (-1 = last)")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=0)

    cluster = sub.add_parser("cluster", help="one algorithm at explicit parameters")
    common(cluster)
    cluster.add_argument("--algo", required=True,
                         choices=["dbscan", "isdbscan", "dbscrn", "kmeans"])
    cluster.add_argument("--k", type=int, help="neighbour count (dbscrn/isdbscan)")
    cluster.add_argument("--eps", type=float, help="squared-distance radius (dbscan)")
    cluster.add_argument("--min-pts", type=int, dest="min_pts", help="density threshold (dbscan)")
    cluster.add_argument("--K", type=int, dest="k_clusters", help="cluster count (kmeans)")
    cluster.add_argument("--runs", type=int, default=100, help="kmeans restarts")
    cluster.add_argument("--plot", action="store_true", help="also write an SVG (2-D data only)")

    sweep = sub.add_parser("sweep", help="full parameter grid with DBCV scores")
    common(sweep)
    sweep.add_argument("--algo", required=True, choices=["dbscan", "isdbscan", "dbscrn"])
    sweep.add_argument("--runs", type=int, default=100, help="runs per setting (seeded algorithms)")
    sweep.add_argument("--eps-step", type=float, default=0.1, dest="eps_step",
                       help="epsilon grid step, squared-distance units")
    sweep.add_argument("--jobs", type=int, default=1, help="parallel workers over grid points")

    report = sub.add_parser("report", help="tables from sweep JSON files")
    report.add_argument("--results", nargs="+", required=True, help="sweep JSON paths")
    report.add_argument("--out", default="out")

    bench_p = sub.add_parser("bench", help="sequential wall-clock timing")
    common(bench_p)
    bench_p.add_argument("--algo", required=True, choices=["dbscan", "isdbscan", "dbscrn"])
    bench_p.add_argument("--k", type=int)
    bench_p.add_argument("--eps", type=float)
    bench_p.add_argument("--min-pts", type=int, dest="min_pts")
    bench_p.add_argument("--runs", type=int, default=100)

    gen = sub.add_parser("gen", help="write a labeled synthetic dataset CSV")
    gen.add_argument("--config", help="KEY=VALUE config file; flags override")
    gen.add_argument("--kind", required=True,
                     choices=["blobs", "two_moons", "nested_rings", "spirals"])
    gen.add_argument("--n", type=int, default=None, help="total points (moons/spirals)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="out")
    command_parsers.update(
        cluster=cluster, sweep=sweep, report=report, bench=bench_p, gen=gen
    )
    return parser, command_parsers


def _algo_params(args):
    if args.algo == "dbscan":
        if args.eps is None or args.min_pts is None:
            raise SystemExit("dbscan needs --eps and --min-pts")
        return DbscanParams(epsilon=args.eps, min_pts=args.min_pts)
    if args.algo == "isdbscan":
        if args.k is None:
            raise SystemExit("isdbscan needs --k")
        return IsdbscanParams(k=args.k, seed=args.seed)
    if args.algo == "dbscrn":
        if args.k is None:
            raise SystemExit("dbscrn needs --k")
        return DbscrnParams(k=args.k)
    if args.k_clusters is None:
        raise SystemExit("kmeans needs --K")
    return KmeansParams(k_clusters=args.k_clusters, restarts=args.runs, seed=args.seed)


def _cmd_cluster(args) -> int:
    dataset = _load(args)
    x, _ = range_standardize(dataset.matrix)
    params = _algo_params(args)
    if args.algo == "dbscan":
        clustering = dbscan(x, params, seed=args.seed)
    elif args.algo == "isdbscan":
        index = build_index(x, k_max=min(params.k, x.shape[0] - 1))
        clustering = isdbscan(x, index, params)
    elif args.algo == "dbscrn":
        index = build_index(x, k_max=min(params.k, x.shape[0] - 1))
        clustering = dbscrn(x, index, params)
    else:
        clustering = kmeans(x, params)
    os.makedirs(args.out, exist_ok=True)
    labels_path = os.path.join(args.out, f"{dataset.name}_{args.algo}_labels.csv")
    write_labels_csv(labels_path, clustering)
    print(f"clusters: {clustering.n_clusters}  noise: {clustering.n_noise}")
    if dataset.true_labels is not None:
        print(f"ARI vs ground truth: {adjusted_rand_index(clustering, dataset.true_labels):.4f}")
    print(f"labels written to {labels_path}")
    if args.plot:
        svg_path = os.path.join(args.out, f"{dataset.name}_{args.algo}.svg")
        plot_clustering(x, clustering, svg_path)
        print(f"plot written to {svg_path}")
    return 0


def _cmd_sweep(args) -> int:
    dataset = _load(args)
    spec = SweepSpec(
        algorithm=args.algo,
        runs_per_setting=args.runs,
        base_seed=args.seed,
        eps_step=args.eps_step,
    )
    result = run_sweep(dataset, spec, n_jobs=args.jobs)
    os.makedirs(args.out, exist_ok=True)
    json_path = os.path.join(args.out, f"{dataset.name}_{args.algo}_sweep.json")
    with open(json_path, "w", encoding="utf-8") as handle:
        json.dump(result.to_json_dict(), handle, indent=2)
    csv_path = os.path.join(args.out, f"{dataset.name}_{args.algo}_sweep.csv")
    with open(csv_path, "w", encoding="utf-8") as handle:
        handle.write("params,run,seed,n_clusters,n_noise,dbcv,ari,seconds\n")
        for r in result.records:
            params = ";".join(f"{k}={v}" for k, v in sorted(
                (("epsilon", r.params.epsilon), ("min_pts", r.params.min_pts))
                if args.algo == "dbscan" else (("k", r.params.k),)
            ))
            ari = "" if r.ari is None else f"{r.ari:.6f}"
            seed = "" if r.seed is None else r.seed
            handle.write(
                f"{params},{r.run},{seed},{r.n_clusters},{r.n_noise},"
                f"{r.dbcv_score:.6f},{ari},{r.seconds:.6f}\n"
            )
    selection = dbcv_selection_summary(result)
    print(f"{len(result.records)} records -> {json_path}")
    print(f"DBCV-selected params: {selection['selected_params'][0]}")
    if dataset.true_labels is not None:
        best = best_ari_summary(result)
        print(f"best ARI over the grid: {best['max']:.4f} at {best['params']}")
    return 0


def _cmd_report(args) -> int:
    rows = []
    for path in args.results:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
        records = payload["records"]
        has_truth = all(r["ari"] is not None for r in records)
        deterministic = payload["algorithm"] == "dbscrn"
        row = {
            "dataset": payload["dataset"],
            "algorithm": payload["algorithm"],
            "approximate": False,
            "best_ari": None,
            "dbcv_selected": None,
            "timing": timing_summary([r["seconds"] for r in records]),
        }
        if has_truth:
            by_params: dict[str, list] = {}
            for r in records:
                by_params.setdefault(json.dumps(r["params"], sort_keys=True), []).append(r)
            best = max(by_params.values(), key=lambda rs: max(r["ari"] for r in rs))
            aris = np.array([r["ari"] for r in best])
            row["best_ari"] = {
                "params": best[0]["params"],
                "mean": None if deterministic else float(aris.mean()),
                "std": None if deterministic else float(aris.std()),
                "max": float(aris.max()),
                "deterministic": deterministic,
            }
            runs = sorted({r["run"] for r in records})
            per_run = []
            for run in runs:
                best_key = None
                chosen = None
                # records are stored in grid order (ascending parameters),
                # so position breaks DBCV ties toward smaller parameters
                for pos, r in enumerate(records):
                    if r["run"] != run:
                        continue
                    key = (-r["dbcv"], pos)
                    if best_key is None or key < best_key:
                        best_key, chosen = key, r
                per_run.append(chosen["ari"])
            per_run = np.array(per_run)
            row["dbcv_selected"] = {
                "mean": None if deterministic else float(per_run.mean()),
                "std": None if deterministic else float(per_run.std()),
                "max": float(per_run.max()),
                "deterministic": deterministic,
            }
        rows.append(row)
    paths = write_reports(rows, args.out)
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def _cmd_bench(args) -> int:
    dataset = _load(args)
    params = _algo_params(args)
    spec = BenchSpec(algorithm=args.algo, params=params, runs=args.runs, base_seed=args.seed)
    result = bench(dataset, spec)
    stats = result.summary()
    print(
        f"{args.algo} on {dataset.name}: mean {stats['mean']:.4f}s  std {stats['std']:.4f}s  "
        f"max {stats['max']:.4f}s  min {stats['min']:.4f}s over {stats['runs']} runs"
    )
    os.makedirs(args.out, exist_ok=True)
    out_path = os.path.join(args.out, f"{dataset.name}_{args.algo}_bench.json")
    with open(out_path, "w", encoding="utf-8") as handle:
        json.dump({"schema_version": 1, "kind": "bench", "dataset": dataset.name,
                   "algorithm": args.algo, "summary": stats,
                   "seconds": result.seconds.tolist()}, handle, indent=2)
    print(f"written to {out_path}")
    return 0


def _cmd_gen(args) -> int:
    params = {}
    if args.n is not None:
        params["n"] = args.n
    dataset = generate_synthetic(args.kind, params, seed=args.seed)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"{args.kind}_{args.seed}.csv")
    with open(path, "w", encoding="utf-8") as handle:
        for row, label in zip(dataset.matrix, dataset.true_labels):
            cells = ",".join(f"{v:.8f}" for v in row)
            handle.write(f"{cells},{int(label)}\n")
    print(f"{dataset.n} points, {dataset.true_labels.max() + 1} classes -> {path}")
    return 0


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser, command_parsers = _build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, command_parsers[args.command], list(argv))
    commands = {
        "cluster": _cmd_cluster,
        "sweep": _cmd_sweep,
        "report": _cmd_report,
        "bench": _cmd_bench,
        "gen": _cmd_gen,
    }
    return commands[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
