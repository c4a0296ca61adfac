"""Command-line interface.

Subcommands
-----------
test           run one unimodality test on a file of observations
cluster        cluster a dataset with gmeans/gmeans+/dipmeans/dipmeans+
bench-tests    success-rate/timing sweep over two-cluster separations
bench-cluster  k/VI/ARI benchmark over labeled datasets

Exit codes: 0 success (and "unimodal" for `test`), 3 split detected
(`test` only), 2 usage error, 1 runtime error. The SIGCLUSTER_OUT_DIR
environment variable sets the default output directory.
"""

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .baselines import anderson_darling, dip_test, ks_lilliefors
from .benchmark import (
    DEFAULT_SEPARATIONS,
    TEST_METHODS,
    format_cluster_table,
    format_test_table,
    run_cluster_benchmark,
    run_test_benchmark,
)
from .clustering import METHOD_NAMES, project_split, run_method
from .data_io import DatasetManifest, bundled_manifest, load_csv, write_results
from .errors import SigclusterError
from .metrics import ari, vi
from .sigtest import SignatureVariant, SigtestConfig, sigtest

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_SPLIT = 3


def _out_dir() -> Path:
    return Path(os.environ.get("SIGCLUSTER_OUT_DIR", "."))


def _load_columns(path: str, delimiter: str):
    """Read a numeric CSV as an (N, d) array, sniffing a header row."""
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    has_header = False
    for cell in first.strip().split(delimiter):
        try:
            float(cell)
        except ValueError:
            has_header = True
            break
    manifest = DatasetManifest(name=path, path=path, label_column=None,
                               delimiter=delimiter, has_header=has_header)
    return load_csv(manifest).rows


def _sigtest_config(args) -> SigtestConfig:
    variant = SignatureVariant.SIGNATURE2 if getattr(args, "variant", 1) == 2 \
        else SignatureVariant.SIGNATURE1
    return SigtestConfig(gamma=args.gamma, threshold=args.threshold,
                         variant=variant)


def cmd_test(args) -> int:
    rows = _load_columns(args.input, args.delimiter)
    if rows.shape[1] > 1:
        if args.centroid1 is None or args.centroid2 is None:
            print(
                f"input has {rows.shape[1]} columns; the test is defined on "
                "1-d data. Pass --centroid1/--centroid2 to project onto the "
                "axis through two centroids, or supply a single column.",
                file=sys.stderr,
            )
            return EXIT_USAGE
        c1 = np.array([float(v) for v in args.centroid1.split(",")])
        c2 = np.array([float(v) for v in args.centroid2.split(",")])
        y = project_split(rows, c1, c2)
    else:
        y = rows[:, 0]

    alpha = args.alpha
    if alpha is None:
        alpha = 0.0001 if args.method == "ad" else 0.05
    report = {
        "input": args.input,
        "method": args.method,
        "N": int(y.size),
        "defaults": {
            "gamma": args.gamma, "threshold": args.threshold,
            "alpha": alpha, "bootstrap_B": args.bootstrap_b,
            "seed": args.seed,
        },
    }
    if args.method in ("sigtest1", "sigtest2"):
        cfg = SigtestConfig(
            gamma=args.gamma, threshold=args.threshold,
            variant=SignatureVariant.SIGNATURE2 if args.method == "sigtest2"
            else SignatureVariant.SIGNATURE1,
        )
        out = sigtest(y, cfg)
        report.update(C=out.C, split=int(out.split))
        split = out.split
    else:
        if args.method == "ad":
            dec = anderson_darling(y, alpha)
        elif args.method == "ks":
            dec = ks_lilliefors(y, alpha)
        else:
            dec = dip_test(y, bootstrap_B=args.bootstrap_b, seed=args.seed)
        report.update(statistic=dec.statistic, p_value=dec.p_value,
                      split=int(dec.reject_unimodal))
        split = dec.reject_unimodal
    report["decision"] = "split" if split else "unimodal"
    print(json.dumps(report, indent=2))
    return EXIT_SPLIT if split else EXIT_OK


def _manifest_from_args(token: str, args) -> DatasetManifest:
    if token in ("iris", "seeds"):
        return bundled_manifest(token)
    label = args.label_column
    if label is not None:
        try:
            label = int(label)
        except ValueError:
            pass
    return DatasetManifest(name=Path(token).stem, path=token,
                           label_column=label, delimiter=args.delimiter,
                           standardize=args.standardize)


def cmd_cluster(args) -> int:
    manifest = _manifest_from_args(args.input, args)
    data = load_csv(manifest)
    result = run_method(args.method, data, seed=args.seed,
                        sigtest_config=_sigtest_config(args))
    report = {
        "dataset": manifest.name,
        "method": args.method,
        "n": data.n,
        "d": data.d,
        "k": result.k,
        "standardize": manifest.standardize,
        "defaults": {"gamma": args.gamma, "threshold": args.threshold,
                     "seed": args.seed},
        "split_log": [asdict(rec) for rec in result.split_log],
        "assignment": result.assignment.tolist(),
    }
    if data.labels is not None:
        report["vi"] = vi(result.assignment, data.labels)
        report["ari"] = ari(result.assignment, data.labels)
    out = _out_dir() / (args.output or f"{manifest.name}_{args.method}.json")
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    summary = {k: v for k, v in report.items() if k not in ("split_log", "assignment")}
    print(json.dumps(summary, indent=2))
    print(f"full result written to {out}")
    return EXIT_OK


def cmd_bench_tests(args) -> int:
    separations = [float(s) for s in args.separations.split(",")]
    records = run_test_benchmark(
        separations=separations, runs=args.runs, seed=args.seed,
        gamma=args.gamma, threshold=args.threshold,
        alpha_ks=args.alpha, timing_runs=args.timing_runs,
    )
    print(f"two-cluster test benchmark: runs={args.runs} seed={args.seed} "
          f"gamma={args.gamma} threshold={args.threshold} "
          f"alpha_ks={args.alpha} timing_runs={args.timing_runs}")
    print(format_test_table(records))
    out = _out_dir() / (args.output or f"bench_tests.{args.format}")
    write_results(records, out, format=args.format)
    print(f"records written to {out}")
    return EXIT_OK


def cmd_bench_cluster(args) -> int:
    manifests = [_manifest_from_args(tok, args) for tok in args.datasets.split(",")]
    records = run_cluster_benchmark(
        manifests, methods=args.methods.split(","), runs=args.runs,
        seed=args.seed, sigtest_config=_sigtest_config(args),
    )
    standardized = {m.name: m.standardize for m in manifests}
    print(f"clustering benchmark: runs={args.runs} seed={args.seed} "
          f"gamma={args.gamma} threshold={args.threshold} "
          f"standardize={standardized}")
    print(format_cluster_table(records))
    out = _out_dir() / (args.output or f"bench_cluster.{args.format}")
    write_results(records, out, format=args.format)
    print(f"records written to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigcluster",
        description="Signature-based unimodality testing and cluster-count estimation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common_test_opts(p):
        p.add_argument("--gamma", type=float, default=2.0,
                       help="band half-width in std units (default 2)")
        p.add_argument("--threshold", type=float, default=0.4,
                       help="violation-fraction threshold (default 0.4)")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--delimiter", default=",")

    p = sub.add_parser("test", help="unimodality test on a file of observations")
    p.add_argument("input", help="CSV of observations (single numeric column, "
                                 "or multi-column with --centroid1/--centroid2)")
    p.add_argument("--method", choices=TEST_METHODS, default="sigtest1")
    p.add_argument("--alpha", type=float, default=None,
                   help="significance for ad/ks (defaults: 1e-4 for ad, 0.05 for ks)")
    p.add_argument("--bootstrap-b", type=int, default=1000,
                   help="dip bootstrap replicates (default 1000)")
    p.add_argument("--centroid1", help="comma-separated centroid for projection")
    p.add_argument("--centroid2", help="comma-separated centroid for projection")
    common_test_opts(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("cluster", help="cluster a dataset, estimating k")
    p.add_argument("input", help="bundled name (iris, seeds) or CSV path")
    p.add_argument("--method", choices=METHOD_NAMES, default="gmeans+")
    p.add_argument("--variant", type=int, choices=(1, 2), default=1,
                   help="signature variant for the + methods (default 1)")
    p.add_argument("--label-column", default=None,
                   help="label column name or index for external CSVs")
    p.add_argument("--standardize", action="store_true",
                   help="standardize columns of external CSVs")
    p.add_argument("--output", default=None, help="output JSON filename")
    common_test_opts(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("bench-tests", help="two-cluster success-rate benchmark")
    p.add_argument("--separations", default=",".join(str(s) for s in DEFAULT_SEPARATIONS))
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--alpha", type=float, default=0.05,
                   help="KS significance (default 0.05)")
    p.add_argument("--timing-runs", type=int, default=10)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common_test_opts(p)
    p.set_defaults(func=cmd_bench_tests)

    p = sub.add_parser("bench-cluster", help="k/VI/ARI benchmark on datasets")
    p.add_argument("--datasets", default="iris,seeds",
                   help="comma list of bundled names or CSV paths")
    p.add_argument("--methods", default=",".join(METHOD_NAMES))
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--variant", type=int, choices=(1, 2), default=1)
    p.add_argument("--label-column", default=None)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common_test_opts(p)
    p.set_defaults(func=cmd_bench_cluster)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (SigclusterError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
