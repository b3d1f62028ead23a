"""Command-line interface: derivation, fixtures, Monte Carlo, comparison, export.

Every command is deterministic given its full flag set (including the seed).
Exact rationals appear in JSON as {"num": "<decimal string>", "den": "<decimal
string>"}; CSV files carry decimal expansions and exactness lives in JSON only.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .ensemble import (
    compare,
    dump_json,
    histogram_csv_rows,
    report_to_json_dict,
    run_ensemble,
    stats_to_json_dict,
)
from .exactnum import decimal_str
from .fixtures import check_all
from .ordstat import SystemDims, order_statistic_pdf, spectrum_family
from .steppoly import StepPolyDensity, curve_rows, density_from_json_dict, density_to_json_dict

DEFAULT_SAMPLES = 100100
DEFAULT_SEED = 0
DEFAULT_BINS = 100
DEFAULT_RESOLUTION = 1000
DEFAULT_TOL = 1e-3


def _threads(args: argparse.Namespace) -> int:
    env = os.environ.get("ORDSPEC_THREADS")
    if env is not None:
        return max(1, int(env))
    return max(1, args.threads)


def _validate_dims(m: int, n: int) -> SystemDims:
    if not (2 <= m <= n <= 8):
        raise SystemExit(f"error: require 2 <= m <= n <= 8, got m={m} n={n}")
    return SystemDims(m, n)


def _validate_k(dims: SystemDims, k: int) -> int:
    if not (1 <= k <= dims.m):
        raise SystemExit(f"error: require 1 <= k <= m={dims.m}, got k={k}")
    return k


def _write_density_files(d: StepPolyDensity, out_dir: Path, resolution: int) -> None:
    stem = f"m{d.m}n{d.n}_k{d.k}"
    dump_json(density_to_json_dict(d), out_dir / f"density_{stem}.json")
    with open(out_dir / f"curve_{stem}.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "p"])
        writer.writerows(curve_rows(d, resolution))


def cmd_derive(args: argparse.Namespace) -> int:
    dims = _validate_dims(args.m, args.n)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.k is not None:
        ks = [_validate_k(dims, args.k)]
        densities = [order_statistic_pdf(dims, ks[0])]
    else:
        fam = spectrum_family(dims)
        ks = list(range(1, dims.m + 1))
        densities = list(fam.densities)
    for k, d in zip(ks, densities):
        _write_density_files(d, out_dir, args.resolution)
        norm = d.normalize_check()
        mean = d.moment(1)
        print(f"k={k} normalization={decimal_str(norm)} mean={decimal_str(mean)}")
    return 0


def cmd_moments(args: argparse.Namespace) -> int:
    dims = _validate_dims(args.m, args.n)
    k = _validate_k(dims, args.k)
    d = order_statistic_pdf(dims, k)
    for q in range(args.qmax + 1):
        mq = d.moment(q)
        print(f"q={q} moment={mq.numerator}/{mq.denominator} ({decimal_str(mq)})")
    return 0


def cmd_descriptors(args: argparse.Namespace) -> int:
    dims = _validate_dims(args.m, args.n)
    ks = [_validate_k(dims, args.k)] if args.k is not None else list(range(1, dims.m + 1))
    fam = spectrum_family(dims)
    for k in ks:
        desc = fam.density(k).descriptors()
        print(
            f"k={k} mean={desc.mean} variance={desc.variance} "
            f"skewness={desc.skewness} excess_kurtosis={desc.excess_kurtosis}"
        )
        print(
            f"k={k} (decimal) mean={decimal_str(desc.mean)} "
            f"variance={decimal_str(desc.variance)} "
            f"skewness={decimal_str(desc.skewness)} "
            f"excess_kurtosis={decimal_str(desc.excess_kurtosis)}"
        )
    return 0


def cmd_montecarlo(args: argparse.Namespace) -> int:
    dims = _validate_dims(args.m, args.n)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stats = run_ensemble(dims, args.samples, seed=args.seed, bins=args.bins,
                         threads=_threads(args))
    stem = f"m{dims.m}n{dims.n}_seed{args.seed}"
    dump_json(stats_to_json_dict(stats), out_dir / f"stats_{stem}.json")
    for k in range(1, dims.m + 1):
        with open(out_dir / f"hist_{stem}_k{k}.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "bin_left", "bin_right", "density"])
            writer.writerows(histogram_csv_rows(stats, k))
    print(
        f"samples={stats.sample_count} discarded={stats.discarded} "
        f"sum_check_max={stats.sum_check_max:.3e}"
    )
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    dims = _validate_dims(args.m, args.n)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stats = run_ensemble(dims, args.samples, seed=args.seed, bins=args.bins,
                         threads=_threads(args))
    fam = spectrum_family(dims)
    report = compare(stats, fam, tol=args.tol)
    dump_json(report_to_json_dict(report), out_dir / f"compare_m{dims.m}n{dims.n}.json")
    worst = report.worst()
    status = "pass" if report.passed else "FAIL"
    print(
        f"{status}: worst |sample-exact| = {worst.abs_diff:.3e} at "
        f"(k={worst.k}, q={worst.q}), tol = {args.tol:g}"
    )
    return 0 if report.passed else 1


def cmd_fixtures_check(args: argparse.Namespace) -> int:
    failures = 0

    def progress(res) -> None:
        nonlocal failures
        if res.ok:
            print(f"ok   {res.fixture_id}")
        else:
            failures += 1
            print(f"FAIL {res.fixture_id}: {res.detail}")

    check_all(progress=progress)
    print(f"fixtures: {failures} failure(s)")
    return 0 if failures == 0 else 1


def cmd_export(args: argparse.Namespace) -> int:
    path = Path(args.input)
    if not path.exists():
        raise SystemExit(f"error: no such file: {path}")
    with open(path) as fh:
        density = density_from_json_dict(json.load(fh))
    out = Path(args.output)
    if args.format == "json":
        dump_json(density_to_json_dict(density), out)
    else:
        with open(out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "p"])
            writer.writerows(curve_rows(density, args.resolution))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordspec",
        description="Exact ordered-eigenvalue densities of reduced density "
                    "matrices, with Monte Carlo validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_dims(p: argparse.ArgumentParser, with_k: bool = False) -> None:
        p.add_argument("--m", type=int, required=True, help="smaller subsystem dimension")
        p.add_argument("--n", type=int, required=True, help="larger subsystem dimension")
        if with_k:
            p.add_argument("--k", type=int, default=None, help="order index (default: all)")

    def add_mc(p: argparse.ArgumentParser) -> None:
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--bins", type=int, default=DEFAULT_BINS)
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads (env ORDSPEC_THREADS overrides)")

    p = sub.add_parser("derive", help="derive exact densities and export them")
    add_dims(p, with_k=True)
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("moments", help="print exact moments of one density")
    add_dims(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--qmax", type=int, default=8)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("descriptors", help="print exact distribution descriptors")
    add_dims(p, with_k=True)
    p.set_defaults(func=cmd_descriptors)

    p = sub.add_parser("montecarlo", help="run the ensemble simulator and export stats")
    add_dims(p)
    add_mc(p)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("compare", help="compare Monte Carlo moments with exact ones")
    add_dims(p)
    add_mc(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fixtures-check", help="re-derive the published corpus")
    p.set_defaults(func=cmd_fixtures_check)

    p = sub.add_parser("export", help="re-export a density JSON as JSON or curve CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
