"""Command-line front end: single products, single ranks, and sweeps.

Exit codes: 0 success / verification passed, 1 verification failed,
2 usage or input error, 3 internal inconsistency (a negative Schubert
coefficient, which the rings treat as a bug, not a value).
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import blocks, classical, quantum
from .classical import NegativeCoefficientError
from .partitions import (
    GrassmannianContext,
    Partition,
    parse_partition,
    parse_weight,
)

CACHE_DIR_ENV = "CBRANK_CACHE_DIR"


@dataclass
class SweepConfig:
    n_range: tuple
    level_range: tuple
    jobs: int = 1
    early_exit: bool = True
    output_path: Optional[str] = None
    checkpoint_path: Optional[str] = None
    csv_path: Optional[str] = None

    def __post_init__(self):
        if self.n_range[0] > self.n_range[1] or self.level_range[0] > self.level_range[1]:
            raise ValueError("empty sweep range")
        if self.jobs < 1:
            raise ValueError("need at least one worker")


def _parse_range(text: str) -> tuple:
    """Parse "4" or "4..6" into an inclusive (lo, hi) pair."""
    if ".." in text:
        lo, hi = text.split("..", 1)
    else:
        lo = hi = text
    try:
        return (int(lo), int(hi))
    except ValueError:
        raise ValueError("bad range %r (expected e.g. 4 or 4..6)" % text) from None


def _parse_gr(text: str) -> GrassmannianContext:
    try:
        k, N = (int(t) for t in text.split(","))
    except ValueError:
        raise ValueError("bad --gr %r (expected e.g. 4,6)" % text) from None
    return GrassmannianContext(k, N)


def cmd_product(args) -> int:
    ctx = _parse_gr(args.gr)
    lam = parse_partition(args.first)
    factors = [lam]
    if args.power is not None:
        if args.second is not None:
            raise ValueError("give either a second partition or --power, not both")
        if args.power < 0:
            raise ValueError("--power must be nonnegative")
        factors = [lam] * args.power
    elif args.second is not None:
        factors.append(parse_partition(args.second))
    else:
        raise ValueError("need a second partition or --power")

    if args.quantum:
        acc = quantum.qunit(ctx)
        for f in factors:
            acc = quantum.qmul(acc, quantum.quantum_class(ctx, f))
        for (d, parts), c in acc.items_sorted():
            print("%d*q^%d*%s" % (c, d, Partition(parts)))
    else:
        acc = classical.unit(ctx)
        for f in factors:
            acc = classical.giambelli_mul(acc, classical.schubert_class(ctx, f))
        for parts, c in acc.items_sorted():
            print("%d*%s" % (c, Partition(parts)))
    return 0


def cmd_rank(args) -> int:
    n = args.n
    weights = [parse_weight(w, n) for w in args.weight]
    if args.count is not None:
        if len(weights) != 1:
            raise ValueError("--count only makes sense with a single --weight")
        weights = weights * args.count
    query = blocks.RankQuery(n, args.level, tuple(weights))
    result = blocks.rank(query)
    record = {
        "n": n,
        "level": args.level,
        "weights": [list(w.coeffs) for w in query.weights],
        "partitions": [list(w.partition()) for w in query.weights],
        "rank": result.rank,
        "dictionary_case": result.dictionary_case,
        "s": result.s,
        "grassmannian": str(result.context_used) if result.context_used else None,
    }
    print(json.dumps(record, sort_keys=True))
    return 0


def _cell_path(checkpoint_dir: str, n: int, level: int) -> str:
    return os.path.join(checkpoint_dir, "cell_n%d_l%d.json" % (n, level))


def _load_cell(checkpoint_dir: Optional[str], n: int, level: int):
    if not checkpoint_dir:
        return None
    path = _cell_path(checkpoint_dir, n, level)
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            report = json.load(fh)
    except (OSError, ValueError):
        return None
    if report.get("n") == n and report.get("level") == level and "records" in report:
        return report
    return None


def _store_cell(checkpoint_dir: Optional[str], report: dict):
    if not checkpoint_dir:
        return
    os.makedirs(checkpoint_dir, exist_ok=True)
    path = _cell_path(checkpoint_dir, report["n"], report["level"])
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(report, fh, sort_keys=True)
    os.replace(tmp, path)


def run_sweep(config: SweepConfig) -> dict:
    """Run verify_classification over the grid, checkpointing per cell."""
    cells = []
    pool = None
    mapper = None
    if config.jobs > 1:
        pool = multiprocessing.Pool(config.jobs)

        def mapper(fn, xs):
            xs = list(xs)
            if not xs:
                return []
            return pool.map(fn, xs, chunksize=max(1, len(xs) // config.jobs))

    try:
        for n in range(config.n_range[0], config.n_range[1] + 1):
            for level in range(config.level_range[0], config.level_range[1] + 1):
                report = _load_cell(config.checkpoint_path, n, level)
                if report is None:
                    report = blocks.verify_classification(
                        n, level, early_exit=config.early_exit, mapper=mapper
                    )
                    _store_cell(config.checkpoint_path, report)
                cells.append(report)
                print(
                    "n=%d level=%d weights=%d verdict=%s"
                    % (n, level, report["weight_count"], report["verdict"]),
                    file=sys.stderr,
                )
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    verdict = "PASS" if all(c["verdict"] == "PASS" for c in cells) else "FAIL"
    return {"verdict": verdict, "cells": cells}


def _write_csv(path: str, report: dict):
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "n",
                "level",
                "weight",
                "partition",
                "rank_or_bound",
                "exact",
                "in_lambda",
                "dictionary_case",
                "s",
                "ok",
            ]
        )
        for cell in report["cells"]:
            for rec in cell["records"]:
                writer.writerow(
                    [
                        cell["n"],
                        cell["level"],
                        "w(%s)" % ",".join(str(c) for c in rec["weight"]),
                        str(Partition(rec["partition"])),
                        rec["rank_or_bound"],
                        rec["exact"],
                        rec["in_lambda"],
                        rec["dictionary_case"],
                        rec["s"],
                        rec["ok"],
                    ]
                )


def cmd_verify(args) -> int:
    checkpoint = args.checkpoint or os.environ.get(CACHE_DIR_ENV) or None
    config = SweepConfig(
        n_range=_parse_range(args.n),
        level_range=_parse_range(args.level),
        jobs=args.jobs,
        early_exit=args.early_exit,
        output_path=args.output,
        checkpoint_path=checkpoint,
        csv_path=args.csv,
    )
    report = run_sweep(config)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if config.csv_path:
        _write_csv(config.csv_path, report)
    return 0 if report["verdict"] == "PASS" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbrank",
        description="Schubert-calculus ranks of symmetric sl_n conformal-blocks bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_prod = sub.add_parser("product", help="classical Schubert product on Gr(k,N)")
    p_prod.add_argument("--gr", required=True, metavar="K,N")
    p_prod.add_argument("first", metavar="PARTITION")
    p_prod.add_argument("second", nargs="?", metavar="PARTITION")
    p_prod.add_argument("--power", type=int, default=None, help="raise the partition to this power")
    p_prod.set_defaults(func=cmd_product, quantum=False)

    p_qprod = sub.add_parser("qproduct", help="quantum Schubert product on Gr(k,N)")
    p_qprod.add_argument("--gr", required=True, metavar="K,N")
    p_qprod.add_argument("first", metavar="PARTITION")
    p_qprod.add_argument("second", nargs="?", metavar="PARTITION")
    p_qprod.add_argument("--power", type=int, default=None)
    p_qprod.set_defaults(func=cmd_product, quantum=True)

    p_rank = sub.add_parser("rank", help="rank of one conformal-blocks bundle")
    p_rank.add_argument("--n", type=int, required=True)
    p_rank.add_argument("--level", type=int, required=True)
    p_rank.add_argument(
        "--weight",
        action="append",
        required=True,
        help='weight, e.g. "w_3", "2*w_1+w_4", "w(0,2,1)" or "[3,1]" (repeatable)',
    )
    p_rank.add_argument("--count", type=int, default=None, help="repeat a single weight this many times")
    p_rank.set_defaults(func=cmd_rank)

    p_verify = sub.add_parser("verify", help="sweep the rank-one classification over a grid")
    p_verify.add_argument("--n", required=True, help="n or n range, e.g. 4..6")
    p_verify.add_argument("--level", required=True, help="level or level range, e.g. 1..3")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument(
        "--early-exit",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="stop a rank computation once it provably exceeds 1",
    )
    p_verify.add_argument("--output", default=None, help="write the JSON report here instead of stdout")
    p_verify.add_argument("--checkpoint", default=None, help="directory for per-cell resume files (default: $%s)" % CACHE_DIR_ENV)
    p_verify.add_argument("--csv", default=None, help="also write a flat CSV of all records")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NegativeCoefficientError as exc:
        print("internal inconsistency: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
