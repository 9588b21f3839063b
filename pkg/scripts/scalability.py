"""Elapsed time and peak allocations as the database is resampled larger.

    python scripts/scalability.py --factors 1 2 4 8 --k 100
"""

import argparse
import csv
import statistics
import sys

from _common import database_args, load
from tmku import MiningConfig, run, synth_scale


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    database_args(parser)
    parser.add_argument("--factors", type=float, nargs="+", default=[1, 2, 4, 8])
    parser.add_argument("-k", type=int, default=100)
    parser.add_argument("--repeats", type=int, default=3)
    parser.set_defaults(scale=1, transactions=1000)
    args = parser.parse_args()
    base, name, target = load(args)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["dataset", "factor", "transactions", "median_elapsed_ms", "peak_memory_bytes", "candidates", "u1"])
    for factor in args.factors:
        db = synth_scale(base, factor, seed=args.seed)
        config = MiningConfig(target=target, k=args.k, min_util=args.min_util)
        times = [run(config, db).elapsed_ms for _ in range(args.repeats)]
        mem = run(MiningConfig(target=target, k=args.k, min_util=args.min_util, track_memory=True), db)
        w.writerow([name, f"{factor:g}", len(db), f"{statistics.median(times):.1f}", mem.peak_memory_bytes,
                    mem.candidates, mem.u1])


if __name__ == "__main__":
    main()
