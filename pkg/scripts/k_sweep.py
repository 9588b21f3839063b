"""Minimum utility and candidate count of the top-k as k grows.

    python scripts/k_sweep.py --ks 10 50 100 500 1000 > k_sweep.csv
"""

import argparse
import csv
import sys

from _common import database_args, load
from tmku import MiningConfig, run


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    database_args(parser)
    parser.add_argument("--ks", type=int, nargs="+", default=[10, 50, 100, 500, 1000])
    args = parser.parse_args()
    db, name, target = load(args)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["dataset", "target", "k", "eta_feedback", "u1", "results", "candidates", "mining_candidates",
                "query_visits", "elapsed_ms"])
    for k in args.ks:
        for feedback in (False, True):
            r = run(MiningConfig(target=target, k=k, min_util=args.min_util, eta_feedback=feedback), db)
            w.writerow([name, " ".join(map(str, target)), k, feedback, r.u1, len(r.results), r.candidates,
                        r.mining_candidates, r.query_visits, f"{r.elapsed_ms:.2f}"])


if __name__ == "__main__":
    main()
