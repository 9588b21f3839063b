"""Runtime and candidates of the V1 / V2 / full variants over k.

Rows come from ``tmku.bench``, which also fails if the variants disagree.

    python scripts/ablation.py --ks 10 100 1000 --min-util 200
"""

import argparse
import csv
import sys

from _common import database_args, load
from tmku import bench


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    database_args(parser)
    parser.add_argument("--ks", type=int, nargs="+", default=[10, 100, 1000])
    parser.add_argument("--eta-feedback", action="store_true")
    args = parser.parse_args()
    db, name, target = load(args)
    matrix = [{"k": k, "variant": v, "eta_feedback": args.eta_feedback} for k in args.ks for v in ("v1", "v2", "full")]
    rows = bench(db, matrix, target=target, min_util=args.min_util, dataset=name)
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
