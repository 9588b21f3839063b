import argparse

from tmku import load_spmf, synth_scale
from tmku.harness import generate_database


def database_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--input", help="SPMF utility file; a seeded synthetic database is used if omitted")
    parser.add_argument("--transactions", type=int, default=500, help="synthetic base size")
    parser.add_argument("--items", type=int, default=40)
    parser.add_argument("--scale", type=float, default=10, help="resampling factor applied to the synthetic base")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("-t", "--target", default=None, help="space separated item ids (default: median-TWU item)")
    parser.add_argument("--min-util", type=int, default=1)


def load(args):
    if args.input:
        db = load_spmf(args.input)
        name = args.input
    else:
        base = generate_database(args.transactions, n_items=args.items, seed=args.seed)
        db = synth_scale(base, args.scale, seed=args.seed)
        name = f"synthetic-{args.transactions}x{args.scale:g}-s{args.seed}"
    if args.target is None:
        target = (db.order[len(db.order) // 2],)
    else:
        target = tuple(int(x) for x in args.target.split())
    return db, name, target
