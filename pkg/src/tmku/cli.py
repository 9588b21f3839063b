"""Command-line interface: ``tmku {mine,query,verify,bench,scale}``.

Exit codes: 0 ok, 1 usage, 2 input (parse or I/O), 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from pathlib import Path

from .dataset import ParseError, dump_spmf, load_spmf
from .harness import (
    MiningConfig,
    OracleLimitError,
    VariantMismatchError,
    bench,
    load_matrix,
    oracle_topk,
    run,
    synth_scale,
)
from .huicore import Strategies, mine_huis

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _target(text: str) -> tuple[int, ...]:
    try:
        items = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid target {text!r}") from None
    if any(i < 1 for i in items):
        raise argparse.ArgumentTypeError("target item ids must be positive")
    return items


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _fmt_itemset(itemset) -> str:
    return " ".join(str(i) for i in itemset)


def _write_pairs(pairs, fmt: str, out, extra: dict | None = None) -> None:
    if fmt == "json":
        doc = {"schema": 1, "itemsets": [{"itemset": list(i), "utility": u} for i, u in pairs]}
        if extra:
            doc.update(extra)
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["rank", "itemset", "utility"])
        for rank, (itemset, u) in enumerate(pairs, start=1):
            w.writerow([rank, _fmt_itemset(itemset), u])
    else:
        for itemset, u in pairs:
            out.write(f"{u}\t{_fmt_itemset(itemset)}\n")
        if extra:
            out.write(" ".join(f"{k}={v}" for k, v in extra.items()) + "\n")


def _strategies(args) -> Strategies:
    return Strategies(s3=not args.no_s3, s4=not args.no_s4, s5=not args.no_s5)


def cmd_mine(args, out) -> int:
    db = load_spmf(args.input)
    huis = mine_huis(db, args.min_util, _strategies(args))
    pairs = sorted(huis.items(), key=lambda p: (-p[1], p[0]))
    _write_pairs(pairs, args.output, out, {"huis": len(pairs)} if args.output != "csv" else None)
    return EXIT_OK


def _config(args) -> MiningConfig:
    return MiningConfig(
        input_path=args.input,
        target=args.target,
        k=args.k,
        min_util=args.min_util,
        strategies=_strategies(args),
        eta_feedback=args.eta_feedback,
        use_riu=not args.no_riu,
        output_format=getattr(args, "output", "text"),
        track_memory=getattr(args, "memory", False),
    )


def cmd_query(args, out) -> int:
    report = run(_config(args))
    if args.output == "json":
        out.write(report.to_json(timing=not args.no_timing) + "\n")
    else:
        extra = None
        if args.output == "text":
            extra = {"u1": report.u1, "candidates": report.candidates, "elapsed_ms": round(report.elapsed_ms, 3)}
        _write_pairs(report.results, args.output, out, extra)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    config = _config(args)
    db = load_spmf(args.input)
    report = run(config, db)
    expected = oracle_topk(db, config.target, config.k)
    got_u = sorted((u for _, u in report.results), reverse=True)
    exp_u = sorted((u for _, u in expected), reverse=True)
    boundary = exp_u[-1] if exp_u else None
    # itemsets above the boundary utility must match exactly
    got_strict = {frozenset(i) for i, u in report.results if boundary is None or u > boundary}
    exp_strict = {frozenset(i) for i, u in expected if boundary is None or u > boundary}
    ok = got_u == exp_u and got_strict == exp_strict
    out.write(f"engine: {got_u}\noracle: {exp_u}\n{'OK' if ok else 'MISMATCH'}\n")
    if not ok:
        missing = Counter(exp_u) - Counter(got_u)
        extra = Counter(got_u) - Counter(exp_u)
        out.write(f"missing utilities: {dict(missing)} unexpected: {dict(extra)}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(args, out) -> int:
    matrix = load_matrix(args.matrix)
    if "input" not in matrix:
        raise UsageError("matrix file has no 'input'")
    db = load_spmf(matrix["input"])
    rows = bench(
        db,
        matrix["cells"],
        target=tuple(matrix.get("target", ())),
        min_util=int(matrix.get("min_util", 1)),
        dataset=matrix.get("dataset", Path(matrix["input"]).stem),
        parallel=args.parallel,
    )
    if args.output == "json":
        out.write(json.dumps(rows, sort_keys=True) + "\n")
    else:
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return EXIT_OK


def cmd_scale(args, out) -> int:
    db = load_spmf(args.input)
    scaled = synth_scale(db, args.factor, args.seed)
    Path(args.output).write_text(dump_spmf(scaled), encoding="utf-8")
    out.write(f"wrote {len(scaled)} transactions to {args.output}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tmku", description="Targeted top-k high-utility itemset mining.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def strategy_flags(p):
        p.add_argument("--no-s3", action="store_true", help="disable TWU item pruning")
        p.add_argument("--no-s4", action="store_true", help="disable sumIu+sumRu pruning")
        p.add_argument("--no-s5", action="store_true", help="disable the bottom-up TWU target matcher")

    p = sub.add_parser("mine", help="list every HUI at a fixed threshold")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--min-util", type=_positive, required=True)
    p.add_argument("-o", "--output", choices=["text", "json", "csv"], default="text")
    strategy_flags(p)
    p.set_defaults(func=cmd_mine)

    for name, func, helptext in (
        ("query", cmd_query, "top-k HUIs containing a target pattern"),
        ("verify", cmd_verify, "compare the engine against the brute-force oracle"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("-i", "--input", required=True)
        p.add_argument("-t", "--target", type=_target, default=())
        p.add_argument("-k", type=_positive, required=True)
        p.add_argument("--min-util", type=_positive, default=1)
        p.add_argument("--eta-feedback", action="store_true", help="prune the query with the live top-k threshold")
        p.add_argument("--no-riu", action="store_true", help="do not seed the threshold from real utilities")
        strategy_flags(p)
        if name == "query":
            p.add_argument("-o", "--output", choices=["text", "json", "csv"], default="text")
            p.add_argument("--memory", action="store_true", help="track peak allocations (slower)")
            p.add_argument("--no-timing", action="store_true", help="omit elapsed/memory from JSON")
        p.set_defaults(func=func)

    p = sub.add_parser("bench", help="run a k x variant matrix and emit CSV/JSON rows")
    p.add_argument("--matrix", required=True)
    p.add_argument("-o", "--output", choices=["csv", "json"], default="csv")
    p.add_argument("--parallel", action="store_true", help="run cells concurrently (timings unreliable)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("scale", help="resample a database to a larger size")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--factor", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_scale)
    return parser


def main(argv=None, out: io.TextIOBase | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"tmku: parse error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"tmku: {e}", file=sys.stderr)
        return EXIT_INPUT
    except VariantMismatchError as e:
        print(f"tmku: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, OracleLimitError, ValueError) as e:
        print(f"tmku: {e}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
