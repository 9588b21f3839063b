"""End-to-end pipeline, brute-force oracle, benchmarks and synthetic data."""

from __future__ import annotations

import json
import math
import random
import time
import tracemalloc
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Iterable, Sequence

from .dataset import Database, Transaction, load_spmf
from .huicore import VARIANTS, CandidateCounter, Strategies, mine
from .query import QueryCounter, query
from .topk import TopKMap, riu_seed
from .tptree import TPTree

SCHEMA = 1
ORACLE_MAX_ITEMS = 20


class OracleLimitError(RuntimeError):
    pass


class VariantMismatchError(RuntimeError):
    pass


@dataclass
class MiningConfig:
    input_path: str | None = None
    target: tuple[int, ...] = ()
    k: int = 1
    min_util: int = 1
    strategies: Strategies = field(default_factory=Strategies)
    eta_feedback: bool = False
    use_riu: bool = True
    output_format: str = "text"
    seed: int = 0
    track_memory: bool = False

    def __post_init__(self):
        self.target = tuple(self.target)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.min_util < 1:
            raise ValueError("min_util must be >= 1")
        if self.output_format not in ("text", "json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass
class RunReport:
    results: list[tuple[tuple[int, ...], int]]
    u1: int
    candidates: int
    mining_candidates: int
    query_visits: int
    huis: int
    tree_nodes: int
    elapsed_ms: float
    peak_memory_bytes: int | None = None

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = {
            "schema": SCHEMA,
            "results": [{"itemset": list(i), "utility": u} for i, u in self.results],
            "u1": self.u1,
            "candidates": self.candidates,
            "mining_candidates": self.mining_candidates,
            "query_visits": self.query_visits,
            "huis": self.huis,
            "tree_nodes": self.tree_nodes,
        }
        if timing:
            d["elapsed_ms"] = self.elapsed_ms
            d["peak_memory_bytes"] = self.peak_memory_bytes
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


def oracle_topk(db: Database, target: Iterable[int], k: int) -> list[tuple[tuple[int, ...], int]]:
    """Exhaustive top-k: every itemset containing ``target`` with positive utility.

    Ties are broken by the sorted itemset tuple, not by discovery order.
    """
    tset = set(target)
    items = sorted(db.twu)
    if len(items) > ORACLE_MAX_ITEMS:
        raise OracleLimitError(f"{len(items)} items exceeds the oracle limit of {ORACLE_MAX_ITEMS}")
    if not tset.issubset(items):
        return []
    rows = [t.as_dict() for t in db.transactions]
    others = [i for i in items if i not in tset]
    found = []
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            xs = tset.union(extra)
            if not xs:
                continue
            u = sum(sum(row[i] for i in xs) for row in rows if xs.issubset(row))
            if u > 0:
                found.append((tuple(sorted(xs)), u))
    found.sort(key=lambda p: (-p[1], p[0]))
    return found[:k]


def all_huis_bruteforce(db: Database, min_util: int) -> dict[tuple[int, ...], int]:
    """Every itemset with utility >= min_util, keyed by its sorted tuple."""
    items = sorted(db.twu)
    if len(items) > ORACLE_MAX_ITEMS:
        raise OracleLimitError(f"{len(items)} items exceeds the oracle limit of {ORACLE_MAX_ITEMS}")
    rows = [t.as_dict() for t in db.transactions]
    out = {}
    for size in range(1, len(items) + 1):
        for xs in combinations(items, size):
            u = sum(sum(row[i] for i in xs) for row in rows if all(i in row for i in xs))
            if u >= min_util:
                out[xs] = u
    return out


def build_tree(db: Database, min_util: int, strategies: Strategies = Strategies()) -> tuple[TPTree, int]:
    """Mine every HUI into a fresh TP-tree; returns the tree and the candidate count."""
    tree = TPTree(min_util)
    counter = CandidateCounter()
    mine(db, min_util, tree.insert_hui, counter, strategies)
    return tree, counter.visited


def select(db: Database, tree: TPTree, config: MiningConfig) -> tuple[TopKMap, int, int]:
    """Query the tree and feed the THUIs into a TopKMap; returns (map, THUI count, visits)."""
    seed = riu_seed(db, config.target, config.k) if config.use_riu else 0
    topk = TopKMap(config.k, seed)
    qc = QueryCounter()
    threshold = (lambda: max(config.min_util, topk.eta)) if config.eta_feedback else None
    n = 0
    for index, (itemset, utility) in enumerate(
        query(tree, config.target, config.min_util, config.strategies, qc, threshold)
    ):
        topk.offer(itemset, utility, index)
        n += 1
    return topk, n, qc.visited


def _report(topk: TopKMap, mining_candidates: int, query_visits: int, tree: TPTree, elapsed_ms: float,
            peak: int | None) -> RunReport:
    results = topk.results()
    return RunReport(
        results=results,
        u1=min((u for _, u in results), default=0),
        candidates=mining_candidates + query_visits,
        mining_candidates=mining_candidates,
        query_visits=query_visits,
        huis=sum(1 for n in tree.nodes() if n.is_end),
        tree_nodes=tree.size,
        elapsed_ms=elapsed_ms,
        peak_memory_bytes=peak,
    )


def run(config: MiningConfig, db: Database | None = None) -> RunReport:
    """Load, mine into a TP-tree, query the target and keep the top k."""
    if db is None:
        if config.input_path is None:
            raise ValueError("config has no input_path and no database was given")
        db = load_spmf(config.input_path)
    if config.track_memory:
        tracemalloc.start()
    try:
        start = time.perf_counter()
        tree, mined = build_tree(db, config.min_util, config.strategies)
        topk, _, visits = select(db, tree, config)
        elapsed = (time.perf_counter() - start) * 1000
        peak = tracemalloc.get_traced_memory()[1] if config.track_memory else None
    finally:
        if config.track_memory:
            tracemalloc.stop()
    return _report(topk, mined, visits, tree, elapsed, peak)


def _check_variants(results: dict[int, list[tuple[str, list]]]) -> None:
    for group in results.values():
        ref_name, ref = group[0]
        for name, res in group[1:]:
            if res != ref:
                diff = sorted(set(ref) ^ set(res)) or [res[0]]
                raise VariantMismatchError(
                    f"variants {ref_name!r} and {name!r} disagree on itemset {diff[0][0]} (utility {diff[0][1]})"
                )


def bench(
    db: Database,
    matrix: Sequence[dict[str, Any]],
    target: Sequence[int] = (),
    min_util: int = 1,
    dataset: str = "db",
    parallel: bool = False,
) -> list[dict[str, Any]]:
    """Run every ``{k, variant, eta_feedback}`` cell on ``db`` and return report rows.

    Trees are built once per mining configuration and shared read-only by
    the cells; ``elapsed_ms`` of a cell is its tree build time plus its own
    query time. Cells with the same k must agree on their result sets.
    """
    if not matrix:
        raise ValueError("empty configuration matrix")
    cells = []
    for cell in matrix:
        variant = cell.get("variant", "full")
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        cells.append((int(cell["k"]), variant, bool(cell.get("eta_feedback", False))))

    trees: dict[tuple[bool, bool], tuple[TPTree, int, float]] = {}
    for _, variant, _ in cells:
        s = VARIANTS[variant]
        if (s.s3, s.s4) not in trees:
            start = time.perf_counter()
            tree, mined = build_tree(db, min_util, s)
            trees[(s.s3, s.s4)] = (tree, mined, (time.perf_counter() - start) * 1000)

    def run_cell(cell):
        k, variant, feedback = cell
        s = VARIANTS[variant]
        tree, mined, build_ms = trees[(s.s3, s.s4)]
        config = MiningConfig(target=tuple(target), k=k, min_util=min_util, strategies=s, eta_feedback=feedback)
        start = time.perf_counter()
        topk, _, visits = select(db, tree, config)
        elapsed = build_ms + (time.perf_counter() - start) * 1000
        return _report(topk, mined, visits, tree, elapsed, None)

    if parallel:
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(run_cell, cells))
    else:
        reports = [run_cell(c) for c in cells]

    rows = []
    results: dict[int, list[tuple[str, list]]] = {}
    for (k, variant, feedback), rep in zip(cells, reports):
        label = variant + ("+feedback" if feedback else "")
        results.setdefault(k, []).append((label, rep.results))
        rows.append({
            "schema": SCHEMA,
            "dataset": dataset,
            "k": k,
            "variant": variant,
            "eta_feedback": feedback,
            "u1": rep.u1,
            "results": len(rep.results),
            "candidates": rep.candidates,
            "mining_candidates": rep.mining_candidates,
            "query_visits": rep.query_visits,
            "elapsed_ms": round(rep.elapsed_ms, 3),
            "memory_bytes": rep.peak_memory_bytes,
        })
    _check_variants(results)
    return rows


def synth_scale(db: Database, factor: float, seed: int = 0) -> Database:
    """Resample transactions with replacement to ``ceil(factor * n)`` rows."""
    if factor <= 0:
        raise ValueError("factor must be > 0")
    rng = random.Random(seed)
    n = math.ceil(factor * len(db.transactions))
    picks = rng.choices(db.transactions, k=n)
    return Database(tuple(Transaction(tid, t.entries, t.tu) for tid, t in enumerate(picks, start=1)))


def random_database(rng: random.Random, max_items: int = 10, max_transactions: int = 25,
                    max_utility: int = 9) -> Database:
    """Small random database for oracle comparisons."""
    n_items = rng.randint(1, max_items)
    n_trans = rng.randint(1, max_transactions)
    rows = []
    for _ in range(n_trans):
        size = rng.randint(1, n_items)
        items = rng.sample(range(1, n_items + 1), size)
        rows.append({i: rng.randint(1, max_utility) for i in items})
    return Database.from_rows(rows)


def generate_database(n_transactions: int, n_items: int = 40, mean_length: float = 5.0,
                      max_quantity: int = 5, max_price: int = 10, seed: int = 0) -> Database:
    """Sparse synthetic database with skewed item popularity.

    Lengths are 1 + Poisson(mean_length - 1), items are drawn with Zipf-like
    weights, and each utility is quantity * a per-item price.
    """
    rng = random.Random(seed)
    items = list(range(1, n_items + 1))
    weights = [1.0 / r for r in items]
    price = {i: rng.randint(1, max_price) for i in items}
    rows = []
    for _ in range(n_transactions):
        length = min(n_items, 1 + _poisson(rng, mean_length - 1))
        chosen: set[int] = set()
        while len(chosen) < length:
            chosen.add(rng.choices(items, weights)[0])
        rows.append({i: rng.randint(1, max_quantity) * price[i] for i in sorted(chosen)})
    return Database.from_rows(rows)


def _poisson(rng: random.Random, lam: float) -> int:
    if lam <= 0:
        return 0
    limit, k, p = math.exp(-lam), 0, rng.random()
    while p > limit:
        k += 1
        p *= rng.random()
    return k


def load_matrix(path: str | Path) -> dict[str, Any]:
    """Read a bench matrix file.

    Shape: ``{"input": str, "target": [ids], "min_util": int, "cells": [{"k", "variant",
    "eta_feedback"}]}``; instead of ``cells`` a ``ks`` x ``variants`` grid may be given.
    Relative ``input`` paths resolve against the matrix file.
    """
    path = Path(path)
    matrix = json.loads(path.read_text(encoding="utf-8"))
    if "cells" not in matrix:
        feedback = matrix.get("eta_feedback", False)
        matrix["cells"] = [
            {"k": k, "variant": v, "eta_feedback": feedback}
            for k in matrix.get("ks", [])
            for v in matrix.get("variants", list(VARIANTS))
        ]
    if "input" in matrix and not Path(matrix["input"]).is_absolute():
        matrix["input"] = str(path.parent / matrix["input"])
    return matrix
