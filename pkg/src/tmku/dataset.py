"""Quantitative transaction databases in the SPMF utility format.

Each line of an input file looks like ``i1 i2 ... in:TU:u1 u2 ... un`` where
``u_j`` is the (already multiplied) utility of item ``i_j`` in that
transaction and ``TU`` is their sum.
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class ParseError(ValueError):
    """Raised for malformed SPMF utility input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"{message} at line {line}")


class EmptyDatabaseError(ParseError):
    pass


@dataclass(frozen=True)
class Transaction:
    tid: int
    entries: tuple[tuple[int, int], ...]
    tu: int

    def __post_init__(self):
        items = [i for i, _ in self.entries]
        if len(set(items)) != len(items):
            raise ValueError(f"duplicate item in transaction {self.tid}")
        if any(u < 0 for _, u in self.entries):
            raise ValueError(f"negative utility in transaction {self.tid}")
        if sum(u for _, u in self.entries) != self.tu:
            raise ValueError(f"tu mismatch in transaction {self.tid}")

    @property
    def items(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


@dataclass(frozen=True)
class Database:
    """Immutable transaction database with its derived TWU tables.

    ``order`` lists every item by ascending TWU, ties by ascending item id;
    ``rank`` is its inverse and is what the miners sort on.
    """

    transactions: tuple[Transaction, ...]
    twu: Mapping[int, int] = field(init=False)
    item_util: Mapping[int, int] = field(init=False)
    order: tuple[int, ...] = field(init=False)
    rank: Mapping[int, int] = field(init=False)

    def __post_init__(self):
        twu = compute_twu(self)
        item_util: Counter[int] = Counter()
        for t in self.transactions:
            for item, u in t.entries:
                item_util[item] += u
        order = tuple(sorted(twu, key=lambda i: (twu[i], i)))
        object.__setattr__(self, "twu", twu)
        object.__setattr__(self, "item_util", item_util)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rank", {item: r for r, item in enumerate(order)})

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, int] | Sequence[tuple[int, int]]]) -> "Database":
        """Build a database from per-transaction ``{item: utility}`` rows; tids are 1..n."""
        transactions = []
        for tid, row in enumerate(rows, start=1):
            entries = tuple(row.items()) if isinstance(row, Mapping) else tuple(row)
            transactions.append(Transaction(tid, entries, sum(u for _, u in entries)))
        return cls(tuple(transactions))

    @property
    def items(self) -> tuple[int, ...]:
        return self.order

    def __len__(self):
        return len(self.transactions)

    def sort_key(self, item: int) -> tuple[int, int]:
        return (self.twu.get(item, 0), item)

    def sort_itemset(self, itemset: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(set(itemset), key=self.sort_key))


def parse_spmf(source: str | io.TextIOBase | Iterable[str]) -> Database:
    """Parse SPMF utility text (a string or an iterable of lines)."""
    lines = source.splitlines() if isinstance(source, str) else source
    transactions = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(":")
        if len(parts) != 3:
            raise ParseError("expected 'items:TU:utilities'", lineno)
        try:
            items = [int(x) for x in parts[0].split()]
            tu = int(parts[1])
            utils = [int(x) for x in parts[2].split()]
        except ValueError:
            raise ParseError("non-integer field", lineno) from None
        if len(items) != len(utils):
            raise ParseError("item/utility count mismatch", lineno)
        if any(i < 1 for i in items):
            raise ParseError("item ids must be positive", lineno)
        if tu < 0 or any(u < 0 for u in utils):
            raise ParseError("negative value", lineno)
        if len(set(items)) != len(items):
            raise ParseError("duplicate item", lineno)
        if sum(utils) != tu:
            raise ParseError("TU mismatch", lineno)
        transactions.append(Transaction(len(transactions) + 1, tuple(zip(items, utils)), tu))
    if not transactions:
        raise EmptyDatabaseError("empty database")
    return Database(tuple(transactions))


def load_spmf(path: str | Path) -> Database:
    with open(path, encoding="utf-8", newline=None) as f:
        return parse_spmf(f)


def dump_spmf(db: Database) -> str:
    out = []
    for t in db.transactions:
        items = " ".join(str(i) for i, _ in t.entries)
        utils = " ".join(str(u) for _, u in t.entries)
        out.append(f"{items}:{t.tu}:{utils}")
    return "\n".join(out) + "\n"


def compute_twu(db: Database) -> Counter[int]:
    """TWU of every item; lookups of absent items give 0."""
    twu: Counter[int] = Counter()
    for t in db.transactions:
        for item in t.items:
            twu[item] += t.tu
    return twu


def itemset_utility(db: Database, itemset: Iterable[int]) -> int:
    """Total utility of ``itemset`` over all transactions containing every member."""
    xs = set(itemset)
    if not xs:
        return 0
    total = 0
    for t in db.transactions:
        row = t.as_dict()
        if xs.issubset(row):
            total += sum(row[i] for i in xs)
    return total
