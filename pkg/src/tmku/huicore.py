"""Utility-list construction and the depth-first high-utility itemset search.

The search follows the HUI-Miner scheme: one utility-list per promising
item, extensions built by joining sibling lists on their common tids, and
``sumIu + sumRu`` as the upper bound that decides whether to descend.
Every HUI found is handed to a sink together with the utility triples of
its prefix, which is exactly what the TP-tree insertion needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .dataset import Database


class Entry(NamedTuple):
    tid: int
    iutil: int
    rutil: int


@dataclass
class UtilityList:
    itemset: tuple[int, ...]
    entries: list[Entry] = field(default_factory=list)
    sum_iu: int = 0
    sum_ru: int = 0
    _index: dict[int, Entry] | None = field(default=None, repr=False, compare=False)

    def append(self, entry: Entry) -> None:
        self.entries.append(entry)
        self.sum_iu += entry.iutil
        self.sum_ru += entry.rutil
        self._index = None

    @property
    def item(self) -> int:
        return self.itemset[-1]

    @property
    def index(self) -> dict[int, Entry]:
        if self._index is None:
            self._index = {e.tid: e for e in self.entries}
        return self._index

    def __len__(self):
        return len(self.entries)


@dataclass
class CandidateCounter:
    visited: int = 0


@dataclass(frozen=True)
class Strategies:
    """Pruning toggles.

    ``s3``: drop items whose TWU is below the threshold before the search.
    ``s4``: only extend itemsets with ``sumIu + sumRu >= threshold``.
    ``s5``: bottom-up TWU matcher when querying the tree.
    """

    s3: bool = True
    s4: bool = True
    s5: bool = True


VARIANTS = {
    "v1": Strategies(s3=True, s4=False, s5=True),
    "v2": Strategies(s3=False, s4=True, s5=True),
    "full": Strategies(),
}


# sink(prefix, ius, rus, tus, item, iu, ru, twu)
HUISink = Callable[[Sequence[int], Sequence[int], Sequence[int], Sequence[int], int, int, int, int], None]


class ContractError(ValueError):
    pass


def build_initial_lists(db: Database, min_util: int, order: Sequence[int] | None = None) -> list[UtilityList]:
    """One utility-list per item with ``twu >= min_util``, in processing order.

    Remaining utilities only count promising items placed after the item.
    ``order`` defaults to ascending TWU and exists so callers can check that
    the final HUI set does not depend on it.
    """
    if min_util < 0:
        raise ContractError("min_util must be >= 0")
    if order is None:
        order = db.order
    promising = [i for i in order if db.twu.get(i, 0) >= min_util]
    rank = {item: r for r, item in enumerate(promising)}
    lists = {item: UtilityList((item,)) for item in promising}
    for t in db.transactions:
        row = sorted(((rank[i], u) for i, u in t.entries if i in rank), reverse=True)
        remaining = 0
        for r, u in row:
            lists[promising[r]].append(Entry(t.tid, u, remaining))
            remaining += u
    return [lists[i] for i in promising]


def join_lists(prefix: UtilityList | None, px: UtilityList, py: UtilityList) -> UtilityList:
    """Utility-list of ``px.itemset + (last item of py)``."""
    if px.itemset[:-1] != py.itemset[:-1] or px.item == py.item:
        raise ContractError(f"cannot join {px.itemset} with {py.itemset}")
    if prefix is not None and prefix.itemset != px.itemset[:-1]:
        raise ContractError(f"prefix {prefix.itemset} does not match {px.itemset}")
    out = UtilityList(px.itemset + (py.item,))
    py_index = py.index
    pre_index = prefix.index if prefix is not None else None
    for ex in px.entries:
        ey = py_index.get(ex.tid)
        if ey is None:
            continue
        iu = ex.iutil + ey.iutil
        if pre_index is not None:
            iu -= pre_index[ex.tid].iutil
        out.append(Entry(ex.tid, iu, ey.rutil))
    return out


def mine(
    db: Database,
    min_util: int,
    sink: HUISink | None = None,
    counter: CandidateCounter | None = None,
    strategies: Strategies = Strategies(),
    order: Sequence[int] | None = None,
) -> None:
    """Depth-first HUI search; every HUI is emitted to ``sink`` as it is found."""
    if min_util < 1:
        raise ContractError("min_util must be >= 1")
    if counter is None:
        counter = CandidateCounter()
    lists = build_initial_lists(db, min_util if strategies.s3 else 0, order)
    twu = db.twu
    # (item, sumIu, sumRu, twu) of each itemset on the current search path
    path: list[tuple[int, int, int, int]] = []

    def search(prefix: UtilityList | None, lists: list[UtilityList]) -> None:
        for i, x in enumerate(lists):
            counter.visited += 1
            if x.sum_iu >= min_util and sink is not None:
                sink(
                    [p[0] for p in path],
                    [p[1] for p in path],
                    [p[2] for p in path],
                    [p[3] for p in path],
                    x.item, x.sum_iu, x.sum_ru, twu[x.item],
                )
            if strategies.s4 and x.sum_iu + x.sum_ru < min_util:
                continue
            exts = []
            for y in lists[i + 1:]:
                xy = join_lists(prefix, x, y)
                if xy.entries:
                    exts.append(xy)
            if exts:
                path.append((x.item, x.sum_iu, x.sum_ru, twu[x.item]))
                search(x, exts)
                path.pop()

    search(None, lists)


def mine_huis(db: Database, min_util: int, strategies: Strategies = Strategies(),
              counter: CandidateCounter | None = None, order: Sequence[int] | None = None) -> dict[tuple[int, ...], int]:
    """Convenience wrapper: ``{itemset: utility}`` of every HUI."""
    found: dict[tuple[int, ...], int] = {}

    def collect(prefix, ius, rus, tus, item, iu, ru, tw):
        found[tuple(prefix) + (item,)] = iu

    mine(db, min_util, collect, counter, strategies, order)
    return found
