"""Top-k selection over the THUI stream with dynamic threshold raising."""

from __future__ import annotations

import heapq
from typing import Iterable

from .dataset import Database


def riu_seed(db: Database, target: Iterable[int], k: int) -> int:
    """k-th largest real utility among ``target`` and its one-item extensions.

    Every candidate is the exact utility of an itemset containing the
    target, so the result never exceeds the final k-th best THUI utility.
    Returns 0 when fewer than k candidates have positive utility.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    tset = set(target)
    base_total = 0
    ext: dict[int, int] = {}
    for t in db.transactions:
        row = t.as_dict()
        if not tset.issubset(row):
            continue
        base = sum(row[i] for i in tset)
        base_total += base
        for item, u in row.items():
            if item not in tset:
                ext[item] = ext.get(item, 0) + base + u
    candidates = [u for u in ext.values() if u > 0]
    if tset and base_total > 0:
        candidates.append(base_total)
    if len(candidates) < k:
        return 0
    return heapq.nlargest(k, candidates)[-1]


class TopKMap:
    """The k best ``(itemset, utility)`` pairs seen so far.

    Ties on utility go to the earlier discovery. ``eta`` is the dynamic
    threshold: the seed until the map fills, then the larger of the seed
    and the smallest stored utility. It never decreases.
    """

    def __init__(self, k: int, seed: int = 0):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.eta = seed
        # min-heap on (utility, -discovery) so the root is the next eviction
        self._heap: list[tuple[int, int, tuple[int, ...]]] = []
        self._counter = 0

    def __len__(self):
        return len(self._heap)

    @property
    def full(self) -> bool:
        return len(self._heap) >= self.k

    def min_utility(self) -> int | None:
        return self._heap[0][0] if self._heap else None

    def offer(self, itemset: Iterable[int], utility: int, index: int | None = None) -> bool:
        """Offer one THUI; returns True if it was kept."""
        if utility < 0:
            raise ValueError("utility must be >= 0")
        if index is None:
            index = self._counter
        self._counter = max(self._counter, index + 1)
        entry = (utility, -index, tuple(itemset))
        if len(self._heap) < self.k:
            heapq.heappush(self._heap, entry)
        elif utility > self._heap[0][0]:
            heapq.heapreplace(self._heap, entry)
        else:
            return False
        if self.full:
            self.eta = max(self.eta, self._heap[0][0])
        return True

    def results(self) -> list[tuple[tuple[int, ...], int]]:
        ordered = sorted(self._heap, key=lambda e: (-e[0], -e[1]))
        return [(itemset, u) for u, _, itemset in ordered]


def select_topk(stream: Iterable[tuple[tuple[int, ...], int]], k: int, seed: int = 0) -> TopKMap:
    topk = TopKMap(k, seed)
    for index, (itemset, utility) in enumerate(stream):
        topk.offer(itemset, utility, index)
    return topk
