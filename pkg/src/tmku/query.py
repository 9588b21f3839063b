"""Target-pattern queries over a frozen TP-tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .huicore import Strategies
from .tptree import TPNode, TPTree, path_itemset


@dataclass
class QueryCounter:
    visited: int = 0


def sort_target(target: Iterable[int], twu: Mapping[int, int]) -> tuple[int, ...] | None:
    """Target items in ascending (TWU, id) order, or None if an item has no TWU."""
    items = set(target)
    if any(i not in twu for i in items):
        return None
    return tuple(sorted(items, key=lambda i: (twu[i], i)))


def match_trace(node: TPNode, target: tuple[int, ...], twu: Mapping[int, int],
                counter: QueryCounter | None = None) -> tuple[bool, TPNode | None]:
    """Bottom-up TWU match; returns (matched, node where the walk stopped).

    ``node`` must carry the last target item. The walk consumes target items
    from the back and gives up as soon as an ancestor's TWU drops below the
    TWU of the item still being looked for.
    """
    if not target:
        return True, node
    pos = len(target) - 1
    if node.name != target[pos]:
        return False, node
    pos -= 1
    current = node.parent
    while pos >= 0 and current is not None and current.parent is not None:
        if counter is not None:
            counter.visited += 1
        y = target[pos]
        if current.twu < twu[y]:
            return False, current
        if current.twu == twu[y] and current.name == y:
            pos -= 1
        current = current.parent
    return pos < 0, current


def match_bottom_up(node: TPNode, target: tuple[int, ...], twu: Mapping[int, int]) -> bool:
    return match_trace(node, target, twu)[0]


def _match_naive(node: TPNode, target: tuple[int, ...], counter: QueryCounter | None) -> bool:
    items = path_itemset(node)
    if counter is not None:
        counter.visited += len(items) - 1
    return set(target).issubset(items)


def query(
    tree: TPTree,
    target: Iterable[int],
    min_util: int,
    strategies: Strategies = Strategies(),
    counter: QueryCounter | None = None,
    threshold: Callable[[], int] | None = None,
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(itemset, utility)`` for every HUI in ``tree`` that contains ``target``.

    ``threshold`` supplies the live pruning bound (defaults to ``min_util``);
    the top-k selector passes ``max(min_util, eta)`` here when feedback is on.
    Emission itself always uses ``min_util``.
    """
    if counter is None:
        counter = QueryCounter()
    if threshold is None:
        threshold = lambda: min_util  # noqa: E731
    twu = {item: node.twu for item, node in tree.head.items()}
    ordered = sort_target(target, twu)
    if ordered is None:
        return

    def bound_ok(node: TPNode) -> bool:
        return not strategies.s4 or node.sum_iu + node.sum_ru >= threshold()

    def emit(node: TPNode) -> Iterator[tuple[tuple[int, ...], int]]:
        if node.is_end and node.sum_iu >= min_util:
            yield path_itemset(node), node.sum_iu
        # bound checked on pop so a threshold raised meanwhile is honoured
        stack = list(reversed(node.children))
        while stack:
            n = stack.pop()
            if not bound_ok(n):
                continue
            counter.visited += 1
            if n.is_end and n.sum_iu >= min_util:
                yield path_itemset(n), n.sum_iu
            stack.extend(reversed(n.children))

    if not ordered:
        yield from emit(tree.root)
        return

    for node in tree.chain(ordered[-1]):
        if not bound_ok(node):
            continue
        counter.visited += 1
        if strategies.s5:
            matched = match_trace(node, ordered, twu, counter)[0]
        else:
            matched = _match_naive(node, ordered, counter)
        if matched:
            yield from emit(node)
