"""Target-pattern tree: a trie over HUIs plus per-item header chains."""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterator, Sequence

from .huicore import ContractError


class TPNode:
    __slots__ = ("name", "parent", "children", "child_names", "twu", "sum_iu", "sum_ru", "is_end", "link")

    def __init__(self, name: int | None = None, parent: "TPNode | None" = None):
        self.name = name
        self.parent = parent
        # kept sorted by item id, child_names mirrors children for bisect
        self.children: list[TPNode] = []
        self.child_names: list[int] = []
        self.twu = 0
        self.sum_iu = 0
        self.sum_ru = 0
        self.is_end = False
        self.link: TPNode | None = None

    def __repr__(self):
        return f"TPNode({self.name}, iu={self.sum_iu}, ru={self.sum_ru}, twu={self.twu}, end={self.is_end})"

    def find_child(self, item: int) -> "TPNode | None":
        pos = bisect_left(self.child_names, item)
        if pos < len(self.child_names) and self.child_names[pos] == item:
            return self.children[pos]
        return None

    def add_child(self, node: "TPNode") -> None:
        pos = bisect_left(self.child_names, node.name)
        self.child_names.insert(pos, node.name)
        self.children.insert(pos, node)


def find_child(node: TPNode, item: int) -> TPNode | None:
    return node.find_child(item)


def path_itemset(node: TPNode) -> tuple[int, ...]:
    items = []
    while node.parent is not None:
        items.append(node.name)
        node = node.parent
    return tuple(reversed(items))


class TPTree:
    """Trie of HUIs in ascending-TWU order with head/tail item links.

    ``insert_hui`` has the same signature as the miner's HUI sink, so a tree
    can be filled directly with ``mine(db, xi, sink=tree.insert_hui)``.
    """

    def __init__(self, min_util: int = 1):
        self.root = TPNode()
        self.min_util = min_util
        self.head: dict[int, TPNode] = {}
        self.tail: dict[int, TPNode] = {}
        self.size = 0

    def _child(self, parent: TPNode, item: int) -> TPNode:
        node = parent.find_child(item)
        if node is None:
            node = TPNode(item, parent)
            parent.add_child(node)
            if item in self.tail:
                self.tail[item].link = node
            else:
                self.head[item] = node
            self.tail[item] = node
            self.size += 1
        return node

    def insert_hui(
        self,
        prefix: Sequence[int],
        ius: Sequence[int],
        rus: Sequence[int],
        tus: Sequence[int],
        item: int,
        iu: int,
        ru: int,
        twu: int,
    ) -> TPNode:
        if not (len(prefix) == len(ius) == len(rus) == len(tus)):
            raise ContractError("prefix and utility triples differ in length")
        keys = [(tw, i) for tw, i in zip(tus, prefix)] + [(twu, item)]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ContractError(f"itemset {tuple(prefix) + (item,)} is not in ascending TWU order")
        node = self.root
        for e, e_iu, e_ru, e_twu in zip(prefix, ius, rus, tus):
            node = self._child(node, e)
            node.sum_iu, node.sum_ru, node.twu = e_iu, e_ru, e_twu
        node = self._child(node, item)
        node.sum_iu, node.sum_ru, node.twu = iu, ru, twu
        node.is_end = True
        return node

    def chain(self, item: int) -> Iterator[TPNode]:
        node = self.head.get(item)
        while node is not None:
            yield node
            node = node.link

    def nodes(self) -> Iterator[TPNode]:
        """All non-root nodes, depth-first in child order."""
        stack = list(reversed(self.root.children))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def itemsets(self) -> dict[tuple[int, ...], int]:
        return {path_itemset(n): n.sum_iu for n in self.nodes() if n.is_end}

    def dump(self) -> str:
        """Indented text, one node per line: ``name sumIu sumRu twu isEnd``."""
        lines = []

        def walk(node: TPNode, depth: int) -> None:
            for child in node.children:
                lines.append(f"{'  ' * depth}{child.name} {child.sum_iu} {child.sum_ru} {child.twu} {int(child.is_end)}")
                walk(child, depth + 1)

        walk(self.root, 0)
        return "\n".join(lines) + ("\n" if lines else "")
