import random
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from tmku import Database, parse_spmf

DATA = Path(__file__).resolve().parent.parent / "data"

# letters of the worked example mapped to item ids
A, B, C, D, E, F, G = range(1, 8)
NAMES = dict(zip("abcdefg", range(1, 8)))

TABLE1_QTY = [
    {"b": 4, "d": 3, "e": 1},
    {"a": 1, "b": 3, "e": 2},
    {"c": 3, "d": 1},
    {"a": 3, "b": 1, "c": 4, "f": 2, "g": 1},
    {"a": 1, "b": 2},
    {"b": 1, "c": 3, "d": 4, "f": 2},
    {"a": 4, "e": 1, "g": 2},
]
TABLE1_PRICE = {"a": 1, "b": 3, "c": 2, "d": 4, "e": 2, "f": 1, "g": 2}


def ids(letters: str) -> frozenset:
    return frozenset(NAMES[c] for c in letters)


def table1_rows():
    return [{NAMES[c]: q * TABLE1_PRICE[c] for c, q in row.items()} for row in TABLE1_QTY]


@pytest.fixture(scope="session")
def table1() -> Database:
    return parse_spmf((DATA / "table1.txt").read_text())


@pytest.fixture(scope="session")
def table1_path() -> Path:
    return DATA / "table1.txt"


def brute_utilities(db: Database) -> dict:
    """Utility of every itemset occurring in db, by plain enumeration."""
    rows = [dict(t.entries) for t in db.transactions]
    items = sorted({i for r in rows for i in r})
    out = {}
    for size in range(1, len(items) + 1):
        for xs in combinations(items, size):
            u = 0
            for r in rows:
                if all(i in r for i in xs):
                    u += sum(r[i] for i in xs)
            out[frozenset(xs)] = u
    return out


def brute_huis(db: Database, min_util: int) -> dict:
    return {x: u for x, u in brute_utilities(db).items() if u >= min_util}


@st.composite
def small_databases(draw, max_items=8, max_transactions=15, max_utility=9):
    n_items = draw(st.integers(1, max_items))
    rows = draw(st.lists(
        st.dictionaries(st.integers(1, n_items), st.integers(1, max_utility), min_size=1),
        min_size=1, max_size=max_transactions,
    ))
    return Database.from_rows(rows)


def seeded_databases(n, seed=0, max_items=10, max_transactions=25):
    from tmku.harness import random_database

    rng = random.Random(seed)
    return [random_database(rng, max_items, max_transactions) for _ in range(n)]


_ACCEPTANCE: list[tuple[int, str, bool, str]] = []


class _Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.detail if ok else f"{exc_type.__name__}: {exc}".splitlines()[0]
        _ACCEPTANCE.append((self.number, self.title, ok, detail))
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}" + (f" | {detail}" if detail else ""))
