import pytest
from hypothesis import given, settings, strategies as st

from tmku import TopKMap, riu_seed
from tmku.harness import MiningConfig, build_tree, run, select
from conftest import B, D, G, ids, seeded_databases


@pytest.mark.parametrize("target, k, expected", [([B, D], 3, 25), ([B, D], 10, 0), ([], 1, 33), ([G], 1, 13)])
def test_riu_seed(table1, target, k, expected):
    assert riu_seed(table1, target, k) == expected


def test_offer_sequence():
    m = TopKMap(3)
    for i, u in enumerate([27, 26, 25, 43]):
        m.offer(("x", i), u, i)
    assert sorted(u for _, u in m.results()) == [26, 27, 43]
    assert m.eta == 26


def test_ties_keep_first_discovered():
    m = TopKMap(2)
    for i in range(3):
        m.offer((i,), 10, i)
    assert [x for x, _ in m.results()] == [(0,), (1,)]


def test_under_capacity_keeps_seed():
    m = TopKMap(5, seed=4)
    m.offer((1,), 7)
    assert m.results() == [((1,), 7)]
    assert m.eta == 4


def test_seed_does_not_block_boundary_ties():
    # a seed of 25 certifies three itemsets worth >= 25 exist; the 25 must still get in
    m = TopKMap(3, seed=25)
    for i, u in enumerate([10, 10, 10, 25, 40, 30]):
        m.offer((i,), u, i)
    assert [u for _, u in m.results()] == [40, 30, 25]


@settings(max_examples=200)
@given(st.integers(1, 8), st.lists(st.integers(0, 20), max_size=40))
def test_topk_matches_sorting(k, utilities):
    m = TopKMap(k)
    etas = []
    for i, u in enumerate(utilities):
        m.offer((i,), u, i)
        etas.append(m.eta)
        assert len(m) <= k
        if len(m) == k:
            assert m.eta == m.min_utility()
    assert etas == sorted(etas)
    expected = sorted(enumerate(utilities), key=lambda p: (-p[1], p[0]))[:k]
    assert m.results() == [((i,), u) for i, u in expected]


def test_results_bd(table1):
    tree, _ = build_tree(table1, 1)
    topk, _, _ = select(table1, tree, MiningConfig(target=(B, D), k=3))
    assert [(frozenset(x), u) for x, u in topk.results()] == [(ids("db"), 43), (ids("fcdb"), 27), (ids("edb"), 26)]
    topk, n, _ = select(table1, build_tree(table1, 25)[0], MiningConfig(target=(B, D), k=10, min_util=25))
    assert len(topk.results()) == n == 4


def test_results_g(table1):
    assert run(MiningConfig(target=(G,), k=3, min_util=25), table1).results == []
    assert [u for _, u in run(MiningConfig(target=(G,), k=3), table1).results] == [18, 16, 15]


@pytest.mark.parametrize("db", seeded_databases(30, seed=5), ids=lambda _: "")
def test_seeding_is_only_an_accelerator(db):
    tree, _ = build_tree(db, 1)
    items = sorted(db.twu)
    for target in ([], items[:1], items[-2:]):
        for k in (1, 3, 7):
            base = select(db, tree, MiningConfig(target=target, k=k, use_riu=False))[0].results()
            seeded = select(db, tree, MiningConfig(target=target, k=k))[0].results()
            fed = select(db, tree, MiningConfig(target=target, k=k, eta_feedback=True))[0].results()
            assert base == seeded == fed


def test_eta_never_decreases_from_seed():
    m = TopKMap(2, seed=30)
    for i, u in enumerate([5, 6, 50, 40]):
        m.offer((i,), u, i)
        assert m.eta >= 30
    assert m.eta == 40
