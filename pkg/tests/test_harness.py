import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from tmku import Database, MiningConfig, bench, oracle_topk, run, synth_scale
from tmku.harness import (
    OracleLimitError,
    VariantMismatchError,
    _check_variants,
    generate_database,
    load_matrix,
    random_database,
)
from conftest import B, D, ids, small_databases


def test_oracle_bd(table1):
    assert [u for _, u in oracle_topk(table1, [B, D], 3)] == [43, 27, 26]


def test_oracle_best_overall(table1):
    assert oracle_topk(table1, [], 1) == [((B, D), 43)]


def test_oracle_absent_item(table1):
    assert oracle_topk(table1, [99], 3) == []


def test_oracle_refuses_large_inputs():
    db = Database.from_rows([{i: 1 for i in range(1, 23)}])
    with pytest.raises(OracleLimitError):
        oracle_topk(db, [], 1)


@pytest.mark.parametrize("k, u1, n", [(3, 26, 3), (4, 25, 4), (5, 25, 4)])
def test_run_worked_target_set(table1, k, u1, n):
    report = run(MiningConfig(target=(B, D), k=k, min_util=25), table1)
    assert report.u1 == u1
    assert len(report.results) == n


def test_run_default_threshold_sees_every_thui(table1):
    report = run(MiningConfig(target=(B, D), k=5), table1)
    assert [u for _, u in report.results] == [43, 27, 26, 25, 21]


def test_run_from_path(table1_path):
    report = run(MiningConfig(input_path=str(table1_path), target=(B, D), k=3))
    assert report.u1 == 26
    assert report.to_dict()["schema"] == 1


def test_run_memory_tracking(table1):
    report = run(MiningConfig(target=(B, D), k=3, track_memory=True), table1)
    assert report.peak_memory_bytes > 0


def test_config_validation():
    with pytest.raises(ValueError):
        MiningConfig(k=0)
    with pytest.raises(ValueError):
        MiningConfig(min_util=0)
    with pytest.raises(ValueError):
        MiningConfig(output_format="xml")


def test_bench_table1(table1):
    matrix = [{"k": k, "variant": v} for k in range(1, 7) for v in ("v1", "v2", "full")]
    rows = bench(table1, matrix, target=(B, D))
    assert len(rows) == 18
    for k in range(1, 7):
        cells = [r for r in rows if r["k"] == k]
        oracle = oracle_topk(table1, [B, D], k)
        assert {r["u1"] for r in cells} == {oracle[-1][1]}
        full = next(r for r in cells if r["variant"] == "full")
        assert all(full["candidates"] <= r["candidates"] for r in cells)


def test_bench_parallel_matches_serial(table1):
    matrix = [{"k": k, "variant": v, "eta_feedback": True} for k in (1, 3) for v in ("v1", "full")]
    strip = lambda rows: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in rows]  # noqa: E731
    assert strip(bench(table1, matrix, parallel=True)) == strip(bench(table1, matrix))


def test_bench_empty_matrix(table1):
    with pytest.raises(ValueError):
        bench(table1, [])


def test_bench_unknown_variant(table1):
    with pytest.raises(ValueError):
        bench(table1, [{"k": 1, "variant": "v9"}])


def test_variant_mismatch_names_itemset():
    with pytest.raises(VariantMismatchError, match=r"\(2, 4\)"):
        _check_variants({3: [("full", [((2, 4), 43)]), ("v1", [((2, 5), 43)])]})


def test_load_matrix_grid(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"input": "db.txt", "ks": [1, 2], "variants": ["full", "v1"]}))
    m = load_matrix(path)
    assert m["input"] == str(tmp_path / "db.txt")
    assert len(m["cells"]) == 4


def test_synth_scale(table1):
    assert len(synth_scale(table1, 1, seed=3)) == 7
    assert len(synth_scale(table1, 2, seed=3)) == 14
    assert len(synth_scale(table1, 0.5, seed=3)) == 4
    assert synth_scale(table1, 3, seed=7) == synth_scale(table1, 3, seed=7)
    scaled = synth_scale(table1, 3, seed=7)
    assert [t.tid for t in scaled.transactions] == list(range(1, 22))
    assert {t.entries for t in scaled.transactions} <= {t.entries for t in table1.transactions}
    with pytest.raises(ValueError):
        synth_scale(table1, 0)


def test_generate_database_is_seeded():
    a = generate_database(50, seed=4)
    assert a == generate_database(50, seed=4)
    assert a != generate_database(50, seed=5)
    assert len(a) == 50


@settings(max_examples=40, deadline=None)
@given(small_databases(max_items=7), st.data())
def test_u1_and_candidates_trends(db, data):
    items = sorted(db.twu)
    target = tuple(data.draw(st.lists(st.sampled_from(items), max_size=2, unique=True)))
    ks = range(1, 9)
    off = [run(MiningConfig(target=target, k=k), db) for k in ks]
    on = [run(MiningConfig(target=target, k=k, eta_feedback=True), db) for k in ks]
    u1 = [r.u1 for r in off]
    assert u1 == sorted(u1, reverse=True)
    assert len({r.candidates for r in off}) == 1
    cands = [r.candidates for r in on]
    assert cands == sorted(cands)
    assert [r.results for r in on] == [r.results for r in off]


def test_report_json_is_deterministic(table1):
    a = run(MiningConfig(target=(B, D), k=3), table1).to_json(timing=False)
    b = run(MiningConfig(target=(B, D), k=3), table1).to_json(timing=False)
    assert a == b
    assert "elapsed_ms" not in json.loads(a)


def test_random_database_bounds():
    rng = random.Random(0)
    for _ in range(50):
        db = random_database(rng)
        assert len(db.twu) <= 10 and 1 <= len(db) <= 25
        assert all(1 <= u <= 9 for t in db.transactions for _, u in t.entries)
