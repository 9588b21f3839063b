"""Targeted top-k high-utility itemset mining over a TP-tree."""

from .dataset import (
    Database,
    EmptyDatabaseError,
    ParseError,
    Transaction,
    compute_twu,
    dump_spmf,
    itemset_utility,
    load_spmf,
    parse_spmf,
)
from .harness import MiningConfig, RunReport, bench, oracle_topk, run, synth_scale
from .huicore import VARIANTS, CandidateCounter, Strategies, UtilityList, build_initial_lists, join_lists, mine
from .query import match_bottom_up, query
from .topk import TopKMap, riu_seed
from .tptree import TPNode, TPTree, find_child, path_itemset

__all__ = [
    "Database", "EmptyDatabaseError", "ParseError", "Transaction", "compute_twu", "dump_spmf",
    "itemset_utility", "load_spmf", "parse_spmf", "MiningConfig", "RunReport", "bench", "oracle_topk",
    "run", "synth_scale", "VARIANTS", "CandidateCounter", "Strategies", "UtilityList",
    "build_initial_lists", "join_lists", "mine", "match_bottom_up", "query", "TopKMap", "riu_seed",
    "TPNode", "TPTree", "find_child", "path_itemset",
]
