"""Independent oracles used by unit and acceptance tests.

These deliberately avoid the library's own traversal/ranking code paths:
the closure oracle runs boolean-matrix repeated squaring, and the rank
oracle re-scores candidates from scratch and counts comparisons directly.
"""

import random

import numpy as np

from ontosub.scoring import aggregate_candidate
from ontosub.templates import subsumption_pairs


def closure_matrix(n: int, edges: list[tuple[int, int]]) -> np.ndarray:
    """Reachability in >= 1 step via repeated squaring of the boolean
    adjacency matrix."""
    adj = np.zeros((n, n), dtype=bool)
    for a, b in edges:
        adj[a, b] = True
    reach = adj.copy()
    for _ in range(max(1, int(np.ceil(np.log2(max(n, 2))))) + 1):
        reach = reach | (reach @ reach)
    return reach | (reach @ adj) | adj


def random_dag(rng: random.Random, max_nodes: int = 50) -> tuple[int, list[tuple[int, int]]]:
    """Random DAG: edges only go from lower to higher node index."""
    n = rng.randint(2, max_nodes)
    edges = []
    for child in range(n - 1):
        for parent in range(child + 1, n):
            if rng.random() < 2.0 / n:
                edges.append((child, parent))
    return n, edges


def brute_force_rank(case, ctx_child, ctx_parent, scorer, policy, cfg) -> int:
    """Pessimistic rank of the gold candidate, recomputed from scratch."""

    def score_of(parent):
        pairs = subsumption_pairs(ctx_child, ctx_parent, case.gold.child, parent, policy, cfg)
        return aggregate_candidate(scorer.score(pairs))

    gold = score_of(case.gold.parent)
    rank = 1
    for ref in case.negatives:
        if score_of(ref) >= gold:
            rank += 1
    return rank
