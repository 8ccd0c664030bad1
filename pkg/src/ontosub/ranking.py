"""Rank evaluation cases through a scorer and aggregate MRR / Hits@K.

Every candidate (gold plus negatives) is rendered to sentence pairs with the
case's child under the configured template; the pair scores of a candidate
are averaged into its score. Ties are broken pessimistically by default: the
gold ranks below every equal-scoring negative, so a constant scorer can
never look good.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .ontology import ClassRef, Iri, class_ref_to_json
from .sampling import EvalCase
from .scoring import Scorer, aggregate_candidate
from .templates import OntologyContext, TemplateConfig, subsumption_pairs
from .verbalize import LabelPolicy, PrepositionTable

PESSIMISTIC = "pessimistic"
OPTIMISTIC = "optimistic"
MIDPOINT = "midpoint"
_TIE_RULES = (PESSIMISTIC, OPTIMISTIC, MIDPOINT)

HITS_KS = (1, 5, 10)


@dataclass(frozen=True)
class RankingResult:
    child: Iri
    gold_parent: ClassRef
    gold_rank: int
    pool_size: int

    def __post_init__(self):
        if not 1 <= self.gold_rank <= self.pool_size + 1:
            raise ValueError("gold_rank must lie in [1, pool_size + 1]")


@dataclass(frozen=True)
class Metrics:
    mrr: float
    hits: dict[int, float]
    n_cases: int
    n_skipped: int


def gold_rank_from_scores(gold_score: float, negative_scores: Sequence[float], tie: str = PESSIMISTIC) -> int:
    if tie not in _TIE_RULES:
        raise ValueError(f"unknown tie rule: {tie!r}")
    greater = sum(1 for s in negative_scores if s > gold_score)
    equal = sum(1 for s in negative_scores if s == gold_score)
    if tie == PESSIMISTIC:
        return 1 + greater + equal
    if tie == OPTIMISTIC:
        return 1 + greater
    return 1 + greater + equal // 2


def rank_case(
    case: EvalCase,
    ctx_child: OntologyContext,
    ctx_parent: OntologyContext,
    scorer: Scorer,
    policy: LabelPolicy,
    cfg: TemplateConfig,
    tie: str = PESSIMISTIC,
    preps: PrepositionTable = PrepositionTable(),
) -> RankingResult | None:
    """Rank the gold parent against the case's negative pool; None when the
    pool is empty (the case is skipped, not scored)."""
    if case.skipped:
        return None

    def candidate_score(parent: ClassRef) -> float:
        pairs = subsumption_pairs(ctx_child, ctx_parent, case.gold.child, parent, policy, cfg, preps)
        return aggregate_candidate(scorer.score(pairs))

    gold_score = candidate_score(case.gold.parent)
    negative_scores = [candidate_score(ref) for ref in case.negatives]
    return RankingResult(
        child=case.gold.child,
        gold_parent=case.gold.parent,
        gold_rank=gold_rank_from_scores(gold_score, negative_scores, tie),
        pool_size=len(case.negatives),
    )


def compute_metrics(results: Iterable[RankingResult], n_skipped: int = 0) -> Metrics:
    ranks = [r.gold_rank for r in results]
    if not ranks:
        return Metrics(mrr=0.0, hits={k: 0.0 for k in HITS_KS}, n_cases=0, n_skipped=n_skipped)
    mrr = sum(1.0 / rank for rank in ranks) / len(ranks)
    hits = {k: sum(1 for rank in ranks if rank <= k) / len(ranks) for k in HITS_KS}
    return Metrics(mrr=mrr, hits=hits, n_cases=len(ranks), n_skipped=n_skipped)


def evaluate_cases(
    cases: Iterable[EvalCase],
    ctx_child: OntologyContext,
    ctx_parent: OntologyContext,
    scorer: Scorer,
    policy: LabelPolicy,
    cfg: TemplateConfig,
    tie: str = PESSIMISTIC,
) -> tuple[Metrics, list[RankingResult]]:
    results = []
    skipped = 0
    for case in cases:
        result = rank_case(case, ctx_child, ctx_parent, scorer, policy, cfg, tie)
        if result is None:
            skipped += 1
        else:
            results.append(result)
    return compute_metrics(results, n_skipped=skipped), results


def write_report(metrics: Metrics, results: list[RankingResult], stream: IO[str]) -> None:
    """JSON report: per-case ranks plus the aggregate metrics."""
    doc = {
        "metrics": {
            "mrr": metrics.mrr,
            "hits": {str(k): v for k, v in sorted(metrics.hits.items())},
            "n_cases": metrics.n_cases,
            "n_skipped": metrics.n_skipped,
        },
        "cases": [
            {
                "child": r.child,
                "gold_parent": class_ref_to_json(r.gold_parent),
                "gold_rank": r.gold_rank,
                "pool_size": r.pool_size,
            }
            for r in results
        ],
    }
    json.dump(doc, stream, indent=2)
    stream.write("\n")
