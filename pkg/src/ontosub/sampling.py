"""Positive extraction, splits, training negatives, evaluation negative
pools, and inter-ontology subsumption derivation.

Training negatives and evaluation pools always exclude the declared-or-
entailed subsumers of the child, computed on the full (unmasked) hierarchy,
so a masked edge can never surface as a false negative.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field, replace
from typing import IO, Iterable

from .hierarchy import ClassHierarchy
from .ontology import (
    ClassRef,
    Iri,
    Ontology,
    Restriction,
    class_ref_from_json,
    class_ref_to_json,
    ref_sort_key,
    ref_token,
)
from .util import derive_rng

logger = logging.getLogger(__name__)

NAMED = "named"
EXISTENTIAL = "existential"


@dataclass(frozen=True)
class SubsumptionAxiom:
    child: Iri
    parent: ClassRef
    kind: str

    def __post_init__(self):
        if self.kind == NAMED and isinstance(self.parent, Restriction):
            raise ValueError("named axiom cannot have a restriction parent")
        if self.kind == EXISTENTIAL and not isinstance(self.parent, Restriction):
            raise ValueError("existential axiom needs a restriction parent")
        if self.kind not in (NAMED, EXISTENTIAL):
            raise ValueError(f"unknown axiom kind: {self.kind!r}")

    def sort_key(self) -> tuple:
        return (self.child,) + ref_sort_key(self.parent)

    def token(self) -> str:
        return f"{self.child}\x1f{ref_token(self.parent)}"


@dataclass(frozen=True)
class LabeledSample:
    axiom: SubsumptionAxiom
    label: int  # 1 positive, 0 negative


@dataclass
class EvalCase:
    gold: SubsumptionAxiom
    negatives: list[ClassRef] = field(default_factory=list)

    @property
    def skipped(self) -> bool:
        return not self.negatives


@dataclass(frozen=True)
class SplitSpec:
    train_frac: float = 0.80
    valid_frac: float = 0.05
    test_frac: float = 0.15
    seed: int = 0

    def __post_init__(self):
        for frac in (self.train_frac, self.valid_frac, self.test_frac):
            if not 0.0 <= frac <= 1.0:
                raise ValueError("split fractions must be within [0, 1]")
        if abs(self.train_frac + self.valid_frac + self.test_frac - 1.0) > 1e-9:
            raise ValueError("split fractions must sum to 1")


class EmptyNegativePool(Exception):
    def __init__(self, child: Iri):
        self.child = child
        super().__init__(f"no negative candidates left for {child}")


def extract_positives(onto: Ontology, kind: str) -> list[SubsumptionAxiom]:
    """All declared subsumptions of the requested kind, in canonical order."""
    if kind == NAMED:
        axioms = [SubsumptionAxiom(c, p, NAMED) for c, p in onto.named_subsumptions]
    elif kind == EXISTENTIAL:
        axioms = [SubsumptionAxiom(c, r, EXISTENTIAL) for c, r in onto.restriction_axioms]
    else:
        raise ValueError(f"unknown axiom kind: {kind!r}")
    return sorted(axioms, key=SubsumptionAxiom.sort_key)


def split(
    positives: list[SubsumptionAxiom], spec: SplitSpec
) -> tuple[list[SubsumptionAxiom], list[SubsumptionAxiom], list[SubsumptionAxiom]]:
    """Disjoint train/valid/test cover; floor-rounded sizes with the
    remainder assigned to train; membership decided by a seeded shuffle."""
    pool = sorted(positives, key=SubsumptionAxiom.sort_key)
    rng = derive_rng(spec.seed, "split")
    rng.shuffle(pool)
    n = len(pool)
    n_valid = int(n * spec.valid_frac)
    n_test = int(n * spec.test_frac)
    n_train = n - n_valid - n_test
    train = pool[:n_train]
    valid = pool[n_train : n_train + n_valid]
    test = pool[n_train + n_valid :]
    return train, valid, test


def _draw_excluding(pool: list, excluded: set, rng: random.Random, attempts: int = 64):
    """Uniform draw from pool minus excluded, or None when nothing remains.

    Rejection sampling first (each accepted draw is uniform over the
    complement), falling back to materializing the complement when the
    excluded set dominates; both branches draw from the same distribution.
    """
    if not pool:
        return None
    for _ in range(attempts):
        candidate = pool[rng.randrange(len(pool))]
        if candidate not in excluded:
            return candidate
    remaining = [c for c in pool if c not in excluded]
    return rng.choice(remaining) if remaining else None


def negative_for_training(
    pos: SubsumptionAxiom, hier: ClassHierarchy, rng: random.Random
) -> SubsumptionAxiom:
    """Replace the parent by a uniform draw over same-kind candidates,
    excluding the child and all its declared or entailed subsumers."""
    if pos.kind == NAMED:
        excluded = hier.entailed_ancestors(pos.child) | {pos.child, pos.parent}
        parent = _draw_excluding(hier.nodes, excluded, rng)
    else:
        excluded_r = hier.entailed_restriction_subsumers(pos.child) | {pos.parent}
        parent = _draw_excluding(hier.restrictions, excluded_r, rng)
    if parent is None:
        raise EmptyNegativePool(pos.child)
    return replace(pos, parent=parent)


def eval_pool_named(
    gold: SubsumptionAxiom,
    hier: ClassHierarchy,
    m: int = 8,
    h: int = 3,
    cap: int = 50,
    rng: random.Random | None = None,
) -> EvalCase:
    """Challenging negatives from the gold parent's hop-limited neighborhood,
    with the child, the parent and the child's entailed subsumers removed;
    capped at `cap` by seeded subsampling (dedup happens before the cap)."""
    rng = rng or random.Random(0)
    if gold.parent not in hier:
        return EvalCase(gold)
    pool = hier.neighborhood(gold.parent, m, h, rng)
    pool -= {gold.child, gold.parent}
    if gold.child in hier:  # inter-ontology children live in the other ontology
        pool -= hier.entailed_ancestors(gold.child)
    ordered = sorted(pool)
    if len(ordered) > cap:
        ordered = sorted(rng.sample(ordered, cap))
    return EvalCase(gold, list(ordered))


def eval_pool_restriction(
    gold: SubsumptionAxiom,
    hier: ClassHierarchy,
    n1: int = 40,
    n2: int = 10,
    rng: random.Random | None = None,
) -> EvalCase:
    """Up to n1 negatives sharing the gold parent's property or a filler
    class, plus up to n2 from the remaining restriction inventory."""
    rng = rng or random.Random(0)
    assert isinstance(gold.parent, Restriction)
    excluded = hier.entailed_restriction_subsumers(gold.child) | {gold.parent}
    fillers = set(gold.parent.fillers)
    related = []
    others = []
    for r in hier.restrictions:
        if r in excluded:
            continue
        if r.property == gold.parent.property or fillers & set(r.fillers):
            related.append(r)
        else:
            others.append(r)
    negatives = list(related) if len(related) <= n1 else rng.sample(related, n1)
    negatives += list(others) if len(others) <= n2 else rng.sample(others, n2)
    return EvalCase(gold, sorted(set(negatives), key=ref_sort_key))


def build_eval_cases(
    golds: Iterable[SubsumptionAxiom],
    hier: ClassHierarchy,
    seed: int,
    m: int = 8,
    h: int = 3,
    cap: int = 50,
    n1: int = 40,
    n2: int = 10,
    jobs: int = 1,
) -> list[EvalCase]:
    """One EvalCase per gold axiom. Each case draws from its own derived RNG
    stream, so worker fan-out cannot change the result."""

    def build(gold: SubsumptionAxiom) -> EvalCase:
        rng = derive_rng(seed, "evalpool", gold.token())
        if gold.kind == NAMED:
            return eval_pool_named(gold, hier, m, h, cap, rng)
        return eval_pool_restriction(gold, hier, n1, n2, rng)

    golds = list(golds)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(build, golds))
    return [build(gold) for gold in golds]


# -- inter-ontology subsumptions ----------------------------------------------


def derive_inter_subsumptions(
    mappings: list[tuple[Iri, Iri]], onto_b: Ontology
) -> tuple[list[SubsumptionAxiom], Ontology]:
    """Turn equivalence mappings (c1 in A, c2 in B) into gold subsumptions
    (c1, c2') for every declared named parent c2' of c2, and return a copy of
    B with each mapped c2 deleted (no edge re-wiring). A mapped class that is
    itself an emitted parent survives deletion. Mappings whose target is not
    a class of B are skipped with a warning."""
    parents_by_child: dict[Iri, list[Iri]] = {}
    for c, p in onto_b.named_subsumptions:
        parents_by_child.setdefault(c, []).append(p)

    axioms: set[SubsumptionAxiom] = set()
    targets: set[Iri] = set()
    emitted_parents: set[Iri] = set()
    for c1, c2 in mappings:
        if c2 not in onto_b.classes:
            logger.warning("mapping target %s not in ontology B; skipped", c2)
            continue
        targets.add(c2)
        for parent in parents_by_child.get(c2, ()):
            axioms.add(SubsumptionAxiom(c1, parent, NAMED))
            emitted_parents.add(parent)

    removed = targets - emitted_parents
    pruned = Ontology(
        classes=onto_b.classes - removed,
        properties=set(onto_b.properties),
        labels={k: list(v) for k, v in onto_b.labels.items() if k[0] not in removed},
        named_subsumptions={
            (c, p) for c, p in onto_b.named_subsumptions if c not in removed and p not in removed
        },
        restriction_axioms={
            (c, r)
            for c, r in onto_b.restriction_axioms
            if c not in removed and not (set(r.fillers) & removed)
        },
    )
    pruned.validate()
    return sorted(axioms, key=SubsumptionAxiom.sort_key), pruned


def split_inter(
    axioms: list[SubsumptionAxiom], seed: int
) -> tuple[list[SubsumptionAxiom], list[SubsumptionAxiom]]:
    """25% validation / 75% test; there is no training portion because
    training uses the intra-ontology subsumptions of each ontology."""
    pool = sorted(axioms, key=SubsumptionAxiom.sort_key)
    rng = derive_rng(seed, "split-inter")
    rng.shuffle(pool)
    n_valid = len(pool) // 4
    return pool[:n_valid], pool[n_valid:]


def read_mappings_tsv(stream: IO[str]) -> list[tuple[Iri, Iri]]:
    """Two-column TSV of equivalence pairs; blank lines and #-comments
    allowed."""
    mappings = []
    for line_number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2 or not parts[0] or not parts[1]:
            raise ValueError(f"mappings line {line_number}: expected two IRI columns")
        mappings.append((parts[0], parts[1]))
    return mappings


# -- eval-set serialization ----------------------------------------------------


def eval_case_to_json(case: EvalCase) -> dict:
    return {
        "child": case.gold.child,
        "gold_parent": class_ref_to_json(case.gold.parent),
        "negatives": [class_ref_to_json(ref) for ref in case.negatives],
    }


def eval_case_from_json(obj: dict) -> EvalCase:
    parent = class_ref_from_json(obj["gold_parent"])
    kind = EXISTENTIAL if isinstance(parent, Restriction) else NAMED
    return EvalCase(
        SubsumptionAxiom(obj["child"], parent, kind),
        [class_ref_from_json(ref) for ref in obj["negatives"]],
    )


def write_eval_cases_jsonl(cases: Iterable[EvalCase], stream: IO[str]) -> None:
    for case in cases:
        stream.write(json.dumps(eval_case_to_json(case), sort_keys=True))
        stream.write("\n")


def read_eval_cases_jsonl(stream: IO[str]) -> list[EvalCase]:
    return [eval_case_from_json(json.loads(line)) for line in stream if line.strip()]
