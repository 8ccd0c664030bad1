"""End-to-end corpus construction and serialization.

Positives are extracted and split; the valid/test edges are removed from the
hierarchy handed to the templates so path/breadth contexts cannot leak them;
training (and validation) positives each get negatives; everything is
rendered to sentence pairs and emitted as JSONL records in stable axiom
order. With fixed seeds the output is byte-identical across runs and worker
counts.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable

from .hierarchy import ClassHierarchy
from .ontology import (
    ClassRef,
    FILLER_NAMED,
    Iri,
    Ontology,
    Restriction,
    class_ref_from_json,
    class_ref_to_json,
)
from .sampling import (
    EXISTENTIAL,
    NAMED,
    EmptyNegativePool,
    SplitSpec,
    SubsumptionAxiom,
    extract_positives,
    negative_for_training,
    split,
)
from .templates import OntologyContext, TemplateConfig, subsumption_pairs
from .util import derive_rng
from .verbalize import LabelPolicy, NoLabel

TRAIN = "train"
VALID = "valid"
TEST = "test"


@dataclass(frozen=True)
class CorpusRecord:
    sample_id: str
    label: int
    sentence_a: str
    sentence_b: str
    child_iri: Iri
    parent_ref: ClassRef
    template: str
    split: str


def _record_id(label: int, a: str, b: str, child: Iri, parent: ClassRef, template: str, split_name: str) -> str:
    payload = json.dumps(
        [label, a, b, child, class_ref_to_json(parent), template, split_name],
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def make_record(
    label: int, a: str, b: str, child: Iri, parent: ClassRef, template: str, split_name: str
) -> CorpusRecord:
    return CorpusRecord(
        sample_id=_record_id(label, a, b, child, parent, template, split_name),
        label=label,
        sentence_a=a,
        sentence_b=b,
        child_iri=child,
        parent_ref=parent,
        template=template,
        split=split_name,
    )


@dataclass
class BuildReport:
    n_positives: int = 0
    n_records: dict = field(default_factory=dict)
    skipped_no_label: int = 0
    skipped_empty_pool: int = 0


def _axiom_records(
    axiom: SubsumptionAxiom,
    split_name: str,
    with_negatives: bool,
    ctx: OntologyContext,
    full_hier: ClassHierarchy,
    cfg: TemplateConfig,
    policy: LabelPolicy,
    neg_ratio: int,
    seed: int,
) -> tuple[list[CorpusRecord], str | None]:
    """Records of one positive axiom and its negatives; failures return a
    reason instead of raising so the build can aggregate them."""
    records: list[CorpusRecord] = []
    try:
        for pair in subsumption_pairs(ctx, ctx, axiom.child, axiom.parent, policy, cfg):
            records.append(
                make_record(1, pair.sentence_a, pair.sentence_b, axiom.child, axiom.parent, cfg.kind, split_name)
            )
    except NoLabel:
        return [], "no_label"
    if with_negatives:
        for k in range(neg_ratio):
            rng = derive_rng(seed, "neg", axiom.token(), k)
            try:
                negative = negative_for_training(axiom, full_hier, rng)
            except EmptyNegativePool:
                return records, "empty_pool"
            try:
                for pair in subsumption_pairs(ctx, ctx, negative.child, negative.parent, policy, cfg):
                    records.append(
                        make_record(
                            0, pair.sentence_a, pair.sentence_b, negative.child, negative.parent, cfg.kind, split_name
                        )
                    )
            except NoLabel:
                return records, "no_label"
    return records, None


def build_corpus(
    onto: Ontology,
    kind: str,
    cfg: TemplateConfig,
    policy: LabelPolicy,
    split_spec: SplitSpec,
    neg_ratio: int = 1,
    jobs: int = 1,
) -> tuple[list[CorpusRecord], BuildReport]:
    """Construct the full corpus for one ontology and task kind.

    Training and validation positives are paired with `neg_ratio` sampled
    negatives each (validation needs both labels for checkpoint selection);
    test positives are emitted without negatives since testing goes through
    ranked evaluation pools. Negative-exclusion reasoning runs on the full
    hierarchy even though rendering uses the masked one.
    """
    positives = extract_positives(onto, kind)
    train, valid, test = split(positives, split_spec)

    full_hier = ClassHierarchy.from_ontology(onto)
    held_out = valid + test
    masked = full_hier.without(
        named_edges=[(a.child, a.parent) for a in held_out if a.kind == NAMED],
        restriction_axioms=[(a.child, a.parent) for a in held_out if a.kind == EXISTENTIAL],
    )
    ctx = OntologyContext(onto, masked)

    report = BuildReport(n_positives=len(positives))
    work = [(axiom, TRAIN, True) for axiom in train]
    work += [(axiom, VALID, True) for axiom in valid]
    work += [(axiom, TEST, False) for axiom in test]

    def run(item: tuple[SubsumptionAxiom, str, bool]):
        axiom, split_name, with_negs = item
        return _axiom_records(
            axiom, split_name, with_negs, ctx, full_hier, cfg, policy, neg_ratio, split_spec.seed
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run, work))
    else:
        outcomes = [run(item) for item in work]

    records: list[CorpusRecord] = []
    for (_, split_name, _), (axiom_records, failure) in zip(work, outcomes):
        records.extend(axiom_records)
        report.n_records[split_name] = report.n_records.get(split_name, 0) + len(axiom_records)
        if failure == "no_label":
            report.skipped_no_label += 1
        elif failure == "empty_pool":
            report.skipped_empty_pool += 1
    return records, report


@dataclass(frozen=True)
class CorpusStats:
    named_classes: int
    restrictions: int
    named_subsumptions: int
    existential_subsumptions: int


def corpus_stats(onto: Ontology) -> CorpusStats:
    """Table-style ontology statistics. Restriction counts cover the plain
    existential form (single named filler); conjunction/disjunction fillers
    are ingested for verbalization but not counted here."""
    plain_axioms = [(c, r) for c, r in onto.restriction_axioms if r.filler_kind == FILLER_NAMED]
    return CorpusStats(
        named_classes=len(onto.classes),
        restrictions=len({r for _, r in plain_axioms}),
        named_subsumptions=len(onto.named_subsumptions),
        existential_subsumptions=len(plain_axioms),
    )


def record_to_json(record: CorpusRecord) -> dict:
    return {
        "sample_id": record.sample_id,
        "label": record.label,
        "sentence_a": record.sentence_a,
        "sentence_b": record.sentence_b,
        "child_iri": record.child_iri,
        "parent_ref": class_ref_to_json(record.parent_ref),
        "template": record.template,
        "split": record.split,
    }


def record_from_json(obj: dict) -> CorpusRecord:
    return CorpusRecord(
        sample_id=obj["sample_id"],
        label=int(obj["label"]),
        sentence_a=obj["sentence_a"],
        sentence_b=obj["sentence_b"],
        child_iri=obj["child_iri"],
        parent_ref=class_ref_from_json(obj["parent_ref"]),
        template=obj["template"],
        split=obj["split"],
    )


def write_corpus_jsonl(records: Iterable[CorpusRecord], stream: IO[str]) -> None:
    for record in records:
        stream.write(json.dumps(record_to_json(record), sort_keys=True, ensure_ascii=False))
        stream.write("\n")


def read_corpus_jsonl(stream: IO[str]) -> list[CorpusRecord]:
    return [record_from_json(json.loads(line)) for line in stream if line.strip()]
