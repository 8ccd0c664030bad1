"""Sentence-pair templates for candidate subsumptions.

IC renders the two classes in isolation, PC renders depth-first hierarchy
paths (down for the child, up for the parent), and BC renders breadth-first
context sequences. All randomness is derived from the config seed and the
identity of the subsumption, so a pair list is reproducible regardless of
execution order; truncation to max_pairs is seeded uniform sampling rather
than prefix-taking to avoid ordering bias.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, replace
from typing import Sequence

from .hierarchy import DOWN, UP, ClassHierarchy
from .ontology import ClassRef, Iri, Ontology, Restriction, ref_token
from .util import derive_rng
from .verbalize import LabelPolicy, PrepositionTable, ref_labels

IC = "ic"
PC = "pc"
BC = "bc"
_KINDS = (IC, PC, BC)


@dataclass(frozen=True)
class TemplateConfig:
    kind: str = IC
    depth: int = 1
    width: int = 4
    traversals: int = 2
    sep_token: str = "[SEP]"
    max_pairs: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown template kind: {self.kind!r}")
        if self.depth < 1 or self.width < 1 or self.max_pairs < 1 or self.traversals < 1:
            raise ValueError("depth, width, traversals and max_pairs must be >= 1")


@dataclass(frozen=True)
class SentencePair:
    sentence_a: str
    sentence_b: str
    child: Iri
    parent: ClassRef
    template: str


@dataclass(frozen=True)
class OntologyContext:
    """Ontology plus its traversal hierarchy; the two sides of an
    inter-ontology subsumption carry different contexts."""

    ontology: Ontology
    hierarchy: ClassHierarchy


def _pick(candidates: Sequence, width: int, rng: random.Random) -> list:
    """At most `width` of the candidates, canonical order preserved."""
    if len(candidates) <= width:
        return list(candidates)
    chosen = rng.sample(list(candidates), width)
    order = {c: i for i, c in enumerate(candidates)}
    return sorted(chosen, key=order.__getitem__)


def _sample_indices(total: int, cap: int, rng: random.Random) -> list[int]:
    if total <= cap:
        return list(range(total))
    return sorted(rng.sample(range(total), cap))


def _capped_product(lists: list[list[str]], cap: int, rng: random.Random) -> list[tuple[str, ...]]:
    """The cross product of label choices, uniformly subsampled past `cap`.

    Avoids materializing huge products by decoding sampled mixed-radix
    indices.
    """
    total = math.prod(len(lst) for lst in lists)
    if total <= cap:
        return list(itertools.product(*lists))
    out = []
    for idx in _sample_indices(total, cap, rng):
        combo = []
        for lst in reversed(lists):
            idx, pos = divmod(idx, len(lst))
            combo.append(lst[pos])
        out.append(tuple(reversed(combo)))
    return out


def _dedup(items: list) -> list:
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def _pair_up(
    sentences_a: list[str],
    sentences_b: list[str],
    c1: Iri,
    c2: ClassRef,
    cfg: TemplateConfig,
    rng: random.Random,
) -> list[SentencePair]:
    total = len(sentences_a) * len(sentences_b)
    pairs = []
    for idx in _sample_indices(total, cfg.max_pairs, rng):
        i, j = divmod(idx, len(sentences_b))
        pairs.append(SentencePair(sentences_a[i], sentences_b[j], c1, c2, cfg.kind))
    return pairs


# -- Isolated Class ----------------------------------------------------------


def ic_pairs(
    onto: Ontology,
    c1: Iri,
    c2: ClassRef,
    policy: LabelPolicy,
    cfg: TemplateConfig,
    onto_b: Ontology | None = None,
    preps: PrepositionTable = PrepositionTable(),
) -> list[SentencePair]:
    """Cross product of the two sides' labels, capped at max_pairs."""
    rng = derive_rng(cfg.seed, "ic", c1, ref_token(c2))
    labels_a = ref_labels(onto, c1, policy, preps)
    labels_b = ref_labels(onto_b or onto, c2, policy, preps)
    return _pair_up(labels_a, labels_b, c1, c2, replace(cfg, kind=IC), rng)


# -- Path Context ------------------------------------------------------------


def pc_paths(
    hier: ClassHierarchy,
    c: ClassRef,
    direction: str,
    depth: int,
    width: int,
    rng: random.Random,
) -> list[list[ClassRef]]:
    """Depth-first paths from c: down toward descendants for a child class,
    up toward ancestors for a parent. A restriction has the single path [c].

    At each step at most `width` next classes are kept (seeded uniform,
    without replacement); a path ends at a leaf/root or at depth steps.
    """
    if isinstance(c, Restriction):
        return [[c]]
    step = hier.children_of if direction == DOWN else hier.parents_of
    paths: list[list[ClassRef]] = []

    def walk(node: Iri, path: list[ClassRef]) -> None:
        if len(path) == depth + 1:
            paths.append(path)
            return
        nexts = [x for x in step(node) if x not in path]
        if not nexts:
            paths.append(path)
            return
        for x in _pick(nexts, width, rng):
            walk(x, path + [x])

    walk(c, [c])
    return paths


def _render_sequence(
    onto: Ontology,
    seq: list[ClassRef],
    policy: LabelPolicy,
    sep_token: str,
    cap: int,
    rng: random.Random,
    preps: PrepositionTable,
) -> list[str]:
    label_lists = [ref_labels(onto, ref, policy, preps) for ref in seq]
    joiner = f" {sep_token} "
    return [joiner.join(combo) for combo in _capped_product(label_lists, cap, rng)]


def pc_pairs(
    ctx_child: OntologyContext,
    ctx_parent: OntologyContext,
    c1: Iri,
    c2: ClassRef,
    policy: LabelPolicy,
    cfg: TemplateConfig,
    preps: PrepositionTable = PrepositionTable(),
) -> list[SentencePair]:
    """Each side's paths rendered with one label per class, then crossed."""
    rng = derive_rng(cfg.seed, "pc", c1, ref_token(c2))
    paths_a = pc_paths(ctx_child.hierarchy, c1, DOWN, cfg.depth, cfg.width, rng)
    paths_b = pc_paths(ctx_parent.hierarchy, c2, UP, cfg.depth, cfg.width, rng)
    sentences_a = _dedup(
        [
            s
            for path in paths_a
            for s in _render_sequence(
                ctx_child.ontology, path, policy, cfg.sep_token, cfg.max_pairs, rng, preps
            )
        ]
    )
    sentences_b = _dedup(
        [
            s
            for path in paths_b
            for s in _render_sequence(
                ctx_parent.ontology, path, policy, cfg.sep_token, cfg.max_pairs, rng, preps
            )
        ]
    )
    return _pair_up(sentences_a, sentences_b, c1, c2, replace(cfg, kind=PC), rng)


# -- Breadth-first Context ---------------------------------------------------


def bc_sequence(
    hier: ClassHierarchy,
    c: ClassRef,
    direction: str,
    depth: int,
    width: int,
    rng: random.Random,
) -> list[ClassRef]:
    """Breadth-first context sequence: the class followed by the context
    subsumptions discovered level by level, each appended as (subclass,
    superclass). At most `width` subsumptions are expanded per depth. A
    restriction's sequence is just [c]."""
    if isinstance(c, Restriction):
        return [c]
    seq: list[ClassRef] = [c]
    frontier = [c]
    visited = {c}
    for _ in range(depth):
        candidates: list[tuple[Iri, Iri]] = []
        if direction == DOWN:
            for y in frontier:
                candidates.extend((x, y) for x in hier.children_of(y) if x not in visited)
        else:
            for x in frontier:
                candidates.extend((x, y) for y in hier.parents_of(x) if y not in visited)
        if not candidates:
            break
        chosen = _pick(candidates, width, rng)
        nxt: list[Iri] = []
        for sub, sup in chosen:
            seq.extend((sub, sup))
            new = sub if direction == DOWN else sup
            if new not in visited:
                visited.add(new)
                nxt.append(new)
        frontier = nxt
    return seq


def bc_pairs(
    ctx_child: OntologyContext,
    ctx_parent: OntologyContext,
    c1: Iri,
    c2: ClassRef,
    policy: LabelPolicy,
    cfg: TemplateConfig,
    preps: PrepositionTable = PrepositionTable(),
) -> list[SentencePair]:
    """cfg.traversals independent sequences per side, rendered and crossed."""
    rng = derive_rng(cfg.seed, "bc", c1, ref_token(c2))

    def side(ctx: OntologyContext, ref: ClassRef, direction: str, tag: str) -> list[str]:
        sentences = []
        for t in range(cfg.traversals):
            walk_rng = derive_rng(cfg.seed, "bc", c1, ref_token(c2), tag, t)
            seq = bc_sequence(ctx.hierarchy, ref, direction, cfg.depth, cfg.width, walk_rng)
            sentences.extend(
                _render_sequence(ctx.ontology, seq, policy, cfg.sep_token, cfg.max_pairs, walk_rng, preps)
            )
        return _dedup(sentences)

    sentences_a = side(ctx_child, c1, DOWN, "a")
    sentences_b = side(ctx_parent, c2, UP, "b")
    return _pair_up(sentences_a, sentences_b, c1, c2, replace(cfg, kind=BC), rng)


# -- dispatcher --------------------------------------------------------------


def subsumption_pairs(
    ctx_child: OntologyContext,
    ctx_parent: OntologyContext,
    c1: Iri,
    c2: ClassRef,
    policy: LabelPolicy,
    cfg: TemplateConfig,
    preps: PrepositionTable = PrepositionTable(),
) -> list[SentencePair]:
    """Sentence pairs of one candidate subsumption under the configured
    template; the two contexts may come from different ontologies."""
    if cfg.kind == IC:
        return ic_pairs(ctx_child.ontology, c1, c2, policy, cfg, ctx_parent.ontology, preps)
    if cfg.kind == PC:
        return pc_pairs(ctx_child, ctx_parent, c1, c2, policy, cfg, preps)
    return bc_pairs(ctx_child, ctx_parent, c1, c2, policy, cfg, preps)
