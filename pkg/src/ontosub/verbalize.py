"""Natural-language labels for classes, properties, and existential
restrictions.

A named entity is rendered from its annotation labels, falling back to its
IRI local name (split on camelCase/underscore/hyphen boundaries, lowercased)
when no configured property yields one. A restriction renders as
"something <property label> [of] <filler label(s)>", inserting "of" only
when the property label does not already end with a preposition.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from . import vocab
from .ontology import FILLER_AND, FILLER_NAMED, Iri, Ontology, Restriction

SINGLE = "single"
MULTI = "multi"

DEFAULT_PREPOSITIONS = frozenset(
    "of in on at by from to with for about as into over under".split()
)


class NoLabel(LookupError):
    """No label and no parseable IRI local name for an entity."""

    def __init__(self, iri: Iri):
        self.iri = iri
        super().__init__(f"no label for {iri}")


@dataclass(frozen=True)
class PrepositionTable:
    prepositions: frozenset[str] = DEFAULT_PREPOSITIONS

    def __post_init__(self):
        for token in self.prepositions:
            if token != token.lower() or any(ch.isspace() for ch in token):
                raise ValueError(f"prepositions must be lowercase single tokens: {token!r}")

    def ends_with_preposition(self, label: str) -> bool:
        tokens = label.split()
        return bool(tokens) and tokens[-1].lower() in self.prepositions


@dataclass(frozen=True)
class LabelPolicy:
    """Which annotation properties to read and whether to keep one label or all.

    Single mode uses the first property that yields a label (lexicographic
    tie-break within it); multi mode keeps every label of every configured
    property, deduplicated case-insensitively, property order preserved.
    """

    mode: str = SINGLE
    annotation_properties: tuple[Iri, ...] = (vocab.RDFS_LABEL,)

    def __post_init__(self):
        if self.mode not in (SINGLE, MULTI):
            raise ValueError(f"unknown label mode: {self.mode!r}")
        if not self.annotation_properties:
            raise ValueError("annotation_properties must be non-empty")


_CAMEL_RE = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")


def local_name(iri: Iri) -> str:
    fragment = iri.rsplit("#", 1)[-1]
    if fragment == iri:
        fragment = iri.rsplit("/", 1)[-1]
    return fragment


def parse_iri_name(iri: Iri) -> str:
    """Readable text from an IRI local name, e.g. vc:ProcessedLegumes ->
    "processed legumes"."""
    name = local_name(iri)
    name = _CAMEL_RE.sub(" ", name)
    name = re.sub(r"[_\-]+", " ", name)
    return " ".join(name.split()).lower()


def entity_labels(onto: Ontology, iri: Iri, policy: LabelPolicy) -> list[str]:
    """Labels of a class or property under the policy, IRI fallback included."""
    if policy.mode == SINGLE:
        for prop in policy.annotation_properties:
            values = onto.label_values(iri, prop)
            if values:
                return [sorted(values)[0]]
    else:
        seen: set[str] = set()
        collected: list[str] = []
        for prop in policy.annotation_properties:
            for value in onto.label_values(iri, prop):
                key = value.casefold()
                if key not in seen:
                    seen.add(key)
                    collected.append(value)
        if collected:
            return collected
    fallback = parse_iri_name(iri)
    if not fallback:
        raise NoLabel(iri)
    return [fallback]


def class_labels(onto: Ontology, c: Iri, policy: LabelPolicy) -> list[str]:
    return entity_labels(onto, c, policy)


def verbalize_restriction(
    onto: Ontology,
    r: Restriction,
    policy: LabelPolicy,
    preps: PrepositionTable = PrepositionTable(),
) -> list[str]:
    """Sentence forms of an existential restriction.

    Multi mode returns the cross product of property-label and filler-label
    choices; single mode returns exactly one sentence.
    """
    property_labels = entity_labels(onto, r.property, policy)
    filler_label_lists = [entity_labels(onto, f, policy) for f in r.fillers]
    connective = " and " if r.filler_kind == FILLER_AND else " or "

    out: list[str] = []
    seen: set[str] = set()
    for plabel in property_labels:
        filler_prefix = "" if preps.ends_with_preposition(plabel) else " of"
        for combo in itertools.product(*filler_label_lists):
            filler_text = combo[0] if r.filler_kind == FILLER_NAMED else connective.join(combo)
            sentence = f"something {plabel}{filler_prefix} {filler_text}"
            if sentence not in seen:
                seen.add(sentence)
                out.append(sentence)
    return out


def ref_labels(onto: Ontology, ref, policy: LabelPolicy, preps: PrepositionTable = PrepositionTable()) -> list[str]:
    """Labels of a named class or the sentence forms of a restriction."""
    if isinstance(ref, Restriction):
        return verbalize_restriction(onto, ref, policy, preps)
    return class_labels(onto, ref, policy)
