"""Ontology value type, JSON exchange format, and reconstruction from triples.

An Ontology holds exactly what subsumption-corpus construction needs: named
classes, properties, labels per annotation property, declared named
subsumptions, and existential-restriction axioms. Everything else in the
source RDF is ignored.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Union

from . import vocab
from .ntriples import BlankNode, IriRef, Literal, TripleSet

logger = logging.getLogger(__name__)

Iri = str

FILLER_NAMED = "named"
FILLER_AND = "and"
FILLER_OR = "or"
_FILLER_KINDS = (FILLER_NAMED, FILLER_AND, FILLER_OR)


@dataclass(frozen=True)
class Restriction:
    """Existential restriction used as a subsumer: property some filler.

    The filler is a single named class, or a conjunction/disjunction of two
    or more named classes. Deeper nesting is out of scope.
    """

    property: Iri
    filler_kind: str
    fillers: tuple[Iri, ...]

    def __post_init__(self):
        if self.filler_kind not in _FILLER_KINDS:
            raise ValueError(f"unknown filler kind: {self.filler_kind!r}")
        if self.filler_kind == FILLER_NAMED:
            if len(self.fillers) != 1:
                raise ValueError("named filler needs exactly one class")
        elif len(self.fillers) < 2:
            raise ValueError(f"{self.filler_kind!r} filler needs at least two classes")
        if len(set(self.fillers)) != len(self.fillers):
            raise ValueError("duplicate filler IRIs")
        object.__setattr__(self, "fillers", tuple(self.fillers))

    @property
    def filler(self) -> Iri:
        """The single filler class of a named-filler restriction."""
        if self.filler_kind != FILLER_NAMED:
            raise ValueError("restriction filler is not a single named class")
        return self.fillers[0]

    def sort_key(self) -> tuple:
        return (self.property, self.filler_kind, self.fillers)


ClassRef = Union[Iri, Restriction]


def ref_sort_key(ref: ClassRef) -> tuple:
    """Canonical ordering over mixed named/restriction refs."""
    if isinstance(ref, Restriction):
        return (1,) + ref.sort_key()
    return (0, ref)


def ref_token(ref: ClassRef) -> str:
    """Stable string identity of a ref, for RNG derivation and hashing."""
    if isinstance(ref, Restriction):
        return "|".join(("restriction", ref.property, ref.filler_kind) + ref.fillers)
    return ref


def class_ref_to_json(ref: ClassRef) -> dict:
    if isinstance(ref, Restriction):
        return {
            "kind": "restriction",
            "property": ref.property,
            "filler_kind": ref.filler_kind,
            "fillers": list(ref.fillers),
        }
    return {"kind": "named", "iri": ref}


def class_ref_from_json(obj: dict) -> ClassRef:
    kind = obj.get("kind")
    if kind == "named":
        return obj["iri"]
    if kind == "restriction":
        return Restriction(obj["property"], obj["filler_kind"], tuple(obj["fillers"]))
    raise SchemaViolation("$", f"unknown class-ref kind: {kind!r}")


@dataclass
class Ontology:
    classes: set[Iri] = field(default_factory=set)
    properties: set[Iri] = field(default_factory=set)
    labels: dict[tuple[Iri, Iri], list[str]] = field(default_factory=dict)
    named_subsumptions: set[tuple[Iri, Iri]] = field(default_factory=set)
    restriction_axioms: set[tuple[Iri, Restriction]] = field(default_factory=set)

    def validate(self) -> None:
        """Check structural invariants; raises ValueError on the first breach."""
        known = self.classes | self.properties
        for child, parent in self.named_subsumptions:
            if child == parent:
                raise ValueError(f"reflexive subsumption: {child}")
            if child not in known or parent not in known:
                raise ValueError(f"subsumption references unknown IRI: ({child}, {parent})")
        for child, restriction in self.restriction_axioms:
            if child not in known:
                raise ValueError(f"restriction axiom references unknown child: {child}")
            if restriction.property not in known:
                raise ValueError(f"restriction references unknown property: {restriction.property}")
            for filler in restriction.fillers:
                if filler not in known:
                    raise ValueError(f"restriction references unknown filler: {filler}")

    def label_values(self, iri: Iri, prop: Iri) -> list[str]:
        return self.labels.get((iri, prop), [])

    def restriction_inventory(self) -> list[Restriction]:
        """Distinct restriction expressions, in canonical order."""
        return sorted({r for _, r in self.restriction_axioms}, key=Restriction.sort_key)


class SchemaViolation(ValueError):
    """Ontology JSON does not match the documented schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _expect(obj, typ, path: str):
    if not isinstance(obj, typ):
        raise SchemaViolation(path, f"expected {typ.__name__}, got {type(obj).__name__}")
    return obj


def parse_ontology_json(source: Union[IO, str, bytes]) -> Ontology:
    """Parse the documented ontology JSON exchange format."""
    if isinstance(source, (str, bytes)):
        doc = json.loads(source)
    else:
        doc = json.load(source)
    _expect(doc, dict, "$")
    for key in ("classes", "properties", "labels", "subclass_of", "restrictions"):
        if key not in doc:
            raise SchemaViolation(f"$.{key}", "missing required key")
        _expect(doc[key], list, f"$.{key}")

    onto = Ontology()
    for i, iri in enumerate(doc["classes"]):
        onto.classes.add(_expect(iri, str, f"$.classes[{i}]"))
    for i, iri in enumerate(doc["properties"]):
        onto.properties.add(_expect(iri, str, f"$.properties[{i}]"))
    for i, entry in enumerate(doc["labels"]):
        path = f"$.labels[{i}]"
        _expect(entry, dict, path)
        for key in ("iri", "prop", "values"):
            if key not in entry:
                raise SchemaViolation(f"{path}.{key}", "missing required key")
        iri = _expect(entry["iri"], str, f"{path}.iri")
        prop = _expect(entry["prop"], str, f"{path}.prop")
        values = _expect(entry["values"], list, f"{path}.values")
        for j, v in enumerate(values):
            _expect(v, str, f"{path}.values[{j}]")
        onto.labels.setdefault((iri, prop), []).extend(values)
    for i, pair in enumerate(doc["subclass_of"]):
        path = f"$.subclass_of[{i}]"
        _expect(pair, list, path)
        if len(pair) != 2:
            raise SchemaViolation(path, "expected [child, parent]")
        child = _expect(pair[0], str, f"{path}[0]")
        parent = _expect(pair[1], str, f"{path}[1]")
        onto.named_subsumptions.add((child, parent))
    for i, entry in enumerate(doc["restrictions"]):
        path = f"$.restrictions[{i}]"
        _expect(entry, dict, path)
        for key in ("child", "property", "filler_kind", "fillers"):
            if key not in entry:
                raise SchemaViolation(f"{path}.{key}", "missing required key")
        child = _expect(entry["child"], str, f"{path}.child")
        prop = _expect(entry["property"], str, f"{path}.property")
        kind = _expect(entry["filler_kind"], str, f"{path}.filler_kind")
        fillers = _expect(entry["fillers"], list, f"{path}.fillers")
        for j, f in enumerate(fillers):
            _expect(f, str, f"{path}.fillers[{j}]")
        try:
            restriction = Restriction(prop, kind, tuple(fillers))
        except ValueError as e:
            raise SchemaViolation(path, str(e)) from e
        onto.restriction_axioms.add((child, restriction))
    try:
        onto.validate()
    except ValueError as e:
        raise SchemaViolation("$", str(e)) from e
    return onto


def write_ontology_json(onto: Ontology, stream: IO[str]) -> None:
    """Write the JSON exchange format with deterministic ordering."""
    doc = {
        "classes": sorted(onto.classes),
        "properties": sorted(onto.properties),
        "labels": [
            {"iri": iri, "prop": prop, "values": list(values)}
            for (iri, prop), values in sorted(onto.labels.items())
        ],
        "subclass_of": [list(pair) for pair in sorted(onto.named_subsumptions)],
        "restrictions": [
            {
                "child": child,
                "property": r.property,
                "filler_kind": r.filler_kind,
                "fillers": list(r.fillers),
            }
            for child, r in sorted(onto.restriction_axioms, key=lambda a: (a[0],) + a[1].sort_key())
        ],
    }
    json.dump(doc, stream, indent=2, sort_keys=False)
    stream.write("\n")


@dataclass(frozen=True)
class IngestConfig:
    """Controls label harvesting during reconstruction from triples.

    language_filter keeps literals whose language tag matches or is absent;
    None keeps every literal. It lives here rather than on the label policy
    because tags exist only in the RDF input, not in the exchange format.
    """

    annotation_properties: tuple[Iri, ...] = (vocab.RDFS_LABEL,)
    language_filter: str | None = "en"

    def accepts(self, lang: str | None) -> bool:
        if self.language_filter is None or lang is None:
            return True
        return lang.lower() == self.language_filter.lower() or lang.lower().startswith(
            self.language_filter.lower() + "-"
        )


@dataclass
class IngestReport:
    """Per-ingestion account of skipped or dropped material."""

    dangling_restrictions: list[str] = field(default_factory=list)
    unsupported_restrictions: list[str] = field(default_factory=list)
    dropped_top_edges: int = 0
    dropped_reflexive_edges: int = 0


def _rdf_list_members(head: BlankNode, first: dict, rest: dict) -> list[IriRef] | None:
    """Walk an RDF collection; None when malformed or containing non-IRIs."""
    members: list[IriRef] = []
    node: object = head
    seen = set()
    while True:
        if isinstance(node, IriRef) and node.value == vocab.RDF_NIL:
            return members
        if not isinstance(node, BlankNode) or node in seen:
            return None
        seen.add(node)
        if node not in first or node not in rest:
            return None
        value = first[node]
        if not isinstance(value, IriRef):
            return None
        members.append(value)
        node = rest[node]


def reconstruct_ontology(
    triples: TripleSet, config: IngestConfig | None = None
) -> tuple[Ontology, IngestReport]:
    """Rebuild an Ontology from RDF triples.

    Named classes are the IRI endpoints of rdfs:subClassOf triples plus
    declared owl:Class IRIs. Blank nodes typed owl:Restriction with
    owl:onProperty and owl:someValuesFrom become Restriction values; an
    IRI filler is a named filler, an owl:intersectionOf / owl:unionOf list
    of IRIs becomes a conjunction / disjunction. Restriction nodes missing a
    part are skipped as dangling; fillers of any other form are skipped as
    unsupported. Edges to owl:Thing and reflexive edges are dropped.

    The result is independent of triple order.
    """
    config = config or IngestConfig()
    report = IngestReport()
    onto = Ontology()

    on_property: dict[BlankNode, IriRef] = {}
    some_values: dict[BlankNode, object] = {}
    restriction_nodes: set[BlankNode] = set()
    class_typed: set[Iri] = set()
    property_typed: set[Iri] = set()
    intersection_of: dict[BlankNode, object] = {}
    union_of: dict[BlankNode, object] = {}
    list_first: dict[BlankNode, object] = {}
    list_rest: dict[BlankNode, object] = {}
    subclass_triples: list[tuple[object, object]] = []
    label_triples: list[tuple[Iri, Iri, str]] = []

    configured = set(config.annotation_properties)
    for s, p, o in triples:
        pred = p.value  # predicates are always IRIs
        if pred == vocab.RDFS_SUBCLASSOF:
            subclass_triples.append((s, o))
        elif pred == vocab.RDF_TYPE and isinstance(o, IriRef):
            if o.value == vocab.OWL_RESTRICTION and isinstance(s, BlankNode):
                restriction_nodes.add(s)
            elif o.value == vocab.OWL_CLASS and isinstance(s, IriRef):
                class_typed.add(s.value)
            elif o.value == vocab.OWL_OBJECT_PROPERTY and isinstance(s, IriRef):
                property_typed.add(s.value)
        elif pred == vocab.OWL_ON_PROPERTY and isinstance(s, BlankNode) and isinstance(o, IriRef):
            on_property[s] = o
        elif pred == vocab.OWL_SOME_VALUES_FROM and isinstance(s, BlankNode):
            some_values[s] = o
        elif pred == vocab.OWL_INTERSECTION_OF and isinstance(s, BlankNode):
            intersection_of[s] = o
        elif pred == vocab.OWL_UNION_OF and isinstance(s, BlankNode):
            union_of[s] = o
        elif pred == vocab.RDF_FIRST and isinstance(s, BlankNode):
            list_first[s] = o
        elif pred == vocab.RDF_REST and isinstance(s, BlankNode):
            list_rest[s] = o
        elif pred in configured and isinstance(s, IriRef) and isinstance(o, Literal):
            if config.accepts(o.lang):
                label_triples.append((s.value, pred, o.value))

    # Resolve restriction blank nodes to Restriction values.
    restrictions: dict[BlankNode, Restriction] = {}
    for node in sorted(restriction_nodes, key=lambda b: b.label):
        prop = on_property.get(node)
        filler = some_values.get(node)
        if prop is None or filler is None:
            report.dangling_restrictions.append(node.label)
            logger.warning("dangling restriction node _:%s skipped", node.label)
            continue
        if isinstance(filler, IriRef):
            restrictions[node] = Restriction(prop.value, FILLER_NAMED, (filler.value,))
            continue
        expr = None
        if isinstance(filler, BlankNode):
            for source, kind in ((intersection_of, FILLER_AND), (union_of, FILLER_OR)):
                head = source.get(filler)
                if head is None:
                    continue
                members = _rdf_list_members(head, list_first, list_rest) if isinstance(head, BlankNode) else None
                if head == IriRef(vocab.RDF_NIL):
                    members = []
                if members and len(members) >= 2 and len({m.value for m in members}) == len(members):
                    expr = Restriction(prop.value, kind, tuple(m.value for m in members))
                break
        if expr is None:
            report.unsupported_restrictions.append(node.label)
            logger.warning("unsupported restriction filler at _:%s skipped", node.label)
        else:
            restrictions[node] = expr

    for subject, obj in subclass_triples:
        if isinstance(subject, IriRef) and isinstance(obj, IriRef):
            child, parent = subject.value, obj.value
            if parent == vocab.OWL_THING or child == vocab.OWL_THING:
                report.dropped_top_edges += 1
                continue
            if child == parent:
                report.dropped_reflexive_edges += 1
                continue
            onto.classes.add(child)
            onto.classes.add(parent)
            onto.named_subsumptions.add((child, parent))
        elif isinstance(subject, IriRef) and isinstance(obj, BlankNode):
            expr = restrictions.get(obj)
            if expr is None:
                continue  # already reported, or not a restriction node
            onto.classes.add(subject.value)
            onto.classes.update(expr.fillers)
            onto.properties.add(expr.property)
            onto.restriction_axioms.add((subject.value, expr))
        # blank-node subjects (complex left-hand sides) are out of scope

    onto.classes.update(c for c in class_typed if c != vocab.OWL_THING and c != vocab.OWL_NOTHING)
    onto.properties.update(property_typed)

    known = onto.classes | onto.properties
    for iri, prop, value in label_triples:
        if iri in known:
            onto.labels.setdefault((iri, prop), []).append(value)
    # Sort and dedup label values so the result is triple-order independent.
    for key, values in onto.labels.items():
        onto.labels[key] = sorted(set(values))

    onto.validate()
    return onto, report


def load_ontology(path: str, config: IngestConfig | None = None) -> Ontology:
    """Load an ontology from a .json exchange file or an N-Triples file."""
    if path.endswith(".json"):
        with open(path, "r", encoding="utf-8") as f:
            return parse_ontology_json(f)
    from .ntriples import parse_ntriples_path

    onto, _ = reconstruct_ontology(parse_ntriples_path(path), config)
    return onto


def ontology_from_edges(
    edges: Iterable[tuple[Iri, Iri]],
    labels: dict[Iri, str] | None = None,
    restriction_axioms: Iterable[tuple[Iri, Restriction]] = (),
) -> Ontology:
    """Convenience constructor used by tests and synthetic benchmarks."""
    onto = Ontology()
    for child, parent in edges:
        onto.classes.add(child)
        onto.classes.add(parent)
        onto.named_subsumptions.add((child, parent))
    for child, r in restriction_axioms:
        onto.classes.add(child)
        onto.classes.update(r.fillers)
        onto.properties.add(r.property)
        onto.restriction_axioms.add((child, r))
    for iri, text in (labels or {}).items():
        onto.classes.add(iri)
        onto.labels[(iri, vocab.RDFS_LABEL)] = [text]
    onto.validate()
    return onto
