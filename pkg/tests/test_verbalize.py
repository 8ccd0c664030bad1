import pytest

import fig1
from ontosub import vocab
from ontosub.ontology import Ontology, Restriction, ontology_from_edges
from ontosub.verbalize import (
    LabelPolicy,
    NoLabel,
    PrepositionTable,
    class_labels,
    parse_iri_name,
    verbalize_restriction,
)


def test_iri_name_fallback_for_unlabelled_class():
    onto = Ontology(classes={"http://example.org/virtuoso#ProcessedLegumes"})
    labels = class_labels(onto, "http://example.org/virtuoso#ProcessedLegumes", LabelPolicy())
    assert labels == ["processed legumes"]


@pytest.mark.parametrize(
    "iri, expected",
    [
        ("http://x/vocab#ProcessedLegumes", "processed legumes"),
        ("http://x/FOODON_00002809", "foodon 00002809"),
        ("http://x/some-hyphened-name", "some hyphened name"),
        ("http://x/snake_case_name", "snake case name"),
        ("http://x/HTTPServer", "http server"),
    ],
)
def test_iri_name_parsing(iri, expected):
    assert parse_iri_name(iri) == expected


def test_single_mode_returns_the_rdfs_label(figure1, single_policy):
    assert class_labels(figure1, fig1.SOYBEAN_MILK, single_policy) == ["soybean milk"]


def test_single_mode_breaks_ties_lexicographically():
    onto = Ontology(classes={"http://x/A"}, labels={("http://x/A", vocab.RDFS_LABEL): ["zebra", "aardvark"]})
    assert class_labels(onto, "http://x/A", LabelPolicy()) == ["aardvark"]


def test_multi_mode_orders_rdfs_label_first(figure1_synonyms):
    policy = LabelPolicy(mode="multi", annotation_properties=(vocab.RDFS_LABEL, fig1.HAS_EXACT_SYNONYM))
    assert class_labels(figure1_synonyms, fig1.EDAMAME, policy) == ["edamame", "green soybean"]


def test_multi_mode_dedups_case_insensitively():
    onto = Ontology(
        classes={"http://x/A"},
        labels={
            ("http://x/A", vocab.RDFS_LABEL): ["Soy Milk"],
            ("http://x/A", "http://x/syn"): ["soy milk", "soya milk"],
        },
    )
    policy = LabelPolicy(mode="multi", annotation_properties=(vocab.RDFS_LABEL, "http://x/syn"))
    assert class_labels(onto, "http://x/A", policy) == ["Soy Milk", "soya milk"]


def test_restriction_with_preposition_ending_property(figure1, single_policy):
    r = Restriction(fig1.DERIVES_FROM, "named", (fig1.SOYBEAN_PLANT,))
    assert verbalize_restriction(figure1, r, single_policy) == ["something derives from soybean plant"]


def test_of_inserted_after_non_preposition_property(figure1, single_policy):
    r = Restriction(fig1.HAS_QUALITY, "named", (fig1.LIQUID,))
    assert verbalize_restriction(figure1, r, single_policy) == ["something has quality of liquid"]


def test_conjunction_filler():
    onto = ontology_from_edges(
        [],
        labels={"http://x/c1": "a", "http://x/c2": "b", "http://x/r": "part of"},
        restriction_axioms=[
            ("http://x/child", Restriction("http://x/r", "and", ("http://x/c1", "http://x/c2")))
        ],
    )
    onto.labels[("http://x/r", vocab.RDFS_LABEL)] = ["part of"]
    r = Restriction("http://x/r", "and", ("http://x/c1", "http://x/c2"))
    assert verbalize_restriction(onto, r, LabelPolicy()) == ["something part of a and b"]


def test_disjunction_filler():
    onto = Ontology(
        classes={"http://x/c1", "http://x/c2"},
        properties={"http://x/r"},
        labels={
            ("http://x/c1", vocab.RDFS_LABEL): ["red"],
            ("http://x/c2", vocab.RDFS_LABEL): ["green"],
            ("http://x/r", vocab.RDFS_LABEL): ["has color"],
        },
    )
    r = Restriction("http://x/r", "or", ("http://x/c1", "http://x/c2"))
    assert verbalize_restriction(onto, r, LabelPolicy()) == ["something has color of red or green"]


def test_multi_mode_cross_product_of_label_choices():
    onto = Ontology(
        classes={"http://x/c"},
        properties={"http://x/r"},
        labels={
            ("http://x/c", vocab.RDFS_LABEL): ["filler one", "filler two"],
            ("http://x/r", vocab.RDFS_LABEL): ["made from", "made of"],
        },
    )
    r = Restriction("http://x/r", "named", ("http://x/c",))
    got = verbalize_restriction(onto, r, LabelPolicy(mode="multi"))
    assert got == [
        "something made from filler one",
        "something made from filler two",
        "something made of filler one",
        "something made of filler two",
    ]


def test_no_iri_fragments_in_output(figure1):
    policy = LabelPolicy(mode="multi")
    for _, r in figure1.restriction_axioms:
        for sentence in verbalize_restriction(figure1, r, policy):
            assert "http://" not in sentence and "#" not in sentence


def test_verbalization_is_pure(figure1, single_policy):
    r = Restriction(fig1.DERIVES_FROM, "named", (fig1.SOYBEAN_PLANT,))
    assert verbalize_restriction(figure1, r, single_policy) == verbalize_restriction(
        figure1, r, single_policy
    )


def test_no_label_raised_when_local_name_empty():
    onto = Ontology(classes={"http://x/"})
    with pytest.raises(NoLabel):
        class_labels(onto, "http://x/", LabelPolicy())


def test_preposition_table_rejects_bad_entries():
    with pytest.raises(ValueError):
        PrepositionTable(frozenset({"Of"}))
    with pytest.raises(ValueError):
        PrepositionTable(frozenset({"out of"}))


def test_custom_preposition_table():
    onto = Ontology(
        classes={"http://x/c"},
        properties={"http://x/r"},
        labels={
            ("http://x/c", vocab.RDFS_LABEL): ["target"],
            ("http://x/r", vocab.RDFS_LABEL): ["adjacent unto"],
        },
    )
    r = Restriction("http://x/r", "named", ("http://x/c",))
    table = PrepositionTable(frozenset({"unto"}))
    assert verbalize_restriction(onto, r, LabelPolicy(), table) == ["something adjacent unto target"]


def test_label_policy_validation():
    with pytest.raises(ValueError):
        LabelPolicy(mode="both")
    with pytest.raises(ValueError):
        LabelPolicy(annotation_properties=())
