import io
import random
from collections import Counter

import pytest

import fig1
from ontosub.hierarchy import ClassHierarchy
from ontosub.ontology import Ontology, Restriction
from ontosub.sampling import (
    EXISTENTIAL,
    NAMED,
    EmptyNegativePool,
    EvalCase,
    SplitSpec,
    SubsumptionAxiom,
    build_eval_cases,
    derive_inter_subsumptions,
    eval_pool_named,
    eval_pool_restriction,
    extract_positives,
    negative_for_training,
    read_eval_cases_jsonl,
    read_mappings_tsv,
    split,
    split_inter,
    write_eval_cases_jsonl,
)
from ontosub.util import derive_rng


def named_axiom(child, parent):
    return SubsumptionAxiom(child, parent, NAMED)


def numbered_axioms(n):
    return [named_axiom(f"http://x/c{i:03d}", f"http://x/p{i:03d}") for i in range(n)]


# -- positives -----------------------------------------------------------------


def test_extract_positives_fixture_counts(figure1):
    assert len(extract_positives(figure1, NAMED)) == fig1.NAMED_SUBSUMPTION_COUNT
    assert len(extract_positives(figure1, EXISTENTIAL)) == fig1.RESTRICTION_AXIOM_COUNT


def test_extract_positives_empty_ontology():
    assert extract_positives(Ontology(), NAMED) == []
    assert extract_positives(Ontology(), EXISTENTIAL) == []


# -- splits ----------------------------------------------------------------------


def test_split_exact_fractions():
    train, valid, test = split(numbered_axioms(100), SplitSpec(seed=1))
    assert (len(train), len(valid), len(test)) == (80, 5, 15)


def test_split_remainder_goes_to_train():
    train, valid, test = split(numbered_axioms(99), SplitSpec(seed=1))
    assert (len(train), len(valid), len(test)) == (81, 4, 14)


def test_split_is_deterministic():
    axioms = numbered_axioms(57)
    assert split(axioms, SplitSpec(seed=9)) == split(axioms, SplitSpec(seed=9))
    assert split(axioms, SplitSpec(seed=9)) != split(axioms, SplitSpec(seed=10))


def test_split_is_disjoint_cover():
    axioms = numbered_axioms(43)
    train, valid, test = split(axioms, SplitSpec(seed=3))
    assert sorted(train + valid + test, key=SubsumptionAxiom.sort_key) == axioms
    assert not (set(train) & set(valid)) and not (set(valid) & set(test)) and not (set(train) & set(test))


def test_split_spec_validation():
    with pytest.raises(ValueError):
        SplitSpec(0.9, 0.2, 0.1)
    with pytest.raises(ValueError):
        SplitSpec(-0.1, 0.6, 0.5)


# -- training negatives ------------------------------------------------------------


def test_negative_never_an_entailed_subsumer(figure1_hier):
    pos = named_axiom(fig1.SOYBEAN_MILK, fig1.SOYBEAN_BEVERAGE)
    forbidden = {
        fig1.SOYBEAN_MILK,
        fig1.SOYBEAN_BEVERAGE,
        fig1.SOYBEAN_FOOD,
        fig1.BEAN_FOOD,
        fig1.PLANT_FOOD,
    }
    for seed in range(50):
        negative = negative_for_training(pos, figure1_hier, random.Random(seed))
        assert negative.parent not in forbidden
        assert negative.child == fig1.SOYBEAN_MILK


def test_two_class_ontology_has_empty_pool():
    hier = ClassHierarchy([("http://x/A", "http://x/B")])
    with pytest.raises(EmptyNegativePool):
        negative_for_training(named_axiom("http://x/A", "http://x/B"), hier, random.Random(0))


def test_negative_draw_is_uniform():
    # 12 classes: child, parent, 10 candidates; 10,000 draws stay within
    # 5 sigma of the uniform binomial expectation (sd = sqrt(n*p*(1-p)) = 30).
    edges = [("http://x/child", "http://x/parent")]
    extra = [f"http://x/c{i}" for i in range(10)]
    hier = ClassHierarchy(edges, classes=extra)
    pos = named_axiom("http://x/child", "http://x/parent")
    rng = random.Random(123)
    counts = Counter(negative_for_training(pos, hier, rng).parent for _ in range(10_000))
    assert set(counts) == set(extra)
    for candidate in extra:
        assert abs(counts[candidate] - 1000) <= 150


def test_existential_negative_matches_kind(figure1_hier):
    gold = SubsumptionAxiom(
        fig1.SOYBEAN_MILK, Restriction(fig1.DERIVES_FROM, "named", (fig1.SOYBEAN_PLANT,)), EXISTENTIAL
    )
    for seed in range(20):
        negative = negative_for_training(gold, figure1_hier, random.Random(seed))
        assert isinstance(negative.parent, Restriction)
        assert negative.parent not in figure1_hier.entailed_restriction_subsumers(fig1.SOYBEAN_MILK)


# -- evaluation pools -----------------------------------------------------------------


def test_named_pool_respects_cap_and_exclusions():
    # Dense synthetic hierarchy so the neighborhood exceeds the cap.
    edges = []
    for i in range(60):
        edges.append((f"http://x/n{i:02d}", "http://x/hub"))
        edges.append(("http://x/child", f"http://x/n{i:02d}"))
    hier = ClassHierarchy(edges)
    gold = named_axiom("http://x/child", "http://x/hub")
    case = eval_pool_named(gold, hier, m=8, h=3, cap=50, rng=random.Random(4))
    assert len(case.negatives) <= 50
    assert gold.parent not in case.negatives
    assert "http://x/child" not in case.negatives
    ancestors = hier.entailed_ancestors("http://x/child")
    assert not (set(case.negatives) & ancestors)


def test_named_pool_isolated_parent_is_skipped():
    hier = ClassHierarchy([("http://x/a", "http://x/b")], classes=["http://x/lone"])
    case = eval_pool_named(named_axiom("http://x/x", "http://x/lone"), hier, rng=random.Random(0))
    assert case.skipped


def test_restriction_pool_two_stage_draw():
    # 100 same-property restrictions and 100 unrelated ones -> exactly 40+10.
    gold_r = Restriction("http://x/p", "named", ("http://x/f",))
    axioms = [("http://x/child", gold_r)]
    for i in range(100):
        axioms.append((f"http://x/cp{i}", Restriction("http://x/p", "named", (f"http://x/fp{i}",))))
        axioms.append((f"http://x/co{i}", Restriction(f"http://x/q{i}", "named", (f"http://x/fo{i}",))))
    hier = ClassHierarchy([], restriction_axioms=axioms)
    gold = SubsumptionAxiom("http://x/child", gold_r, EXISTENTIAL)
    case = eval_pool_restriction(gold, hier, n1=40, n2=10, rng=random.Random(7))
    assert len(case.negatives) == 50
    same = [r for r in case.negatives if r.property == "http://x/p"]
    assert len(same) == 40
    assert gold_r not in case.negatives


def test_restriction_pool_single_inventory_is_skipped():
    gold_r = Restriction("http://x/p", "named", ("http://x/f",))
    hier = ClassHierarchy([], restriction_axioms=[("http://x/child", gold_r)])
    case = eval_pool_restriction(
        SubsumptionAxiom("http://x/child", gold_r, EXISTENTIAL), hier, rng=random.Random(0)
    )
    assert case.skipped


def test_restriction_pool_shares_filler_counts_as_related():
    gold_r = Restriction("http://x/p", "named", ("http://x/f",))
    other = Restriction("http://x/q", "named", ("http://x/f",))
    hier = ClassHierarchy(
        [], restriction_axioms=[("http://x/child", gold_r), ("http://x/other", other)]
    )
    case = eval_pool_restriction(
        SubsumptionAxiom("http://x/child", gold_r, EXISTENTIAL), hier, n1=5, n2=5, rng=random.Random(0)
    )
    assert case.negatives == [other]


def test_build_eval_cases_deterministic(figure1_hier):
    golds = [named_axiom(fig1.SOYBEAN_MILK, fig1.SOYBEAN_BEVERAGE)]
    a = build_eval_cases(golds, figure1_hier, seed=5)
    b = build_eval_cases(golds, figure1_hier, seed=5)
    assert [c.negatives for c in a] == [c.negatives for c in b]


# -- inter-ontology -----------------------------------------------------------------


def inter_fixture():
    onto_b = Ontology(
        classes={"http://b/y", "http://b/p", "http://b/q", "http://b/root"},
        named_subsumptions={("http://b/y", "http://b/p"), ("http://b/y", "http://b/q")},
        labels={("http://b/y", "http://x/label"): ["y"]},
    )
    return onto_b


def test_inter_subsumptions_from_declared_parents():
    axioms, pruned = derive_inter_subsumptions([("http://a/x", "http://b/y")], inter_fixture())
    assert {(a.child, a.parent) for a in axioms} == {
        ("http://a/x", "http://b/p"),
        ("http://a/x", "http://b/q"),
    }
    assert "http://b/y" not in pruned.classes
    assert not any("http://b/y" in pair for pair in pruned.named_subsumptions)
    assert ("http://b/y", "http://x/label") not in pruned.labels


def test_inter_mapping_to_root_emits_nothing():
    axioms, _ = derive_inter_subsumptions([("http://a/x", "http://b/root")], inter_fixture())
    assert axioms == []


def test_inter_unknown_target_skipped(caplog):
    axioms, pruned = derive_inter_subsumptions([("http://a/x", "http://b/missing")], inter_fixture())
    assert axioms == []
    assert pruned.classes == inter_fixture().classes


def test_inter_emitted_parent_survives_deletion():
    onto_b = Ontology(
        classes={"http://b/y", "http://b/z", "http://b/top"},
        named_subsumptions={("http://b/y", "http://b/z"), ("http://b/z", "http://b/top")},
    )
    mappings = [("http://a/x1", "http://b/y"), ("http://a/x2", "http://b/z")]
    axioms, pruned = derive_inter_subsumptions(mappings, onto_b)
    # z is both a mapping target and an emitted parent: it must survive.
    assert "http://b/z" in pruned.classes
    assert ("http://a/x1", "http://b/z") in {(a.child, a.parent) for a in axioms}


def test_inter_deletes_restrictions_touching_target():
    r = Restriction("http://b/r", "named", ("http://b/y",))
    onto_b = Ontology(
        classes={"http://b/y", "http://b/p", "http://b/other"},
        properties={"http://b/r"},
        named_subsumptions={("http://b/y", "http://b/p")},
        restriction_axioms={("http://b/other", r), ("http://b/y", Restriction("http://b/r", "named", ("http://b/p",)))},
    )
    _, pruned = derive_inter_subsumptions([("http://a/x", "http://b/y")], onto_b)
    assert pruned.restriction_axioms == set()
    pruned.validate()


def test_split_inter_sizes_and_determinism():
    axioms = numbered_axioms(400)
    valid, test = split_inter(axioms, seed=2)
    assert (len(valid), len(test)) == (100, 300)
    assert split_inter(axioms, seed=2) == (valid, test)
    assert sorted(valid + test, key=SubsumptionAxiom.sort_key) == axioms


def test_read_mappings_tsv():
    text = "# comment\nhttp://a/x\thttp://b/y\n\nhttp://a/z\thttp://b/w\textra\n"
    assert read_mappings_tsv(io.StringIO(text)) == [
        ("http://a/x", "http://b/y"),
        ("http://a/z", "http://b/w"),
    ]
    with pytest.raises(ValueError):
        read_mappings_tsv(io.StringIO("onlyonecolumn\n"))


# -- eval-set serialization -----------------------------------------------------------


def test_eval_cases_jsonl_roundtrip(figure1_hier):
    golds = [
        named_axiom(fig1.SOYBEAN_MILK, fig1.SOYBEAN_BEVERAGE),
        SubsumptionAxiom(
            fig1.SOYBEAN_MILK, Restriction(fig1.DERIVES_FROM, "named", (fig1.SOYBEAN_PLANT,)), EXISTENTIAL
        ),
    ]
    cases = build_eval_cases(golds, figure1_hier, seed=1)
    buf = io.StringIO()
    write_eval_cases_jsonl(cases, buf)
    buf.seek(0)
    roundtripped = read_eval_cases_jsonl(buf)
    assert [(c.gold, c.negatives) for c in roundtripped] == [(c.gold, c.negatives) for c in cases]


def test_derived_rng_streams_are_stable():
    a = derive_rng(7, "x").random()
    b = derive_rng(7, "x").random()
    c = derive_rng(7, "y").random()
    assert a == b != c
