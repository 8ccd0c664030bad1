import json
import os

import pytest

import fig1
import oracles
from ontosub.cli import main
from ontosub.hierarchy import ClassHierarchy
from ontosub.ontology import parse_ontology_json
from ontosub.sampling import read_eval_cases_jsonl
from ontosub.scoring import LexicalScorer
from ontosub.templates import OntologyContext, TemplateConfig
from ontosub.util import sha256_file
from ontosub.verbalize import LabelPolicy


def run(*args):
    return main(list(args))


def test_stats_matches_fixture_counts(capsys):
    assert run("stats", fig1.JSON_PATH) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {
        "named_classes": fig1.CLASS_COUNT,
        "restrictions": fig1.PLAIN_RESTRICTION_COUNT,
        "named_subsumptions": fig1.NAMED_SUBSUMPTION_COUNT,
        "existential_subsumptions": fig1.PLAIN_RESTRICTION_AXIOM_COUNT,
    }


def test_stats_accepts_ntriples_input(capsys):
    assert run("stats", fig1.NT_PATH) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["named_classes"] == fig1.CLASS_COUNT


def test_build_corpus_deterministic_across_runs_and_jobs(tmp_path, capsys):
    digests = []
    for name, jobs in (("a.jsonl", "1"), ("b.jsonl", "1"), ("c.jsonl", "8")):
        out = tmp_path / name
        code = run(
            "build-corpus", fig1.JSON_PATH, "--task", "intra-named", "--template", "pc",
            "--d", "2", "--w", "4", "--seed", "7", "--jobs", jobs, "--out", str(out),
        )
        assert code == 0
        digests.append(sha256_file(str(out)))
    assert digests[0] == digests[1] == digests[2]


def test_build_corpus_writes_manifest(tmp_path):
    out = tmp_path / "corpus.jsonl"
    assert run("build-corpus", fig1.JSON_PATH, "--seed", "3", "--out", str(out)) == 0
    manifest = json.loads((tmp_path / "corpus.jsonl.manifest.json").read_text())
    assert manifest["command"] == "build-corpus"
    assert manifest["params"]["seed"] == 3
    assert fig1.JSON_PATH in manifest["inputs"]
    assert manifest["inputs"][fig1.JSON_PATH] == sha256_file(fig1.JSON_PATH)


def test_build_corpus_gzip_output_is_deterministic(tmp_path):
    outs = []
    for name in ("a.jsonl.gz", "b.jsonl.gz"):
        out = tmp_path / name
        assert run("build-corpus", fig1.JSON_PATH, "--seed", "7", "--out", str(out)) == 0
        outs.append(sha256_file(str(out)))
    assert outs[0] == outs[1]


def test_build_eval_and_evaluate_roundtrip(tmp_path, capsys):
    eval_path = tmp_path / "eval.jsonl"
    assert run(
        "build-eval", fig1.JSON_PATH, "--task", "intra-named", "--split", "test",
        "--seed", "7", "--out", str(eval_path),
    ) == 0
    capsys.readouterr()

    report_path = tmp_path / "report.json"
    assert run(
        "evaluate", "--eval", str(eval_path), "--ontology", fig1.JSON_PATH,
        "--template", "ic", "--scorer", "lexical", "--seed", "7",
        "--report", str(report_path),
    ) == 0
    summary = json.loads(capsys.readouterr().out)
    report = json.loads(report_path.read_text())
    assert summary["mrr"] == report["metrics"]["mrr"]

    # Independent re-ranking oracle over the same cases.
    with open(eval_path, encoding="utf-8") as f:
        cases = read_eval_cases_jsonl(f)
    onto = fig1.load()
    ctx = OntologyContext(onto, ClassHierarchy.from_ontology(onto))
    cfg = TemplateConfig(kind="ic", seed=7)
    expected = {}
    for case in cases:
        if not case.skipped:
            expected[case.gold.child] = oracles.brute_force_rank(
                case, ctx, ctx, LexicalScorer(), LabelPolicy(), cfg
            )
    got = {c["child"]: c["gold_rank"] for c in report["cases"]}
    assert got == expected


def test_build_eval_deterministic(tmp_path):
    digests = []
    for name in ("e1.jsonl", "e2.jsonl"):
        out = tmp_path / name
        assert run("build-eval", fig1.JSON_PATH, "--seed", "11", "--out", str(out)) == 0
        digests.append(sha256_file(str(out)))
    assert digests[0] == digests[1]


def test_build_eval_existential_task(tmp_path, capsys):
    # The fixture has only 4 existential axioms, so widen the test fraction.
    out = tmp_path / "restr.jsonl"
    assert run(
        "build-eval", fig1.JSON_PATH, "--task", "intra-existential", "--seed", "5",
        "--train-frac", "0.5", "--valid-frac", "0.0", "--test-frac", "0.5",
        "--out", str(out),
    ) == 0
    with open(out, encoding="utf-8") as f:
        cases = read_eval_cases_jsonl(f)
    assert len(cases) == 2
    for case in cases:
        assert case.gold.kind == "existential"
        assert case.gold.parent not in case.negatives


def test_build_eval_inter(tmp_path, capsys):
    onto_a = tmp_path / "a.json"
    onto_a.write_text(json.dumps({
        "classes": ["http://a/x"], "properties": [], "labels": [
            {"iri": "http://a/x", "prop": "http://www.w3.org/2000/01/rdf-schema#label", "values": ["x thing"]}
        ], "subclass_of": [], "restrictions": [],
    }))
    mappings = tmp_path / "maps.tsv"
    mappings.write_text(f"http://a/x\t{fig1.SOYBEAN_MILK}\n")
    base = tmp_path / "inter"
    assert run(
        "build-eval-inter", str(onto_a), fig1.JSON_PATH, "--mappings", str(mappings),
        "--seed", "3", "--out", str(base),
    ) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["axioms"] == 1  # soybean milk has one declared parent
    pruned = parse_ontology_json((tmp_path / "inter.onto_b.json").read_text())
    assert fig1.SOYBEAN_MILK not in pruned.classes
    with open(f"{base}.test.jsonl", encoding="utf-8") as f:
        cases = read_eval_cases_jsonl(f)
    assert [c.gold.child for c in cases] == ["http://a/x"]
    assert all(fig1.SOYBEAN_MILK != n for c in cases for n in c.negatives)


def test_convert_ntriples_to_exchange_json(tmp_path, capsys):
    out = tmp_path / "converted.json"
    assert run("convert", fig1.NT_PATH, str(out)) == 0
    converted = parse_ontology_json(out.read_text())
    assert converted == fig1.load()
    assert (tmp_path / "converted.json.manifest.json").exists()


def test_verbalize_class(capsys):
    assert run("verbalize", fig1.JSON_PATH, "--class", fig1.SOYBEAN_MILK) == 0
    assert capsys.readouterr().out.strip() == "soybean milk"


def test_verbalize_restriction_sentences(capsys):
    assert run("verbalize", fig1.JSON_PATH, "--restriction", fig1.SOYBEAN_MILK) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert "something derives from soybean plant" in lines
    assert "something has quality of liquid" in lines


def test_missing_input_exits_one_with_machine_record(capsys, tmp_path):
    code = run("stats", str(tmp_path / "missing.json"))
    assert code == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "input"


def test_bad_flag_exits_one(capsys):
    assert run("build-corpus", fig1.JSON_PATH, "--task", "bogus", "--out", "/tmp/x") == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "input"


def test_verbalize_requires_exactly_one_selector(capsys):
    assert run("verbalize", fig1.JSON_PATH) == 1


def test_malformed_ontology_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.nt"
    bad.write_text("this is not ntriples\n")
    assert run("stats", str(bad)) == 1
