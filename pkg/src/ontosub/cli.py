"""Command-line surface for reproducible corpus and evaluation runs.

Every writing command drops a run manifest next to its output (command,
flags, seeds, input digests, tool version, timestamp); the inputs plus the
manifest fully determine the outputs. Exit codes: 0 ok, 1 input error,
2 internal error; failures print a single machine-parseable JSON line to
stderr.
"""

from __future__ import annotations

import contextlib
import gzip
import io
import json
import os
import sys
from datetime import datetime, timezone

import click

from . import __version__
from .hierarchy import ClassHierarchy
from .ntriples import MalformedTriple
from .ontology import IngestConfig, Ontology, SchemaViolation, load_ontology
from .corpus import build_corpus, corpus_stats, write_corpus_jsonl
from .ranking import PESSIMISTIC, evaluate_cases, write_report
from .sampling import (
    EXISTENTIAL,
    NAMED,
    SplitSpec,
    build_eval_cases,
    derive_inter_subsumptions,
    extract_positives,
    read_eval_cases_jsonl,
    read_mappings_tsv,
    split,
    split_inter,
    write_eval_cases_jsonl,
)
from .scoring import ProtocolError, ScorerUnavailable, make_scorer, parse_scorer_flag
from .templates import OntologyContext, TemplateConfig
from .util import sha256_file
from .verbalize import LabelPolicy, NoLabel, verbalize_restriction
from . import verbalize
from .ontology import write_ontology_json

_TASKS = {"intra-named": NAMED, "intra-existential": EXISTENTIAL}


class InputError(Exception):
    pass


@contextlib.contextmanager
def _open_out(path: str):
    if path.endswith(".gz"):
        # fileobj form keeps name and mtime out of the gzip header, so
        # identical content gives identical bytes
        with open(path, "wb") as raw:
            with gzip.GzipFile(filename="", fileobj=raw, mode="wb", mtime=0) as gz:
                with io.TextIOWrapper(gz, encoding="utf-8") as text:
                    yield text
    else:
        with open(path, "w", encoding="utf-8") as f:
            yield f


def _load(path: str) -> Ontology:
    if not os.path.exists(path):
        raise InputError(f"no such file: {path}")
    try:
        return load_ontology(path, IngestConfig())
    except (MalformedTriple, SchemaViolation, ValueError) as e:
        raise InputError(f"cannot load ontology {path}: {e}") from e


def _write_manifest(out_path: str, command: str, params: dict, inputs: list[str]) -> None:
    manifest = {
        "tool": "ontosub",
        "version": __version__,
        "command": command,
        "params": params,
        "inputs": {path: sha256_file(path) for path in inputs},
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    with open(out_path + ".manifest.json", "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")


def _policy(labels: str) -> LabelPolicy:
    return LabelPolicy(mode=labels)


def _template_config(template: str, d: int, w: int, traversals: int, max_pairs: int, seed: int) -> TemplateConfig:
    return TemplateConfig(
        kind=template, depth=d, width=w, traversals=traversals, max_pairs=max_pairs, seed=seed
    )


@click.group()
@click.version_option(__version__)
def cli():
    """Build subsumption sentence-pair corpora and evaluate scorers."""


@cli.command()
@click.argument("ontology", type=click.Path())
def stats(ontology):
    """Print ontology statistics as JSON."""
    s = corpus_stats(_load(ontology))
    click.echo(
        json.dumps(
            {
                "named_classes": s.named_classes,
                "restrictions": s.restrictions,
                "named_subsumptions": s.named_subsumptions,
                "existential_subsumptions": s.existential_subsumptions,
            },
            sort_keys=True,
        )
    )


@cli.command("convert")
@click.argument("source", type=click.Path())
@click.argument("target", type=click.Path())
def convert(source, target):
    """Convert an ontology (N-Triples or JSON) to the JSON exchange format."""
    onto = _load(source)
    with open(target, "w", encoding="utf-8") as f:
        write_ontology_json(onto, f)
    _write_manifest(target, "convert", {}, [source])
    click.echo(json.dumps({"classes": len(onto.classes),
                           "subsumptions": len(onto.named_subsumptions)}, sort_keys=True))


@cli.command("build-corpus")
@click.argument("ontology", type=click.Path())
@click.option("--task", type=click.Choice(sorted(_TASKS)), default="intra-named", show_default=True)
@click.option("--template", type=click.Choice(["ic", "pc", "bc"]), default="ic", show_default=True)
@click.option("--d", type=int, default=1, show_default=True, help="Max traversal depth.")
@click.option("--w", type=int, default=4, show_default=True, help="Max branches per step.")
@click.option("--traversals", type=int, default=2, show_default=True)
@click.option("--max-pairs", type=int, default=32, show_default=True)
@click.option("--labels", type=click.Choice(["single", "multi"]), default="single", show_default=True)
@click.option("--neg-ratio", type=int, default=1, show_default=True)
@click.option("--train-frac", type=float, default=0.80, show_default=True)
@click.option("--valid-frac", type=float, default=0.05, show_default=True)
@click.option("--test-frac", type=float, default=0.15, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=0, help="Worker threads; 0 = all cores.")
@click.option("--out", type=click.Path(), required=True)
def build_corpus_cmd(ontology, task, template, d, w, traversals, max_pairs, labels, neg_ratio,
                     train_frac, valid_frac, test_frac, seed, jobs, out):
    """Build a train/valid/test corpus JSONL from an ontology."""
    onto = _load(ontology)
    cfg = _template_config(template, d, w, traversals, max_pairs, seed)
    spec = SplitSpec(train_frac, valid_frac, test_frac, seed)
    jobs = jobs or os.cpu_count() or 1
    records, report = build_corpus(onto, _TASKS[task], cfg, _policy(labels), spec, neg_ratio, jobs)
    with _open_out(out) as f:
        write_corpus_jsonl(records, f)
    _write_manifest(
        out,
        "build-corpus",
        {
            "task": task, "template": template, "d": d, "w": w, "traversals": traversals,
            "max_pairs": max_pairs, "labels": labels, "neg_ratio": neg_ratio,
            "train_frac": train_frac, "valid_frac": valid_frac, "test_frac": test_frac,
            "seed": seed,
        },
        [ontology],
    )
    click.echo(
        json.dumps(
            {
                "records": len(records),
                "positives": report.n_positives,
                "per_split": report.n_records,
                "skipped_no_label": report.skipped_no_label,
                "skipped_empty_pool": report.skipped_empty_pool,
            },
            sort_keys=True,
        )
    )


@cli.command("build-eval")
@click.argument("ontology", type=click.Path())
@click.option("--task", type=click.Choice(sorted(_TASKS)), default="intra-named", show_default=True)
@click.option("--split", "split_name", type=click.Choice(["valid", "test"]), default="test", show_default=True)
@click.option("--m", type=int, default=8, show_default=True, help="Seeds per neighborhood hop.")
@click.option("--h", type=int, default=3, show_default=True, help="Neighborhood hop depth.")
@click.option("--cap", type=int, default=50, show_default=True, help="Max negatives per named case.")
@click.option("--n1", type=int, default=40, show_default=True, help="Same-property/filler draws.")
@click.option("--n2", type=int, default=10, show_default=True, help="Remaining-restriction draws.")
@click.option("--train-frac", type=float, default=0.80, show_default=True)
@click.option("--valid-frac", type=float, default=0.05, show_default=True)
@click.option("--test-frac", type=float, default=0.15, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=0, help="Worker threads; 0 = all cores.")
@click.option("--out", type=click.Path(), required=True)
def build_eval_cmd(ontology, task, split_name, m, h, cap, n1, n2, train_frac, valid_frac, test_frac, seed, jobs, out):
    """Build evaluation cases (gold + negative pool) for a held-out split."""
    onto = _load(ontology)
    positives = extract_positives(onto, _TASKS[task])
    _, valid, test = split(positives, SplitSpec(train_frac, valid_frac, test_frac, seed))
    golds = valid if split_name == "valid" else test
    hier = ClassHierarchy.from_ontology(onto)
    cases = build_eval_cases(golds, hier, seed, m, h, cap, n1, n2, jobs=jobs or os.cpu_count() or 1)
    with _open_out(out) as f:
        write_eval_cases_jsonl(cases, f)
    _write_manifest(
        out,
        "build-eval",
        {"task": task, "split": split_name, "m": m, "h": h, "cap": cap, "n1": n1, "n2": n2,
         "train_frac": train_frac, "valid_frac": valid_frac, "test_frac": test_frac, "seed": seed},
        [ontology],
    )
    click.echo(json.dumps({"cases": len(cases), "skipped": sum(1 for c in cases if c.skipped)}, sort_keys=True))


@cli.command("build-eval-inter")
@click.argument("ontology_a", type=click.Path())
@click.argument("ontology_b", type=click.Path())
@click.option("--mappings", type=click.Path(), required=True, help="TSV of equivalence pairs (A, B).")
@click.option("--m", type=int, default=8, show_default=True)
@click.option("--h", type=int, default=3, show_default=True)
@click.option("--cap", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="Base path for the emitted files.")
def build_eval_inter_cmd(ontology_a, ontology_b, mappings, m, h, cap, seed, out):
    """Derive inter-ontology gold subsumptions from equivalence mappings.

    Writes <out>.valid.jsonl, <out>.test.jsonl and <out>.onto_b.json (the
    second ontology with mapped classes deleted, to evaluate against).
    """
    _load(ontology_a)  # validated for the manifest; golds only need B
    onto_b = _load(ontology_b)
    if not os.path.exists(mappings):
        raise InputError(f"no such file: {mappings}")
    with open(mappings, "r", encoding="utf-8") as f:
        pairs = read_mappings_tsv(f)
    axioms, pruned_b = derive_inter_subsumptions(pairs, onto_b)
    valid, test = split_inter(axioms, seed)
    hier = ClassHierarchy.from_ontology(pruned_b)
    for name, golds in (("valid", valid), ("test", test)):
        cases = build_eval_cases(golds, hier, seed, m=m, h=h, cap=cap)
        with _open_out(f"{out}.{name}.jsonl") as f:
            write_eval_cases_jsonl(cases, f)
    with open(f"{out}.onto_b.json", "w", encoding="utf-8") as f:
        write_ontology_json(pruned_b, f)
    _write_manifest(
        f"{out}.test.jsonl",
        "build-eval-inter",
        {"m": m, "h": h, "cap": cap, "seed": seed},
        [ontology_a, ontology_b, mappings],
    )
    click.echo(json.dumps({"axioms": len(axioms), "valid": len(valid), "test": len(test)}, sort_keys=True))


@cli.command()
@click.option("--eval", "eval_path", type=click.Path(), required=True, help="Eval cases JSONL.")
@click.option("--ontology", "ontology_path", type=click.Path(), required=True)
@click.option("--ontology-b", "ontology_b_path", type=click.Path(), default=None,
              help="Parent-side ontology for inter-ontology evaluation.")
@click.option("--template", type=click.Choice(["ic", "pc", "bc"]), default="ic", show_default=True)
@click.option("--d", type=int, default=1, show_default=True)
@click.option("--w", type=int, default=4, show_default=True)
@click.option("--traversals", type=int, default=2, show_default=True)
@click.option("--max-pairs", type=int, default=32, show_default=True)
@click.option("--labels", type=click.Choice(["single", "multi"]), default="single", show_default=True)
@click.option("--scorer", "scorer_flag", default="lexical", show_default=True,
              help='"lexical" or "external:<command or host:port>".')
@click.option("--tie", type=click.Choice(["pessimistic", "optimistic", "midpoint"]),
              default=PESSIMISTIC, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--report", "report_path", type=click.Path(), required=True)
def evaluate(eval_path, ontology_path, ontology_b_path, template, d, w, traversals, max_pairs,
             labels, scorer_flag, tie, seed, report_path):
    """Rank eval cases with a scorer and report MRR / Hits@K."""
    if not os.path.exists(eval_path):
        raise InputError(f"no such file: {eval_path}")
    onto = _load(ontology_path)
    ctx_child = OntologyContext(onto, ClassHierarchy.from_ontology(onto))
    if ontology_b_path:
        onto_b = _load(ontology_b_path)
        ctx_parent = OntologyContext(onto_b, ClassHierarchy.from_ontology(onto_b))
    else:
        ctx_parent = ctx_child
    with open(eval_path, "r", encoding="utf-8") as f:
        cases = read_eval_cases_jsonl(f)
    endpoint_override = os.environ.get("ONTOSUB_SCORER_ENDPOINT")
    if endpoint_override:
        scorer_flag = f"external:{endpoint_override}"
    try:
        spec = parse_scorer_flag(scorer_flag)
    except ValueError as e:
        raise InputError(str(e)) from e
    cfg = _template_config(template, d, w, traversals, max_pairs, seed)
    scorer = make_scorer(spec)
    try:
        metrics, results = evaluate_cases(cases, ctx_child, ctx_parent, scorer, _policy(labels), cfg, tie)
    finally:
        scorer.close()
    with open(report_path, "w", encoding="utf-8") as f:
        write_report(metrics, results, f)
    _write_manifest(
        report_path,
        "evaluate",
        {"template": template, "d": d, "w": w, "traversals": traversals, "max_pairs": max_pairs,
         "labels": labels, "scorer": scorer_flag, "tie": tie, "seed": seed},
        [eval_path, ontology_path] + ([ontology_b_path] if ontology_b_path else []),
    )
    click.echo(json.dumps({"mrr": metrics.mrr, "hits": {str(k): v for k, v in metrics.hits.items()},
                           "n_cases": metrics.n_cases, "n_skipped": metrics.n_skipped}, sort_keys=True))


@cli.command("verbalize")
@click.argument("ontology", type=click.Path())
@click.option("--class", "class_iri", default=None, help="Print the labels of this class.")
@click.option("--restriction", "restriction_child", default=None,
              help="Print the sentences of this class's restriction subsumers.")
@click.option("--labels", type=click.Choice(["single", "multi"]), default="multi", show_default=True)
def verbalize_cmd(ontology, class_iri, restriction_child, labels):
    """Debugging aid: print labels or restriction sentences."""
    if bool(class_iri) == bool(restriction_child):
        raise InputError("pass exactly one of --class or --restriction")
    onto = _load(ontology)
    policy = _policy(labels)
    if class_iri:
        for label in verbalize.class_labels(onto, class_iri, policy):
            click.echo(label)
        return
    found = [r for child, r in onto.restriction_axioms if child == restriction_child]
    if not found:
        raise InputError(f"no restriction axioms for {restriction_child}")
    for r in sorted(found, key=lambda r: r.sort_key()):
        for sentence in verbalize_restriction(onto, r, policy):
            click.echo(sentence)


def _fail(exit_code: int, error: str, detail: str) -> int:
    sys.stderr.write(json.dumps({"error": error, "detail": detail}, sort_keys=True) + "\n")
    return exit_code


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except (click.UsageError, InputError, FileNotFoundError) as e:
        return _fail(1, "input", str(e))
    except (MalformedTriple, SchemaViolation, NoLabel, ValueError) as e:
        return _fail(1, "input", str(e))
    except (ScorerUnavailable, ProtocolError) as e:
        return _fail(1, "scorer", str(e))
    except KeyboardInterrupt:
        return _fail(2, "interrupted", "")
    except Exception as e:  # internal error
        return _fail(2, "internal", f"{type(e).__name__}: {e}")


if __name__ == "__main__":
    sys.exit(main())
