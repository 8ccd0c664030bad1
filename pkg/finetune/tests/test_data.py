import gzip
import json

import pytest

import synthetic
from pairscorer.data import SingleClassCorpus, default_max_length, load_corpus


def write_records(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")


def test_load_corpus_splits(corpus_path):
    corpus = load_corpus(corpus_path)
    assert len(corpus.train) == 200
    assert len(corpus.valid) == 60
    assert corpus.template == "ic"
    assert {ex.label for ex in corpus.train} == {0, 1}


def test_holdout_carved_when_no_valid_split(tmp_path):
    import random

    rng = random.Random(3)
    records = [synthetic.record(rng, i % 2, "train") for i in range(50)]
    path = tmp_path / "c.jsonl"
    write_records(path, records)
    corpus = load_corpus(str(path), seed=1)
    assert len(corpus.valid) == 5
    assert len(corpus.train) == 45


def test_test_split_records_ignored(tmp_path):
    import random

    rng = random.Random(3)
    records = [synthetic.record(rng, i % 2, "train") for i in range(20)]
    records += [synthetic.record(rng, 1, "test") for _ in range(10)]
    path = tmp_path / "c.jsonl"
    write_records(path, records)
    corpus = load_corpus(str(path), seed=1)
    assert len(corpus.train) + len(corpus.valid) == 20


def test_single_class_corpus_rejected(tmp_path):
    import random

    rng = random.Random(3)
    records = [synthetic.record(rng, 1, "train") for _ in range(10)]
    path = tmp_path / "c.jsonl"
    write_records(path, records)
    with pytest.raises(SingleClassCorpus):
        load_corpus(str(path))


def test_gzip_corpus_supported(tmp_path):
    import random

    rng = random.Random(3)
    path = tmp_path / "c.jsonl.gz"
    with gzip.open(path, "wt", encoding="utf-8") as f:
        for i in range(20):
            f.write(json.dumps(synthetic.record(rng, i % 2, "train")) + "\n")
    corpus = load_corpus(str(path))
    assert len(corpus.train) + len(corpus.valid) == 20


def test_default_max_length_follows_template():
    assert default_max_length("ic") == 128
    assert default_max_length("pc") == 256
    assert default_max_length("bc") == 256
    assert default_max_length(None) == 256
