"""Corpus JSONL loading.

Records follow the corpus-builder schema: one JSON document per line with
label, sentence_a, sentence_b, template and split fields. Only those fields
are consumed here; the builder is a separate tool reached purely through
this file format.
"""

from __future__ import annotations

import gzip
import json
import random
from dataclasses import dataclass


class SingleClassCorpus(ValueError):
    """The training split does not contain both labels."""


@dataclass(frozen=True)
class PairExample:
    sentence_a: str
    sentence_b: str
    label: int


@dataclass
class Corpus:
    train: list[PairExample]
    valid: list[PairExample]
    template: str | None  # template kind of the records, when uniform


def _open_text(path: str):
    if path.endswith(".gz"):
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, "r", encoding="utf-8")


def load_corpus(path: str, seed: int = 0, holdout_fraction: float = 0.1) -> Corpus:
    """Read a corpus JSONL and return train/valid examples.

    Records marked split=valid form the validation set; when there are none,
    a seeded holdout is carved from the training records so checkpoint
    selection always has something to select on. Records of other splits
    (e.g. test) are ignored: test evaluation is ranking-based and external.
    """
    train: list[PairExample] = []
    valid: list[PairExample] = []
    templates = set()
    with _open_text(path) as f:
        for line in f:
            if not line.strip():
                continue
            obj = json.loads(line)
            example = PairExample(obj["sentence_a"], obj["sentence_b"], int(obj["label"]))
            templates.add(obj.get("template"))
            split = obj.get("split", "train")
            if split == "train":
                train.append(example)
            elif split == "valid":
                valid.append(example)
    if not valid and train:
        rng = random.Random(seed)
        shuffled = list(train)
        rng.shuffle(shuffled)
        n_valid = max(1, int(len(shuffled) * holdout_fraction))
        valid, train = shuffled[:n_valid], shuffled[n_valid:]
    labels = {ex.label for ex in train}
    if labels != {0, 1}:
        raise SingleClassCorpus(f"training split has labels {sorted(labels)}; need both 0 and 1")
    template = templates.pop() if len(templates) == 1 else None
    return Corpus(train=train, valid=valid, template=template)


def default_max_length(template: str | None) -> int:
    """128 for isolated-class pairs, 256 for the context templates."""
    return 128 if template == "ic" else 256
