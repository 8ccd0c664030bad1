"""Fine-tuning loop: tokenize pairs, minimize cross-entropy, keep the
checkpoint with the best validation accuracy, emit a training report."""

from __future__ import annotations

import json
import logging
import os
import random
from dataclasses import asdict, dataclass, field

import torch
from torch.nn.functional import cross_entropy
from torch.utils.data import DataLoader, Dataset

from .data import Corpus, PairExample, default_max_length, load_corpus
from .encoders import TINY_RANDOM, build_encoder_and_tokenizer
from .model import build_classifier, save_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    corpus: str
    output_dir: str
    base_model: str = "bert-base-uncased"
    max_length: int | None = None  # None: 128 for IC corpora, 256 otherwise
    epochs: int = 1
    learning_rate: float = 2e-5
    batch_size: int = 16
    dropout: float = 0.1
    seed: int = 0
    vocab_size: int = 2000  # only used by the tiny-random bootstrap
    # Optional slow mode: a shell command run once per epoch with {model_dir}
    # substituted by that epoch's checkpoint; its stdout's last line (a float,
    # e.g. a validation MRR from an external ranking evaluation) replaces
    # validation accuracy for checkpoint selection.
    selection_command: str | None = None


@dataclass
class TrainReport:
    config: dict
    resolved_max_length: int
    n_train: int
    n_valid: int
    label_counts: dict
    truncation_rate: float
    epoch_losses: list = field(default_factory=list)
    val_accuracy: list = field(default_factory=list)
    selection_scores: list = field(default_factory=list)  # external mode only
    best_epoch: int = 0
    best_val_accuracy: float = 0.0


class PairDataset(Dataset):
    def __init__(self, examples: list[PairExample], tokenizer, max_length: int):
        self.examples = examples
        self.tokenizer = tokenizer
        self.max_length = max_length

    def __len__(self):
        return len(self.examples)

    def __getitem__(self, idx):
        return self.examples[idx]

    def collate(self, batch: list[PairExample]):
        # longest_first truncation trims the longer side token by token, so
        # the leading (anchor) label of each sentence survives.
        encoded = self.tokenizer(
            [ex.sentence_a for ex in batch],
            [ex.sentence_b for ex in batch],
            padding=True,
            truncation="longest_first",
            max_length=self.max_length,
            return_tensors="pt",
        )
        labels = torch.tensor([ex.label for ex in batch], dtype=torch.long)
        return encoded, labels


def truncation_rate(examples: list[PairExample], tokenizer, max_length: int) -> float:
    """Fraction of pairs whose full encoding exceeds max_length."""
    if not examples:
        return 0.0
    over = 0
    for ex in examples:
        length = len(tokenizer(ex.sentence_a, ex.sentence_b)["input_ids"])
        if length > max_length:
            over += 1
    return over / len(examples)


def external_selection_score(command: str, model_dir: str) -> float:
    """Run the selection command against a checkpoint and read its score."""
    import subprocess

    rendered = command.replace("{model_dir}", model_dir)
    result = subprocess.run(rendered, shell=True, capture_output=True, text=True, check=True)
    lines = [line for line in result.stdout.splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"selection command produced no output: {rendered!r}")
    return float(lines[-1])


@torch.no_grad()
def accuracy(model, loader) -> float:
    model.eval()
    correct = 0
    total = 0
    for encoded, labels in loader:
        logits = model(**encoded)
        correct += int((logits.argmax(dim=-1) == labels).sum())
        total += len(labels)
    return correct / total if total else 0.0


def train(cfg: TrainConfig) -> TrainReport:
    """Fine-tune on the corpus and write model + report to cfg.output_dir."""
    torch.manual_seed(cfg.seed)
    random.seed(cfg.seed)

    corpus = load_corpus(cfg.corpus, seed=cfg.seed)
    max_length = cfg.max_length or default_max_length(corpus.template)

    sentences = [s for ex in corpus.train for s in (ex.sentence_a, ex.sentence_b)]
    encoder, tokenizer = build_encoder_and_tokenizer(cfg.base_model, sentences)
    model = build_classifier(encoder)
    model.dropout.p = cfg.dropout

    train_set = PairDataset(corpus.train, tokenizer, max_length)
    valid_set = PairDataset(corpus.valid, tokenizer, max_length)
    generator = torch.Generator().manual_seed(cfg.seed)
    train_loader = DataLoader(
        train_set, batch_size=cfg.batch_size, shuffle=True, generator=generator,
        collate_fn=train_set.collate,
    )
    valid_loader = DataLoader(
        valid_set, batch_size=cfg.batch_size, shuffle=False, collate_fn=valid_set.collate
    )

    report = TrainReport(
        config=asdict(cfg),
        resolved_max_length=max_length,
        n_train=len(corpus.train),
        n_valid=len(corpus.valid),
        label_counts={
            "train_pos": sum(ex.label for ex in corpus.train),
            "train_neg": sum(1 - ex.label for ex in corpus.train),
        },
        truncation_rate=truncation_rate(corpus.train, tokenizer, max_length),
    )
    if report.truncation_rate > 0:
        logger.warning("%.1f%% of training pairs exceed max_length=%d",
                       100 * report.truncation_rate, max_length)

    optimizer = torch.optim.AdamW(model.parameters(), lr=cfg.learning_rate)
    best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}
    best_selection = float("-inf")
    for epoch in range(cfg.epochs):
        model.train()
        losses = []
        for encoded, labels in train_loader:
            optimizer.zero_grad()
            logits = model(**encoded)
            loss = cross_entropy(logits, labels)
            loss.backward()
            optimizer.step()
            losses.append(float(loss.detach()))
        report.epoch_losses.append(sum(losses) / max(1, len(losses)))
        val_acc = accuracy(model, valid_loader)
        report.val_accuracy.append(val_acc)
        if cfg.selection_command:
            checkpoint = os.path.join(cfg.output_dir, "checkpoints", f"epoch{epoch}")
            save_model(model, tokenizer, checkpoint, max_length,
                       extra_meta={"base_model": cfg.base_model, "seed": cfg.seed})
            selection = external_selection_score(cfg.selection_command, checkpoint)
            report.selection_scores.append(selection)
        else:
            selection = val_acc
        logger.info("epoch %d: loss %.4f, val accuracy %.4f, selection %.4f",
                    epoch, report.epoch_losses[-1], val_acc, selection)
        if selection >= best_selection:
            best_selection = selection
            report.best_val_accuracy = val_acc
            report.best_epoch = epoch
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}

    model.load_state_dict(best_state)
    save_model(
        model,
        tokenizer,
        cfg.output_dir,
        max_length,
        extra_meta={"base_model": cfg.base_model, "seed": cfg.seed},
    )
    with open(os.path.join(cfg.output_dir, "report.json"), "w", encoding="utf-8") as f:
        json.dump(asdict_report(report), f, indent=2, sort_keys=True)
    return report


def asdict_report(report: TrainReport) -> dict:
    return {
        "config": report.config,
        "resolved_max_length": report.resolved_max_length,
        "n_train": report.n_train,
        "n_valid": report.n_valid,
        "label_counts": report.label_counts,
        "truncation_rate": report.truncation_rate,
        "epoch_losses": report.epoch_losses,
        "val_accuracy": report.val_accuracy,
        "selection_scores": report.selection_scores,
        "best_epoch": report.best_epoch,
        "best_val_accuracy": report.best_val_accuracy,
    }
