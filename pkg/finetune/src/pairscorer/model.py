"""Pair classifier: transformer encoder + dropout + linear head.

The head takes the encoder's last-layer embedding of the first
(classification) token and maps it to two logits; the positive-class
softmax probability is the subsumption score.
"""

from __future__ import annotations

import json
import os

import torch
from torch import nn
from transformers import AutoConfig, AutoModel, AutoTokenizer, PreTrainedTokenizerBase

META_FILE = "pairscorer.json"
WEIGHTS_FILE = "model.pt"


class PairClassifier(nn.Module):
    def __init__(self, encoder: nn.Module, hidden_size: int, dropout: float = 0.1):
        super().__init__()
        self.encoder = encoder
        self.dropout = nn.Dropout(dropout)
        self.classifier = nn.Linear(hidden_size, 2)

    def forward(self, input_ids, attention_mask, token_type_ids=None):
        kwargs = {"input_ids": input_ids, "attention_mask": attention_mask}
        if token_type_ids is not None:
            kwargs["token_type_ids"] = token_type_ids
        outputs = self.encoder(**kwargs)
        first_token = outputs.last_hidden_state[:, 0]
        return self.classifier(self.dropout(first_token))

    @torch.no_grad()
    def scores(self, input_ids, attention_mask, token_type_ids=None) -> torch.Tensor:
        """Positive-class probabilities in [0, 1]."""
        logits = self.forward(input_ids, attention_mask, token_type_ids)
        return torch.softmax(logits, dim=-1)[:, 1]


def build_classifier(encoder) -> PairClassifier:
    return PairClassifier(encoder, encoder.config.hidden_size)


def save_model(
    model: PairClassifier,
    tokenizer: PreTrainedTokenizerBase,
    output_dir: str,
    max_length: int,
    extra_meta: dict | None = None,
) -> None:
    os.makedirs(output_dir, exist_ok=True)
    tokenizer.save_pretrained(output_dir)
    model.encoder.config.save_pretrained(output_dir)
    torch.save(model.state_dict(), os.path.join(output_dir, WEIGHTS_FILE))
    meta = {"max_length": max_length}
    meta.update(extra_meta or {})
    with open(os.path.join(output_dir, META_FILE), "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2, sort_keys=True)


def load_model(model_dir: str) -> tuple[PairClassifier, PreTrainedTokenizerBase, dict]:
    with open(os.path.join(model_dir, META_FILE), encoding="utf-8") as f:
        meta = json.load(f)
    tokenizer = AutoTokenizer.from_pretrained(model_dir)
    config = AutoConfig.from_pretrained(model_dir)
    encoder = AutoModel.from_config(config)
    model = build_classifier(encoder)
    state = torch.load(os.path.join(model_dir, WEIGHTS_FILE), map_location="cpu", weights_only=True)
    model.load_state_dict(state)
    model.eval()
    return model, tokenizer, meta
