"""Encoder and tokenizer construction.

Two paths: a pre-trained checkpoint (HF hub id or local directory), or the
"tiny-random" bootstrap that trains a WordPiece tokenizer from the corpus
text and pairs it with a small randomly-initialized BERT encoder. The
bootstrap exists for offline environments and fast tests; anything
production-grade should pass a real pre-trained model.
"""

from __future__ import annotations

from typing import Iterable

from tokenizers import Tokenizer, models, normalizers, pre_tokenizers, trainers
from tokenizers.processors import TemplateProcessing
from transformers import (
    AutoModel,
    AutoTokenizer,
    BertConfig,
    BertModel,
    PreTrainedTokenizerFast,
)

TINY_RANDOM = "tiny-random"

SPECIAL_TOKENS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]


def train_wordpiece_tokenizer(
    sentences: Iterable[str], vocab_size: int = 2000
) -> PreTrainedTokenizerFast:
    """WordPiece tokenizer learned from the corpus sentences (BERT-style
    normalization and pair post-processing)."""
    tokenizer = Tokenizer(models.WordPiece(unk_token="[UNK]"))
    tokenizer.normalizer = normalizers.BertNormalizer(lowercase=True)
    tokenizer.pre_tokenizer = pre_tokenizers.BertPreTokenizer()
    trainer = trainers.WordPieceTrainer(vocab_size=vocab_size, special_tokens=SPECIAL_TOKENS)
    tokenizer.train_from_iterator(sentences, trainer)
    cls_id = tokenizer.token_to_id("[CLS]")
    sep_id = tokenizer.token_to_id("[SEP]")
    tokenizer.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B:1 [SEP]:1",
        special_tokens=[("[CLS]", cls_id), ("[SEP]", sep_id)],
    )
    return PreTrainedTokenizerFast(
        tokenizer_object=tokenizer,
        pad_token="[PAD]",
        unk_token="[UNK]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )


def tiny_bert_config(vocab_size: int, hidden_size: int = 64, layers: int = 2) -> BertConfig:
    return BertConfig(
        vocab_size=vocab_size,
        hidden_size=hidden_size,
        num_hidden_layers=layers,
        num_attention_heads=4,
        intermediate_size=hidden_size * 4,
        max_position_embeddings=512,
    )


def build_encoder_and_tokenizer(base_model: str, corpus_sentences: Iterable[str]):
    """Resolve the base model: "tiny-random" bootstraps from the corpus,
    anything else loads a pre-trained checkpoint by id or path."""
    if base_model == TINY_RANDOM:
        tokenizer = train_wordpiece_tokenizer(corpus_sentences)
        encoder = BertModel(tiny_bert_config(vocab_size=tokenizer.vocab_size))
        return encoder, tokenizer
    tokenizer = AutoTokenizer.from_pretrained(base_model)
    encoder = AutoModel.from_pretrained(base_model)
    return encoder, tokenizer
