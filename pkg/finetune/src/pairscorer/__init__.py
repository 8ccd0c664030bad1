"""pairscorer: fine-tune a transformer encoder on sentence-pair corpora and
serve subsumption scores over a line-delimited JSON protocol."""

__version__ = "0.1.0"

from .data import Corpus, PairExample, SingleClassCorpus, load_corpus
from .model import PairClassifier, load_model, save_model
from .serve import ScoreService
from .train import TrainConfig, TrainReport, train

__all__ = [
    "Corpus",
    "PairExample",
    "SingleClassCorpus",
    "load_corpus",
    "PairClassifier",
    "load_model",
    "save_model",
    "ScoreService",
    "TrainConfig",
    "TrainReport",
    "train",
]
