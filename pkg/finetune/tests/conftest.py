import pytest

import synthetic
from pairscorer.train import TrainConfig, train


@pytest.fixture(scope="session")
def corpus_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "separable.jsonl"
    synthetic.write_corpus(path)
    return str(path)


@pytest.fixture(scope="session")
def trained_model_dir(tmp_path_factory, corpus_path):
    """One-epoch tiny-random model on the separable corpus, shared by tests."""
    out = tmp_path_factory.mktemp("model") / "tiny"
    cfg = TrainConfig(
        corpus=corpus_path,
        output_dir=str(out),
        base_model="tiny-random",
        epochs=1,
        learning_rate=1e-3,
        batch_size=4,
        max_length=32,
        seed=0,
    )
    report = train(cfg)
    return str(out), report
