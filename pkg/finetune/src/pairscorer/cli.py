"""Command-line entry points: train a pair scorer, serve one."""

from __future__ import annotations

import json
import logging
import sys

import click

from . import __version__
from .data import SingleClassCorpus
from .serve import ScoreService
from .train import TrainConfig, train


@click.group()
@click.version_option(__version__)
def cli():
    """Fine-tune and serve sentence-pair subsumption scorers."""


@cli.command("train")
@click.argument("corpus", type=click.Path(exists=True))
@click.option("--base-model", default="bert-base-uncased", show_default=True,
              help='Checkpoint id/path, or "tiny-random" to bootstrap offline.')
@click.option("--max-length", type=int, default=None,
              help="Token cap per pair; default 128 for IC corpora, 256 otherwise.")
@click.option("--epochs", type=int, default=1, show_default=True)
@click.option("--learning-rate", type=float, default=2e-5, show_default=True)
@click.option("--batch-size", type=int, default=16, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--selection-command", default=None,
              help="Slow mode: shell command scoring each epoch's checkpoint "
                   "({model_dir} substituted); its last stdout line, a float such as an "
                   "external validation MRR, drives checkpoint selection.")
@click.option("--out", "output_dir", type=click.Path(), required=True)
def train_cmd(corpus, base_model, max_length, epochs, learning_rate, batch_size, seed,
              selection_command, output_dir):
    """Fine-tune on a corpus JSONL; writes the model dir and report.json."""
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    cfg = TrainConfig(
        corpus=corpus, output_dir=output_dir, base_model=base_model, max_length=max_length,
        epochs=epochs, learning_rate=learning_rate, batch_size=batch_size, seed=seed,
        selection_command=selection_command,
    )
    report = train(cfg)
    click.echo(json.dumps({
        "best_epoch": report.best_epoch,
        "best_val_accuracy": report.best_val_accuracy,
        "truncation_rate": report.truncation_rate,
        "output_dir": output_dir,
    }, sort_keys=True))


@cli.command("serve")
@click.argument("model_dir", type=click.Path(exists=True))
@click.option("--endpoint", default="stdio", show_default=True,
              help='"stdio" or "host:port" for a TCP listener.')
@click.option("--batch-size", type=int, default=32, show_default=True)
def serve_cmd(model_dir, endpoint, batch_size):
    """Answer scoring requests over the line-delimited JSON protocol."""
    service = ScoreService(model_dir, batch_size=batch_size)
    if endpoint == "stdio":
        service.serve_stdio()
        return
    host, _, port = endpoint.rpartition(":")
    if not host or not port.isdigit():
        raise click.UsageError(f'endpoint must be "stdio" or "host:port", got {endpoint!r}')
    service.serve_tcp(host, int(port))


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except (click.UsageError, SingleClassCorpus, FileNotFoundError) as e:
        sys.stderr.write(json.dumps({"error": "input", "detail": str(e)}) + "\n")
        return 1
    except Exception as e:
        sys.stderr.write(json.dumps({"error": "internal", "detail": f"{type(e).__name__}: {e}"}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
