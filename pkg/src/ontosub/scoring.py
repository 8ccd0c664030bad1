"""Uniform scoring of sentence pairs.

Two scorers speak the same interface: a deterministic lexical baseline
(token-set Jaccard overlap) and a client for external scorers reached over
a line-delimited JSON protocol, either through a subprocess's stdio or a TCP
socket. The wire format is one UTF-8 JSON document per line:

    request:  {"id": <int>, "pairs": [{"a": <str>, "b": <str>}, ...]}
    response: {"id": <int>, "scores": [<float in [0,1]>, ...]}

Requests are issued one at a time per connection; ids are echoed verbatim.
"""

from __future__ import annotations

import json
import re
import shlex
import socket
import subprocess
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

from .templates import SentencePair

LEXICAL = "lexical"
EXTERNAL = "external"

_HOST_PORT_RE = re.compile(r"^(?P<host>[A-Za-z0-9_.\-]+):(?P<port>\d+)$")


class ScorerUnavailable(Exception):
    pass


class ProtocolError(Exception):
    pass


@dataclass(frozen=True)
class ScorerSpec:
    kind: str = LEXICAL
    endpoint: str | None = None  # "host:port" or a shell command
    batch_size: int = 32
    timeout: float = 60.0
    sep_token: str = "[SEP]"

    def __post_init__(self):
        if self.kind not in (LEXICAL, EXTERNAL):
            raise ValueError(f"unknown scorer kind: {self.kind!r}")
        if self.kind == EXTERNAL and not self.endpoint:
            raise ValueError("external scorer needs an endpoint")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def parse_scorer_flag(flag: str) -> ScorerSpec:
    """Parse the CLI form: "lexical" or "external:<endpoint>"."""
    if flag == LEXICAL:
        return ScorerSpec()
    if flag.startswith("external:"):
        return ScorerSpec(kind=EXTERNAL, endpoint=flag[len("external:") :])
    raise ValueError(f"unknown scorer: {flag!r}")


def _token_set(sentence: str, sep_token: str) -> frozenset[str]:
    sep = sep_token.lower()
    return frozenset(t for t in sentence.lower().split() if t != sep)


def lexical_score(sentence_a: str, sentence_b: str, sep_token: str = "[SEP]") -> float:
    """Jaccard overlap of lowercase whitespace tokens, separators removed."""
    a = _token_set(sentence_a, sep_token)
    b = _token_set(sentence_b, sep_token)
    if not a and not b:
        return 1.0
    union = a | b
    return len(a & b) / len(union)


class Scorer(Protocol):
    def score(self, pairs: Sequence[SentencePair]) -> list[float]: ...

    def close(self) -> None: ...


class LexicalScorer:
    def __init__(self, spec: ScorerSpec | None = None):
        self.spec = spec or ScorerSpec()

    def score(self, pairs: Sequence[SentencePair]) -> list[float]:
        if not pairs:
            raise ValueError("pairs must be non-empty")
        return [lexical_score(p.sentence_a, p.sentence_b, self.spec.sep_token) for p in pairs]

    def close(self) -> None:
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class ExternalScorer:
    """Client for the line-delimited JSON protocol, one in-flight request per
    connection. Callers wanting parallelism open several instances."""

    def __init__(self, spec: ScorerSpec):
        if spec.kind != EXTERNAL:
            raise ValueError("spec is not an external scorer")
        self.spec = spec
        self._next_id = 0
        self._proc: subprocess.Popen | None = None
        self._sock: socket.socket | None = None
        self._reader = None
        self._writer = None
        self._connect()

    def _connect(self) -> None:
        endpoint = self.spec.endpoint or ""
        m = _HOST_PORT_RE.match(endpoint)
        try:
            if m:
                self._sock = socket.create_connection(
                    (m.group("host"), int(m.group("port"))), timeout=self.spec.timeout
                )
                self._reader = self._sock.makefile("r", encoding="utf-8")
                self._writer = self._sock.makefile("w", encoding="utf-8")
            else:
                self._proc = subprocess.Popen(
                    shlex.split(endpoint),
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    text=True,
                    encoding="utf-8",
                )
                self._reader = self._proc.stdout
                self._writer = self._proc.stdin
        except (OSError, ValueError) as e:
            raise ScorerUnavailable(f"cannot reach scorer at {endpoint!r}: {e}") from e

    def _roundtrip(self, pairs: Sequence[SentencePair]) -> list[float]:
        request_id = self._next_id
        self._next_id += 1
        request = {
            "id": request_id,
            "pairs": [{"a": p.sentence_a, "b": p.sentence_b} for p in pairs],
        }
        try:
            self._writer.write(json.dumps(request) + "\n")
            self._writer.flush()
            line = self._reader.readline()
        except (OSError, BrokenPipeError) as e:
            raise ScorerUnavailable(f"scorer connection lost: {e}") from e
        if not line:
            raise ScorerUnavailable("scorer closed the connection")
        try:
            response = json.loads(line)
        except json.JSONDecodeError as e:
            raise ProtocolError(f"response is not JSON: {line!r}") from e
        if response.get("id") != request_id:
            raise ProtocolError(f"response id {response.get('id')!r} != request id {request_id}")
        scores = response.get("scores")
        if not isinstance(scores, list) or len(scores) != len(pairs):
            raise ProtocolError("response scores missing or of wrong length")
        out = []
        for s in scores:
            if not isinstance(s, (int, float)) or s != s or not 0.0 <= s <= 1.0:
                raise ProtocolError(f"score out of [0,1]: {s!r}")
            out.append(float(s))
        return out

    def score(self, pairs: Sequence[SentencePair]) -> list[float]:
        if not pairs:
            raise ValueError("pairs must be non-empty")
        out: list[float] = []
        for start in range(0, len(pairs), self.spec.batch_size):
            out.extend(self._roundtrip(pairs[start : start + self.spec.batch_size]))
        return out

    def close(self) -> None:
        for stream in (self._writer, self._reader):
            try:
                if stream is not None:
                    stream.close()
            except OSError:
                pass
        if self._sock is not None:
            self._sock.close()
        if self._proc is not None:
            self._proc.terminate()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def make_scorer(spec: ScorerSpec) -> Scorer:
    if spec.kind == LEXICAL:
        return LexicalScorer(spec)
    return ExternalScorer(spec)


def score_batch(spec: ScorerSpec, pairs: Sequence[SentencePair]) -> list[float]:
    """One score per pair, order-preserving and stateless across calls."""
    with make_scorer(spec) as scorer:  # type: ignore[union-attr]
        return scorer.score(pairs)


def aggregate_candidate(scores: Iterable[float]) -> float:
    """Mean of the sentence-pair scores of one candidate subsumption."""
    values = list(scores)
    if not values:
        raise ValueError("scores must be non-empty")
    return sum(values) / len(values)
