"""Small shared helpers: reproducible RNG derivation and file digests."""

from __future__ import annotations

import hashlib
import random
from typing import Iterable


def derive_rng(seed: int, *tokens: object) -> random.Random:
    """Derive an independent RNG stream from a base seed and identity tokens.

    The derivation is sha256-based so it is stable across processes and
    platforms (unlike the salted builtin ``hash``). Workers that process
    items in any order therefore draw identical randomness per item.
    """
    h = hashlib.sha256()
    h.update(str(int(seed)).encode("utf-8"))
    for tok in tokens:
        h.update(b"\x1f")
        h.update(str(tok).encode("utf-8"))
    return random.Random(int.from_bytes(h.digest()[:8], "big"))


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def sha256_lines(lines: Iterable[str]) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode("utf-8"))
    return h.hexdigest()
