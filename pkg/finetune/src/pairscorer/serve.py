"""Serve a trained pair classifier over the line-delimited JSON protocol.

    request:  {"id": <any>, "pairs": [{"a": <str>, "b": <str>}, ...]}
    response: {"id": <same>, "scores": [<float in [0,1]>, ...]}

One JSON document per line, UTF-8, ids echoed verbatim, requests answered
strictly in order. Malformed requests get {"id": ..., "error": ...} and the
server keeps running. Inference runs in eval mode, so identical requests get
identical scores.
"""

from __future__ import annotations

import json
import socket
import sys
from typing import IO

import torch

from .model import load_model


class ScoreService:
    def __init__(self, model_dir: str, batch_size: int = 32):
        self.model, self.tokenizer, meta = load_model(model_dir)
        self.max_length = int(meta["max_length"])
        self.batch_size = batch_size
        self.model.eval()

    @torch.no_grad()
    def score_pairs(self, pairs: list[tuple[str, str]]) -> list[float]:
        scores: list[float] = []
        for start in range(0, len(pairs), self.batch_size):
            chunk = pairs[start : start + self.batch_size]
            encoded = self.tokenizer(
                [a for a, _ in chunk],
                [b for _, b in chunk],
                padding=True,
                truncation="longest_first",
                max_length=self.max_length,
                return_tensors="pt",
            )
            scores.extend(float(s) for s in self.model.scores(**encoded))
        return scores

    def handle_line(self, line: str) -> str:
        request_id = None
        try:
            request = json.loads(line)
            request_id = request.get("id")
            pairs = [(p["a"], p["b"]) for p in request["pairs"]]
            scores = self.score_pairs(pairs)
            return json.dumps({"id": request_id, "scores": scores})
        except Exception as e:  # keep serving; the client surfaces the error
            return json.dumps({"id": request_id, "error": f"{type(e).__name__}: {e}"})

    def serve_stream(self, reader: IO[str], writer: IO[str]) -> None:
        for line in reader:
            if not line.strip():
                continue
            writer.write(self.handle_line(line) + "\n")
            writer.flush()

    def serve_stdio(self) -> None:
        self.serve_stream(sys.stdin, sys.stdout)

    def serve_tcp(self, host: str, port: int, max_connections: int | None = None) -> None:
        """Accept connections one at a time; requests are serial per
        connection, which guarantees response ordering."""
        server = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        server.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        server.bind((host, port))
        server.listen(1)
        print(f"listening on {host}:{server.getsockname()[1]}", file=sys.stderr, flush=True)
        served = 0
        try:
            while max_connections is None or served < max_connections:
                conn, _ = server.accept()
                with conn:
                    reader = conn.makefile("r", encoding="utf-8")
                    writer = conn.makefile("w", encoding="utf-8")
                    self.serve_stream(reader, writer)
                served += 1
        finally:
            server.close()
