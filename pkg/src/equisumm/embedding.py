"""Tweet embeddings: a built-in TF-IDF encoder and an HTTP sentence-encoder client."""

from __future__ import annotations

import logging
import math
import time
from collections import Counter
from typing import Protocol, Sequence

import httpx
import numpy as np

from .corpus_io import Corpus
from .errors import DimensionMismatch, ServiceUnavailable, ZeroVector

log = logging.getLogger(__name__)


class EmbeddingProvider(Protocol):
    kind: str

    def embed_corpus(self, corpus: Corpus) -> np.ndarray: ...


def tfidf_matrix(token_lists: Sequence[Sequence[str]]) -> tuple[np.ndarray, list[str]]:
    """Raw tf * smoothed-idf weights, one row per document, columns in sorted vocabulary order.

    idf(t) = ln((1 + N) / (1 + df(t))) + 1
    """
    vocab = sorted({tok for toks in token_lists for tok in toks})
    index = {tok: j for j, tok in enumerate(vocab)}
    n_docs = len(token_lists)
    tf = np.zeros((n_docs, len(vocab)))
    for i, toks in enumerate(token_lists):
        for tok, count in Counter(toks).items():
            tf[i, index[tok]] = count
    df = (tf > 0).sum(axis=0)
    idf = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0
    return tf * idf, vocab


def normalize_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1)
    if np.any(norms == 0):
        raise ZeroVector(f"{int(np.sum(norms == 0))} zero-norm embedding(s)")
    return matrix / norms[:, None]


class TfidfEmbedder:
    """Deterministic offline encoder; dimension equals the corpus vocabulary size."""

    kind = "tfidf_builtin"

    def embed_corpus(self, corpus: Corpus) -> np.ndarray:
        weights, _ = tfidf_matrix([t.tokens for t in corpus])
        return normalize_rows(weights)


class HttpEmbedder:
    """Client for an ``/embed`` sidecar wrapping a sentence encoder.

    Request: ``{"texts": [...]}``; response: ``{"dim": D, "vectors": [[...], ...]}``.
    Each batch is retried ``retries`` times with exponential backoff before
    :class:`ServiceUnavailable` is raised. Ragged or inconsistent vectors raise
    :class:`DimensionMismatch` immediately.
    """

    kind = "http_service"

    def __init__(self, url: str, batch_size: int = 64, retries: int = 2,
                 backoff: float = 0.5, timeout: float = 30.0,
                 client: httpx.Client | None = None) -> None:
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        self.url = url.rstrip("/")
        self.batch_size = batch_size
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self._client = client

    def _post(self, client: httpx.Client, texts: list[str]) -> dict:
        last = "no attempt made"
        for attempt in range(self.retries + 1):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                resp = client.post(f"{self.url}/embed", json={"texts": texts})
            except httpx.HTTPError as exc:
                last = f"{type(exc).__name__}: {exc}"
                log.warning("embed request failed (attempt %d): %s", attempt + 1, last)
                continue
            if resp.status_code != 200:
                last = f"HTTP {resp.status_code}"
                log.warning("embed request failed (attempt %d): %s", attempt + 1, last)
                continue
            try:
                body = resp.json()
                if not isinstance(body, dict) or not isinstance(body.get("vectors"), list):
                    raise ValueError("missing 'vectors' list")
                int(body["dim"])
            except (ValueError, KeyError, TypeError) as exc:
                last = f"malformed response body: {exc}"
                log.warning("embed request failed (attempt %d): %s", attempt + 1, last)
                continue
            return body
        raise ServiceUnavailable(f"{self.url}/embed: {last} after {self.retries} retries")

    def embed_texts(self, texts: Sequence[str]) -> np.ndarray:
        client = self._client or httpx.Client(timeout=self.timeout)
        rows: list[list[float]] = []
        dim: int | None = None
        try:
            for start in range(0, len(texts), self.batch_size):
                batch = list(texts[start:start + self.batch_size])
                body = self._post(client, batch)
                vectors = body["vectors"]
                if len(vectors) != len(batch):
                    raise DimensionMismatch(
                        f"sent {len(batch)} texts, received {len(vectors)} vectors")
                declared = int(body["dim"])
                dim = declared if dim is None else dim
                if declared != dim:
                    raise DimensionMismatch(f"dim changed between batches: {dim} -> {declared}")
                for v in vectors:
                    if len(v) != dim:
                        raise DimensionMismatch(f"expected dim {dim}, got vector of length {len(v)}")
                rows.extend(vectors)
        finally:
            if self._client is None:
                client.close()
        out = np.asarray(rows, dtype=float)
        if not np.all(np.isfinite(out)):
            raise ValueError("embedding service returned non-finite values")
        return out

    def embed_corpus(self, corpus: Corpus) -> np.ndarray:
        return normalize_rows(self.embed_texts([t.text for t in corpus]))


def embed_all(corpus: Corpus, provider: EmbeddingProvider) -> dict[str, np.ndarray]:
    """One unit-norm embedding per tweet, keyed by id in corpus order."""
    matrix = provider.embed_corpus(corpus)
    if matrix.shape[0] != len(corpus):
        raise DimensionMismatch(f"{matrix.shape[0]} embeddings for {len(corpus)} tweets")
    return {t.id: matrix[i] for i, t in enumerate(corpus)}


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    na = math.sqrt(float(np.dot(a, a)))
    nb = math.sqrt(float(np.dot(b, b)))
    if na == 0 or nb == 0:
        raise ZeroVector("cosine of a zero vector is undefined")
    return min(1.0, max(-1.0, float(np.dot(a, b)) / (na * nb)))
