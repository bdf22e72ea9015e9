"""Gender clusters: seed centroids from confident rule labels, then nearest-centroid reassignment."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .corpus_io import Corpus, Tweet
from .embedding import EmbeddingProvider, cosine, embed_all
from .errors import EmptySeedSet, NoSeedClusters
from .lexicon import LABEL_ORDER, GenderLabel, GenderLexicon, classify_rule

SEED_LABELS = (GenderLabel.M, GenderLabel.F, GenderLabel.B)


@dataclass(frozen=True)
class ClassifiedTweet:
    tweet: Tweet
    label: GenderLabel
    confidence: float
    provenance: str  # "rule" or "centroid"
    similarity: float | None = None


@dataclass(frozen=True)
class GenderCluster:
    label: GenderLabel
    member_ids: tuple[str, ...]
    centroid: np.ndarray

    @property
    def n_g(self) -> int:
        return len(self.member_ids)


@dataclass(frozen=True)
class Classification:
    clusters: dict[GenderLabel, GenderCluster]
    tweets: tuple[ClassifiedTweet, ...]
    embeddings: dict[str, np.ndarray]

    def distribution(self) -> list[tuple[GenderLabel, int, float]]:
        """(label, count, percent) for all four labels, zero rows included."""
        total = len(self.tweets)
        counts = {label: 0 for label in LABEL_ORDER}
        for ct in self.tweets:
            counts[ct.label] += 1
        return [(label, counts[label], 100.0 * counts[label] / total) for label in LABEL_ORDER]


def compute_centroids(seed: Mapping[GenderLabel, Sequence[np.ndarray]]) -> dict[GenderLabel, np.ndarray]:
    centroids = {}
    for label, vectors in seed.items():
        if len(vectors) == 0:
            raise EmptySeedSet(f"no seed embeddings for label {label}")
        centroids[label] = np.mean(np.vstack(vectors), axis=0)
    return centroids


def assign_by_centroid(embedding: np.ndarray, centroids: Mapping[GenderLabel, np.ndarray],
                       reassign_threshold: float) -> tuple[GenderLabel, float]:
    """Closest of the M/F/B centroids by cosine; N when even the best is below threshold.

    Ties go to the earlier label in M, F, B order.
    """
    candidates = [label for label in SEED_LABELS if label in centroids]
    if not candidates:
        raise ValueError("no M/F/B centroid to assign against")
    best_label, best_sim = candidates[0], cosine(embedding, centroids[candidates[0]])
    for label in candidates[1:]:
        sim = cosine(embedding, centroids[label])
        if sim > best_sim:
            best_label, best_sim = label, sim
    if best_sim < reassign_threshold:
        return GenderLabel.N, best_sim
    return best_label, best_sim


def classify_corpus(corpus: Corpus, lex: GenderLexicon, provider: EmbeddingProvider | None = None,
                    conf_threshold: float = 1.0, reassign_threshold: float = 0.40,
                    embeddings: Mapping[str, np.ndarray] | None = None) -> Classification:
    if embeddings is None:
        if provider is None:
            raise ValueError("either provider or embeddings is required")
        embeddings = embed_all(corpus, provider)
    rules = [classify_rule(t, lex) for t in corpus]

    seeds: dict[GenderLabel, list[np.ndarray]] = {label: [] for label in SEED_LABELS}
    for tweet, rule in zip(corpus, rules):
        if rule.label in seeds and rule.confidence >= conf_threshold:
            seeds[rule.label].append(embeddings[tweet.id])
    seeds = {label: vecs for label, vecs in seeds.items() if vecs}
    if not seeds:
        raise NoSeedClusters(
            f"no tweet reached rule confidence {conf_threshold} for M, F or B; "
            "lower the confidence threshold or extend the lexicon")
    centroids = compute_centroids(seeds)

    classified = []
    for tweet, rule in zip(corpus, rules):
        if rule.label in seeds and rule.confidence >= conf_threshold:
            classified.append(ClassifiedTweet(tweet, rule.label, rule.confidence, "rule"))
        else:
            label, sim = assign_by_centroid(embeddings[tweet.id], centroids, reassign_threshold)
            classified.append(ClassifiedTweet(tweet, label, rule.confidence, "centroid", sim))

    clusters = {}
    for label in LABEL_ORDER:
        members = tuple(ct.tweet.id for ct in classified if ct.label is label)
        if members:
            centroid = compute_centroids({label: [embeddings[i] for i in members]})[label]
            clusters[label] = GenderCluster(label, members, centroid)
    return Classification(clusters, tuple(classified), dict(embeddings))
