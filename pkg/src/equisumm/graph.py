"""Similarity graphs, LexRank, Louvain communities and LSA sentence selection."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus_io import Tweet
from .embedding import normalize_rows, tfidf_matrix
from .errors import DimensionMismatch, NonConvergence, RankDeficient


@dataclass(frozen=True)
class SimilarityGraph:
    node_ids: tuple[str, ...]
    weights: np.ndarray  # symmetric, zero diagonal, zero where there is no edge
    adjacency: np.ndarray  # boolean edge mask; edges may carry weight 0 at threshold 0
    threshold: float

    def __len__(self) -> int:
        return len(self.node_ids)

    def edges(self) -> list[tuple[str, str, float]]:
        """Undirected edges once each, ordered by (src, dst) node position."""
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return [(self.node_ids[i], self.node_ids[j], float(self.weights[i, j]))
                for i, j in zip(rows, cols)]

    @classmethod
    def from_weights(cls, node_ids: Sequence[str], weights, threshold: float = 0.0) -> "SimilarityGraph":
        """Wrap a hand-built symmetric weight matrix; nonzero entries are edges."""
        w = np.array(weights, dtype=float)
        if w.shape != (len(node_ids), len(node_ids)) or not np.allclose(w, w.T):
            raise ValueError("weights must be a symmetric square matrix matching node_ids")
        np.fill_diagonal(w, 0.0)
        return cls(tuple(node_ids), w, w > 0, threshold)


def build_graph(embeddings: Sequence[tuple[str, np.ndarray]], threshold: float = 0.40) -> SimilarityGraph:
    """Edge (i, j) with weight cos(x_i, x_j) whenever the cosine is at least ``threshold``."""
    if not embeddings:
        raise ValueError("cannot build a graph over zero nodes")
    ids = tuple(i for i, _ in embeddings)
    dims = {np.shape(v) for _, v in embeddings}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed embedding shapes: {sorted(dims)}")
    x = normalize_rows(np.vstack([np.asarray(v, dtype=float) for _, v in embeddings]))
    sims = np.clip(x @ x.T, -1.0, 1.0)
    sims = (sims + sims.T) / 2.0  # exact symmetry
    adjacency = sims >= threshold
    np.fill_diagonal(adjacency, False)
    weights = np.where(adjacency, sims, 0.0)
    return SimilarityGraph(ids, weights, adjacency, threshold)


@dataclass(frozen=True)
class CentralityScores:
    scores: dict[str, float]
    iterations: int
    residual: float
    converged: bool = True

    def ranked(self) -> list[tuple[str, float]]:
        """Descending score; near-equal scores fall back to id order."""
        return sorted(self.scores.items(), key=lambda kv: (-round(kv[1], 12), kv[0]))


def transition_matrix(weights: np.ndarray) -> np.ndarray:
    """Row-stochastic matrix from edge weights; rows without edges become uniform."""
    n = weights.shape[0]
    sums = weights.sum(axis=1)
    p = np.empty_like(weights, dtype=float)
    dangling = sums <= 0
    p[~dangling] = weights[~dangling] / sums[~dangling, None]
    p[dangling] = 1.0 / n
    return p


def lexrank(graph: SimilarityGraph, damping: float = 0.85, tol: float = 1e-8,
            max_iter: int = 200) -> CentralityScores:
    """Continuous LexRank by damped power iteration.

    score <- (1 - d)/N + d * P^T score, starting uniform, until the L1 change
    drops below ``tol``. Hitting ``max_iter`` first emits :class:`NonConvergence`
    and still returns the last iterate.
    """
    n = len(graph)
    if n == 0:
        raise ValueError("empty graph")
    pt = transition_matrix(graph.weights).T
    score = np.full(n, 1.0 / n)
    residual = float("inf")
    iterations = 0
    while iterations < max_iter:
        new = (1.0 - damping) / n + damping * (pt @ score)
        new /= new.sum()
        residual = float(np.abs(new - score).sum())
        score = new
        iterations += 1
        if residual < tol:
            break
    converged = residual < tol
    if not converged:
        warnings.warn(f"LexRank stopped at max_iter={max_iter} with residual {residual:.3g}",
                      NonConvergence, stacklevel=2)
    return CentralityScores(dict(zip(graph.node_ids, score.tolist())), iterations, residual, converged)


# ---------------------------------------------------------------- Louvain

def modularity(weights: np.ndarray, membership: Sequence[int]) -> float:
    """Newman modularity of a partition of a weighted undirected graph."""
    a = np.asarray(weights, dtype=float)
    two_m = a.sum()
    if two_m == 0:
        return 0.0
    labels = np.asarray(membership)
    k = a.sum(axis=1)
    q = 0.0
    for c in np.unique(labels):
        mask = labels == c
        q += a[np.ix_(mask, mask)].sum() / two_m - (k[mask].sum() / two_m) ** 2
    return float(q)


def _local_moves(a: np.ndarray, min_gain: float = 1e-12) -> np.ndarray:
    """One Louvain level: move nodes in index order until no move increases modularity."""
    n = a.shape[0]
    k = a.sum(axis=1)
    two_m = a.sum()
    comm = np.arange(n)
    tot = k.copy()
    moved = True
    while moved:
        moved = False
        for i in range(n):
            current = comm[i]
            tot[current] -= k[i]
            links: dict[int, float] = {}
            for j in np.nonzero(a[i])[0]:
                if j != i:
                    links[comm[j]] = links.get(comm[j], 0.0) + a[i, j]
            best = current
            best_gain = links.get(current, 0.0) - tot[current] * k[i] / two_m
            for c in sorted(links):
                gain = links[c] - tot[c] * k[i] / two_m
                if gain > best_gain + min_gain:
                    best, best_gain = c, gain
            comm[i] = best
            tot[best] += k[i]
            if best != current:
                moved = True
    return comm


def _renumber(labels: Sequence[int]) -> np.ndarray:
    mapping: dict[int, int] = {}
    return np.array([mapping.setdefault(int(c), len(mapping)) for c in labels], dtype=int)


def louvain(graph: SimilarityGraph, min_modularity_gain: float = 1e-7) -> dict[str, int]:
    """Greedy modularity communities with deterministic node visitation.

    Community ids are 0..C-1 in order of each community's first node.
    """
    n = len(graph)
    weights = np.where(graph.adjacency, graph.weights, 0.0)
    if weights.sum() == 0:
        return {node: i for i, node in enumerate(graph.node_ids)}
    membership = np.arange(n)  # node -> index of its supernode in ``a``
    a = weights
    q = modularity(weights, membership)
    while True:
        level = _renumber(_local_moves(a))
        candidate = level[membership]
        new_q = modularity(weights, candidate)
        if new_q - q < min_modularity_gain:
            break
        membership, q = candidate, new_q
        n_comm = level.max() + 1
        if n_comm == a.shape[0]:
            break
        s = np.zeros((a.shape[0], n_comm))
        s[np.arange(a.shape[0]), level] = 1.0
        a = s.T @ a @ s
    membership = _renumber(membership)
    return dict(zip(graph.node_ids, (int(c) for c in membership)))


# ---------------------------------------------------------------- LSA

def truncated_svd(matrix: np.ndarray, k: int, tol: float = 1e-9, max_iter: int = 100_000,
                  rank_tol: float = 1e-6) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Top-k singular triplets by power iteration on A^T A with deflation.

    Returns (U, s, Vt) with s nonincreasing. Fewer than k triplets come back
    when a singular value falls below ``rank_tol * s[0]`` (numerical rank).
    """
    a = np.asarray(matrix, dtype=float)
    gram = a.T @ a
    n = gram.shape[0]
    rng = np.random.default_rng(0)
    vs: list[np.ndarray] = []
    sigmas: list[float] = []
    for _ in range(min(k, n)):
        v = rng.standard_normal(n)
        for prev in vs:
            v -= (prev @ v) * prev
        v /= np.linalg.norm(v)
        for _ in range(max_iter):
            w = gram @ v
            # re-orthogonalize: deflation alone drifts in floating point
            for prev in vs:
                w -= (prev @ w) * prev
            norm = np.linalg.norm(w)
            if norm == 0.0:
                break
            w /= norm
            delta = np.linalg.norm(w - v)
            v = w
            if delta < tol:
                break
        sigma = float(np.sqrt(max(float(v @ gram @ v), 0.0)))
        if sigma == 0.0 or (sigmas and sigma < rank_tol * sigmas[0]):
            break
        vs.append(v)
        sigmas.append(sigma)
        gram = gram - sigma ** 2 * np.outer(v, v)
    if not vs:
        return np.zeros((a.shape[0], 0)), np.zeros(0), np.zeros((0, n))
    vt = np.vstack(vs)
    s = np.array(sigmas)
    u = (a @ vt.T) / s
    return u, s, vt


def gong_liu(matrix: np.ndarray, k: int) -> tuple[list[int], list[float], bool]:
    """Column indices chosen one per leading concept of a term x document matrix.

    For concept j, take the unselected column with the largest |V[j, col]|. If
    the matrix has rank below k, the remaining picks go by descending column
    norm and the returned flag is True. Scores are |loading| or column norm.
    """
    n = matrix.shape[1]
    if not 1 <= k <= n:
        raise ValueError(f"k={k} must be between 1 and the number of documents ({n})")
    _, s, vt = truncated_svd(matrix, k)
    chosen: list[int] = []
    scores: list[float] = []
    for row in vt:
        loading = np.abs(row)
        order = sorted((i for i in range(n) if i not in chosen), key=lambda i: (-loading[i], i))
        chosen.append(order[0])
        scores.append(float(loading[order[0]]))
    deficient = len(chosen) < k
    if deficient:
        norms = np.linalg.norm(matrix, axis=0)
        rest = sorted((i for i in range(n) if i not in chosen), key=lambda i: (-norms[i], i))
        for i in rest[:k - len(chosen)]:
            chosen.append(i)
            scores.append(float(norms[i]))
    return chosen, scores, deficient


def term_document_matrix(tweets: Sequence[Tweet]) -> np.ndarray:
    weights, _ = tfidf_matrix([t.tokens for t in tweets])
    return weights.T


def lsa_select(tweets: Sequence[Tweet], k: int) -> list[str]:
    """Gong-Liu LSA selection of ``k`` tweet ids in concept order."""
    if k > len(tweets):
        raise ValueError(f"cannot select {k} of {len(tweets)} tweets")
    chosen, _, deficient = gong_liu(term_document_matrix(tweets), k)
    if deficient:
        warnings.warn("term matrix rank below k; filled remaining picks by column norm",
                      RankDeficient, stacklevel=2)
    return [tweets[i].id for i in chosen]
