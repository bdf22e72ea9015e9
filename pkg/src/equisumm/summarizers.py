"""EquiSumm and the three baseline extractive summarizers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .clustering import GenderCluster
from .corpus_io import Tweet
from .graph import build_graph, gong_liu, lexrank, louvain, term_document_matrix
from .lexicon import LABEL_ORDER, GenderLabel

METHODS = ("equisumm", "lexrank", "lsa", "community_lexrank")


@dataclass(frozen=True)
class SummaryEntry:
    id: str
    group: str  # gender label, community id, or "all"
    score: float


@dataclass(frozen=True)
class Summary:
    method: str
    entries: tuple[SummaryEntry, ...]
    k_per_group: int | None = None
    total_budget: int | None = None
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        ids = [e.id for e in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError(f"{self.method} summary repeats tweet ids")

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class LexRankParams:
    damping: float = 0.85
    tol: float = 1e-8
    max_iter: int = 200


def _top_by_lexrank(items: Sequence[tuple[str, np.ndarray]], n: int, threshold: float,
                    params: LexRankParams) -> list[tuple[str, float]]:
    graph = build_graph(items, threshold)
    scores = lexrank(graph, params.damping, params.tol, params.max_iter)
    return scores.ranked()[:n]


def summarize_equisumm(clusters: Mapping[GenderLabel, GenderCluster], embeddings: Mapping[str, np.ndarray],
                       k: int = 5, threshold: float = 0.40, include_neutral: bool = True,
                       params: LexRankParams = LexRankParams()) -> Summary:
    """Top-k LexRank tweets from each gender cluster, concatenated in M, F, B, N order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    entries = []
    for label in LABEL_ORDER:
        cluster = clusters.get(label)
        if cluster is None or cluster.n_g == 0:
            continue
        if label is GenderLabel.N and not include_neutral:
            continue
        items = [(i, embeddings[i]) for i in cluster.member_ids]
        for tweet_id, score in _top_by_lexrank(items, k, threshold, params):
            entries.append(SummaryEntry(tweet_id, label.value, score))
    if not entries:
        raise ValueError("no non-empty cluster to summarize")
    flags = () if include_neutral else ("neutral_excluded",)
    return Summary("equisumm", tuple(entries), k_per_group=k, flags=flags)


def summarize_lexrank(embeddings: Mapping[str, np.ndarray], budget: int, threshold: float = 0.40,
                      params: LexRankParams = LexRankParams()) -> Summary:
    if budget < 1:
        raise ValueError("budget must be >= 1")
    top = _top_by_lexrank(list(embeddings.items()), budget, threshold, params)
    return Summary("lexrank", tuple(SummaryEntry(i, "all", s) for i, s in top), total_budget=budget)


def allocate_budget(sizes: Sequence[int], budget: int) -> list[int]:
    """Split ``budget`` across groups proportionally to size.

    Every group gets one slot first (in index order, while the budget lasts);
    remaining slots go by largest remainder of the size-proportional quota,
    never exceeding a group's size. Remainder ties go to the lower index.
    """
    budget = min(budget, sum(sizes))
    alloc = [0] * len(sizes)
    for c in range(len(sizes)):
        if budget == 0:
            return alloc
        if sizes[c] > 0:
            alloc[c] = 1
            budget -= 1
    while budget > 0:
        open_ = [c for c in range(len(sizes)) if alloc[c] < sizes[c]]
        total = sum(sizes[c] for c in open_)
        quotas = {c: budget * sizes[c] / total for c in open_}
        grant = {c: min(int(quotas[c]), sizes[c] - alloc[c]) for c in open_}
        left = budget - sum(grant.values())
        for c in sorted(open_, key=lambda c: (-(quotas[c] - int(quotas[c])), c)):
            if left == 0:
                break
            if alloc[c] + grant[c] < sizes[c]:
                grant[c] += 1
                left -= 1
        for c in open_:
            alloc[c] += grant[c]
        budget = left
    return alloc


def summarize_community_lexrank(embeddings: Mapping[str, np.ndarray], budget: int, threshold: float = 0.40,
                                params: LexRankParams = LexRankParams()) -> Summary:
    """Louvain communities over the global graph, then LexRank inside each one."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    graph = build_graph(list(embeddings.items()), threshold)
    membership = louvain(graph)
    n_comm = max(membership.values()) + 1
    members: list[list[str]] = [[] for _ in range(n_comm)]
    for tweet_id in graph.node_ids:
        members[membership[tweet_id]].append(tweet_id)
    alloc = allocate_budget([len(m) for m in members], budget)
    entries = []
    for c, ids in enumerate(members):
        if alloc[c] == 0:
            continue
        items = [(i, embeddings[i]) for i in ids]
        for tweet_id, score in _top_by_lexrank(items, alloc[c], threshold, params):
            entries.append(SummaryEntry(tweet_id, str(c), score))
    return Summary("community_lexrank", tuple(entries), total_budget=budget)


def summarize_lsa(tweets: Sequence[Tweet], budget: int) -> Summary:
    if budget < 1:
        raise ValueError("budget must be >= 1")
    k = min(budget, len(tweets))
    chosen, scores, deficient = gong_liu(term_document_matrix(tweets), k)
    entries = tuple(SummaryEntry(tweets[i].id, "all", s) for i, s in zip(chosen, scores))
    return Summary("lsa", entries, total_budget=budget, flags=("rank_deficient",) if deficient else ())


def parity_budget(clusters: Mapping[GenderLabel, GenderCluster], k: int, include_neutral: bool = True) -> int:
    """Length of the EquiSumm summary, used as the baseline budget."""
    return sum(min(k, c.n_g) for label, c in clusters.items()
               if c.n_g and (include_neutral or label is not GenderLabel.N))
