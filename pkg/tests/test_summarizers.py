import math

import numpy as np
import pytest

from oracles import cosine_graph, dense_lexrank
from equisumm.clustering import GenderCluster, classify_corpus
from equisumm.corpus_io import Tweet
from equisumm.embedding import TfidfEmbedder
from equisumm.lexicon import GenderLabel
from equisumm.summarizers import (
    Summary,
    SummaryEntry,
    allocate_budget,
    parity_budget,
    summarize_community_lexrank,
    summarize_equisumm,
    summarize_lexrank,
    summarize_lsa,
)
from equisumm.synthetic import skewed_corpus

M, F, B, N = GenderLabel.M, GenderLabel.F, GenderLabel.B, GenderLabel.N


def cluster(label, members, emb):
    return GenderCluster(label, tuple(members), np.mean([emb[i] for i in members], axis=0))


def test_tiny_clusters_capped_by_size():
    emb = {"t1": np.array([1.0, 0.0]), "t2": np.array([0.0, 1.0])}
    clusters = {M: cluster(M, ["t1"], emb), F: cluster(F, ["t2"], emb)}
    s = summarize_equisumm(clusters, emb, k=3)
    assert [(e.id, e.group) for e in s.entries] == [("t1", "M"), ("t2", "F")]


def test_single_cluster_is_per_cluster_lexrank():
    rng = np.random.default_rng(1)
    emb = {f"t{i}": rng.random(4) for i in range(6)}
    s = summarize_equisumm({F: cluster(F, list(emb), emb)}, emb, k=2)
    assert s.ids == summarize_lexrank(emb, 2).ids


def twelve_tweet_fixture():
    """Three groups of four hand-built vectors around distinct axes."""
    emb = {}
    bases = [np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0])]
    offsets = [np.array(o) for o in ([0.1, 0.2, 0.0], [0.3, 0.0, 0.1], [0.0, 0.05, 0.05], [0.2, 0.2, 0.2])]
    groups = {}
    for g, (label, base) in enumerate(zip((M, F, B), bases)):
        members = []
        for j, off in enumerate(offsets):
            tid = f"g{g}t{j}"
            emb[tid] = base + np.roll(off, g)
            members.append(tid)
        groups[label] = members
    return emb, groups


def test_twelve_tweet_fixture_matches_oracle():
    emb, groups = twelve_tweet_fixture()
    clusters = {label: cluster(label, m, emb) for label, m in groups.items()}
    s = summarize_equisumm(clusters, emb, k=2, threshold=0.40)
    assert len(s) == 6

    expected = []
    for label in (M, F, B):
        members = groups[label]
        scores = dense_lexrank(cosine_graph([emb[i].tolist() for i in members], 0.40))
        ranked = sorted(zip(members, scores), key=lambda kv: (-round(kv[1], 12), kv[0]))
        expected += [(i, label.value) for i, _ in ranked[:2]]
    assert [(e.id, e.group) for e in s.entries] == expected


def test_group_order_and_neutral_toggle():
    emb = {c: np.array(v) for c, v in zip("abcd", ([1.0, 0], [0, 1.0], [1.0, 1.0], [1.0, 0.2]))}
    clusters = {N: cluster(N, ["d"], emb), B: cluster(B, ["c"], emb),
                F: cluster(F, ["b"], emb), M: cluster(M, ["a"], emb)}
    assert [e.group for e in summarize_equisumm(clusters, emb, 1).entries] == ["M", "F", "B", "N"]
    s = summarize_equisumm(clusters, emb, 1, include_neutral=False)
    assert [e.group for e in s.entries] == ["M", "F", "B"]
    assert s.flags == ("neutral_excluded",)


def test_lexrank_budget_exceeds_corpus():
    emb = {f"t{i}": np.array([1.0, i]) for i in range(3)}
    s = summarize_lexrank(emb, 10)
    assert sorted(s.ids) == ["t0", "t1", "t2"]
    scores = [e.score for e in s.entries]
    assert scores == sorted(scores, reverse=True)


def test_lexrank_uniform_picks_smallest_ids():
    emb = {f"t{i}": np.ones(3) for i in (4, 2, 0, 3, 1)}
    assert summarize_lexrank(emb, 3).ids == ["t0", "t1", "t2"]


def test_lexrank_path_picks_middle():
    r = 1 / math.sqrt(2)
    emb = {"a": np.array([1.0, 0]), "b": np.array([r, r]), "c": np.array([0, 1.0])}
    assert summarize_lexrank(emb, 1).ids == ["b"]


@pytest.mark.parametrize("sizes, budget, expected", [
    ([6, 2], 4, [3, 1]),
    ([4, 4], 4, [2, 2]),
    ([5], 3, [3]),
    ([1, 1, 1], 2, [1, 1, 0]),
    ([1, 9], 5, [1, 4]),
    ([3, 3, 3], 100, [3, 3, 3]),
    ([7, 2, 1], 5, [3, 1, 1]),
])
def test_allocate_budget(sizes, budget, expected):
    assert allocate_budget(sizes, budget) == expected


def test_allocation_largest_remainder_by_hand():
    # sizes 6 and 2, budget 4: one slot each, then 2 left split 1.5 / 0.5,
    # floors 1 / 0, the tied remainder goes to the first community
    assert allocate_budget([6, 2], 4) == [3, 1]


def test_community_single_community_equals_lexrank():
    rng = np.random.default_rng(2)
    emb = {f"t{i}": np.ones(4) + 0.01 * rng.random(4) for i in range(6)}
    s = summarize_community_lexrank(emb, 3)
    assert {e.group for e in s.entries} == {"0"}
    assert set(s.ids) == set(summarize_lexrank(emb, 3).ids)


def test_community_two_equal_communities():
    emb = {}
    for i in range(4):
        emb[f"a{i}"] = np.array([1.0, 0.01 * i, 0])
        emb[f"b{i}"] = np.array([0, 0.01 * i, 1.0])
    s = summarize_community_lexrank(emb, 4)
    groups = [e.group for e in s.entries]
    assert groups.count("0") == 2 and groups.count("1") == 2


def test_lsa_budget_and_exhaustion():
    tweets = [Tweet.from_text(f"t{i}", t) for i, t in enumerate(["a b", "a b a b a b", "a b a b"])]
    assert summarize_lsa(tweets, 1).ids == ["t1"]
    s = summarize_lsa(tweets, 5)
    assert sorted(s.ids) == ["t0", "t1", "t2"]
    assert "rank_deficient" in s.flags


def test_summary_rejects_duplicates():
    with pytest.raises(ValueError):
        Summary("lexrank", (SummaryEntry("a", "all", 1.0), SummaryEntry("a", "all", 0.5)))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_equisumm_entry_count_and_determinism(lex, seed):
    corpus = skewed_corpus(seed, n=120)
    result = classify_corpus(corpus, lex, TfidfEmbedder())
    s1 = summarize_equisumm(result.clusters, result.embeddings, 5)
    s2 = summarize_equisumm(result.clusters, result.embeddings, 5)
    assert s1 == s2
    assert len(s1) == sum(min(5, c.n_g) for c in result.clusters.values()) == parity_budget(result.clusters, 5)
    for label, c in result.clusters.items():
        assert sum(e.group == label.value for e in s1.entries) == min(5, c.n_g)
    budget = parity_budget(result.clusters, 5)
    for summary in (summarize_lexrank(result.embeddings, budget),
                    summarize_community_lexrank(result.embeddings, budget),
                    summarize_lsa(list(corpus), budget)):
        assert len(summary) == min(budget, len(corpus))
