import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import cos, mean_vector
from equisumm.clustering import assign_by_centroid, classify_corpus, compute_centroids
from equisumm.corpus_io import Corpus, Tweet
from equisumm.embedding import TfidfEmbedder, embed_all
from equisumm.errors import EmptySeedSet, NoSeedClusters
from equisumm.lexicon import GenderLabel, classify_rule

M, F, B, N = GenderLabel.M, GenderLabel.F, GenderLabel.B, GenderLabel.N


def test_centroid_single_member():
    v = np.array([0.3, -1.2, 4.0])
    np.testing.assert_array_equal(compute_centroids({M: [v]})[M], v)


def test_centroid_symmetric_pair():
    c = compute_centroids({F: [np.array([1.0, 0.0]), np.array([-1.0, 0.0])]})
    np.testing.assert_array_equal(c[F], [0.0, 0.0])


def test_centroid_hand_mean():
    members = [[1.0, 2.0], [3.0, 4.0], [5.0, 0.0]]
    got = compute_centroids({B: [np.array(v) for v in members]})[B]
    np.testing.assert_allclose(got, [3.0, 2.0], atol=1e-15)
    np.testing.assert_allclose(got, mean_vector(members), atol=1e-15)


def test_centroid_empty_seed_set():
    with pytest.raises(EmptySeedSet):
        compute_centroids({M: [np.ones(2)], F: []})


def test_assign_exact_match():
    cents = {M: np.array([0.2, 0.7]), F: np.array([1.0, 0.0])}
    label, sim = assign_by_centroid(np.array([0.2, 0.7]), cents, 0.4)
    assert label is M and sim == pytest.approx(1.0, abs=1e-15)


def test_assign_hand_cosine():
    cents = {M: np.array([1.0, 0.0]), F: np.array([0.0, 1.0])}
    label, sim = assign_by_centroid(np.array([0.9, 0.1]), cents, 0.4)
    assert label is M
    assert sim == pytest.approx(0.9 / np.sqrt(0.82), abs=1e-12)
    assert sim == pytest.approx(0.9939, abs=1e-4)


def test_assign_tie_breaks_by_label_order():
    cents = {F: np.array([0.0, 1.0]), M: np.array([1.0, 0.0])}
    assert assign_by_centroid(np.array([0.5, 0.5]), cents, 0.4)[0] is M
    cents = {B: np.array([1.0, 0.0]), F: np.array([0.0, 1.0])}
    assert assign_by_centroid(np.array([0.5, 0.5]), cents, 0.4)[0] is F


def test_assign_below_threshold_is_neutral():
    cents = {M: np.array([1.0, 0.0]), F: np.array([0.0, 1.0])}
    label, sim = assign_by_centroid(np.array([-1.0, -1.0]), cents, 0.4)
    assert label is N and sim == pytest.approx(-1 / np.sqrt(2), abs=1e-15)


@given(st.lists(st.tuples(st.floats(0.01, 10), st.floats(0.01, 10)), min_size=1, max_size=3),
       st.tuples(st.floats(0.01, 10), st.floats(0.01, 10)), st.floats(0.01, 100))
def test_assign_invariant_to_centroid_scaling(cents, x, scale):
    centroids = {label: np.array(c) for label, c in zip((M, F, B), cents)}
    scaled = {label: scale * c for label, c in centroids.items()}
    emb = np.array(x)
    a, sa = assign_by_centroid(emb, centroids, 0.4)
    b, sb = assign_by_centroid(emb, scaled, 0.4)
    assert a is b
    assert sa == pytest.approx(sb, abs=1e-12)


def test_example_tweets_rule_stage(lex, example_corpus):
    rules = {t.id: classify_rule(t, lex).label for t in example_corpus}
    assert rules["1"] is M and rules["2"] is F and rules["4"] is N
    result = classify_corpus(example_corpus, lex, TfidfEmbedder(), conf_threshold=1.0)
    by_id = {ct.tweet.id: ct for ct in result.tweets}
    assert by_id["1"].label is M and by_id["1"].provenance == "rule"
    assert by_id["2"].label is F and by_id["2"].provenance == "rule"
    assert by_id["3"].provenance == "centroid"
    assert by_id["4"].provenance == "centroid"


def test_single_label_corpus(lex):
    corpus = Corpus.from_texts(["the man spoke", "a man walked", "one man cried", "man of the hour"])
    result = classify_corpus(corpus, lex, TfidfEmbedder())
    assert list(result.clusters) == [M]
    assert result.clusters[M].member_ids == tuple(corpus.ids)


def test_no_seed_clusters(lex):
    with pytest.raises(NoSeedClusters, match="lower"):
        classify_corpus(Corpus.from_texts(["nothing here", "nor here"]), lex, TfidfEmbedder())


def twenty_tweet_fixture():
    rng = random.Random(7)
    male_topic = ["court", "trial", "evidence", "lawsuit", "innocent", "career"]
    female_topic = ["survivor", "courage", "believe", "voices", "solidarity", "safety"]
    texts = []
    for i in range(8):
        texts.append(" ".join(["men"] + rng.sample(male_topic, 3) + ["today"]))
    for i in range(8):
        texts.append(" ".join(["women"] + rng.sample(female_topic, 3) + ["today"]))
    for i in range(4):
        texts.append(" ".join(rng.sample(female_topic, 4)))
    return Corpus.from_texts(texts)


def test_ambiguous_tweets_land_in_f(lex):
    corpus = twenty_tweet_fixture()
    emb = embed_all(corpus, TfidfEmbedder())
    result = classify_corpus(corpus, lex, embeddings=emb)
    ambiguous = corpus.ids[16:]

    # brute-force nearest centroid over plain lists
    vec = {i: emb[i].tolist() for i in corpus.ids}
    cm = mean_vector([vec[i] for i in corpus.ids[:8]])
    cf = mean_vector([vec[i] for i in corpus.ids[8:16]])
    for i in ambiguous:
        assert cos(vec[i], cf) > max(cos(vec[i], cm), 0.4)

    labels = {ct.tweet.id: ct.label for ct in result.tweets}
    assert all(labels[i] is F for i in ambiguous)
    assert result.clusters[F].n_g == 12 and result.clusters[M].n_g == 8


@pytest.fixture(scope="module")
def mixed_result(lex):
    from equisumm.synthetic import skewed_corpus
    corpus = skewed_corpus(3, n=200)
    return corpus, classify_corpus(corpus, lex, TfidfEmbedder())


def test_partition_property(mixed_result):
    corpus, result = mixed_result
    all_ids = [i for c in result.clusters.values() for i in c.member_ids]
    assert sorted(all_ids) == sorted(corpus.ids)
    assert len(all_ids) == len(set(all_ids))


def test_centroid_consistency(mixed_result):
    _, result = mixed_result
    for cluster in result.clusters.values():
        recomputed = mean_vector([result.embeddings[i].tolist() for i in cluster.member_ids])
        assert np.max(np.abs(cluster.centroid - recomputed)) < 1e-12


def test_seed_stability(lex, mixed_result):
    _, result = mixed_result
    for ct in result.tweets:
        rule = classify_rule(ct.tweet, lex)
        if rule.label in (M, F, B) and rule.confidence >= 1.0:
            assert ct.label is rule.label and ct.provenance == "rule"
        else:
            assert ct.provenance == "centroid"


def test_distribution_sums_to_100(mixed_result):
    _, result = mixed_result
    rows = result.distribution()
    assert [r[0] for r in rows] == [M, F, B, N]
    assert sum(r[1] for r in rows) == len(result.tweets)
    assert sum(r[2] for r in rows) == pytest.approx(100.0)


def test_b_tweets_seed_at_strict_threshold(lex):
    corpus = Corpus.from_texts(["men men woman", "the man", "a woman", "news today"])
    strict = classify_corpus(corpus, lex, TfidfEmbedder(), conf_threshold=1.0)
    tweets = {ct.tweet.id: ct for ct in strict.tweets}
    # "men men woman" is B by co-occurrence and seeds at any threshold
    assert tweets["000000"].label is B and tweets["000000"].provenance == "rule"


def test_tweet_dataclass_is_frozen():
    t = Tweet.from_text("a", "hi")
    with pytest.raises(AttributeError):
        t.id = "b"
