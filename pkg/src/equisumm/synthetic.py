"""Seeded generator for gender-skewed tweet corpora.

Every tweet discusses one shared event, so most of its words come from a common
event vocabulary. On top of that, each of two populations pairs gendered terms
of one side with a small side-specific vocabulary; populations are mixed at a
chosen ratio. A few tweets mention both sides, or neither.
"""

from __future__ import annotations

import random

from .corpus_io import Corpus

FEMALE_TERMS = ["woman", "women", "girl", "girls", "mother", "sister", "wife", "daughter", "lady", "ladies"]
MALE_TERMS = ["man", "men", "boy", "boys", "father", "brother", "husband", "son", "guy", "guys"]

FEMALE_TOPIC = ["harassment", "survivor", "courage", "voices", "believe", "abuse", "trauma",
                "solidarity", "safety", "equal", "pay", "silence"]
MALE_TOPIC = ["accusation", "false", "career", "ruined", "lawsuit", "reputation", "innocent",
              "court", "evidence", "custody", "trial", "fear"]
EVENT = ["#MeToo", "movement", "workplace", "story", "power", "justice", "speak", "truth",
         "victims", "media", "change", "culture"]
FILLER = ["the", "is", "a", "and", "of", "to", "this", "we", "all", "for", "about", "it",
          "so", "now", "just", "really"]


def _tweet(rng: random.Random, terms: list[str], topic: list[str] | None, event_words: int) -> str:
    words = list(terms)
    words += rng.sample(EVENT, event_words)
    if topic:
        words += rng.sample(topic, rng.randint(1, 3))
    words += rng.sample(FILLER, rng.randint(1, 3))
    rng.shuffle(words)
    return " ".join(words)


def skewed_corpus(seed: int, n: int = 300, female_share: float = 0.7,
                  mixed_share: float = 0.05, neutral_share: float = 0.05,
                  event_words: int = 3) -> Corpus:
    """``n`` tweets; of the single-side ones, ``female_share`` are female-leaning."""
    rng = random.Random(seed)
    texts = []
    for _ in range(n):
        u = rng.random()
        if u < mixed_share:
            topic = FEMALE_TOPIC if rng.random() < female_share else MALE_TOPIC
            terms = [rng.choice(MALE_TERMS), rng.choice(FEMALE_TERMS)]
            texts.append(_tweet(rng, terms, topic, event_words))
        elif u < mixed_share + neutral_share:
            texts.append(_tweet(rng, [], None, event_words))
        elif rng.random() < female_share:
            terms = rng.sample(FEMALE_TERMS, rng.randint(1, 2))
            texts.append(_tweet(rng, terms, FEMALE_TOPIC, event_words))
        else:
            terms = rng.sample(MALE_TERMS, rng.randint(1, 2))
            texts.append(_tweet(rng, terms, MALE_TOPIC, event_words))
    return Corpus.from_texts(texts, source_path=f"synthetic:seed={seed}")
