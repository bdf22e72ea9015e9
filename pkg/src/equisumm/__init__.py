"""Gender-balanced extractive tweet summarization and bias measurement."""

from .clustering import classify_corpus
from .corpus_io import Corpus, Tweet, ingest, normalize, tokenize
from .embedding import HttpEmbedder, TfidfEmbedder, cosine, embed_all
from .fairness import compare_methods, ibs
from .lexicon import GenderLabel, GenderLexicon, classify_rule, detect_mentions, load_lexicon
from .summarizers import (
    summarize_community_lexrank,
    summarize_equisumm,
    summarize_lexrank,
    summarize_lsa,
)

__all__ = [
    "Corpus", "Tweet", "ingest", "normalize", "tokenize",
    "GenderLabel", "GenderLexicon", "load_lexicon", "detect_mentions", "classify_rule",
    "TfidfEmbedder", "HttpEmbedder", "embed_all", "cosine",
    "classify_corpus",
    "summarize_equisumm", "summarize_lexrank", "summarize_lsa", "summarize_community_lexrank",
    "ibs", "compare_methods",
]
