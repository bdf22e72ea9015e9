"""Gender word lists, gendered-mention detection and the rule classifier."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

from .corpus_io import Tweet, surface_tokens
from .errors import EmptyLexicon, OverlappingEntry

MALE = "male"
FEMALE = "female"

DEFAULT_MALE_PRONOUNS = frozenset({"he", "him", "his", "himself"})
DEFAULT_FEMALE_PRONOUNS = frozenset({"she", "her", "hers", "herself"})


class GenderLabel(str, enum.Enum):
    M = "M"
    F = "F"
    B = "B"
    N = "N"

    def __str__(self) -> str:
        return self.value


# Fixed order used for tie-breaks and summary concatenation.
LABEL_ORDER = (GenderLabel.M, GenderLabel.F, GenderLabel.B, GenderLabel.N)

DEFAULT_HONORIFICS = {"mr": GenderLabel.M, "mrs": GenderLabel.F, "ms": GenderLabel.F}


class Mention(NamedTuple):
    index: int
    side: str  # MALE or FEMALE
    kind: str  # term, name, pronoun, honorific


@dataclass(frozen=True)
class GenderLexicon:
    male_terms: frozenset[str]
    female_terms: frozenset[str]
    male_names: frozenset[str] = frozenset()
    female_names: frozenset[str] = frozenset()
    male_pronouns: frozenset[str] = DEFAULT_MALE_PRONOUNS
    female_pronouns: frozenset[str] = DEFAULT_FEMALE_PRONOUNS
    honorifics: dict[str, GenderLabel] = field(default_factory=lambda: dict(DEFAULT_HONORIFICS))

    def __post_init__(self) -> None:
        for name in ("male_terms", "female_terms", "male_names", "female_names",
                     "male_pronouns", "female_pronouns"):
            entries = getattr(self, name)
            bad = [e for e in entries if not e or e != e.lower() or e != e.strip()]
            if bad:
                raise ValueError(f"{name}: entries must be lowercase and non-empty: {bad[:5]}")
        if not self.male_terms or not self.female_terms:
            raise EmptyLexicon("male and female term lists must both be non-empty")
        overlap = (self.male_terms | self.male_pronouns) & (self.female_terms | self.female_pronouns)
        if overlap:
            raise OverlappingEntry(overlap)
        for key, label in self.honorifics.items():
            if label not in (GenderLabel.M, GenderLabel.F):
                raise ValueError(f"honorific {key!r} must map to M or F, got {label}")

    @classmethod
    def from_lists(cls, male: Iterable[str], female: Iterable[str], **kw) -> "GenderLexicon":
        return cls(frozenset(male), frozenset(female), **kw)

    @property
    def stats(self) -> dict[str, int]:
        return {
            "male_terms": len(self.male_terms),
            "female_terms": len(self.female_terms),
            "male_names": len(self.male_names),
            "female_names": len(self.female_names),
            "honorifics": len(self.honorifics),
        }

    def swapped(self) -> "GenderLexicon":
        """The same lexicon with the male and female sides exchanged."""
        flip = {GenderLabel.M: GenderLabel.F, GenderLabel.F: GenderLabel.M}
        return GenderLexicon(
            self.female_terms, self.male_terms, self.female_names, self.male_names,
            self.female_pronouns, self.male_pronouns,
            {k: flip[v] for k, v in self.honorifics.items()},
        )

    def _lookup(self, token: str) -> tuple[str, str] | None:
        """Side and kind for a lowercase token, ignoring names."""
        if token in self.honorifics:
            return (MALE if self.honorifics[token] is GenderLabel.M else FEMALE), "honorific"
        if token in self.male_pronouns:
            return MALE, "pronoun"
        if token in self.female_pronouns:
            return FEMALE, "pronoun"
        if token in self.male_terms:
            return MALE, "term"
        if token in self.female_terms:
            return FEMALE, "term"
        return None


def read_word_list(path) -> list[str]:
    words = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.append(line.lower())
    return words


def _bundled(name: str) -> list[str]:
    with resources.as_file(resources.files("equisumm") / "data" / name) as p:
        return read_word_list(p)


def load_lexicon(male_path=None, female_path=None, names_dir=None,
                 honorifics: dict[str, GenderLabel] | None = None) -> GenderLexicon:
    """Load term lists (bundled defaults when a path is None) and name lists.

    ``names_dir`` must contain ``male_names.txt`` and ``female_names.txt``.
    Names found on both lists are unisex and dropped from both.
    """
    male = read_word_list(male_path) if male_path else _bundled("male_terms.txt")
    female = read_word_list(female_path) if female_path else _bundled("female_terms.txt")
    if names_dir:
        d = Path(names_dir)
        male_names = set(read_word_list(d / "male_names.txt"))
        female_names = set(read_word_list(d / "female_names.txt"))
    else:
        male_names = set(_bundled("male_names.txt"))
        female_names = set(_bundled("female_names.txt"))
    unisex = male_names & female_names
    return GenderLexicon(
        frozenset(male),
        frozenset(female),
        frozenset(male_names - unisex),
        frozenset(female_names - unisex),
        honorifics=dict(honorifics) if honorifics is not None else dict(DEFAULT_HONORIFICS),
    )


def _strip_possessive(token: str) -> str:
    return token[:-2] if token.endswith("'s") else token


def detect_mentions(tweet: Tweet, lex: GenderLexicon) -> list[Mention]:
    """Gendered mentions in token order, at most one per token.

    Priority per token: honorific, pronoun, term, then title-cased name. The
    token right after an honorific is tagged as a name of the honorific's side
    unless it is itself a lexicon hit.
    """
    cased = surface_tokens(tweet.text)
    mentions: list[Mention] = []
    forced_name: str | None = None
    for i, tok in enumerate(tweet.tokens):
        hit = lex._lookup(tok) or lex._lookup(_strip_possessive(tok))
        if hit is not None:
            mentions.append(Mention(i, hit[0], hit[1]))
            forced_name = hit[0] if hit[1] == "honorific" else None
            continue
        if forced_name is not None:
            mentions.append(Mention(i, forced_name, "name"))
            forced_name = None
            continue
        if cased and _strip_possessive(cased[i]).istitle():
            base = _strip_possessive(tok)
            if base in lex.male_names:
                mentions.append(Mention(i, MALE, "name"))
            elif base in lex.female_names:
                mentions.append(Mention(i, FEMALE, "name"))
    return mentions


def label_from_counts(male_hits: int, female_hits: int) -> tuple[GenderLabel, float]:
    """Label and margin-ratio confidence for a pair of hit counts.

    Co-occurrence wins over equality: any tweet with hits on both sides is B.
    """
    total = male_hits + female_hits
    if male_hits > 0 and female_hits > 0:
        return GenderLabel.B, 1.0
    if total == 0:
        return GenderLabel.N, 0.0
    label = GenderLabel.M if male_hits > female_hits else GenderLabel.F
    return label, abs(male_hits - female_hits) / total


@dataclass(frozen=True)
class RuleClassification:
    label: GenderLabel
    male_hits: int
    female_hits: int
    confidence: float
    matched_terms: tuple[tuple[str, str], ...] = ()


def classify_rule(tweet: Tweet, lex: GenderLexicon) -> RuleClassification:
    mentions = detect_mentions(tweet, lex)
    m = sum(1 for x in mentions if x.side == MALE)
    f = len(mentions) - m
    label, conf = label_from_counts(m, f)
    matched = tuple((tweet.tokens[x.index], x.side) for x in mentions)
    return RuleClassification(label, m, f, conf, matched)
