"""Tweet corpus ingestion, normalization and tokenization."""

from __future__ import annotations

import csv
import json
import re
import unicodedata
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import EmptyCorpus, MalformedRecord, MalformedRecordWarning, MissingField

_URL = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION = re.compile(r"(?<![\w@])@\w+")
_SPACE = re.compile(r"\s+")
# letters/digits, with apostrophes allowed only between word characters
_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)*")
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})


def _clean(text: str) -> str:
    text = unicodedata.normalize("NFC", text)
    text = _URL.sub(" ", text)
    text = _MENTION.sub(" ", text)
    text = text.replace("#", "")
    text = text.translate(_APOSTROPHES)
    return _SPACE.sub(" ", text).strip()


def normalize(text: str) -> str:
    """Lowercase, drop URLs and @-mentions, unwrap hashtags, collapse whitespace."""
    return unicodedata.normalize("NFC", _clean(text).lower())


def tokenize(norm_text: str) -> list[str]:
    return _TOKEN.findall(norm_text.lower())


def surface_tokens(text: str) -> list[str]:
    """Case-preserving tokens of the raw text, index-aligned with ``tokenize(normalize(text))``.

    Returns an empty list in the rare case where lowercasing changes the token
    boundaries, so callers must treat casing information as optional.
    """
    cased = _TOKEN.findall(_clean(text))
    if len(cased) != len(tokenize(normalize(text))):
        return []
    return cased


@dataclass(frozen=True)
class Tweet:
    id: str
    text: str
    norm_text: str
    tokens: tuple[str, ...]

    @classmethod
    def from_text(cls, id: str, text: str) -> "Tweet":
        norm = normalize(text)
        return cls(id=id, text=text, norm_text=norm, tokens=tuple(tokenize(norm)))


@dataclass(frozen=True)
class Corpus:
    tweets: tuple[Tweet, ...]
    source_path: str = ""
    skipped: tuple[tuple[int, str], ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.tweets:
            raise EmptyCorpus(f"no usable tweets in {self.source_path or '<memory>'}")
        seen: set[str] = set()
        for i, t in enumerate(self.tweets):
            if t.id in seen:
                raise MalformedRecord(i, f"duplicate id {t.id!r}")
            seen.add(t.id)

    @classmethod
    def from_texts(cls, texts, ids=None, source_path: str = "") -> "Corpus":
        texts = list(texts)
        ids = list(ids) if ids is not None else [f"{i:06d}" for i in range(len(texts))]
        return cls(tuple(Tweet.from_text(i, t) for i, t in zip(ids, texts)), source_path)

    def __iter__(self) -> Iterator[Tweet]:
        return iter(self.tweets)

    def __len__(self) -> int:
        return len(self.tweets)

    @property
    def ids(self) -> list[str]:
        return [t.id for t in self.tweets]

    def by_id(self) -> dict[str, Tweet]:
        return {t.id: t for t in self.tweets}

    @property
    def stats(self) -> dict[str, int]:
        vocab = {tok for t in self.tweets for tok in t.tokens}
        return {
            "tweet_count": len(self.tweets),
            "token_count": sum(len(t.tokens) for t in self.tweets),
            "vocab_size": len(vocab),
        }


def _read_jsonl(path: Path, text_field: str):
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(lineno, f"invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise MalformedRecord(lineno, "expected a JSON object")
            if text_field not in obj:
                raise MissingField(f"line {lineno}: no {text_field!r} key")
            yield lineno, obj.get("id"), obj[text_field]


def _read_csv(path: Path, text_field: str):
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return
        if text_field not in reader.fieldnames:
            raise MissingField(f"CSV header has no {text_field!r} column")
        for row in reader:
            # header is line 1
            yield reader.line_num, row.get("id"), row[text_field]


def ingest(path, format: str = "jsonl", text_field: str = "text") -> Corpus:
    """Load a JSONL or CSV tweet file into a :class:`Corpus`.

    Records whose text normalizes to nothing are dropped with a
    :class:`MalformedRecordWarning`; parse failures raise :class:`MalformedRecord`.
    """
    path = Path(path)
    if format not in ("jsonl", "csv"):
        raise ValueError(f"unsupported format {format!r}")
    reader = _read_jsonl if format == "jsonl" else _read_csv
    tweets: list[Tweet] = []
    skipped: list[tuple[int, str]] = []
    for index, (row, rec_id, text) in enumerate(reader(path, text_field)):
        if text is not None and not isinstance(text, str):
            raise MalformedRecord(row, f"{text_field!r} is not a string")
        tweet = Tweet.from_text(
            str(rec_id) if rec_id not in (None, "") else f"{index:06d}", text or ""
        )
        if not tweet.tokens:
            reason = "empty text after normalization"
            skipped.append((row, reason))
            warnings.warn(f"{path}: row {row}: {reason}", MalformedRecordWarning, stacklevel=2)
            continue
        tweets.append(tweet)
    if not tweets:
        raise EmptyCorpus(f"no usable tweets in {path}")
    return Corpus(tuple(tweets), str(path), tuple(skipped))
