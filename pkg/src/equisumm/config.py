"""Run configuration: flat ``key = value`` files with command-line overrides."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .lexicon import DEFAULT_HONORIFICS, GenderLabel


@dataclass(frozen=True)
class RunConfig:
    input_path: str = ""
    input_format: str = "jsonl"
    input_text_field: str = "text"
    lexicon_male: str = ""
    lexicon_female: str = ""
    lexicon_names_dir: str = ""
    honorifics_male: str = "mr"
    honorifics_female: str = "mrs,ms"
    embedding_kind: str = "tfidf_builtin"
    embedding_url: str = ""
    embedding_batch_size: int = 64
    classify_conf_threshold: float = 1.0
    classify_reassign_threshold: float = 0.40
    graph_threshold: float = 0.40
    lexrank_damping: float = 0.85
    lexrank_tol: float = 1e-8
    lexrank_max_iter: int = 200
    summary_k: int = 5
    summary_include_neutral: bool = True
    fairness_balance_epsilon: float = 0.02
    seed: int = 0  # reserved; every stage is deterministic

    def validate(self) -> "RunConfig":
        for key in ("classify_conf_threshold", "classify_reassign_threshold", "graph_threshold",
                    "lexrank_damping", "fairness_balance_epsilon"):
            value = getattr(self, key)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{_dotted(key)} must be in [0, 1], got {value}")
        if self.summary_k < 1:
            raise ConfigError(f"summary.k must be >= 1, got {self.summary_k}")
        if self.lexrank_max_iter < 1 or self.lexrank_tol <= 0:
            raise ConfigError("lexrank.max_iter must be >= 1 and lexrank.tol > 0")
        if self.embedding_batch_size < 1:
            raise ConfigError("embedding.batch_size must be >= 1")
        if self.input_format not in ("jsonl", "csv"):
            raise ConfigError(f"input.format must be jsonl or csv, got {self.input_format!r}")
        if self.embedding_kind not in ("tfidf_builtin", "http_service"):
            raise ConfigError(f"unknown embedding.kind {self.embedding_kind!r}")
        if self.embedding_kind == "http_service" and not self.embedding_url:
            raise ConfigError("embedding.url is required for embedding.kind = http_service")
        return self

    def honorifics(self) -> dict[str, GenderLabel]:
        out = {}
        for raw, label in ((self.honorifics_male, GenderLabel.M), (self.honorifics_female, GenderLabel.F)):
            for h in raw.split(","):
                if h.strip():
                    out[h.strip().lower()] = label
        return out if out else dict(DEFAULT_HONORIFICS)


# Keys whose dotted form is not just the first underscore turned into a dot.
_SPECIAL = {"input_text_field": "input.text_field", "embedding_batch_size": "embedding.batch_size",
            "lexicon_names_dir": "lexicon.names_dir", "classify_conf_threshold": "classify.conf_threshold",
            "classify_reassign_threshold": "classify.reassign_threshold",
            "lexrank_max_iter": "lexrank.max_iter", "summary_include_neutral": "summary.include_neutral",
            "fairness_balance_epsilon": "fairness.balance_epsilon"}


def _dotted(field_name: str) -> str:
    if field_name in _SPECIAL:
        return _SPECIAL[field_name]
    return field_name.replace("_", ".", 1)


FIELDS = {_dotted(f.name): f for f in dataclasses.fields(RunConfig)}


def _coerce(key: str, raw: str):
    kind = FIELDS[key].type
    raw = raw.strip()
    try:
        if kind == "bool":
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {kind}") from None
    return raw


def parse_pairs(pairs, origin: str = "override") -> dict:
    out = {}
    for n, pair in enumerate(pairs, start=1):
        if "=" not in pair:
            raise ConfigError(f"{origin} entry {n}: expected key=value, got {pair!r}")
        key, raw = (s.strip() for s in pair.split("=", 1))
        if key not in FIELDS:
            raise ConfigError(f"{origin} entry {n}: unknown config key {key!r}")
        out[FIELDS[key].name] = _coerce(key, raw)
    return out


def read_config_file(path) -> dict:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    pairs = [ln for ln in (l.strip() for l in lines) if ln and not ln.startswith("#")]
    return parse_pairs(pairs, origin=str(path))


def build_config(path=None, overrides: dict | None = None) -> RunConfig:
    values = read_config_file(path) if path else {}
    values.update(overrides or {})
    return RunConfig(**values).validate()


def dump_config(cfg: RunConfig) -> str:
    lines = []
    for key, f in FIELDS.items():
        value = getattr(cfg, f.name)
        if isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
