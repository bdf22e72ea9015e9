"""Inclusion Bias Score and the method comparison table."""

from __future__ import annotations

import csv
import io
from html import escape
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus_io import Corpus, Tweet
from .lexicon import MALE, GenderLexicon, detect_mentions

BALANCE_EPSILON = 0.02

# G1 is the male side and G2 the female side in every table this module writes.
TABLE_HEADER = ("subject", "G1", "G2", "score", "direction")


@dataclass(frozen=True)
class BiasReport:
    subject: str
    freq_m: int
    freq_f: int
    ibs: float
    direction: str  # male, female, balanced
    prop_m: float
    prop_f: float
    no_gendered_terms: bool = False

    def row(self) -> tuple[str, str, str, str, str]:
        return (self.subject, f"{self.prop_m:.4f}", f"{self.prop_f:.4f}",
                f"{self.ibs:+.4f}", self.direction)


def inclusion_bias_score(freq_m: int, freq_f: int) -> float:
    """(f - m) / (m + f); zero when no gendered terms occur."""
    total = freq_m + freq_f
    if total == 0:
        return 0.0
    return freq_f / total - freq_m / total


def report_from_counts(freq_m: int, freq_f: int, subject: str = "",
                       balance_epsilon: float = BALANCE_EPSILON) -> BiasReport:
    total = freq_m + freq_f
    score = inclusion_bias_score(freq_m, freq_f)
    if abs(score) < balance_epsilon:
        direction = "balanced"
    else:
        direction = "female" if score > 0 else "male"
    prop_m = freq_m / total if total else 0.0
    prop_f = freq_f / total if total else 0.0
    return BiasReport(subject, freq_m, freq_f, score, direction, prop_m, prop_f, total == 0)


def gender_counts(texts: Iterable[Tweet], lex: GenderLexicon) -> tuple[int, int]:
    m = f = 0
    for tweet in texts:
        for mention in detect_mentions(tweet, lex):
            if mention.side == MALE:
                m += 1
            else:
                f += 1
    return m, f


def ibs(texts: Iterable[Tweet], lex: GenderLexicon, subject: str = "",
        balance_epsilon: float = BALANCE_EPSILON) -> BiasReport:
    """Bias report over gendered-mention occurrences (all mention kinds) in ``texts``."""
    m, f = gender_counts(texts, lex)
    return report_from_counts(m, f, subject, balance_epsilon)


SUBJECT_NAMES = {
    "lexrank": "LexRank",
    "lsa": "LSA",
    "community_lexrank": "Community+LexRank",
    "equisumm": "EquiSumm",
}


def compare_methods(corpus: Corpus, lex: GenderLexicon, summaries: Sequence,
                    balance_epsilon: float = BALANCE_EPSILON) -> list[BiasReport]:
    """A "Dataset" row over the whole corpus followed by one row per summary."""
    by_id = corpus.by_id()
    rows = [ibs(corpus, lex, "Dataset", balance_epsilon)]
    for summary in summaries:
        name = SUBJECT_NAMES.get(summary.method, summary.method)
        rows.append(ibs((by_id[i] for i in summary.ids), lex, name, balance_epsilon))
    return rows


def to_csv(reports: Sequence[BiasReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for r in reports:
        writer.writerow(r.row())
    return buf.getvalue()


def to_markdown(reports: Sequence[BiasReport]) -> str:
    lines = ["| Approach | G1 (male) | G2 (female) | Score | Direction |",
             "|---|---|---|---|---|"]
    for r in reports:
        subject, g1, g2, score, direction = r.row()
        lines.append(f"| {subject} | {g1} | {g2} | {score} | {direction} |")
    return "\n".join(lines) + "\n"


def to_svg(reports: Sequence[BiasReport], width: int = 640, height: int = 320) -> str:
    """Grouped bar chart of the male and female proportions per subject."""
    margin, top = 40, 20
    plot_h = height - top - 60
    group_w = (width - 2 * margin) / max(len(reports), 1)
    bar_w = group_w * 0.35
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<line x1="{margin}" y1="{top + plot_h}" x2="{width - margin}" y2="{top + plot_h}" stroke="black"/>',
    ]
    for idx, r in enumerate(reports):
        subject = escape(r.subject)
        x0 = margin + idx * group_w + group_w * 0.15
        for j, (value, colour) in enumerate(((r.prop_m, "#4e79a7"), (r.prop_f, "#e15759"))):
            h = value * plot_h
            parts.append(
                f'<rect x="{x0 + j * bar_w:.1f}" y="{top + plot_h - h:.1f}" width="{bar_w:.1f}" '
                f'height="{h:.1f}" fill="{colour}"><title>{subject} {"G1" if j == 0 else "G2"} '
                f'{value:.3f}</title></rect>')
        parts.append(f'<text x="{x0 + bar_w:.1f}" y="{top + plot_h + 16}" text-anchor="middle">{subject}</text>')
        parts.append(f'<text x="{x0 + bar_w:.1f}" y="{top + plot_h + 30}" text-anchor="middle">{r.ibs:+.3f}</text>')
    legend_y = height - 12
    parts.append(f'<rect x="{margin}" y="{legend_y - 9}" width="10" height="10" fill="#4e79a7"/>')
    parts.append(f'<text x="{margin + 14}" y="{legend_y}">G1 (male)</text>')
    parts.append(f'<rect x="{margin + 90}" y="{legend_y - 9}" width="10" height="10" fill="#e15759"/>')
    parts.append(f'<text x="{margin + 104}" y="{legend_y}">G2 (female)</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
