"""Two-rater agreement and exact significance tests.

Ratings are binary include/exclude verdicts, one per evaluated pair.
"include" pools the two ways a judge can accept a pair as hierarchically
related (direct child, or farther away along the chain). Kappa and the
Fisher test are computed in exact rational arithmetic; Fisher falls back to
log-space floats only above a configurable table size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import OntokitError
from .metrics import render_ratio
from .pairs import Judgment, PairSheet, STRATUM_UNRELATED

EXACT_FISHER_LIMIT = 10_000


@dataclass(frozen=True)
class Matrix2x2:
    """Counts laid out as [[a, b], [c, d]]; rows are the judge's verdict
    (include / exclude), columns the pooled ground truth (related / unrelated)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("negative cell count")

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


@dataclass(frozen=True)
class KappaResult:
    kappa: Optional[Fraction]  # None when expected agreement is exactly 1
    observed_agreement: Fraction
    expected_agreement: Fraction
    both_include: int
    both_exclude: int
    only_first: int
    only_second: int

    @property
    def degenerate(self) -> bool:
        return self.kappa is None

    def to_json(self) -> dict:
        return {
            "kappa": None if self.kappa is None else float(self.kappa),
            "kappa_5dp": render_ratio(self.kappa),
            "observed_agreement": float(self.observed_agreement),
            "expected_agreement": float(self.expected_agreement),
            "degenerate": self.degenerate,
            "table": {
                "both_include": self.both_include,
                "both_exclude": self.both_exclude,
                "only_first": self.only_first,
                "only_second": self.only_second,
            },
        }


def ratings_from_judgments(judgments: Sequence[Judgment],
                           skip_training: int = 0) -> list[bool]:
    """Binary include/exclude vector; a row with Yes in either column is an
    include, anything else (No or blank) an exclude."""
    return [j.includes for j in judgments[skip_training:]]


def percent_agreement(r1: Sequence[bool], r2: Sequence[bool]) -> Fraction:
    _check_lengths(r1, r2)
    matches = sum(1 for x, y in zip(r1, r2) if x == y)
    return Fraction(matches, len(r1))


def cohens_kappa(r1: Sequence[bool], r2: Sequence[bool]) -> KappaResult:
    """Standard two-rater binary kappa with marginal-product expectation."""
    _check_lengths(r1, r2)
    n = len(r1)
    both_include = sum(1 for x, y in zip(r1, r2) if x and y)
    both_exclude = sum(1 for x, y in zip(r1, r2) if not x and not y)
    only_first = sum(1 for x, y in zip(r1, r2) if x and not y)
    only_second = sum(1 for x, y in zip(r1, r2) if not x and y)
    return kappa_from_counts(both_include, both_exclude, only_first, only_second)


def kappa_from_counts(both_include: int, both_exclude: int,
                      only_first: int, only_second: int) -> KappaResult:
    n = both_include + both_exclude + only_first + only_second
    if n == 0:
        raise OntokitError("kappa is undefined on empty rating vectors")
    p_o = Fraction(both_include + both_exclude, n)
    first_inc = both_include + only_first
    second_inc = both_include + only_second
    p_e = (Fraction(first_inc, n) * Fraction(second_inc, n)
           + Fraction(n - first_inc, n) * Fraction(n - second_inc, n))
    kappa = None if p_e == 1 else (p_o - p_e) / (1 - p_e)
    return KappaResult(kappa=kappa, observed_agreement=p_o, expected_agreement=p_e,
                       both_include=both_include, both_exclude=both_exclude,
                       only_first=only_first, only_second=only_second)


def confusion_matrix(ratings: Sequence[bool], truth_related: Sequence[bool]) -> Matrix2x2:
    """Judge verdicts against pooled ground truth (related vs unrelated)."""
    _check_lengths(ratings, truth_related)
    a = sum(1 for r, t in zip(ratings, truth_related) if r and t)
    b = sum(1 for r, t in zip(ratings, truth_related) if r and not t)
    c = sum(1 for r, t in zip(ratings, truth_related) if not r and t)
    d = sum(1 for r, t in zip(ratings, truth_related) if not r and not t)
    return Matrix2x2(a, b, c, d)


def fisher_exact(m: Matrix2x2, exact_limit: int = EXACT_FISHER_LIMIT):
    """Two-tailed Fisher exact test.

    Sums the hypergeometric probabilities of every table sharing the margins
    whose probability does not exceed the observed table's. Exact rational
    arithmetic up to ``exact_limit`` total observations, log-space floats
    beyond. Degenerate margins (an empty row or column) give p = 1.
    """
    n = m.total
    if n == 0:
        raise OntokitError("fisher test is undefined on an all-zero table")
    row1, col1 = m.a + m.b, m.a + m.c
    if row1 in (0, n) or col1 in (0, n):
        return Fraction(1)
    if n <= exact_limit:
        return _fisher_exact_rational(n, row1, col1, m.a)
    return _fisher_log_space(n, row1, col1, m.a)


def _fisher_exact_rational(n, row1, col1, observed_a) -> Fraction:
    denominator = math.comb(n, col1)
    support = range(max(0, row1 + col1 - n), min(row1, col1) + 1)
    weights = {a: math.comb(row1, a) * math.comb(n - row1, col1 - a) for a in support}
    observed = weights[observed_a]
    return Fraction(sum(w for w in weights.values() if w <= observed), denominator)


def _fisher_log_space(n, row1, col1, observed_a) -> float:
    def log_p(a):
        return (_log_comb(row1, a) + _log_comb(n - row1, col1 - a)
                - _log_comb(n, col1))

    observed = log_p(observed_a)
    tolerance = 1e-12
    total = 0.0
    for a in range(max(0, row1 + col1 - n), min(row1, col1) + 1):
        if log_p(a) <= observed + tolerance:
            total += math.exp(log_p(a))
    return min(total, 1.0)


def _log_comb(n, k):
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def truth_related_vector(sheet: PairSheet, skip_training: int = 0) -> list[bool]:
    """Ground truth pooled to related/unrelated, in sheet order."""
    return [p.stratum != STRATUM_UNRELATED
            for p in sheet.pairs[skip_training:]]


def stats_report(sheet: PairSheet, judgments1: Sequence[Judgment],
                 judgments2: Sequence[Judgment],
                 include_training: bool = False) -> dict:
    """Full agreement report for two evaluators over one sheet."""
    skip = 0 if include_training else sheet.training_prefix
    r1 = ratings_from_judgments(judgments1, skip_training=skip)
    r2 = ratings_from_judgments(judgments2, skip_training=skip)
    truth = truth_related_vector(sheet, skip_training=skip)
    kappa = cohens_kappa(r1, r2)
    evaluators = []
    for ratings in (r1, r2):
        matrix = confusion_matrix(ratings, truth)
        p_value = fisher_exact(matrix)
        evaluators.append({
            "confusion_matrix": matrix.rows(),
            "fisher_p": float(p_value),
            "fisher_p_exact": str(p_value) if isinstance(p_value, Fraction) else None,
        })
    return {
        "report": "agreement-stats",
        "version": 1,
        "pairs_evaluated": len(r1),
        "training_rows_skipped": skip,
        "percent_agreement": float(percent_agreement(r1, r2)),
        "cohens_kappa": kappa.to_json(),
        "evaluators": evaluators,
    }


def render_stats_table(report: dict) -> str:
    """Human-readable summary for standard output."""
    kappa = report["cohens_kappa"]
    lines = [
        f"pairs evaluated      : {report['pairs_evaluated']}",
        f"percent agreement    : {report['percent_agreement']:.4%}",
        f"cohen's kappa        : {kappa['kappa_5dp']}",
        f"observed / expected  : {kappa['observed_agreement']:.5f} / "
        f"{kappa['expected_agreement']:.5f}",
    ]
    for i, ev in enumerate(report["evaluators"], start=1):
        (a, b), (c, d) = ev["confusion_matrix"]
        lines.append(f"evaluator {i} matrix   : [[{a}, {b}], [{c}, {d}]]  "
                     f"fisher p = {ev['fisher_p']:.3g}")
    return "\n".join(lines)


def _check_lengths(r1, r2):
    if len(r1) != len(r2):
        raise OntokitError(f"rating vectors differ in length: {len(r1)} vs {len(r2)}")
    if not r1:
        raise OntokitError("rating vectors are empty")
