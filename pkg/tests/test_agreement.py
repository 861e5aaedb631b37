"""Agreement statistics: published-value oracles, brute-force Fisher
enumeration, and symmetry properties."""

import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontokit.agreement import (Matrix2x2, cohens_kappa, confusion_matrix,
                               fisher_exact, kappa_from_counts, percent_agreement)
from ontokit.errors import OntokitError


def vectors_from_counts(both_inc, both_exc, only_first, only_second):
    r1 = [True] * both_inc + [False] * both_exc + [True] * only_first + \
         [False] * only_second
    r2 = [True] * both_inc + [False] * both_exc + [False] * only_first + \
         [True] * only_second
    return r1, r2


def brute_force_fisher(m: Matrix2x2) -> Fraction:
    """Oracle: enumerate every non-negative table with the same margins and
    sum the probabilities not exceeding the observed table's.

    Probability of a table is computed multinomially from factorials — a
    different route than the implementation's hypergeometric pmf.
    """
    r1, r2 = m.a + m.b, m.c + m.d
    c1, c2 = m.a + m.c, m.b + m.d
    n = m.total

    def prob(a, b, c, d):
        num = (math.factorial(r1) * math.factorial(r2)
               * math.factorial(c1) * math.factorial(c2))
        den = (math.factorial(n) * math.factorial(a) * math.factorial(b)
               * math.factorial(c) * math.factorial(d))
        return Fraction(num, den)

    observed = prob(m.a, m.b, m.c, m.d)
    total = Fraction(0)
    for a, b in product(range(n + 1), repeat=2):
        c, d = c1 - a, c2 - b
        if a + b != r1 or c < 0 or d < 0:
            continue
        p = prob(a, b, c, d)
        if p <= observed:
            total += p
    return total


def test_percent_agreement_from_table4_counts():
    r1, r2 = vectors_from_counts(31, 36, 3, 20)
    assert percent_agreement(r1, r2) == Fraction(67, 90)
    assert abs(float(percent_agreement(r1, r2)) - 0.74444) < 1e-5


def test_percent_agreement_extremes():
    assert percent_agreement([True, False], [True, False]) == 1
    assert percent_agreement([True, False], [False, True]) == 0


def test_kappa_on_table4_counts():
    result = kappa_from_counts(31, 36, 3, 20)
    assert abs(float(result.kappa) - 0.50502) < 1e-5
    assert result.kappa == Fraction(352, 697)
    assert result.expected_agreement == Fraction(3918, 8100)
    assert abs(float(result.expected_agreement) - 0.48370) < 1e-5


def test_kappa_identical_nonconstant_vectors_is_one():
    r = [True, False, True, True]
    assert cohens_kappa(r, r).kappa == 1


def test_kappa_symmetry_in_raters():
    r1, r2 = vectors_from_counts(5, 7, 2, 9)
    forward = cohens_kappa(r1, r2)
    backward = cohens_kappa(r2, r1)
    assert forward.kappa == backward.kappa
    assert forward.observed_agreement == backward.observed_agreement


def test_kappa_degenerate_when_both_raters_constant():
    result = cohens_kappa([True, True], [True, True])
    assert result.degenerate and result.kappa is None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.booleans()), min_size=1, max_size=40))
def test_kappa_at_most_one_and_one_iff_perfect(pairs):
    r1 = [p[0] for p in pairs]
    r2 = [p[1] for p in pairs]
    result = cohens_kappa(r1, r2)
    if result.kappa is not None:
        assert result.kappa <= 1
        assert (result.kappa == 1) == (result.observed_agreement == 1)


def test_confusion_matrix_layout():
    ratings = [True] * 5 + [False] * 5
    truth = [True] * 5 + [False] * 5
    assert confusion_matrix(ratings, truth).rows() == [[5, 0], [0, 5]]


def test_confusion_matrix_mixed():
    ratings = [True, True, False, False]
    truth = [True, False, True, False]
    m = confusion_matrix(ratings, truth)
    assert (m.a, m.b, m.c, m.d) == (1, 1, 1, 1)


def test_length_mismatch_raises():
    with pytest.raises(OntokitError):
        percent_agreement([True], [True, False])
    with pytest.raises(OntokitError):
        cohens_kappa([True], [True, False])
    with pytest.raises(OntokitError):
        confusion_matrix([True], [True, False])


def test_fisher_balanced_diagonal_is_two_over_252():
    p = fisher_exact(Matrix2x2(5, 0, 0, 5))
    assert p == Fraction(2, 252)


def test_fisher_symmetric_table_is_one():
    assert fisher_exact(Matrix2x2(1, 1, 1, 1)) == 1


def test_fisher_zero_margin_gives_one():
    assert fisher_exact(Matrix2x2(0, 0, 3, 4)) == 1
    assert fisher_exact(Matrix2x2(0, 2, 0, 4)) == 1


def test_fisher_published_evaluator_tables_are_significant():
    assert fisher_exact(Matrix2x2(39, 0, 7, 44)) < Fraction(1, 10000)
    assert fisher_exact(Matrix2x2(42, 11, 4, 33)) < Fraction(1, 10000)


def test_fisher_invariant_under_simultaneous_row_and_column_swap():
    m = Matrix2x2(9, 2, 4, 7)
    swapped = Matrix2x2(7, 4, 2, 9)
    assert fisher_exact(m) == fisher_exact(swapped)


def test_fisher_matches_brute_force_on_every_small_table():
    """Exhaustive: every 2x2 table with total <= 30."""
    limit = 30
    checked = 0
    for a in range(limit + 1):
        for b in range(limit + 1 - a):
            for c in range(limit + 1 - a - b):
                for d in range(limit + 1 - a - b - c):
                    if a + b + c + d == 0:
                        continue
                    m = Matrix2x2(a, b, c, d)
                    assert fisher_exact(m) == brute_force_fisher(m), (a, b, c, d)
                    checked += 1
    assert checked == math.comb(34, 4) - 1


def test_fisher_log_space_agrees_with_exact_on_moderate_tables():
    m = Matrix2x2(39, 0, 7, 44)
    exact = fisher_exact(m)
    approx = fisher_exact(m, exact_limit=1)
    assert approx == pytest.approx(float(exact), rel=1e-9)
