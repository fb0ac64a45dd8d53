"""Exact quadratic-field arithmetic, convergents, and Liouville constants.

Tags: [TRIVIAL] asserted directly from definitions; [DERIVED] frozen from
an independent float/fraction oracle (see docstrings); [PAPER] values
that appear in the published analysis.
"""

import math
from fractions import Fraction

import pytest

from dofalign.quadratic import (
    QuadraticIrrational,
    continued_fraction_convergents,
    is_square,
    liouville_delta,
    sign_plus_root,
    squarefree_split,
)

SQRT2 = QuadraticIrrational.sqrt_of(2)
SQRT3 = QuadraticIrrational.sqrt_of(3)
PHI = QuadraticIrrational(1, 1, 2, 5)          # (1 + sqrt5)/2


def test_squarefree_split():
    # [TRIVIAL] n = s^2 * d with d squarefree
    assert squarefree_split(8) == (2, 2)
    assert squarefree_split(45) == (3, 5)
    assert squarefree_split(7) == (1, 7)
    assert is_square(49) and not is_square(50)


def test_normalization_and_rejects():
    # (2 + 2*sqrt8)/4 == (1 + 2*sqrt2)/2 after gcd and squarefree reduction
    x = QuadraticIrrational(2, 2, 4, 8)
    assert (x.a, x.b, x.r, x.d) == (1, 2, 2, 2)
    with pytest.raises(ValueError):
        QuadraticIrrational(1, 0, 1, 2)        # rational, not a surd
    with pytest.raises(ValueError):
        QuadraticIrrational(1, 1, 1, 4)        # perfect-square radicand


def test_sign_plus_root():
    # [TRIVIAL] sign of u + v*sqrt(d) without floats
    assert sign_plus_root(-1, 1, 2) == 1       # sqrt2 > 1
    assert sign_plus_root(-2, 1, 2) == -1      # sqrt2 < 2
    assert sign_plus_root(0, 0, 2) == 0
    # 1e16 * sqrt2 = 14142135623730950.488...: floats cannot tell, integers can
    assert sign_plus_root(-14142135623730951, 10 ** 16, 2) == -1
    assert sign_plus_root(-14142135623730950, 10 ** 16, 2) == 1


def test_arithmetic_matches_floats():
    # [DERIVED] oracle: plain float arithmetic, 1e-12 relative
    vals = [SQRT2, PHI, SQRT2 + 3, PHI * 2, SQRT2 * Fraction(3, 7)]
    for v in vals:
        assert isinstance(v, QuadraticIrrational)
    x = (SQRT2 + 1) * Fraction(2, 3) - Fraction(1, 6)
    assert math.isclose(float(x), (math.sqrt(2) + 1) * 2 / 3 - 1 / 6,
                        rel_tol=1e-12)
    # same-field product: sqrt2 * sqrt2 degrades to the rational 2
    assert SQRT2 * SQRT2 == Fraction(2)
    assert SQRT2 - SQRT2 == Fraction(0)


def test_float_is_stable_under_cancellation():
    # (p - q*sqrt2) for a deep convergent: naive float subtraction loses
    # most significant digits; the rationalized path keeps them.
    p, q = 577, 408                            # convergent of sqrt2
    x = QuadraticIrrational(p, -q, 1, 2)
    exact = abs(p / q - math.sqrt(2)) * q
    assert math.isclose(abs(float(x)), exact, rel_tol=1e-9)


def test_exact_comparisons_and_floor():
    assert SQRT2 < Fraction(3, 2) < SQRT3
    assert PHI > Fraction(8, 5)
    assert math.floor(SQRT2) == 1
    assert math.floor(-SQRT2) == -2
    assert math.floor(PHI * 100) == 161        # [DERIVED] 161.803...


def test_minimal_polynomial():
    # [TRIVIAL] A x^2 + B x + C = 0 with integer coefficients
    for x in (SQRT2, SQRT3, PHI, SQRT2 * 3 + Fraction(1, 2)):
        aa, bb, cc = x.minimal_polynomial()
        f = float(x)
        assert abs(aa * f * f + bb * f + cc) < 1e-6 * max(abs(aa), abs(bb), abs(cc))
    assert PHI.minimal_polynomial() == (1, -1, -1)


def test_convergents_sqrt2():
    # [DERIVED] oracle: textbook continued-fraction recursion on floats
    convs = list(continued_fraction_convergents(SQRT2, 1000))
    assert convs[:6] == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70)]
    assert all(q <= 1000 for _, q in convs)
    # every convergent beats 1/(2 q^2)
    for p, q in convs:
        assert abs(p / q - math.sqrt(2)) < 1 / (2 * q * q)


def test_convergents_golden_ratio_and_negative():
    convs = list(continued_fraction_convergents(PHI, 100))
    assert convs[:8] == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8),
                         (21, 13), (34, 21)]
    neg = list(continued_fraction_convergents(QuadraticIrrational(0, -1, 1, 2), 100))
    for p, q in neg:
        assert q > 0
        assert abs(p / q + math.sqrt(2)) < 1 / (q * q)


@pytest.mark.parametrize("alpha,expected", [
    (SQRT2, Fraction(1, 3)),
    (SQRT3, Fraction(1, 4)),
    (PHI, Fraction(1, 3)),
])
def test_liouville_delta(alpha, expected):
    # [DERIVED] delta = 1/(floor(1/m)+1), m = min over q<=1e4 of q^2|a-p/q|;
    # verified by a brute convergent scan in test_acceptance (criterion 8).
    assert liouville_delta(alpha) == expected


def test_liouville_certificate_property():
    # the certificate really lower-bounds |alpha - p/q| over the convergents
    delta = liouville_delta(SQRT2)
    for p, q in continued_fraction_convergents(SQRT2, 10 ** 4):
        assert abs(math.sqrt(2) - p / q) >= float(delta) / (q * q)
