"""Sumset algebra and the additive-combinatorics verification toolkit."""

import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dofalign.sumsets import (
    BsgSearchError,
    IntVectorSet,
    all_pairs,
    bsg_construct,
    difference_set,
    dilate,
    entropy_of_sum,
    exg_construct,
    iterate_sum,
    partial_sumset,
    plunnecke_check,
    ruzsa_cover,
    set_combine,
    setsum_bound_check,
    sum_fibers,
    sumset,
)

small_sets = st.sets(st.integers(-30, 30), min_size=1, max_size=10).map(
    IntVectorSet.of)


def test_basic_algebra():
    a = IntVectorSet.of([0, 1, 3])
    b = IntVectorSet.of([0, 2])
    assert sorted(v[0] for v in sumset(a, b)) == [0, 1, 2, 3, 5]
    assert sorted(v[0] for v in difference_set(a, b)) == [-2, -1, 0, 1, 3]
    assert sorted(v[0] for v in dilate(2, a)) == [0, 2, 6]
    assert sorted(v[0] for v in iterate_sum(2, a)) == [0, 1, 2, 3, 4, 6]
    assert len(dilate(2, a)) == len(a)          # dilation is injective
    assert len(iterate_sum(2, a)) >= len(a)


def test_set_combine_dispatcher():
    a = IntVectorSet.of([0, 1])
    b = IntVectorSet.of([0, 5])
    assert set_combine("sum", a, b) == sumset(a, b)
    assert set_combine("difference", a, b) == difference_set(a, b)
    assert set_combine("dilate", a, p=3) == dilate(3, a)
    with pytest.raises(ValueError):
        set_combine("convolve", a, b)


def test_vectors_dimension_checks():
    a = IntVectorSet.of([(0, 0), (1, 2)], dim=2)
    b = IntVectorSet.of([(1, 1)], dim=2)
    assert (2, 3) in sumset(a, b)
    with pytest.raises(ValueError):
        sumset(a, IntVectorSet.of([1]))


def test_partial_sumset_and_fibers():
    a = IntVectorSet.of([0, 1])
    b = IntVectorSet.of([0, 1])
    f = all_pairs(a, b)
    assert len(partial_sumset(a, b, f)) == 3
    fibers = sum_fibers(a, b)
    assert fibers[(1,)] == 2 and fibers[(0,)] == 1


def test_entropy_examples():
    # [DERIVED] uniform independent summands: full/half/zero entropy
    a = IntVectorSet.of([0, 2])
    b = IntVectorSet.of([0, 1])
    assert math.isclose(entropy_of_sum(a, b), 2.0)       # 4 distinct sums
    c = IntVectorSet.of([0, 1])
    assert math.isclose(entropy_of_sum(c, c), 1.5)       # binomial weights
    single = IntVectorSet.of([5])
    assert entropy_of_sum(single, single) == 0.0


@given(small_sets, small_sets)
@settings(max_examples=60, deadline=None)
def test_entropy_matches_direct_enumeration(a, b):
    counts = {}
    for x, y in product(a, b):
        s = tuple(u + v for u, v in zip(x, y))
        counts[s] = counts.get(s, 0) + 1
    n = len(a) * len(b)
    oracle = -sum(c / n * math.log2(c / n) for c in counts.values())
    assert abs(entropy_of_sum(a, b) - oracle) < 1e-12


@given(small_sets, small_sets)
@settings(max_examples=60, deadline=None)
def test_ruzsa_cover_properties(a, b):
    x = ruzsa_cover(a, b)
    assert len(x) * len(a) <= len(sumset(a, b))
    covered = sumset(difference_set(a, a), x)
    assert all(v in covered for v in b)


def test_plunnecke_worked_example():
    # [DERIVED] A = B = {0,1,2}: 2*B = {0..4}, 1*B = {0,1,2},
    # so |2*B - 1*B| = |{-2..4}| = 7 <= (|A+B|/|A|)^3 |A| = (5/3)^3 * 3
    a = IntVectorSet.of([0, 1, 2])
    rep = plunnecke_check(a, a, 2, 1)
    assert rep.lhs == 7
    assert rep.rhs == Fraction(5, 3) ** 3 * 3
    assert rep.ok
    with pytest.raises(ValueError):
        plunnecke_check(a, a, 0, 1)


def test_setsum_bound_edge_cases():
    # |A+B| >= sqrt(|A||B|) always, so the ratio bottoms out at exactly 1
    a = IntVectorSet.of([0])
    rep = setsum_bound_check(a, a, 1, 1)
    assert rep.k_value == 1.0 and rep.ok and not rep.clamped
    b = IntVectorSet.of(range(10))
    rep2 = setsum_bound_check(b, b, 2, -1)
    assert rep2.d_exponent == 9 and rep2.ok and not rep2.clamped


def test_exg_construction_worked_example():
    # [DERIVED] A = {0,1}, B = {0,1}, c = 2: eps = 1/2, F keeps the
    # diagonal fiber of size 2 -> |F| = 4... fibers {0:1, 1:2, 2:1},
    # threshold |B| |A|^(-c eps) = 1 keeps all sums: F is all 4 pairs.
    a = IntVectorSet.of([0, 1])
    f, rep = exg_construct(a, a, c=2.0)
    assert math.isclose(rep.epsilon, 0.5)
    assert rep.f_size == 4 and rep.partial_card == 3
    assert rep.ok
    f.validate(a, a)


@given(small_sets, small_sets)
@settings(max_examples=40, deadline=None)
def test_exg_inequalities_hold(a, b):
    big, small = (a, b) if len(a) >= len(b) else (b, a)
    _, rep = exg_construct(big, small, c=2.0)
    assert rep.ok
    assert rep.f_size >= rep.f_lower - 1e-9
    assert rep.partial_card <= rep.partial_upper + 1e-9


def test_bsg_whole_set_strategy():
    a = IntVectorSet.of(range(8))
    kp = len(sumset(a, a)) / 8
    ap, bp, rep = bsg_construct(a, a, all_pairs(a, a), kk=1.0, kp=kp)
    assert rep.strategy == "whole"
    assert len(ap) >= rep.a_lower and len(bp) >= rep.b_lower
    assert rep.sum_card <= rep.sum_upper


def test_bsg_rejects_false_hypothesis():
    a = IntVectorSet.of(range(4))
    with pytest.raises(ValueError):
        # |F| = 16 < |A||B|/K for K = 0.5
        bsg_construct(a, a, all_pairs(a, a), kk=0.5, kp=10.0)


def test_bsg_error_type():
    assert issubclass(BsgSearchError, RuntimeError)
