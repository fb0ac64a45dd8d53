"""Truncated-lattice codebook, exact separation, decoding, simulation.

Oracle for min_separation [DERIVED]: exhaustive float enumeration of
spacing * |alpha*dzx + dzs| over the full index box, run out-of-band and
frozen below; the library computes the same minimum with exact surd
arithmetic, so agreement is required to float precision.
"""

import math
from fractions import Fraction

import pytest

from dofalign.channel import GainMatrix
from dofalign.lattice import (
    build_codebook,
    fano_rate_bound,
    interference_range,
    min_separation,
    nearest_point_decode,
    simulate_symbol_error,
)
from dofalign.quadratic import QuadraticIrrational

SQRT2 = QuadraticIrrational.sqrt_of(2)


def diag_sqrt2(k=3):
    rows = [[SQRT2 if i == j else Fraction(1) for j in range(k)]
            for i in range(k)]
    return GainMatrix.from_rows(rows)


def test_codebook_parameters():
    # [DERIVED] P=1e4, eps=0.05: spacing = P^0.3, max_index = floor(sqrtP/spacing)
    lat = build_codebook(1e4, 0.05)
    assert math.isclose(lat.spacing, 1e4 ** 0.3, rel_tol=1e-12)
    assert lat.max_index == 6
    assert lat.cardinality == 13
    assert lat.cardinality <= 2 * 1e4 ** (0.25 - 0.05) + 1
    pts = lat.codewords()
    assert len(pts) == 13 and pts[0] == -pts[-1]
    with pytest.raises(ValueError):
        build_codebook(1e4, 0.3)
    with pytest.raises(ValueError):
        build_codebook(-1.0, 0.1)


def oracle_min_gap(alpha_float, lat, s_range):
    best = None
    m = lat.max_index
    for dzx in range(-2 * m, 2 * m + 1):
        for dzs in range(-s_range, s_range + 1):
            if dzx == 0 and dzs == 0:
                continue
            v = lat.spacing * abs(alpha_float * dzx + dzs)
            best = v if best is None or v < best else best
    return best


@pytest.mark.parametrize("power,eps,satisfied,frozen_gap", [
    (1e6, 0.2, True, 85.99013471393398),       # [DERIVED] > P^eps = 15.85
    (1e4, 0.05, False, 0.4665489954334218),    # [DERIVED] < P^eps = 1.585
])
def test_min_separation_against_oracle(power, eps, satisfied, frozen_gap):
    lat = build_codebook(power, eps)
    s_range = 2 * 2 * lat.max_index           # two unit cross gains, doubled
    rep = min_separation(SQRT2, lat, s_range)
    assert rep.satisfied is satisfied
    assert math.isclose(rep.min_gap, frozen_gap, rel_tol=1e-9)
    assert math.isclose(rep.min_gap, oracle_min_gap(math.sqrt(2), lat, s_range),
                        rel_tol=1e-12)
    assert math.isclose(rep.threshold, power ** eps, rel_tol=1e-12)


def test_min_separation_exactness_on_near_ties():
    # golden ratio has the slowest-converging expansion: gaps nearly tie
    phi = QuadraticIrrational(1, 1, 2, 5)
    lat = build_codebook(1e8, 0.05)
    rep = min_separation(phi, lat, 4 * lat.max_index)
    assert math.isclose(rep.min_gap,
                        oracle_min_gap((1 + math.sqrt(5)) / 2, lat,
                                       4 * lat.max_index), rel_tol=1e-12)


def test_decode_roundtrip_noiseless():
    lat = build_codebook(1e6, 0.2)
    af = float(SQRT2)
    for zx in range(-lat.max_index, lat.max_index + 1):
        for zs in (-2, 0, 1):
            y = lat.spacing * (af * zx + zs)
            assert nearest_point_decode(y, SQRT2, lat, s_range=2) == zx


def test_fano_rate_bound_values():
    # [TRIVIAL] log2|C|(1 - Pe) - 1, floored at 0
    assert math.isclose(fano_rate_bound(3, 0.0), math.log2(3) - 1)
    assert fano_rate_bound(2, 0.5) == 0.0
    assert math.isclose(fano_rate_bound(13, 0.1),
                        max(0.0, math.log2(13) * 0.9 - 1))
    with pytest.raises(ValueError):
        fano_rate_bound(0, 0.0)
    with pytest.raises(ValueError):
        fano_rate_bound(4, 1.5)


def test_interference_range():
    h = diag_sqrt2(3)
    assert interference_range(h, 0, 5) == 10   # two unit cross gains * 5
    h2 = GainMatrix.from_rows([[SQRT2, Fraction(3)], [Fraction(2), SQRT2]])
    assert interference_range(h2, 0, 4) == 8   # gain *into* receiver 0 is 2


def test_simulation_deterministic_and_bounded():
    h = diag_sqrt2(3)
    r1 = simulate_symbol_error(h, 1e6, 0.2, trials=500, seed=42)
    r2 = simulate_symbol_error(h, 1e6, 0.2, trials=500, seed=42)
    assert r1 == r2
    assert r1.errors == (0, 0, 0)              # deep below the noise floor
    assert all(e <= r1.analytic_bound + 1e-12 for e in r1.error_rates)
    r3 = simulate_symbol_error(h, 1e6, 0.2, trials=500, seed=43)
    assert r3.lattice == r1.lattice            # codebook is seed-independent


def test_simulation_s_range_override():
    h = diag_sqrt2(3)
    r = simulate_symbol_error(h, 1e6, 0.2, trials=10, seed=1, s_range=7)
    assert r.s_ranges == (7, 7, 7)
    with pytest.raises(ValueError):
        simulate_symbol_error(h, 1e6, 0.2, trials=10, seed=1, s_range=-1)


def test_simulation_rejects_bad_gains():
    h = GainMatrix.from_rows([[Fraction(1), Fraction(1)],
                              [Fraction(1), Fraction(1)]])
    with pytest.raises(ValueError):
        simulate_symbol_error(h, 1e6, 0.2, trials=1, seed=0)
