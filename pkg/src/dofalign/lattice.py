"""Truncated-lattice codebooks and alignment-based nearest-point decoding.

Each user transmits an integer multiple of a common spacing P^(1/4+eps),
truncated to [-sqrt(P), sqrt(P)].  With an irrational quadratic direct
gain alpha and integer cross gains, the received constellation
{alpha*x + s} has pairwise-distinct points, and for large P a minimum
separation exceeding P^eps, so unit-variance noise is decoded around
with error probability at most 2*exp(-P^(2*eps)/8).

All separation comparisons are exact sign tests in Z[sqrt(d)]; floats
appear only in reported values and in the Monte Carlo path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .channel import GainMatrix
from .quadratic import QuadraticIrrational, sign_plus_root
from .seeds import rng_for

# re-exported here because the Diophantine constant is part of this
# module's public surface
from .quadratic import liouville_delta  # noqa: F401


@dataclass(frozen=True)
class TruncatedLattice:
    """Codebook {z * spacing : |z| <= max_index}, spacing = P^(1/4+eps)."""

    power: float
    epsilon: float
    spacing: float
    max_index: int

    @property
    def cardinality(self) -> int:
        return 2 * self.max_index + 1

    def codewords(self) -> list[float]:
        return [z * self.spacing for z in range(-self.max_index, self.max_index + 1)]


def build_codebook(power: float, epsilon: float) -> TruncatedLattice:
    if power <= 0:
        raise ValueError("power must be positive")
    if not 0 < epsilon < 0.25:
        raise ValueError("epsilon must lie in (0, 1/4)")
    spacing = power ** (0.25 + epsilon)
    max_index = math.floor(math.sqrt(power) / spacing)
    return TruncatedLattice(power, epsilon, spacing, max_index)


@dataclass(frozen=True)
class SeparationReport:
    min_gap: float
    threshold: float          # P^epsilon
    satisfied: bool
    argmin: tuple[int, int]   # (delta z_x, delta z_s) achieving min_gap
    distinct: bool            # True iff no nonzero (dzx, dzs) collides


def min_separation(alpha: QuadraticIrrational, lat: TruncatedLattice,
                   s_range: int) -> SeparationReport:
    """Exact minimum of spacing * |alpha*dzx + dzs| over nonzero index pairs.

    dzx ranges over [-2*max_index, 2*max_index] and dzs over
    [-s_range, s_range]; by symmetry only dzx >= 0 is enumerated.  For each
    dzx the only competitive dzs are the two integers bracketing
    -alpha*dzx, found with an exact floor.  Candidates are ranked by
    comparing squared values in Z[sqrt(d)].
    """
    a, b, r, d = alpha.a, alpha.b, alpha.r, alpha.d

    # candidate distances |u + v*sqrt(d)| / r with u = a*dzx + r*dzs, v = b*dzx
    best: Optional[tuple[int, int]] = None
    best_arg = (0, 0)

    def consider(dzx: int, dzs: int):
        nonlocal best, best_arg
        u = a * dzx + r * dzs
        v = b * dzx
        if best is None:
            best, best_arg = (u, v), (dzx, dzs)
            return
        bu, bv = best
        # |u + v√d| < |bu + bv√d|  <=>  (u+v√d)^2 < (bu+bv√d)^2
        du = u * u + v * v * d - bu * bu - bv * bv * d
        dv = 2 * (u * v - bu * bv)
        if sign_plus_root(du, dv, d) < 0:
            best, best_arg = (u, v), (dzx, dzs)

    consider(0, 1)  # pure interference offset: gap is one spacing
    for dzx in range(1, 2 * lat.max_index + 1):
        t = math.floor(alpha * dzx)
        for dzs in (-t, -t - 1):
            consider(dzx, max(-s_range, min(s_range, dzs)))

    bu, bv = best
    gap_field = abs(QuadraticIrrational(bu, bv, r, d)) if bv != 0 else abs(Fraction(bu, r))
    min_gap = lat.spacing * float(gap_field)
    threshold = lat.power ** lat.epsilon
    # distinctness: |u + v√d| = 0 impossible unless u = v = 0
    distinct = not (bu == 0 and bv == 0)
    return SeparationReport(min_gap=min_gap, threshold=threshold,
                            satisfied=min_gap > threshold,
                            argmin=best_arg, distinct=distinct)


def nearest_point_decode(y: float, alpha: QuadraticIrrational,
                         lat: TruncatedLattice, s_range: int) -> int:
    """Codeword index of the aligned point spacing*(alpha*zx + zs) nearest y.

    Ties go to smaller |zx|, then smaller zx (the arg-min order below).
    """
    af = float(alpha)
    target = y / lat.spacing
    best_dist = math.inf
    best_zx = 0
    order = sorted(range(-lat.max_index, lat.max_index + 1), key=lambda z: (abs(z), z))
    for zx in order:
        zs = round(target - af * zx)
        zs = max(-s_range, min(s_range, zs))
        dist = abs(af * zx + zs - target)
        if dist < best_dist:
            best_dist = dist
            best_zx = zx
    return best_zx


def fano_rate_bound(cardinality: int, error_rate: float) -> float:
    """Achievable bits/symbol: log2|C| - (1 + Pe*log2|C|), floored at 0."""
    if cardinality < 1:
        raise ValueError("cardinality must be >= 1")
    if not 0 <= error_rate <= 1:
        raise ValueError("error rate must be in [0, 1]")
    return max(0.0, math.log2(cardinality) * (1 - error_rate) - 1)


def interference_range(h: GainMatrix, user: int, max_index: int) -> int:
    """Bound on |interference index| at receiver `user`: sum_j |h_ji| * max_index."""
    total = 0
    for j in range(h.k):
        if j == user:
            continue
        g = h[j, user]
        if not (isinstance(g, Fraction) and g.denominator == 1):
            raise ValueError("cross gains must be integers")
        total += abs(int(g)) * max_index
    return total


@dataclass(frozen=True)
class SimulationResult:
    lattice: TruncatedLattice
    trials: int
    errors: tuple[int, ...]           # per user
    error_rates: tuple[float, ...]    # per user
    analytic_bound: float             # 2*exp(-P^(2 eps)/8)
    s_ranges: tuple[int, ...]
    min_gaps: tuple[float, ...]
    separation_ok: tuple[bool, ...]


def simulate_symbol_error(h: GainMatrix, power: float, epsilon: float,
                          trials: int, seed: int,
                          noise_variance: float = 1.0,
                          s_range: int | None = None) -> SimulationResult:
    """Monte Carlo symbol error of the alignment scheme on channel h.

    Diagonal gains must be quadratic irrationals, off-diagonal gains
    integers.  Trial t draws its randomness from the stream keyed by
    (seed, t), so error counts are independent of evaluation order.
    `s_range` overrides the per-user interference range; by default it is
    computed from the cross gains.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    k = h.k
    alphas = []
    for i in range(k):
        g = h[i, i]
        if not isinstance(g, QuadraticIrrational):
            raise ValueError("direct gains must be quadratic irrationals")
        alphas.append(g)
    lat = build_codebook(power, epsilon)
    if s_range is None:
        s_ranges = tuple(interference_range(h, i, lat.max_index)
                         for i in range(k))
    else:
        if s_range < 0:
            raise ValueError("s_range must be nonnegative")
        s_ranges = (s_range,) * k
    # candidate points differ by at most twice the interference index range
    seps = [min_separation(alphas[i], lat, 2 * s_ranges[i]) for i in range(k)]

    cross = [[int(h[j, i]) if j != i else 0 for j in range(k)] for i in range(k)]
    af = [float(a) for a in alphas]
    sigma = math.sqrt(noise_variance)
    errors = [0] * k
    m = lat.max_index
    for t in range(trials):
        g = rng_for(seed, t)
        zx = g.integers(-m, m + 1, size=k)
        noise = g.standard_normal(k) * sigma if noise_variance > 0 else [0.0] * k
        for i in range(k):
            # received signal in spacing units: alpha_i*zx_i + integer interference
            y = lat.spacing * (af[i] * zx[i]
                               + sum(cross[i][j] * zx[j] for j in range(k) if j != i))
            y += noise[i]
            if nearest_point_decode(y, alphas[i], lat, s_ranges[i]) != zx[i]:
                errors[i] += 1

    analytic = 2 * math.exp(-power ** (2 * epsilon) / 8)
    return SimulationResult(
        lattice=lat, trials=trials, errors=tuple(errors),
        error_rates=tuple(e / trials for e in errors),
        analytic_bound=analytic, s_ranges=s_ranges,
        min_gaps=tuple(s.min_gap for s in seps),
        separation_ok=tuple(s.satisfied for s in seps))
