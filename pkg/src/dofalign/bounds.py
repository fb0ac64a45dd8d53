"""Closed-form degrees-of-freedom bounds for rational interference channels.

For the reduced 3-user channel [1,0,0; 1,p,0; 1,q,1] the sum DoF is at
most 3/2 - eps(p,q) with eps(p,q) = 1/(12*d + 2), where d = 2*max(|p|,|q|)+5
in general and d = 2*|p|+3 when |q| = 1 (symmetrically when |p| = 1).
For K users the bound K/2 - (K/3)*min_triple eps applies after reducing
every user triple.  All arithmetic is exact rationals; floats appear only
in the slope estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .channel import (DiagonalScaling, GainMatrix, integerize,
                      is_fully_connected, reduce_to_canonical, scale)


def d_exponent(p: int, q: int) -> tuple[int, str]:
    """Sumset growth exponent d(p, q) and the rule that produced it.

    The strengthened exponent for |q| = 1 is applied symmetrically to
    |p| = 1 (relabeling users 2 and 3 swaps the roles of p and q); the
    smallest applicable exponent wins.
    """
    if p == 0 or q == 0:
        raise ValueError("p and q must be nonzero")
    candidates = [(2 * max(abs(p), abs(q)) + 5, "general")]
    if abs(q) == 1:
        candidates.append((2 * abs(p) + 3, "unit-q"))
    if abs(p) == 1:
        candidates.append((2 * abs(q) + 3, "unit-p"))
    return min(candidates)


def epsilon_of(p: int, q: int) -> Fraction:
    d, _ = d_exponent(p, q)
    return Fraction(1, 12 * d + 2)


@dataclass(frozen=True)
class BoundReport:
    p: int
    q: int
    d_exponent: int
    rule: str
    epsilon: Fraction
    dof_upper: Fraction


def rational_3user_bound(p: int, q: int) -> BoundReport:
    """DoF upper bound 3/2 - eps(p,q) for the reduced 3-user channel."""
    d, rule = d_exponent(p, q)
    eps = Fraction(1, 12 * d + 2)
    return BoundReport(p=p, q=q, d_exponent=d, rule=rule, epsilon=eps,
                       dof_upper=Fraction(3, 2) - eps)


def canonical_pair(p_raw: int, q_raw: int) -> tuple[int, int]:
    """Primitive (p, q): common factor removed, sign convention q > 0.

    Scaling both p and q by a positive rational is a diagonal-scaling
    equivalence of the reduced channel, so only the primitive pair
    matters for the bound; this also makes the K-user bound invariant
    under diagonal scalings of the input matrix.
    """
    if p_raw == 0 or q_raw == 0:
        raise ValueError("p and q must be nonzero")
    g = math.gcd(abs(p_raw), abs(q_raw))
    p, q = p_raw // g, q_raw // g
    if q < 0:
        p, q = -p, -q
    return p, q


@dataclass(frozen=True)
class TripleTrace:
    users: tuple[int, int, int]
    p: int
    q: int
    d_exponent: int
    rule: str
    epsilon: Fraction


@dataclass(frozen=True)
class KuserBoundReport:
    k: int
    triples: tuple[TripleTrace, ...]
    delta: Fraction            # min over triples of eps(p, q)
    dof_upper: Fraction        # K/2 - (K/3)*delta


def rational_Kuser_bound(h: GainMatrix) -> KuserBoundReport:
    """K/2 - (K/3) * min over user triples of eps(p, q), exactly.

    Integerizes the matrix, reduces every principal 3x3 minor to its
    canonical (p, q) (taken primitive, see canonical_pair), and combines
    the per-triple bounds through the averaging argument.
    """
    if h.k < 3:
        raise ValueError("need at least 3 users")
    if not h.is_rational():
        raise ValueError("bound applies to rational matrices")
    if not is_fully_connected(h):
        raise ValueError("bound applies to fully connected matrices")
    hbar, _ = integerize(h)
    traces = []
    for users in combinations(range(h.k), 3):
        t = reduce_to_canonical(hbar, users)
        p, q = canonical_pair(t.p, t.q)
        d, rule = d_exponent(p, q)
        traces.append(TripleTrace(users=users, p=p, q=q, d_exponent=d,
                                  rule=rule, epsilon=Fraction(1, 12 * d + 2)))
    delta = min(t.epsilon for t in traces)
    bound = Fraction(h.k, 2) - Fraction(h.k, 3) * delta
    return KuserBoundReport(k=h.k, triples=tuple(traces), delta=delta,
                            dof_upper=bound)


def halfK_upper(k: int) -> Fraction:
    """The fully-connected baseline upper bound K/2."""
    if k < 2:
        raise ValueError("need at least 2 users")
    return Fraction(k, 2)


def gaussian_entropy_ub(avg_variance: float, n: int = 1) -> float:
    """Entropy bound (n/2) log2(2*pi*e*(avg per-symbol variance + 1/12)) bits.

    Valid for any discrete random vector on Z^n; the 1/12 is the variance
    of the rounding offset.
    """
    if avg_variance < 0:
        raise ValueError("variance must be non-negative")
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n / 2) * math.log2(2 * math.pi * math.e * (avg_variance + Fraction(1, 12)))


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residuals: tuple[float, ...]


def dof_slope_estimate(points: Sequence[tuple[float, float]]) -> SlopeFit:
    """Least-squares slope of sum rate against (1/2) log2 P.

    The slope is the empirical degrees-of-freedom proxy; any constant
    rate offset is absorbed by the intercept.
    """
    if len(points) < 2:
        raise ValueError("need at least two points")
    powers = [p for p, _ in points]
    if len(set(powers)) != len(powers):
        raise ValueError("duplicate P values")
    x = np.array([0.5 * math.log2(p) for p in powers])
    y = np.array([r for _, r in points])
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    return SlopeFit(slope=float(slope), intercept=float(intercept),
                    residuals=tuple(float(v) for v in (y - fitted)))


def scaling_invariance_holds(h: GainMatrix, dt: DiagonalScaling,
                             dr: DiagonalScaling) -> bool:
    """True iff the K-user bound report is unchanged by dt * H * dr."""
    return rational_Kuser_bound(h) == rational_Kuser_bound(scale(h, dt, dr))
