"""Exact K-user interference channel gains and their scaling algebra.

Gain entries are exact: `Fraction` for rational gains, `QuadraticIrrational`
for quadratic surds.  Entry (i, j) is the gain from transmitter i to
receiver j, so receiver j sees  y_j(t) = sum_i x_i(t) h[i][j] + z_j(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .quadratic import QuadraticIrrational
from .seeds import rng_for

Gain = Union[Fraction, QuadraticIrrational]


def _as_gain(x) -> Gain:
    if isinstance(x, (Fraction, QuadraticIrrational)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"gain entries must be exact, got {type(x).__name__}")


def _is_zero(x: Gain) -> bool:
    return isinstance(x, Fraction) and x == 0


@dataclass(frozen=True)
class GainMatrix:
    """K x K exact channel gains, row = transmitter, column = receiver."""

    entries: tuple[tuple[Gain, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_as_gain(e) for e in row) for row in self.entries)
        k = len(rows)
        if k < 2:
            raise ValueError("need at least 2 users")
        if any(len(row) != k for row in rows):
            raise ValueError("gain matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def k(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Gain:
        i, j = ij
        return self.entries[i][j]

    def is_rational(self) -> bool:
        return all(isinstance(e, Fraction) for row in self.entries for e in row)

    def is_integer(self) -> bool:
        return all(isinstance(e, Fraction) and e.denominator == 1
                   for row in self.entries for e in row)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "GainMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def canonical_3user(cls, p: int, q: int) -> "GainMatrix":
        """The reduced 3-user matrix [1,0,0; 1,p,0; 1,q,1]."""
        return cls.from_rows([[1, 0, 0], [1, p, 0], [1, q, 1]])


@dataclass(frozen=True)
class DiagonalScaling:
    """Positive rational diagonal matrix, applied per transmitter or receiver."""

    diag: tuple[Fraction, ...]

    def __post_init__(self):
        d = tuple(Fraction(x) for x in self.diag)
        if any(x <= 0 for x in d):
            raise ValueError("diagonal entries must be positive")
        object.__setattr__(self, "diag", d)

    @classmethod
    def identity(cls, k: int) -> "DiagonalScaling":
        return cls(tuple(Fraction(1) for _ in range(k)))

    def inverse(self) -> "DiagonalScaling":
        return DiagonalScaling(tuple(1 / x for x in self.diag))


@dataclass(frozen=True)
class CanonicalTriple:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 or self.q == 0:
            raise ValueError("p and q must be nonzero")


@dataclass(frozen=True)
class NoiseSpec:
    variances: tuple[float, ...]
    seed: int

    def __post_init__(self):
        if any(v <= 0 for v in self.variances):
            raise ValueError("noise variances must be positive")

    def sample(self, user: int, t: int) -> float:
        """Noise value for (user, t): a pure function of (seed, user, t)."""
        g = rng_for(self.seed, user, t)
        return float(g.standard_normal()) * math.sqrt(self.variances[user])


def is_fully_connected(h: GainMatrix) -> bool:
    return not any(_is_zero(e) for row in h.entries for e in row)


def scale(h: GainMatrix, dt: DiagonalScaling, dr: DiagonalScaling) -> GainMatrix:
    """Exact entrywise dt_i * h[i][j] * dr_j; leaves degrees-of-freedom unchanged."""
    if len(dt.diag) != h.k or len(dr.diag) != h.k:
        raise ValueError("scaling dimension mismatch")
    return GainMatrix(tuple(
        tuple(dt.diag[i] * h[i, j] * dr.diag[j] for j in range(h.k))
        for i in range(h.k)))


def integerize(h: GainMatrix) -> tuple[GainMatrix, DiagonalScaling]:
    """Clear denominators column by column: returns (h * dr, dr) integer-valued.

    dr_j is the LCM of the reduced denominators in column j, the minimal
    positive integer scaling that works.
    """
    if not h.is_rational():
        raise ValueError("integerize needs rational entries")
    if not is_fully_connected(h):
        raise ValueError("integerize needs a fully connected matrix")
    diag = []
    for j in range(h.k):
        m = 1
        for i in range(h.k):
            m = math.lcm(m, h[i, j].denominator)
        diag.append(Fraction(m))
    dr = DiagonalScaling(tuple(diag))
    return scale(h, DiagonalScaling.identity(h.k), dr), dr


def lower_triangular_minor(h: GainMatrix, users: tuple[int, int, int]) -> list[list[Fraction]]:
    """3x3 principal minor on `users` with strictly-upper entries zeroed.

    Dropping cross gains above the diagonal cannot reduce the best sum
    rate (interference never helps), so the triple bound may be computed
    on this lower-triangular form.
    """
    i, j, k = users
    if len({i, j, k}) != 3:
        raise ValueError("need three distinct users")
    idx = sorted((i, j, k))
    return [[h[idx[m], idx[n]] if m >= n else Fraction(0) for n in range(3)]
            for m in range(3)]


def reduce_to_canonical(h: GainMatrix, users: tuple[int, int, int]) -> CanonicalTriple:
    """Canonical (p, q) of a 3-user subchannel with integer gains.

    Writing the zeroed minor as [a,0,0; b,c,0; d,e,f], pre/post scaling by
    diag(bd, ad, ab) and diag(1/(abd), 1/a, 1/(abf)) turns it into
    [1,0,0; 1,p,0; 1,q,1] with p = c*d and q = b*e.
    """
    minor = lower_triangular_minor(h, users)
    a, b, c, d, e, f = (minor[0][0], minor[1][0], minor[1][1],
                        minor[2][0], minor[2][1], minor[2][2])
    vals = []
    for name, v in zip("abcdef", (a, b, c, d, e, f)):
        if not (isinstance(v, Fraction) and v.denominator == 1):
            raise ValueError(f"minor entry {name} is not an integer")
        if v == 0:
            raise ValueError(f"minor entry {name} is zero")
        vals.append(int(v))
    a, b, c, d, e, f = vals
    return CanonicalTriple(p=c * d, q=b * e)


def deterministic_offset(h: GainMatrix) -> list[float]:
    """Per-receiver rate offset (1/2) log2(1 + 2 * sum_j h[j][i]^2).

    Quantizing inputs to integers costs each receiver at most this many
    bits per symbol relative to the Gaussian channel, so it vanishes in
    the DoF limit.
    """
    out = []
    for i in range(h.k):
        s = sum(float(h[j, i]) ** 2 for j in range(h.k))
        out.append(0.5 * math.log2(1 + 2 * s))
    return out


def apply_channel(h: GainMatrix, x: Sequence[Sequence],
                  noise: Optional[NoiseSpec] = None) -> list[list]:
    """y[j][t] = sum_i x[i][t] * h[i][j] (+ z[j][t] if noise is given).

    Without noise and with rational gains the output is exact (Fractions
    reduce to ints when integral), matching the deterministic channel.
    """
    if len(x) != h.k:
        raise ValueError("signal has wrong number of users")
    n = len(x[0])
    if any(len(row) != n for row in x):
        raise ValueError("ragged signal block")
    exact = noise is None and h.is_rational()
    out = []
    for j in range(h.k):
        row = []
        for t in range(n):
            if exact:
                v = sum(Fraction(x[i][t]) * h[i, j] for i in range(h.k))
                row.append(int(v) if v.denominator == 1 else v)
            else:
                v = sum(float(x[i][t]) * float(h[i, j]) for i in range(h.k))
                if noise is not None:
                    v += noise.sample(j, t)
                row.append(v)
        out.append(row)
    return out
