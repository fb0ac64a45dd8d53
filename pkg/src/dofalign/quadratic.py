"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Numbers are stored as (a + b*sqrt(d)) / r with integer a, b, r and a
square-free d >= 2.  All comparisons reduce to integer sign tests, so
distances between lattice points can be ranked without any floating
point, which is what the minimum-separation check needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s^2 * d and d square-free (n > 0)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, d = 1, n
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


def sign_plus_root(u: int, v: int, d: int) -> int:
    """Exact sign of u + v*sqrt(d) for non-square d >= 2."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return 1 if v > 0 else -1
    if u > 0 and v > 0:
        return 1
    if u < 0 and v < 0:
        return -1
    t = u * u - v * v * d
    # t != 0 because sqrt(d) is irrational and v != 0
    if u > 0:
        return 1 if t > 0 else -1
    return 1 if t < 0 else -1


@dataclass(frozen=True)
class QuadraticIrrational:
    """(a + b*sqrt(d)) / r, normalized: r > 0, gcd(a, b, r) = 1, b != 0."""

    a: int
    b: int
    r: int
    d: int

    def __post_init__(self):
        a, b, r, d = self.a, self.b, self.r, self.d
        if r == 0:
            raise ValueError("zero denominator")
        if b == 0:
            raise ValueError("b = 0 is rational; use Fraction instead")
        s, d0 = squarefree_split(d)
        if d0 == 1:
            raise ValueError(f"sqrt({d}) is rational")
        b *= s
        d = d0
        if r < 0:
            a, b, r = -a, -b, -r
        g = gcd(gcd(abs(a), abs(b)), r)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "r", r // g)
        object.__setattr__(self, "d", d)

    # -- construction helpers ------------------------------------------

    @classmethod
    def sqrt_of(cls, n: int) -> "QuadraticIrrational":
        return cls(0, 1, 1, n)

    def conjugate(self) -> "QuadraticIrrational":
        return QuadraticIrrational(self.a, -self.b, self.r, self.d)

    def minimal_polynomial(self) -> tuple[int, int, int]:
        """Integer coefficients (A, B, C) of A x^2 + B x + C with root self.

        A x^2 + B x + C = A (x - alpha)(x - alpha'), content-reduced, A > 0.
        """
        # alpha + alpha' = 2a/r, alpha*alpha' = (a^2 - b^2 d)/r^2
        A = self.r * self.r
        B = -2 * self.a * self.r
        C = self.a * self.a - self.b * self.b * self.d
        g = gcd(gcd(abs(A), abs(B)), abs(C))
        return A // g, B // g, C // g

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> tuple[int, int, int]:
        """Other as (a, b, r) over the same field; None if unsupported."""
        if isinstance(other, QuadraticIrrational):
            if other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return other.a, other.b, other.r
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, Fraction):
            return other.numerator, 0, other.denominator
        return NotImplemented

    def __add__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return NotImplemented
        oa, ob, orr = t
        return QuadraticIrrational(
            self.a * orr + oa * self.r, self.b * orr + ob * self.r,
            self.r * orr, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticIrrational(-self.a, -self.b, self.r, self.d)

    def __sub__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return NotImplemented
        oa, ob, orr = t
        u = self.a * orr - oa * self.r
        v = self.b * orr - ob * self.r
        if v == 0:
            return Fraction(u, self.r * orr)
        return QuadraticIrrational(u, v, self.r * orr, self.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return NotImplemented
        oa, ob, orr = t
        u = self.a * oa + self.b * ob * self.d
        v = self.a * ob + self.b * oa
        if v == 0:
            return Fraction(u, self.r * orr)
        return QuadraticIrrational(u, v, self.r * orr, self.d)

    __rmul__ = __mul__

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons ---------------------------------------------------

    def sign(self) -> int:
        return sign_plus_root(self.a, self.b, self.d)

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Fraction):
            return (diff > 0) - (diff < 0)
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        import math
        root = math.sqrt(self.d)
        direct = self.a + self.b * root
        scale = abs(self.a) + abs(self.b) * root
        if scale > 0 and abs(direct) < 1e-6 * scale:
            # rationalize to dodge catastrophic cancellation
            direct = (self.a * self.a - self.b * self.b * self.d) / (
                self.a - self.b * root)
        return direct / self.r

    def __floor__(self) -> int:
        n = int(float(self))
        while self._cmp(n) < 0:
            n -= 1
        while self._cmp(n + 1) >= 0:
            n += 1
        return n

    def __str__(self) -> str:
        return f"({self.a}{self.b:+}√{self.d})/{self.r}"


def continued_fraction_convergents(
        alpha: QuadraticIrrational, q_limit: int) -> Iterator[tuple[int, int]]:
    """Yield the continued-fraction convergents p/q of alpha with q <= q_limit.

    Uses the classical surd recursion on (P + sqrt(N)) / Q with the
    invariant Q | (N - P^2); exact floors make every partial quotient exact.
    """
    n_rad = alpha.b * alpha.b * alpha.d
    if alpha.b > 0:
        big_p, big_q = alpha.a, alpha.r
    else:
        big_p, big_q = -alpha.a, -alpha.r
    if (n_rad - big_p * big_p) % big_q != 0:
        big_p *= abs(big_q)
        n_rad *= big_q * big_q
        big_q *= abs(big_q)

    root = isqrt(n_rad)
    p_prev, q_prev = 0, 1  # (p_{-2}, q_{-2})
    p_cur, q_cur = 1, 0    # (p_{-1}, q_{-1})
    while True:
        # a_k = floor((P + sqrt(N)) / Q), exact for either sign of Q:
        # start from the integer estimate, then fix up with sign tests on
        # (P + sqrt(N)) - n*Q, whose sign is sign_plus_root(P - n*Q, 1, N)
        # flipped when Q < 0.
        a_k = (big_p + root) // big_q if big_q > 0 else (big_p + root + 1) // big_q
        q_sign = 1 if big_q > 0 else -1
        while sign_plus_root(big_p - a_k * big_q, 1, n_rad) * q_sign < 0:
            a_k -= 1
        while sign_plus_root(big_p - (a_k + 1) * big_q, 1, n_rad) * q_sign >= 0:
            a_k += 1

        p_next = a_k * p_cur + p_prev
        q_next = a_k * q_cur + q_prev
        if q_next > q_limit and q_cur >= 1:
            return
        if q_next >= 1:
            yield p_next, q_next
        p_prev, q_prev = p_cur, q_cur
        p_cur, q_cur = p_next, q_next

        big_p = a_k * big_q - big_p
        big_q = (n_rad - big_p * big_p) // big_q


def liouville_delta(alpha: QuadraticIrrational, q_limit: int = 10 ** 4) -> Fraction:
    """A computable constant delta with |alpha - p/q| > delta / q^2 for all p, q > 0.

    For a quadratic irrational the approximation quality q^2 |alpha - p/q|
    is minimized along continued-fraction convergents (any fraction beating
    1/(2 q^2) is a convergent), and for a periodic expansion the quality
    converges, so scanning convergents up to q_limit pins down the infimum.
    The returned delta is the largest unit fraction strictly below it.
    """
    best = None
    af = float(alpha)
    for p, q in continued_fraction_convergents(alpha, q_limit):
        quality = abs(af * q - p) * q
        if best is None or quality < best:
            best = quality
    if best is None:
        raise ValueError("no convergents found below q_limit")
    n = int(1 / best) + 1
    return Fraction(1, n)
