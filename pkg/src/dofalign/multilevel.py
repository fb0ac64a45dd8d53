"""Multi-level deterministic interference-alignment code for 3 users.

User i transmits x_i = sum_l m_{i,l} Q^(l-1) with per-level digits from a
fixed alphabet A_i.  On the noiseless integer channel
    y1 = x1 + x2 + x3,   y2 = p*x2 + q*x3,   y3 = x3,
each receiver recovers its digits level by level from the base-Q
decomposition, provided the alphabets produce no carries and each
receiver's per-level digit determines its own message digit.

The stock instance is A1 = {0,1}, A2 = {0,2,4}, A3 = {0,2}, Q = 8,
(p, q) = (2, 1): receiver 1 reads its bit off the parity of the digit,
receiver 2 halves its signal and rounds the digit down to even.  The
general validity predicate below checks per-level decodability by
exhaustive inverse-map construction, which reduces to exactly those
rules on the stock instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Optional, Sequence

ENUMERATION_GUARD = 10 ** 7


@dataclass(frozen=True)
class LevelScheme:
    alphabets: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    base: int
    levels: int
    p: int
    q: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if self.p == 0 or self.q == 0:
            raise ValueError("p and q must be nonzero")
        norm = tuple(tuple(sorted(set(a))) for a in self.alphabets)
        if len(norm) != 3 or any(not a for a in norm):
            raise ValueError("need three nonempty alphabets")
        if any(d < 0 for a in norm for d in a):
            raise ValueError("digits must be non-negative")
        object.__setattr__(self, "alphabets", norm)


def default_scheme(levels: int = 1) -> LevelScheme:
    return LevelScheme(alphabets=((0, 1), (0, 2, 4), (0, 2)),
                       base=8, levels=levels, p=2, q=1)


@dataclass(frozen=True)
class MessageTuple:
    digits: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]  # 3 x L


@dataclass
class SchemeValidation:
    ok: bool
    diagnostics: list[str] = field(default_factory=list)
    # per-level digit -> message maps for receivers 1 and 2
    rx1_map: Optional[dict[int, int]] = None
    rx2_map: Optional[dict[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_scheme(s: LevelScheme) -> SchemeValidation:
    """Check no-carry and per-level decodability at every receiver.

    (i)   all sums A1 + A2 + A3 land in one base-Q digit,
    (ii)  the receiver-1 digit m1 + m2 + m3 determines m1,
    (iii) the receiver-2 digit m2 + (q/p) m3 is an integer in range and
          determines m2,
    (iv)  receiver 3's digit is m3 itself (needs A3 inside one digit).
    """
    a1, a2, a3 = s.alphabets
    diags: list[str] = []

    for name, alpha in zip(("A1", "A2", "A3"), s.alphabets):
        bad = [d for d in alpha if d >= s.base]
        if bad:
            diags.append(f"{name} digit {bad[0]} exceeds base-1 = {s.base - 1}")
    if diags:
        return SchemeValidation(False, diags)

    sums = {d1 + d2 + d3 for d1 in a1 for d2 in a2 for d3 in a3}
    if max(sums) > s.base - 1:
        diags.append(f"carry at receiver 1: digit sum {max(sums)} >= base {s.base}")

    rx1: dict[int, int] = {}
    for d1 in a1:
        for d2 in a2:
            for d3 in a3:
                w = d1 + d2 + d3
                if rx1.setdefault(w, d1) != d1:
                    diags.append(f"receiver 1 ambiguous: digit {w} from m1 in "
                                 f"{{{rx1[w]}, {d1}}}")
                    return SchemeValidation(False, diags)

    rx2: dict[int, int] = {}
    for d3 in a3:
        if (s.q * d3) % s.p != 0:
            diags.append(f"receiver 2: q*{d3} not divisible by p={s.p}")
            return SchemeValidation(False, diags)
    for d2 in a2:
        for d3 in a3:
            w = d2 + (s.q * d3) // s.p
            if not 0 <= w <= s.base - 1:
                diags.append(f"receiver 2 digit {w} out of [0, {s.base - 1}]")
                return SchemeValidation(False, diags)
            if rx2.setdefault(w, d2) != d2:
                diags.append(f"receiver 2 ambiguous: digit {w} from m2 in "
                             f"{{{rx2[w]}, {d2}}}")
                return SchemeValidation(False, diags)

    if diags:
        return SchemeValidation(False, diags)
    return SchemeValidation(True, [], rx1_map=rx1, rx2_map=rx2)


def encode(s: LevelScheme, m: MessageTuple) -> tuple[int, int, int]:
    """x_i = sum_l m_{i,l} Q^(l-1); per-symbol power stays below Q^(2L)."""
    out = []
    for i in range(3):
        digits = m.digits[i]
        if len(digits) != s.levels:
            raise ValueError(f"user {i + 1}: expected {s.levels} digits")
        for d in digits:
            if d not in s.alphabets[i]:
                raise ValueError(f"user {i + 1}: digit {d} not in alphabet")
        out.append(sum(d * s.base ** l for l, d in enumerate(digits)))
    return tuple(out)


def _digits(y: int, base: int, levels: int) -> list[int]:
    out = []
    for _ in range(levels):
        out.append(y % base)
        y //= base
    return out


@lru_cache(maxsize=256)
def _cached_validation(s: LevelScheme) -> SchemeValidation:
    return validate_scheme(s)


def decode(s: LevelScheme, receiver: int, y: int) -> tuple[int, ...]:
    """Per-level digits of receiver `receiver` (1, 2 or 3) from its signal y."""
    val = _cached_validation(s)
    if not val:
        raise ValueError("scheme is not decodable: " + "; ".join(val.diagnostics))
    if receiver == 2:
        if y % s.p != 0:
            raise ValueError(f"receiver 2 signal {y} not divisible by p={s.p}")
        y //= s.p
    if not 0 <= y < s.base ** s.levels:
        raise ValueError(f"signal {y} outside [0, Q^L)")
    w = _digits(y, s.base, s.levels)
    if receiver == 1:
        return tuple(val.rx1_map[d] for d in w)
    if receiver == 2:
        return tuple(val.rx2_map[d] for d in w)
    if receiver == 3:
        for d in w:
            if d not in s.alphabets[2]:
                raise ValueError(f"receiver 3 digit {d} not in A3")
        return tuple(w)
    raise ValueError("receiver must be 1, 2 or 3")


def channel_outputs(s: LevelScheme, x: tuple[int, int, int]) -> tuple[int, int, int]:
    x1, x2, x3 = x
    return x1 + x2 + x3, s.p * x2 + s.q * x3, x3


@dataclass
class ZeroErrorResult:
    ok: bool
    tuples_checked: int
    counterexample: Optional[MessageTuple] = None

    def __bool__(self) -> bool:
        return self.ok


def exhaustive_zero_error(s: LevelScheme, levels: Optional[int] = None) -> ZeroErrorResult:
    """Check decode(encode(m)) == m over the entire message space."""
    levels = s.levels if levels is None else levels
    scheme = LevelScheme(s.alphabets, s.base, levels, s.p, s.q) \
        if levels != s.levels else s
    a1, a2, a3 = scheme.alphabets
    per_level = len(a1) * len(a2) * len(a3)
    total = per_level ** levels
    if total > ENUMERATION_GUARD:
        raise ValueError(f"{total} message tuples exceed enumeration guard")
    if not validate_scheme(scheme):
        return ZeroErrorResult(False, 0)

    checked = 0
    for combo in product(product(a1, a2, a3), repeat=levels):
        m = MessageTuple(digits=tuple(
            tuple(level[i] for level in combo) for i in range(3)))
        y = channel_outputs(scheme, encode(scheme, m))
        checked += 1
        for rx in (1, 2, 3):
            if decode(scheme, rx, y[rx - 1]) != m.digits[rx - 1]:
                return ZeroErrorResult(False, checked, counterexample=m)
    return ZeroErrorResult(True, checked)


def scheme_dof(s: LevelScheme) -> float:
    """(sum_i log2 |A_i|) / log2 Q: rate sum over half the power exponent."""
    return sum(math.log2(len(a)) for a in s.alphabets) / math.log2(s.base)


def user_rates(s: LevelScheme) -> tuple[float, float, float]:
    """Bits per symbol at L levels: L * log2|A_i|."""
    return tuple(s.levels * math.log2(len(a)) for a in s.alphabets)


def search_schemes(base: int, p: int, q: int,
                   max_sizes: Sequence[int] = (4, 4, 4),
                   combo_guard: int = 10 ** 6) -> Optional[LevelScheme]:
    """Bounded brute-force search for the best valid scheme at a given base.

    Enumerates digit alphabets up to the given sizes, validates each
    candidate, and returns the valid scheme with the largest dof value.
    """
    best: Optional[LevelScheme] = None
    best_dof = -1.0
    budget = combo_guard

    def alphabet_candidates(max_size):
        for size in range(1, max_size + 1):
            yield from combinations(range(base), size)

    for a3 in alphabet_candidates(max_sizes[2]):
        for a2 in alphabet_candidates(max_sizes[1]):
            if max(a2) + max(a3) > base - 1:
                continue
            for a1 in alphabet_candidates(max_sizes[0]):
                budget -= 1
                if budget < 0:
                    return best
                if max(a1) + max(a2) + max(a3) > base - 1:
                    continue
                cand = LevelScheme((a1, a2, a3), base, 1, p, q)
                dof = scheme_dof(cand)
                if dof > best_dof and validate_scheme(cand):
                    best, best_dof = cand, dof
    return best
