"""Finite integer-vector set algebra and verified additive-combinatorics lemmas.

Sets live in Z^n (component-wise addition).  The *_check functions
evaluate both sides of an inequality that is a theorem: a reported
violation means an implementation bug, never new mathematics.  The
constructive routines (ruzsa_cover, exg_construct, bsg_construct)
re-verify their own output by enumeration before returning it.

Cardinality inequalities are compared exactly: ratios are kept as
Fractions and half-integer powers are compared after squaring.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional, Union

Vec = tuple[int, ...]


def _as_vec(x, dim: Optional[int]) -> Vec:
    v = (x,) if isinstance(x, int) else tuple(int(c) for c in x)
    if dim is not None and len(v) != dim:
        raise ValueError(f"vector {v} has dim {len(v)}, expected {dim}")
    return v


@dataclass(frozen=True)
class IntVectorSet:
    """Deduplicated finite set of integer vectors of a common dimension."""

    dim: int
    elements: frozenset[Vec]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        object.__setattr__(self, "elements",
                           frozenset(_as_vec(e, self.dim) for e in self.elements))

    @classmethod
    def of(cls, items: Iterable[Union[int, Iterable[int]]], dim: int = 1) -> "IntVectorSet":
        elems = frozenset(_as_vec(x, None) for x in items)
        if elems:
            dims = {len(v) for v in elems}
            if len(dims) != 1:
                raise ValueError("mixed vector dimensions")
            dim = dims.pop()
        return cls(dim, elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, x) -> bool:
        return _as_vec(x, None) in self.elements


def _add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _scale(p: int, v: Vec) -> Vec:
    return tuple(p * c for c in v)


def _check_dims(a: IntVectorSet, b: IntVectorSet):
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")


def sumset(a: IntVectorSet, b: IntVectorSet) -> IntVectorSet:
    _check_dims(a, b)
    return IntVectorSet(a.dim, frozenset(_add(x, y) for x in a.elements for y in b.elements))


def difference_set(a: IntVectorSet, b: IntVectorSet) -> IntVectorSet:
    _check_dims(a, b)
    return IntVectorSet(a.dim, frozenset(
        tuple(x - y for x, y in zip(u, v)) for u in a.elements for v in b.elements))


def dilate(p: int, a: IntVectorSet) -> IntVectorSet:
    return IntVectorSet(a.dim, frozenset(_scale(p, v) for v in a.elements))


def iterate_sum(p: int, a: IntVectorSet) -> IntVectorSet:
    """p-fold sumset A + A + ... + A (p >= 1)."""
    if p < 1:
        raise ValueError("iterate requires p >= 1")
    acc = a
    for _ in range(p - 1):
        acc = sumset(acc, a)
    return acc


def set_combine(kind: str, a: IntVectorSet, b: Optional[IntVectorSet] = None,
                p: Optional[int] = None) -> IntVectorSet:
    """Dispatcher: kind in {sum, difference, dilate, iterate}."""
    if kind == "sum":
        return sumset(a, b)
    if kind == "difference":
        return difference_set(a, b)
    if kind == "dilate":
        return dilate(p, a)
    if kind == "iterate":
        return iterate_sum(p, a)
    raise ValueError(f"unknown combine kind {kind!r}")


@dataclass(frozen=True)
class PairSubset:
    pairs: frozenset[tuple[Vec, Vec]]

    @classmethod
    def of(cls, items) -> "PairSubset":
        return cls(frozenset((_as_vec(x, None), _as_vec(y, None)) for x, y in items))

    def validate(self, a: IntVectorSet, b: IntVectorSet):
        for x, y in self.pairs:
            if x not in a.elements or y not in b.elements:
                raise ValueError(f"pair ({x}, {y}) not in A x B")

    def __len__(self) -> int:
        return len(self.pairs)


def all_pairs(a: IntVectorSet, b: IntVectorSet) -> PairSubset:
    return PairSubset(frozenset(product(a.elements, b.elements)))


def partial_sumset(a: IntVectorSet, b: IntVectorSet, f: PairSubset) -> IntVectorSet:
    _check_dims(a, b)
    f.validate(a, b)
    return IntVectorSet(a.dim, frozenset(_add(x, y) for x, y in f.pairs))


def sum_fibers(a: IntVectorSet, b: IntVectorSet) -> dict[Vec, int]:
    """Map s -> |{(x, y) in A x B : x + y = s}|."""
    _check_dims(a, b)
    c = Counter(_add(x, y) for x in a.elements for y in b.elements)
    return dict(c)


def entropy_of_sum(a: IntVectorSet, b: IntVectorSet) -> float:
    """H(X+Y) in bits for X, Y independent uniform on A, B."""
    if not a.elements or not b.elements:
        raise ValueError("sets must be nonempty")
    n = len(a) * len(b)
    return -sum((c / n) * math.log2(c / n) for c in sum_fibers(a, b).values())


# ---------------------------------------------------------------------------
# covering / growth lemmas
# ---------------------------------------------------------------------------

def ruzsa_cover(a: IntVectorSet, b: IntVectorSet) -> IntVectorSet:
    """Greedy X ⊆ B with |X| <= |A+B|/|A| and B ⊆ A - A + X, re-verified.

    Picks b in lexicographic order while the translates A + b stay pairwise
    disjoint; maximality of the packing forces the covering property.
    """
    if not a.elements or not b.elements:
        raise ValueError("sets must be nonempty")
    _check_dims(a, b)
    chosen: list[Vec] = []
    covered: set[Vec] = set()
    for x in sorted(b.elements):
        translate = {_add(v, x) for v in a.elements}
        if not (translate & covered):
            chosen.append(x)
            covered |= translate
    cover = IntVectorSet(b.dim, frozenset(chosen))

    # verify both conclusions by enumeration before trusting the greedy run
    if len(cover) * len(a) > len(sumset(a, b)):
        raise RuntimeError("ruzsa_cover: packing bound failed")
    diff_plus_x = sumset(difference_set(a, a), cover)
    if not b.elements <= diff_plus_x.elements:
        raise RuntimeError("ruzsa_cover: covering property failed")
    return cover


@dataclass(frozen=True)
class PlunneckeReport:
    ratio: Fraction            # |A+B| / |A|
    lhs: int                   # |p*B - q*B| (iterated sums)
    rhs: Fraction              # ratio^(p+q) * |A|
    ok: bool


def plunnecke_check(a: IntVectorSet, b: IntVectorSet, p: int, q: int) -> PlunneckeReport:
    """Evaluate |p⋆B - q⋆B| <= (|A+B|/|A|)^(p+q) * |A| by enumeration."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be >= 1")
    if not a.elements or not b.elements:
        raise ValueError("sets must be nonempty")
    ratio = Fraction(len(sumset(a, b)), len(a))
    lhs = len(difference_set(iterate_sum(p, b), iterate_sum(q, b)))
    rhs = ratio ** (p + q) * len(a)
    return PlunneckeReport(ratio=ratio, lhs=lhs, rhs=rhs, ok=lhs <= rhs)


@dataclass(frozen=True)
class SetsumReport:
    k_value: float             # |A+B| / sqrt(|A| |B|), before clamping
    clamped: bool              # True when the raw ratio fell below 1
    d_exponent: int            # 2*max(|p|, |q|) + 5
    lhs: int                   # |p·A + q·B|
    rhs: float                 # K^d * sqrt(|A| |B|)
    ok: bool


def setsum_bound_check(a: IntVectorSet, b: IntVectorSet, p: int, q: int) -> SetsumReport:
    """Evaluate |p·A + q·B| <= K^d(p,q) sqrt(|A||B|), d = 2 max(|p|,|q|) + 5.

    The comparison is exact: lhs^2 * (|A||B|)^(d-1) <= |A+B|^(2d).
    When the computed K is below 1 the hypothesis is clamped to K = 1
    (flagged in the report), since the inequality assumes K >= 1.
    """
    if p == 0 or q == 0:
        raise ValueError("p and q must be nonzero")
    if not a.elements or not b.elements:
        raise ValueError("sets must be nonempty")
    na, nb = len(a), len(b)
    nsum = len(sumset(a, b))
    d = 2 * max(abs(p), abs(q)) + 5
    lhs = len(sumset(dilate(p, a), dilate(q, b)))
    clamped = nsum * nsum < na * nb
    if clamped:
        ok = lhs * lhs <= na * nb
        rhs = math.sqrt(na * nb)
    else:
        ok = lhs ** 2 * (na * nb) ** (d - 1) <= nsum ** (2 * d)
        rhs = (nsum / math.sqrt(na * nb)) ** d * math.sqrt(na * nb)
    return SetsumReport(k_value=nsum / math.sqrt(na * nb), clamped=clamped,
                        d_exponent=d, lhs=lhs, rhs=rhs, ok=ok)


# ---------------------------------------------------------------------------
# entropy -> partial sumset, and BSG
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExgReport:
    epsilon: float             # max(0, H(X+Y)/log2|A| - 1)
    fiber_threshold: float     # |B| * |A|^(-c*eps)
    f_size: int
    f_lower: float             # |A||B|(c-1)/c
    partial_card: int          # |A +_F B|
    partial_upper: float       # |A|^(1 + c*eps)
    ok: bool


def exg_construct(a: IntVectorSet, b: IntVectorSet,
                  c: float) -> tuple[PairSubset, ExgReport]:
    """Large pair set F whose partial sumset is small, from fiber counting.

    Keeps the sums s whose fiber |T(s)| is at least |B| * |A|^(-c*eps)
    and takes F = all pairs landing in that set; eps is computed from the
    sum entropy (clamped at 0).  Both advertised inequalities are
    re-verified on the constructed F.
    """
    if c <= 1:
        raise ValueError("c must exceed 1")
    if len(a) < len(b):
        raise ValueError("requires |A| >= |B|")
    fibers = sum_fibers(a, b)
    log_a = math.log2(len(a))
    eps = 0.0
    if log_a > 0:
        eps = max(0.0, entropy_of_sum(a, b) / log_a - 1.0)
    threshold = len(b) * len(a) ** (-c * eps)
    kept = {s for s, cnt in fibers.items() if cnt >= threshold - 1e-12}
    f = PairSubset(frozenset(
        (x, y) for x in a.elements for y in b.elements if _add(x, y) in kept))

    f_lower = len(a) * len(b) * (c - 1) / c
    partial = partial_sumset(a, b, f)
    partial_upper = len(a) ** (1 + c * eps)
    ok = (len(f) >= f_lower - 1e-9
          and len(partial) <= partial_upper + 1e-9)
    report = ExgReport(epsilon=eps, fiber_threshold=threshold, f_size=len(f),
                       f_lower=f_lower, partial_card=len(partial),
                       partial_upper=partial_upper, ok=ok)
    return f, report


@dataclass(frozen=True)
class BsgReport:
    kk: float                  # the K of the hypothesis |F| >= |A||B|/K
    kp: float                  # the K' of |A +_F B| <= K' sqrt(|A||B|)
    a_size: int
    b_size: int
    a_lower: float             # |A| / (4*sqrt(2)*K)
    b_lower: float             # |B| / (4*K)
    sum_card: int
    sum_upper: float           # 2^12 K^5 K'^3 sqrt(|A||B|)
    strategy: str              # which search stage certified


class BsgSearchError(RuntimeError):
    """Raised when no certified (A', B') was found within the search budget."""


def _bsg_bounds(a: IntVectorSet, b: IntVectorSet, kk: float, kp: float):
    root = math.sqrt(len(a) * len(b))
    return (len(a) / (4 * math.sqrt(2) * kk),
            len(b) / (4 * kk),
            2 ** 12 * kk ** 5 * kp ** 3 * root)


def _bsg_certify(ap: IntVectorSet, bp: IntVectorSet, bounds) -> bool:
    a_lo, b_lo, s_hi = bounds
    slack = 1e-9
    return (len(ap) >= a_lo - slack and len(bp) >= b_lo - slack
            and len(sumset(ap, bp)) <= s_hi + slack)


def bsg_construct(a: IntVectorSet, b: IntVectorSet, f: PairSubset,
                  kk: float, kp: float) -> tuple[IntVectorSet, IntVectorSet, BsgReport]:
    """Subsets A' ⊆ A, B' ⊆ B certifying the Balog-Szemeredi-Gowers bounds.

    Search order: (A, B) whole (the 2^12 slack usually suffices), then
    greedy low-degree pruning on the bipartite pair graph, then exhaustive
    subsets when |A|, |B| <= 12.  Output is always re-verified; an
    exhausted search raises BsgSearchError rather than passing silently.
    """
    f.validate(a, b)
    if kk < 1 or kp <= 0:
        raise ValueError("need kk >= 1 and kp > 0")
    if len(f) * kk < len(a) * len(b) * (1 - 1e-12):
        raise ValueError("hypothesis |F| >= |A||B|/K violated")
    if len(partial_sumset(a, b, f)) > kp * math.sqrt(len(a) * len(b)) * (1 + 1e-12):
        raise ValueError("hypothesis |A +_F B| <= K' sqrt(|A||B|) violated")

    bounds = _bsg_bounds(a, b, kk, kp)

    def report(ap, bp, strategy):
        return ap, bp, BsgReport(
            kk=kk, kp=kp, a_size=len(ap), b_size=len(bp),
            a_lower=bounds[0], b_lower=bounds[1],
            sum_card=len(sumset(ap, bp)), sum_upper=bounds[2],
            strategy=strategy)

    if _bsg_certify(a, b, bounds):
        return report(a, b, "whole")

    # greedy: peel off the lowest-degree vertex of the pair graph
    cur_a, cur_b = set(a.elements), set(b.elements)
    pairs = set(f.pairs)
    while len(cur_a) > 1 or len(cur_b) > 1:
        deg_a = Counter(x for x, _ in pairs)
        deg_b = Counter(y for _, y in pairs)
        cand = []
        if len(cur_a) > 1:
            x = min(cur_a, key=lambda v: (deg_a.get(v, 0), v))
            cand.append(("a", x, deg_a.get(x, 0)))
        if len(cur_b) > 1:
            y = min(cur_b, key=lambda v: (deg_b.get(v, 0), v))
            cand.append(("b", y, deg_b.get(y, 0)))
        side, v, _ = min(cand, key=lambda c: c[2])
        if side == "a":
            cur_a.discard(v)
            pairs = {(x, y) for x, y in pairs if x != v}
        else:
            cur_b.discard(v)
            pairs = {(x, y) for x, y in pairs if y != v}
        ap = IntVectorSet(a.dim, frozenset(cur_a))
        bp = IntVectorSet(b.dim, frozenset(cur_b))
        if _bsg_certify(ap, bp, bounds):
            return report(ap, bp, "greedy")

    if len(a) <= 12 and len(b) <= 12:
        budget = 2 * 10 ** 6
        a_sorted, b_sorted = sorted(a.elements), sorted(b.elements)
        for ka in range(len(a), 0, -1):
            if ka < bounds[0]:
                break
            for subset_a in combinations(a_sorted, ka):
                ap = IntVectorSet(a.dim, frozenset(subset_a))
                for kb in range(len(b), 0, -1):
                    if kb < bounds[1]:
                        break
                    for subset_b in combinations(b_sorted, kb):
                        budget -= 1
                        if budget < 0:
                            raise BsgSearchError("subset search budget exhausted")
                        bp = IntVectorSet(b.dim, frozenset(subset_b))
                        if _bsg_certify(ap, bp, bounds):
                            return report(ap, bp, "exhaustive")
    raise BsgSearchError("no certified subset pair found")
