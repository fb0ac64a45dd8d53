"""Gain-matrix text format.

Line 1: K.  Then K*K whitespace-separated entries, row-major (row =
transmitter).  Each entry is one of
    a           integer
    a/b         rational
    (a+b√D)/r   quadratic irrational, b and a may carry signs, /r optional
The writer emits the same grammar, losslessly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .channel import Gain, GainMatrix
from .quadratic import QuadraticIrrational

_SURD = re.compile(r"^\(([+-]?\d+)([+-]\d+)√(\d+)\)(?:/(\d+))?$")
_RAT = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_entry(token: str) -> Gain:
    m = _RAT.match(token)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2) or 1))
    m = _SURD.match(token)
    if m:
        a, b, d, r = (int(m.group(1)), int(m.group(2)), int(m.group(3)),
                      int(m.group(4) or 1))
        if b == 0:
            return Fraction(a, r)
        return QuadraticIrrational(a, b, r, d)
    raise ValueError(f"unparseable gain entry: {token!r}")


def format_entry(g: Gain) -> str:
    if isinstance(g, Fraction):
        if g.denominator == 1:
            return str(g.numerator)
        return f"{g.numerator}/{g.denominator}"
    return f"({g.a}{g.b:+}√{g.d})/{g.r}"


def loads(text: str) -> GainMatrix:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty matrix file")
    try:
        k = int(tokens[0])
    except ValueError:
        raise ValueError(f"first token must be K, got {tokens[0]!r}") from None
    need = k * k
    if len(tokens) - 1 != need:
        raise ValueError(f"expected {need} entries for K={k}, got {len(tokens) - 1}")
    entries = [parse_entry(t) for t in tokens[1:]]
    rows = [entries[i * k:(i + 1) * k] for i in range(k)]
    return GainMatrix.from_rows(rows)


def dumps(h: GainMatrix) -> str:
    lines = [str(h.k)]
    for row in h.entries:
        lines.append(" ".join(format_entry(e) for e in row))
    return "\n".join(lines) + "\n"


def load(path) -> GainMatrix:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


def dump(h: GainMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(h))
