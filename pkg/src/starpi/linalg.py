"""Exact rational linear algebra: row reduction, rank and span membership."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DimensionError


def _width(rows, width=None):
    for r in rows:
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise DimensionError("rows have inconsistent lengths")
    return width


def rref(rows: Sequence[Sequence], width: int | None = None):
    """Gauss-Jordan elimination over Q.

    For each column the pivot is the first remaining row with a nonzero
    entry. Returns ``(nonzero_rows, pivot_columns)`` with each pivot equal
    to 1 and zeros above and below it.
    """
    width = _width(rows, width)
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(width or 0):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


@dataclass
class LinearSystem:
    rows: list
    width: int | None = None

    def __post_init__(self):
        self.width = _width(self.rows, self.width)


def exact_rank(L: LinearSystem | Sequence) -> int:
    if not isinstance(L, LinearSystem):
        L = LinearSystem(list(L))
    return len(rref(L.rows, L.width)[0])


def in_span(L: LinearSystem | Sequence, v: Sequence) -> bool:
    if not isinstance(L, LinearSystem):
        L = LinearSystem(list(L), len(v))
    if L.width is not None and len(v) != L.width:
        raise DimensionError(f"vector of length {len(v)} against rows of length {L.width}")
    basis = EchelonBasis()
    for r in L.rows:
        basis.add(_sparse(r))
    return basis.contains(_sparse(v))


def _sparse(v):
    return {i: Fraction(x) for i, x in enumerate(v) if x != 0}


@dataclass
class EchelonBasis:
    """Incrementally maintained echelon basis of sparse row vectors.

    Rows are stored fraction-free as primitive integer dicts
    ``column -> int`` with a positive leading entry; rationals are cleared
    on input, which changes neither rank nor span membership.
    """

    pivots: dict = field(default_factory=dict)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, v: dict) -> dict:
        v = _integral(v)
        while v:
            c = min(v)
            row = self.pivots.get(c)
            if row is None:
                return _primitive(v)
            a, b = row[c], v[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            out = {k: a * x for k, x in v.items()}
            for k, x in row.items():
                nv = out.get(k, 0) - b * x
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            v = _primitive(out)
        return v

    def add(self, v: dict) -> bool:
        """Insert v; returns True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)


def nullspace(rows: Sequence[Sequence], width: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : rows · x = 0}, one vector per free column."""
    width = _width(rows, width)
    reduced, pivots = rref(rows, width)
    free = [c for c in range(width) if c not in set(pivots)]
    out = []
    for fc in free:
        x = [Fraction(0)] * width
        x[fc] = Fraction(1)
        for r, pc in zip(reduced, pivots):
            x[pc] = -r[fc]
        out.append(x)
    return out


def _integral(v: dict) -> dict:
    den = 1
    for x in v.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return {k: int(x * den) for k, x in v.items() if x}


def _primitive(v: dict) -> dict:
    if not v:
        return v
    g = 0
    for x in v.values():
        g = gcd(g, x)
    if v[min(v)] < 0:
        g = -g
    if g == 1:
        return v
    return {k: x // g for k, x in v.items()}
