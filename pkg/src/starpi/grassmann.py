"""Truncated Grassmann algebra on generators e_1..e_n.

Basis monomials are strictly increasing generator tuples (the empty tuple
is the unit). The natural Z/4 grading is word length mod 4 and the
canonical involution fixes every generator, so it reverses words:
``e_S* = (-1)^(s(s-1)/2) e_S`` with ``s = |S|``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .errors import DimensionError


def subset_sign(S, T) -> int:
    """Sign of e_S e_T against e_{S∪T}; 0 when S and T share a generator."""
    if set(S) & set(T):
        return 0
    inv = sum(1 for s in S for t in T if s > t)
    return -1 if inv % 2 else 1


def mask_of(S) -> int:
    m = 0
    for i in S:
        m |= 1 << (i - 1)
    return m


def subset_of(mask: int) -> tuple:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_sign(a: int, b: int) -> int:
    """Same as :func:`subset_sign` on bitmasks (bit i-1 is generator i)."""
    if a & b:
        return 0
    inv = 0
    while b:
        low = b & -b
        # generators of a above this generator of b
        inv += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if inv & 1 else 1


def reversal_sign(size: int) -> int:
    return -1 if (size * (size - 1) // 2) % 2 else 1


def colex_subsets(n: int):
    """All subsets of {1..n} in colex order (= increasing bitmask)."""
    return [subset_of(m) for m in range(1 << n)]


def subsets_of_grade(n: int, theta: int):
    return [S for S in colex_subsets(n) if len(S) % 4 == theta % 4]


class GrassmannElement:
    __slots__ = ("n_generators", "_terms")

    def __init__(self, n_generators: int, terms: Mapping = ()):
        if not isinstance(n_generators, int) or n_generators < 0:
            raise ValueError("n_generators must be a nonnegative integer")
        self.n_generators = n_generators
        acc: dict[tuple, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for S, c in items:
            S = tuple(S)
            if list(S) != sorted(set(S)):
                raise ValueError(f"generator subset must be strictly increasing: {S}")
            if S and not (1 <= S[0] and S[-1] <= n_generators):
                raise ValueError(f"subset {S} outside 1..{n_generators}")
            if isinstance(c, float):
                raise TypeError("floating point coefficients are not allowed")
            acc[S] = acc.get(S, 0) + Fraction(c)
        self._terms = {S: acc[S] for S in sorted(acc, key=mask_of) if acc[S]}

    @classmethod
    def _raw(cls, n, acc):
        e = cls.__new__(cls)
        e.n_generators = n
        e._terms = {S: acc[S] for S in sorted(acc, key=mask_of) if acc[S]}
        return e

    @classmethod
    def basis(cls, n, S=()):
        return cls(n, {tuple(S): 1})

    @classmethod
    def unit(cls, n):
        return cls(n, {(): 1})

    @classmethod
    def generator(cls, n, i):
        return cls(n, {(i,): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def _check(self, other):
        if not isinstance(other, GrassmannElement):
            raise TypeError("expected a GrassmannElement")
        if other.n_generators != self.n_generators:
            raise DimensionError(
                f"generator-count mismatch: {self.n_generators} vs {other.n_generators}"
            )

    def __add__(self, other):
        self._check(other)
        acc = dict(self._terms)
        for S, c in other._terms.items():
            acc[S] = acc.get(S, 0) + c
        return GrassmannElement._raw(self.n_generators, acc)

    def __neg__(self):
        return GrassmannElement._raw(self.n_generators, {S: -c for S, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return GrassmannElement._raw(self.n_generators, {S: c * a for S, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return g_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            return self.n_generators == other.n_generators and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n_generators, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return grassmann_to_text(self)

    def __repr__(self):
        return f"GrassmannElement({self.n_generators}, {grassmann_to_text(self)!r})"


def g_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    a._check(b)
    acc: dict[tuple, Fraction] = {}
    for S, x in a._terms.items():
        for T, w in b._terms.items():
            sign = subset_sign(S, T)
            if sign:
                U = tuple(sorted(S + T))
                acc[U] = acc.get(U, 0) + sign * x * w
    return GrassmannElement._raw(a.n_generators, acc)


def g_involute(a: GrassmannElement) -> GrassmannElement:
    return GrassmannElement._raw(
        a.n_generators, {S: reversal_sign(len(S)) * c for S, c in a._terms.items()}
    )


def g_grade_component(a: GrassmannElement, theta: int) -> GrassmannElement:
    return GrassmannElement._raw(
        a.n_generators, {S: c for S, c in a._terms.items() if len(S) % 4 == theta % 4}
    )


def grade_of_subset(S) -> int:
    return len(S) % 4


def basis_monomials(n: int):
    return [GrassmannElement.basis(n, S) for S in colex_subsets(n)]


def subset_name(S) -> str:
    return "e{" + ",".join(str(i) for i in S) + "}"


def grassmann_to_text(a: GrassmannElement) -> str:
    if not a._terms:
        return "0"
    parts = []
    for k, (S, c) in enumerate(a._terms.items()):
        mag = abs(c)
        coef = "" if mag == 1 else (f"{mag.numerator}/{mag.denominator}*" if mag.denominator != 1 else f"{mag.numerator}*")
        text = coef + subset_name(S)
        if k == 0:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append((" - " if c < 0 else " + ") + text)
    return "".join(parts)


def all_subsets_of_size(n, k):
    return [tuple(c) for c in combinations(range(1, n + 1), k)]
