"""Free *-polynomials over the rationals.

Variables come in two kinds: symmetric (``y``) and skew-symmetric (``z``),
optionally carrying a grade in Z/4. A :class:`StarPolynomial` is an
immutable linear combination of nonempty words in such variables with
:class:`fractions.Fraction` coefficients. The involution reverses words and
picks up a sign ``-1`` for every skew letter.
"""

from __future__ import annotations

import itertools
from collections import Counter
from enum import IntEnum
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    GradingMismatchError,
    InhomogeneousError,
    NotMultilinearError,
    UngradedError,
)

# occurrence j of variable index i linearizes to index i * FRESH_BASE + j
FRESH_BASE = 10**6


class Kind(IntEnum):
    SYM = 0
    SKEW = 1


class Variable(NamedTuple):
    kind: Kind
    index: int
    grade: int | None = None

    @classmethod
    def sym(cls, index, grade=None):
        return cls._checked(Kind.SYM, index, grade)

    @classmethod
    def skew(cls, index, grade=None):
        return cls._checked(Kind.SKEW, index, grade)

    @classmethod
    def _checked(cls, kind, index, grade):
        if not isinstance(index, int) or index < 1:
            raise ValueError(f"variable index must be a positive integer, got {index!r}")
        if grade is not None and grade not in (0, 1, 2, 3):
            raise ValueError(f"grade must lie in 0..3, got {grade!r}")
        return cls(Kind(kind), index, grade)

    @property
    def sort_key(self):
        return (-1 if self.grade is None else self.grade, self.kind, self.index)

    @property
    def is_sym(self):
        return self.kind == Kind.SYM

    def with_kind(self, kind):
        return Variable(Kind(kind), self.index, self.grade)

    def with_grade(self, grade):
        return Variable(self.kind, self.index, grade)

    def with_index(self, index):
        return Variable(self.kind, index, self.grade)

    def __str__(self):
        letter = "y" if self.kind == Kind.SYM else "z"
        if self.grade is None:
            return f"{letter}{self.index}"
        return f"{letter}{self.index}@{self.grade}"


Monomial = tuple  # nonempty tuple of Variable


def monomial_key(word):
    """Degree-lexicographic key of a word."""
    return (len(word), tuple(v.sort_key for v in word))


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


def _check_grading(variables):
    graded = None
    for v in variables:
        g = v.grade is not None
        if graded is None:
            graded = g
        elif graded != g:
            raise GradingMismatchError(
                "graded and non-graded variables cannot be mixed in one polynomial"
            )
    return graded


class StarPolynomial:
    """Immutable element of the free non-unitary *-algebra."""

    __slots__ = ("_terms", "_hash", "_graded")

    def __init__(self, terms: Mapping[tuple, object] | Iterable[tuple[tuple, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for word, coef in items:
            word = tuple(word)
            if not word:
                raise ValueError("the free algebra is non-unitary: empty words are not allowed")
            for v in word:
                if not isinstance(v, Variable):
                    raise TypeError(f"expected Variable, got {v!r}")
            c = _as_fraction(coef)
            acc[word] = acc.get(word, 0) + c
        self._init_from(acc)

    def _init_from(self, acc):
        nz = {w: c for w, c in acc.items() if c}
        self._terms = {w: nz[w] for w in sorted(nz, key=monomial_key)}
        self._graded = _check_grading({v for w in self._terms for v in w})
        self._hash = None

    @classmethod
    def _raw(cls, acc):
        p = cls.__new__(cls)
        p._init_from(acc)
        return p

    # construction helpers
    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def from_variable(cls, v, coef=1):
        return cls._raw({(v,): _as_fraction(coef)})

    @classmethod
    def from_word(cls, word, coef=1):
        return cls([(tuple(word), coef)])

    # inspection
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return list(self._terms)

    def coefficient(self, word):
        return self._terms.get(tuple(word), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    @property
    def is_graded(self):
        """True/False for graded/non-graded polynomials, None for zero."""
        return self._graded

    def variables(self):
        return tuple(sorted({v for w in self._terms for v in w}, key=lambda v: v.sort_key))

    @property
    def degree(self):
        return max((len(w) for w in self._terms), default=0)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, StarPolynomial):
            if other == 0:
                return self
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return StarPolynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return StarPolynomial._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, StarPolynomial):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = _as_fraction(c)
        return StarPolynomial._raw({w: c * a for w, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, StarPolynomial):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, StarPolynomial):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def involute(self):
        return involute(self)

    def rename(self, mapping):
        """Apply a variable renaming (a dict Variable -> Variable) letterwise."""
        get = mapping.get
        acc: dict[tuple, Fraction] = {}
        for w, c in self._terms.items():
            nw = tuple(get(v, v) for v in w)
            acc[nw] = acc.get(nw, 0) + c
        return StarPolynomial._raw(acc)

    def substitute(self, mapping):
        """Replace variables by polynomials; unmapped variables stay."""
        out = StarPolynomial.zero()
        for w, c in self._terms.items():
            acc = None
            for v in w:
                factor = mapping.get(v)
                if factor is None:
                    factor = StarPolynomial.from_variable(v)
                acc = factor if acc is None else mul(acc, factor)
            out = out + acc.scale(c)
        return out

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"StarPolynomial({to_text(self)!r})"


def y(index, grade=None):
    return StarPolynomial.from_variable(Variable.sym(index, grade))


def z(index, grade=None):
    return StarPolynomial.from_variable(Variable.skew(index, grade))


def commutator(p, q):
    return p * q - q * p


def jordan(p, q):
    return p * q + q * p


def mul(p: StarPolynomial, q: StarPolynomial) -> StarPolynomial:
    """Concatenation product, extended bilinearly."""
    if p._graded is not None and q._graded is not None and p._graded != q._graded:
        raise GradingMismatchError("cannot multiply graded and non-graded polynomials")
    acc: dict[tuple, Fraction] = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u + v
            acc[w] = acc.get(w, 0) + a * b
    return StarPolynomial._raw(acc)


def skew_count(word):
    return sum(1 for v in word if v.kind == Kind.SKEW)


def involute_word(word):
    """Return (sign, reversed word) for the involution of a single word."""
    return (-1 if skew_count(word) % 2 else 1), word[::-1]


def involute(p: StarPolynomial) -> StarPolynomial:
    acc = {}
    for w, c in p._terms.items():
        s, rw = involute_word(w)
        acc[rw] = acc.get(rw, 0) + s * c
    return StarPolynomial._raw(acc)


class Multidegree:
    """Occurrence counts of variables; immutable and hashable."""

    __slots__ = ("_items",)

    def __init__(self, counts: Mapping[Variable, int]):
        items = tuple(sorted(((v, int(n)) for v, n in counts.items() if n), key=lambda t: t[0].sort_key))
        for _, n in items:
            if n < 0:
                raise ValueError("multidegree counts must be nonnegative")
        self._items = items

    @classmethod
    def of_word(cls, word):
        return cls(Counter(word))

    @classmethod
    def multilinear(cls, variables):
        vs = list(variables)
        if len(set(vs)) != len(vs):
            raise ValueError("repeated variable in a multilinear multidegree")
        return cls({v: 1 for v in vs})

    @property
    def counts(self):
        return dict(self._items)

    @property
    def variables(self):
        return tuple(v for v, _ in self._items)

    @property
    def total(self):
        return sum(n for _, n in self._items)

    @property
    def is_multilinear(self):
        return all(n == 1 for _, n in self._items)

    def __getitem__(self, v):
        return dict(self._items).get(v, 0)

    def __eq__(self, other):
        return isinstance(other, Multidegree) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        inner = ", ".join(f"{v}:{n}" for v, n in self._items)
        return f"Multidegree({{{inner}}})"


def multidegree(p: StarPolynomial) -> Multidegree:
    """Common multidegree of all monomials; raises InhomogeneousError otherwise."""
    degs = {Multidegree.of_word(w) for w in p._terms}
    if len(degs) > 1:
        raise InhomogeneousError(f"polynomial is not multihomogeneous: {p}")
    return degs.pop() if degs else Multidegree({})


def is_multihomogeneous(p):
    return len({Multidegree.of_word(w) for w in p._terms}) <= 1


def is_multilinear(p):
    """True iff p is multihomogeneous and every variable occurs once."""
    try:
        return multidegree(p).is_multilinear
    except InhomogeneousError:
        return False


def has_multilinear_terms(p):
    """Each monomial separately has no repeated letter (supports may differ)."""
    return all(len(set(w)) == len(w) for w in p._terms)


def require_multilinear_terms(p, what="operation"):
    if not has_multilinear_terms(p):
        raise NotMultilinearError(f"{what} needs a multilinear polynomial, got {p}")


def multihomogeneous_components(p: StarPolynomial) -> list[StarPolynomial]:
    """Split p by multidegree; components appear in order of first monomial."""
    groups: dict[Multidegree, dict] = {}
    for w, c in p._terms.items():
        groups.setdefault(Multidegree.of_word(w), {})[w] = c
    return [StarPolynomial._raw(g) for g in groups.values()]


def fresh_variable(v: Variable, j: int) -> Variable:
    if not 1 <= j < FRESH_BASE:
        raise ValueError("occurrence number outside the fresh-index range")
    return v.with_index(v.index * FRESH_BASE + j)


def full_linearization(p: StarPolynomial) -> StarPolynomial:
    """Polarize every variable of degree d into d fresh variables.

    Occurrence j of a variable with index i is renamed to index
    ``i * FRESH_BASE + j``; the output sums over all ways of distributing the
    fresh copies among the occurrences, so it is multilinear and identifying
    the copies again multiplies p by the product of the factorials.
    """
    md = multidegree(p)
    counts = md.counts
    fresh = {v: [fresh_variable(v, j) for j in range(1, d + 1)] for v, d in counts.items()}
    taken = set(counts)
    for copies in fresh.values():
        for f in copies:
            if f in taken:
                raise ValueError(f"fresh variable {f} collides with an existing variable")
            taken.add(f)
    perms = {v: list(itertools.permutations(copies)) for v, copies in fresh.items()}
    order = list(counts)
    acc: dict[tuple, Fraction] = {}
    for w, c in p._terms.items():
        positions = {v: [i for i, x in enumerate(w) if x == v] for v in order}
        for choice in itertools.product(*(perms[v] for v in order)):
            nw = list(w)
            for v, assigned in zip(order, choice):
                for pos, f in zip(positions[v], assigned):
                    nw[pos] = f
            nw = tuple(nw)
            acc[nw] = acc.get(nw, 0) + c
    return StarPolynomial._raw(acc)


def identify_fresh(p: StarPolynomial) -> StarPolynomial:
    """Map every fresh variable back onto the variable it was split from."""
    mapping = {v: v.with_index(v.index // FRESH_BASE) for v in p.variables() if v.index >= FRESH_BASE}
    return p.rename(mapping)


def linearization_factor(md: Multidegree) -> int:
    out = 1
    for n in md.counts.values():
        out *= factorial(n)
    return out


def grade_of_monomial(word) -> int:
    total = 0
    for v in word:
        if v.grade is None:
            raise UngradedError(f"variable {v} has no grade")
        total += v.grade
    return total % 4


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(p: StarPolynomial) -> str:
    """Canonical rendering, readable back by :func:`starpi.parser.parse_poly`."""
    if not p._terms:
        return "0"
    parts = []
    for k, (w, c) in enumerate(p._terms.items()):
        body = "*".join(str(v) for v in w)
        a = abs(c)
        text = body if a == 1 else f"{_fmt_coef(a)}*{body}"
        if k == 0:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append((" - " if c < 0 else " + ") + text)
    return "".join(parts)
