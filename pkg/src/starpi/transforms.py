"""Operators on multilinear (graded) *-polynomials.

``s_op`` signs each monomial by the parity of its odd-grade letters relative
to the fixed order ``ODD_ORDER``; ``t_op`` swaps the kinds of letters of
grade 2 and 3; ``tilde`` is ``s_op`` after ``t_op``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotMultilinearError, UngradedError, VariableSetError
from .poly import (
    Kind,
    StarPolynomial,
    Variable,
    has_multilinear_terms,
    require_multilinear_terms,
)

ETA = (0, 0, 1, 1)
ODD_GRADES = (1, 3)


def eta(theta: int) -> int:
    return ETA[theta % 4]


def odd_order_key(v: Variable):
    """Position of an odd variable in the fixed order.

    All grade-1 y's by index, then grade-1 z's, then grade-3 y's, then
    grade-3 z's.
    """
    return (v.grade, v.kind, v.index)


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (distinct, comparable items)."""
    # cycle decomposition on ranks
    n = len(seq)
    if n < 2:
        return 1
    rank = {x: i for i, x in enumerate(sorted(seq))}
    perm = [rank[x] for x in seq]
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _require_graded(f, what):
    if f.is_graded is False:
        raise UngradedError(f"{what} needs graded variables")


def odd_sign(word) -> int:
    odd = [odd_order_key(v) for v in word if v.grade in ODD_GRADES]
    return permutation_sign(odd)


def s_op(f: StarPolynomial) -> StarPolynomial:
    require_multilinear_terms(f, "s_op")
    _require_graded(f, "s_op")
    return StarPolynomial._raw({w: odd_sign(w) * c for w, c in f.items()})


def _t_var(v: Variable) -> Variable:
    if v.grade in (2, 3):
        return v.with_kind(Kind.SKEW if v.kind == Kind.SYM else Kind.SYM)
    return v


def t_op(f: StarPolynomial) -> StarPolynomial:
    require_multilinear_terms(f, "t_op")
    _require_graded(f, "t_op")
    return StarPolynomial._raw({tuple(_t_var(v) for v in w): c for w, c in f.items()})


def tilde(f: StarPolynomial) -> StarPolynomial:
    return s_op(t_op(f))


@dataclass(frozen=True)
class VariableSet:
    members: frozenset

    def __init__(self, members):
        object.__setattr__(self, "members", frozenset(members))
        if not self.members:
            raise VariableSetError("variable set must be nonempty")
        kinds = {v.kind for v in self.members}
        grades = {v.grade for v in self.members}
        if len(kinds) != 1 or len(grades) != 1:
            raise VariableSetError("variable set must share one kind and one grade")

    @property
    def ordered(self):
        return tuple(sorted(self.members, key=lambda v: v.sort_key))

    def __len__(self):
        return len(self.members)


def _as_varset(S):
    return S if isinstance(S, VariableSet) else VariableSet(S)


def _check_multilinear_in(S: VariableSet, f: StarPolynomial):
    for w in f.monomials():
        for s in S.members:
            if w.count(s) != 1:
                raise NotMultilinearError(f"{f} is not multilinear in {sorted(map(str, S.members))}")


def _permutation_sum(S, f, signed):
    S = _as_varset(S)
    _check_multilinear_in(S, f)
    base = S.ordered
    out: dict[tuple, Fraction] = {}
    for perm in itertools.permutations(base):
        sign = permutation_sign(perm) if signed else 1
        mapping = dict(zip(base, perm))
        for w, c in f.items():
            nw = tuple(mapping.get(v, v) for v in w)
            out[nw] = out.get(nw, 0) + sign * c
    return StarPolynomial._raw(out)


def alternator(S, f: StarPolynomial) -> StarPolynomial:
    """Signed sum of f over all permutations of the variables in S."""
    return _permutation_sum(S, f, signed=True)


def symmetrizer(S, f: StarPolynomial) -> StarPolynomial:
    """Unsigned sum of f over all permutations of the variables in S."""
    return _permutation_sum(S, f, signed=False)


def transpose_variables(f, a, b):
    return f.rename({a: b, b: a})


def is_alternating_in(S, f):
    S = _as_varset(S)
    return all(transpose_variables(f, a, b) == -f for a, b in itertools.combinations(S.ordered, 2))


def is_symmetric_in(S, f):
    S = _as_varset(S)
    return all(transpose_variables(f, a, b) == f for a, b in itertools.combinations(S.ordered, 2))


@dataclass(frozen=True)
class PairPermutation:
    """Independent renamings of the symmetric and of the skew variables.

    ``sigma`` and ``tau`` are dicts mapping a variable to its image; each is
    a bijection of its own key set.
    """

    sigma: tuple
    tau: tuple

    def __init__(self, sigma=None, tau=None):
        sigma = dict(sigma or {})
        tau = dict(tau or {})
        for name, part, kind in (("sigma", sigma, Kind.SYM), ("tau", tau, Kind.SKEW)):
            if set(part) != set(part.values()):
                raise VariableSetError(f"{name} is not a permutation of its domain")
            if any(v.kind != kind for v in part):
                raise VariableSetError(f"{name} must act on {kind.name} variables only")
        object.__setattr__(self, "sigma", tuple(sorted(sigma.items(), key=lambda t: t[0].sort_key)))
        object.__setattr__(self, "tau", tuple(sorted(tau.items(), key=lambda t: t[0].sort_key)))

    @classmethod
    def from_images(cls, sym_vars, sym_perm, skew_vars=(), skew_perm=()):
        """sigma sends sym_vars[i] to sym_vars[sym_perm[i]] (likewise for tau)."""
        sym_vars, skew_vars = list(sym_vars), list(skew_vars)
        sigma = {sym_vars[i]: sym_vars[j] for i, j in enumerate(sym_perm)}
        tau = {skew_vars[i]: skew_vars[j] for i, j in enumerate(skew_perm)}
        return cls(sigma, tau)

    @classmethod
    def identity(cls, sym_vars=(), skew_vars=()):
        return cls({v: v for v in sym_vars}, {v: v for v in skew_vars})

    @property
    def mapping(self):
        return dict(self.sigma) | dict(self.tau)

    def compose(self, other: "PairPermutation") -> "PairPermutation":
        """``self ∘ other``: rename by ``other`` first, then by ``self``."""
        s, o = dict(self.sigma), dict(other.sigma)
        t, ot = dict(self.tau), dict(other.tau)
        if set(s) != set(o) or set(t) != set(ot):
            raise VariableSetError("cannot compose pair permutations with different domains")
        return PairPermutation({v: s[o[v]] for v in o}, {v: t[ot[v]] for v in ot})

    __matmul__ = compose


def pair_action(p: PairPermutation, f: StarPolynomial) -> StarPolynomial:
    require_multilinear_terms(f, "pair_action")
    vars_ = set(f.variables())
    sym = {v for v in vars_ if v.kind == Kind.SYM}
    skew = vars_ - sym
    if sym != {v for v, _ in p.sigma} or skew != {v for v, _ in p.tau}:
        raise VariableSetError("pair permutation domain does not match the polynomial's variables")
    return f.rename(p.mapping)


def grade_expansions(f: StarPolynomial) -> list[StarPolynomial]:
    """All 4**k gradings of a multilinear non-graded polynomial in k variables.

    Variables are taken in canonical order; the grade tuples run through
    ``itertools.product(range(4), repeat=k)``.
    """
    return [g for _, g in grade_expansions_with_grades(f)]


def grade_expansions_with_grades(f: StarPolynomial):
    if not has_multilinear_terms(f):
        raise NotMultilinearError(f"grade_expansions needs a multilinear polynomial, got {f}")
    if f.is_graded:
        raise VariableSetError("grade_expansions expects non-graded variables")
    vars_ = f.variables()
    out = []
    for grades in itertools.product(range(4), repeat=len(vars_)):
        mapping = {v: v.with_grade(g) for v, g in zip(vars_, grades)}
        out.append((grades, f.rename(mapping)))
    return out


def grade_sum_substitution(f: StarPolynomial) -> StarPolynomial:
    """Replace every non-graded variable by the sum of its four graded copies."""
    if f.is_graded:
        raise VariableSetError("expected a non-graded polynomial")
    mapping = {}
    for v in f.variables():
        total = StarPolynomial.zero()
        for g in range(4):
            total = total + StarPolynomial.from_variable(v.with_grade(g))
        mapping[v] = total
    return f.substitute(mapping)
