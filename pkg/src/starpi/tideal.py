"""Multilinear components of *T-ideals and membership at a fixed multidegree.

For prepared (multilinear, involution-closed) generators the multilinear
component of the *T-ideal at a multilinear multidegree D is spanned by the
products ``v1 * g(u1 ± u1*, ..., uk ± uk*) * v2``, where the words v1, u_l,
v2 use every variable of D exactly once and v1, v2 may be empty. The sign is
+ for a symmetric argument and - for a skew one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DegreeCapError, GradingMismatchError, NotMultilinearError
from .linalg import EchelonBasis, LinearSystem, exact_rank, in_span  # noqa: F401
from .poly import (
    Kind,
    Multidegree,
    StarPolynomial,
    full_linearization,
    is_multilinear,
    monomial_key,
    multidegree,
    multihomogeneous_components,
)

DEGREE_CAP = 6

__all__ = [
    "DEGREE_CAP",
    "ConsequenceSpace",
    "consequence_span",
    "exact_rank",
    "in_span",
    "is_member",
    "member_linearized",
    "prepare_generators",
]


def _normalized(p: StarPolynomial) -> StarPolynomial:
    return p.scale(1 / next(iter(p.terms.values())))


def prepare_generators(S) -> list[StarPolynomial]:
    """Linearized multihomogeneous components of each generator plus their involutes.

    Duplicates up to a nonzero scalar are dropped; each survivor is scaled
    so that its leading coefficient is 1.
    """
    out, seen = [], set()
    for g in S:
        for comp in multihomogeneous_components(g):
            lin = comp if is_multilinear(comp) else full_linearization(comp)
            for h in (lin, lin.involute()):
                h = _normalized(h)
                if h not in seen:
                    seen.add(h)
                    out.append(h)
    return out


@dataclass
class ConsequenceSpace:
    multidegree: Multidegree
    monomial_index: list
    rows: list = field(repr=False)
    basis: EchelonBasis = field(repr=False)

    @property
    def rank(self):
        return self.basis.rank

    @property
    def width(self):
        return len(self.monomial_index)

    def vector(self, f: StarPolynomial) -> dict:
        col = self._columns
        out = {}
        for w, c in f.items():
            if w not in col:
                raise NotMultilinearError(f"monomial {w} is not at multidegree {self.multidegree}")
            out[col[w]] = c
        return out

    @property
    def _columns(self):
        cols = getattr(self, "_col_cache", None)
        if cols is None:
            cols = {w: n for n, w in enumerate(self.monomial_index)}
            self._col_cache = cols
        return cols

    def contains(self, f: StarPolynomial) -> bool:
        return self.basis.contains(self.vector(f))

    def matrix(self):
        return [[r.coefficient(w) for w in self.monomial_index] for r in self.rows]


def _word_grade(u):
    return sum(v.grade for v in u) % 4


def _argument(u, kind):
    """Terms of u + u* (symmetric slot) or u - u* (skew slot) as (word, coef) pairs."""
    eps = 1 if kind == Kind.SYM else -1
    rev = tuple(reversed(u))
    c = eps * (-1) ** sum(v.kind == Kind.SKEW for v in u)
    if rev == u:
        return [(u, 1 + c)] if 1 + c else []
    return [(u, 1), (rev, c)]


def _instances(g: StarPolynomial, variables, graded: bool):
    xs = g.variables()
    k = len(xs)
    d = len(variables)
    if k > d:
        return
    for w in itertools.permutations(variables):
        for cuts in itertools.combinations(range(d + 1), k + 1):
            blocks = [w[cuts[i]:cuts[i + 1]] for i in range(k)]
            # u and its reverse give the same argument up to sign
            if any(tuple(map(_key, u)) > tuple(map(_key, reversed(u))) for u in blocks):
                continue
            if graded and any(_word_grade(u) != x.grade for u, x in zip(blocks, xs)):
                continue
            yield w[:cuts[0]], blocks, w[cuts[-1]:]


def _scale_key(vec):
    lead = vec[min(vec)]
    return tuple(sorted((k, x / lead) for k, x in vec.items()))


def _key(v):
    return v.sort_key


def consequence_span(S, D: Multidegree, prepared: bool = False, allow_large: bool = False) -> ConsequenceSpace:
    """Exact spanning set of the *T-ideal of S at the multilinear multidegree D."""
    if not D.is_multilinear:
        raise NotMultilinearError(f"multidegree {D} is not multilinear")
    if D.total > DEGREE_CAP and not allow_large:
        raise DegreeCapError(f"degree {D.total} exceeds the enumeration cap {DEGREE_CAP}")
    gens = list(S) if prepared else prepare_generators(S)
    for g in gens:
        if not is_multilinear(g):
            raise NotMultilinearError(f"generator {g} is not multilinear")
    variables = D.variables
    graded = bool(variables) and variables[0].grade is not None
    monos = sorted(itertools.permutations(variables), key=monomial_key)
    cols = {w: n for n, w in enumerate(monos)}
    basis = EchelonBasis()
    rows, seen = [], set()
    for g in gens:
        if g.is_zero():
            continue
        if g.is_graded != graded:
            raise GradingMismatchError("generators and multidegree must both be graded or both non-graded")
        xs = g.variables()
        terms = list(g.items())
        for pre, blocks, post in _instances(g, variables, graded):
            args = {x: _argument(u, x.kind) for x, u in zip(xs, blocks)}
            acc = {}
            for word, c in terms:
                for pick in itertools.product(*(args[x] for x in word)):
                    coef = c
                    out = pre
                    for u, e in pick:
                        coef *= e
                        out += u
                    out += post
                    acc[out] = acc.get(out, 0) + coef
            vec = {cols[w]: c for w, c in acc.items() if c}
            if not vec:
                continue
            key = _scale_key(vec)
            if key in seen:
                continue
            seen.add(key)
            rows.append(StarPolynomial._raw(acc))
            if basis.rank < len(monos):
                basis.add(vec)
    space = ConsequenceSpace(D, monos, rows, basis)
    space._col_cache = cols
    return space


def is_member(S, f: StarPolynomial, allow_large: bool = False) -> bool:
    """Exact membership of a multilinear f in the *T-ideal generated by S."""
    if f.is_zero():
        return True
    if not is_multilinear(f):
        raise NotMultilinearError("is_member needs a multilinear target; linearize it first")
    return consequence_span(S, multidegree(f), allow_large=allow_large).contains(f)


def member_linearized(S, f: StarPolynomial, allow_large: bool = False) -> list[tuple[StarPolynomial, bool]]:
    """Membership of each linearized multihomogeneous piece of an arbitrary f."""
    gens = prepare_generators(S)
    out = []
    for comp in multihomogeneous_components(f):
        lin = comp if is_multilinear(comp) else full_linearization(comp)
        span = consequence_span(gens, multidegree(lin), prepared=True, allow_large=allow_large)
        out.append((lin, span.contains(lin)))
    return out
