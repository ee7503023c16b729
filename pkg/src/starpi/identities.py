"""Evaluation of *-polynomials and identity checking in finite-dimensional algebras.

A polynomial is first split into multihomogeneous components; components
that are not multilinear are fully linearized (characteristic zero makes
this lossless). A multilinear piece vanishes on A iff it vanishes on every
tuple of basis vectors of the matching symmetric/skew (and graded) parts,
so the check enumerates those tuples in ``itertools.product`` order and
reports the first one with a nonzero value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernel
from .algebra import AlgebraElement, FinDimAlgebra, a_involute, a_mul, homogeneous_basis, require_valid
from .envelope import build_envelope, envelope_sym_skew_basis, minimal_supports, minimal_witness_candidates
from .errors import AssignmentError, GradingMismatchError, NotMultilinearError
from .poly import (
    Kind,
    StarPolynomial,
    Variable,
    full_linearization,
    has_multilinear_terms,
    is_multilinear,
    multihomogeneous_components,
)
from .transforms import grade_expansions, tilde


@dataclass
class IdentityReport:
    holds: bool
    witness: dict | None = None
    tuples_checked: int = 0
    polynomial: StarPolynomial | None = None  # the multilinear piece that failed
    backend: str | None = None

    def __bool__(self):
        return self.holds


def check_assignment(A: FinDimAlgebra, v: Variable, e: AlgebraElement):
    if e.algebra is not A and e.algebra.dim != A.dim:
        raise AssignmentError(f"value for {v} lives in another algebra")
    sign = 1 if v.kind == Kind.SYM else -1
    if a_involute(e) != e.scale(sign):
        part = "symmetric" if sign == 1 else "skew"
        raise AssignmentError(f"{v} must be assigned a {part} element, got {e}")
    if v.grade is not None:
        bad = [k for k in e.sparse if A.grading[k] != v.grade]
        if bad:
            raise AssignmentError(f"{v} must be assigned an element of grade {v.grade}")


def evaluate(f: StarPolynomial, a: dict, A: FinDimAlgebra | None = None, check: bool = True) -> AlgebraElement:
    """Value of f at the assignment a (Variable -> AlgebraElement)."""
    if A is None:
        if not a:
            raise AssignmentError("cannot infer the algebra from an empty assignment")
        A = next(iter(a.values())).algebra
    for v in f.variables():
        if v not in a:
            raise AssignmentError(f"variable {v} is not assigned")
        if check:
            check_assignment(A, v, a[v])
    total = A.zero()
    for w, c in f.items():
        val = a[w[0]]
        for v in w[1:]:
            val = a_mul(val, a[v])
            if val.is_zero():
                break
        if not val.is_zero():
            total = total + val.scale(c)
    return total


def multilinear_pieces(f: StarPolynomial) -> list[StarPolynomial]:
    """Multihomogeneous components, each linearized unless already multilinear."""
    out = []
    for g in multihomogeneous_components(f):
        out.append(g if is_multilinear(g) else full_linearization(g))
    return out


def basis_candidates(A: FinDimAlgebra, v: Variable) -> list[AlgebraElement]:
    return homogeneous_basis(A, v.grade, 1 if v.kind == Kind.SYM else -1)


def check_multilinear(A: FinDimAlgebra, g: StarPolynomial, candidates, backend=None) -> IdentityReport:
    """Decide vanishing of one multilinear, multihomogeneous g on the given candidates.

    ``candidates`` maps each variable of g to a list of AlgebraElement;
    tuples are enumerated in product order over ``g.variables()``.
    """
    if not is_multilinear(g):
        raise NotMultilinearError(f"expected a multilinear polynomial, got {g}")
    if g.is_zero():
        return IdentityReport(True, None, 0, None)
    slots = g.variables()
    cands = [list(candidates[v]) for v in slots]
    if any(not c for c in cands):
        return IdentityReport(True, None, 0, None)
    pos = {v: n for n, v in enumerate(slots)}
    monos = [tuple(pos[x] for x in w) for w in g.monomials()]
    coefs = [g.coefficient(w) for w in g.monomials()]
    try:
        found, n, used = kernel.find_nonvanishing(A, monos, coefs, cands, backend=backend)
    except kernel.NotTensorForm:
        found, n, used = _generic(A, g, slots, cands)
    if found is None:
        return IdentityReport(True, None, n, None, used)
    witness = {v: cands[s][found[s]] for s, v in enumerate(slots)}
    return IdentityReport(False, witness, n, g, used)


def _generic(A, g, slots, cands):
    n = 0
    for idx in itertools.product(*(range(len(c)) for c in cands)):
        n += 1
        a = {v: cands[s][idx[s]] for s, v in enumerate(slots)}
        if not evaluate(g, a, A, check=False).is_zero():
            return idx, n, "generic"
    return None, n, "generic"


def _check_pieces(A, f, candidate_fn, backend=None) -> IdentityReport:
    total = 0
    used = None
    for g in multilinear_pieces(f):
        rep = check_multilinear(A, g, {v: candidate_fn(v) for v in g.variables()}, backend=backend)
        total += rep.tuples_checked
        used = rep.backend or used
        if not rep.holds:
            rep.tuples_checked = total
            return rep
    return IdentityReport(True, None, total, None, used)


def is_star_identity(A: FinDimAlgebra, f: StarPolynomial, backend=None) -> IdentityReport:
    """Does the non-graded *-polynomial f vanish on A?"""
    if f.is_graded:
        raise GradingMismatchError("is_star_identity expects a non-graded polynomial")
    require_valid(A)
    return _check_pieces(A, f, lambda v: basis_candidates(A, v), backend)


def is_graded_star_identity(A: FinDimAlgebra, f: StarPolynomial, candidates=None, backend=None) -> IdentityReport:
    """Does the graded *-polynomial f vanish on A?

    ``candidates`` optionally overrides the per-variable spanning sets (a
    callable Variable -> list of elements).
    """
    if not f.is_zero() and not f.is_graded:
        raise GradingMismatchError("is_graded_star_identity expects a graded polynomial")
    if candidates is None:
        require_valid(A)
        candidates = lambda v: basis_candidates(A, v)  # noqa: E731
    return _check_pieces(A, f, candidates, backend)


def holds_all_grade_expansions(A: FinDimAlgebra, f: StarPolynomial) -> bool:
    """Conjunction of the graded verdicts over every grade assignment of f's variables."""
    if f.is_graded:
        raise GradingMismatchError("grade expansion needs a non-graded polynomial")
    for g in multilinear_pieces(f):
        for h in grade_expansions(g):
            if not is_graded_star_identity(A, h).holds:
                return False
    return True


@dataclass
class EnvelopeLemmaReport:
    lhs: bool
    rhs: bool
    n_generators: int
    mode: str
    lhs_report: IdentityReport = field(repr=False)
    rhs_report: IdentityReport = field(repr=False)

    @property
    def agree(self):
        return self.lhs == self.rhs


def default_generators(f: StarPolynomial) -> int:
    return 3 * max(f.degree, 1)


def minimal_generators(f: StarPolynomial) -> int:
    """Grassmann generators needed for disjoint minimal supports of the largest piece."""
    from .envelope import MINIMAL_SIZE

    best = 0
    for g in multilinear_pieces(f):
        best = max(best, sum(MINIMAL_SIZE[v.grade] for v in g.variables()))
    return best


def check_envelope_lemma(A: FinDimAlgebra, f: StarPolynomial, n_generators: int | None = None,
                         exhaustive: bool = False, backend=None) -> EnvelopeLemmaReport:
    """Compare "f holds on A" with "tilde(f) holds on the envelope E4(A)".

    Minimal mode evaluates tilde(f) on b ⊗ e_S with fixed disjoint supports
    of minimal size per slot; exhaustive mode runs over the full
    homogeneous symmetric/skew basis of the truncated envelope.
    """
    if not f.is_zero() and not f.is_graded:
        raise GradingMismatchError("the envelope lemma concerns graded polynomials")
    if not has_multilinear_terms(f):
        raise NotMultilinearError("the envelope lemma is checked on multilinear polynomials")
    n = default_generators(f) if n_generators is None else n_generators
    lhs = is_graded_star_identity(A, f, backend=backend)
    env = build_envelope(A, n)
    R = env.realized
    ft = tilde(f)
    if exhaustive:
        cache = {}

        def cands(v):
            key = (v.grade, v.kind)
            if key not in cache:
                cache[key] = envelope_sym_skew_basis(env, v.grade, 1 if v.kind == Kind.SYM else -1)
            return cache[key]

        for g in multilinear_pieces(ft):  # surface the size requirement as in minimal mode
            minimal_supports([(v.grade, v.kind) for v in g.variables()], n)
        rhs = is_graded_star_identity(R, ft, candidates=cands, backend=backend)
    else:
        total = 0
        rhs = IdentityReport(True, None, 0, None)
        for g in multilinear_pieces(ft):
            slots = g.variables()
            per = minimal_witness_candidates(env, [(v.grade, 1 if v.kind == Kind.SYM else -1) for v in slots])
            rep = check_multilinear(R, g, dict(zip(slots, per)), backend=backend)
            total += rep.tuples_checked
            if not rep.holds:
                rhs = rep
                break
        rhs.tuples_checked = total
    return EnvelopeLemmaReport(lhs.holds, rhs.holds, n, "exhaustive" if exhaustive else "minimal", lhs, rhs)


def assignment_to_text(a: dict) -> dict:
    from .algebra import element_to_text

    return {str(v): element_to_text(e) for v, e in a.items()}


def random_assignment(A: FinDimAlgebra, variables, rng, bound: int = 5) -> dict:
    """Random rational combination of the matching homogeneous basis per variable."""
    out = {}
    for v in variables:
        basis = basis_candidates(A, v)
        e = A.zero()
        for b in basis:
            e = e + b.scale(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))
        out[v] = e
    return out
