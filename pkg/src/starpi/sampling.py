"""Seeded random polynomials for property checks and the CLI verifier.

All functions take an explicit ``random.Random``; nothing here touches a
global entropy source.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .algebra import FinDimAlgebra, a_mul
from .identities import basis_candidates
from .linalg import EchelonBasis, nullspace
from .poly import Kind, StarPolynomial, Variable

ALL_SLOTS = [(k, g) for g in range(4) for k in (Kind.SYM, Kind.SKEW)]


def _coef(rng, bound=4):
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    if rng.random() < 0.2:
        return Fraction(c, rng.randint(2, 3))
    return Fraction(c)


def make_variables(slots, graded=True):
    """Distinct variables for the (kind, grade) slots, indices counted per kind."""
    nxt = {}
    out = []
    for kind, grade in slots:
        key = (kind, grade if graded else None)
        nxt[key] = nxt.get(key, 0) + 1
        out.append(Variable(Kind(kind), nxt[key], grade if graded else None))
    return out


def random_combination(rng, variables, max_terms=6, words=None) -> StarPolynomial:
    """Random nonzero combination of arrangements of ``variables`` (each used once)."""
    if words is None:
        words = list(itertools.permutations(variables))
    k = rng.randint(1, min(max_terms, len(words)))
    return StarPolynomial({w: _coef(rng) for w in rng.sample(words, k)})


def random_multilinear(rng, degree, slots=None, graded=True, max_terms=6) -> StarPolynomial:
    slots = slots or ALL_SLOTS
    picked = [rng.choice(slots) for _ in range(degree)]
    return random_combination(rng, make_variables(picked, graded), max_terms)


def random_word_poly(rng, n_vars=3, max_degree=4, max_terms=5, graded=False) -> StarPolynomial:
    """Random polynomial with repeated letters allowed."""
    pool = []
    for i in range(1, n_vars + 1):
        g = rng.randrange(4) if graded else None
        pool.append(Variable(Kind(rng.randrange(2)), i, g))
    acc = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(pool) for _ in range(rng.randint(1, max_degree)))
        acc[w] = acc.get(w, 0) + _coef(rng)
    return StarPolynomial(acc)


def random_multihomogeneous(rng, degrees, max_terms=5, graded=False) -> StarPolynomial:
    """Random combination of arrangements of a fixed letter multiset."""
    letters = []
    for i, d in enumerate(degrees, start=1):
        g = rng.randrange(4) if graded else None
        letters += [Variable(Kind(rng.randrange(2)), i, g)] * d
    words = sorted(set(itertools.permutations(letters)))
    k = rng.randint(1, min(max_terms, len(words)))
    p = StarPolynomial({w: _coef(rng) for w in rng.sample(words, k)})
    return p


def admissible_slots(A: FinDimAlgebra):
    """(kind, grade) pairs whose part of A is nonzero."""
    out = []
    for kind, grade in ALL_SLOTS:
        if basis_candidates(A, Variable(kind, 1, grade)):
            out.append((kind, grade))
    return out


def identity_space(A: FinDimAlgebra, variables):
    """Words and a nullspace basis: combinations of arrangements vanishing on A."""
    words = list(itertools.permutations(variables))
    cands = [basis_candidates(A, v) for v in variables]
    span = EchelonBasis()
    for tup in itertools.product(*cands):
        a = dict(zip(variables, tup))
        vals = []
        for w in words:
            e = a[w[0]]
            for v in w[1:]:
                e = a_mul(e, a[v])
            vals.append(e.sparse)
        for k in range(A.dim):
            row = {c: v[k] for c, v in enumerate(vals) if k in v}
            if row:
                span.add(row)
        if span.rank == len(words):
            break
    rows = [[r.get(c, 0) for c in range(len(words))] for r in span.pivots.values()]
    return words, nullspace(rows, len(words))


def random_identity(rng, A: FinDimAlgebra, variables) -> StarPolynomial | None:
    """A random nonzero multilinear identity of A in the given variables, if one exists."""
    words, basis = identity_space(A, variables)
    if not basis:
        return None
    while True:
        vec = [Fraction(0)] * len(words)
        for b in basis:
            c = rng.randint(-2, 2)
            if c:
                vec = [x + c * y for x, y in zip(vec, b)]
        if any(vec):
            return StarPolynomial({w: x for w, x in zip(words, vec) if x})


def lemma_sample(rng, A: FinDimAlgebra, max_degree=4, max_terms=6) -> StarPolynomial:
    """Random graded multilinear polynomial for the envelope lemma: about half are identities."""
    slots = admissible_slots(A) or ALL_SLOTS
    while True:
        d = rng.randint(1, max_degree)
        variables = make_variables([rng.choice(slots) for _ in range(d)])
        if rng.random() < 0.5:
            f = random_identity(rng, A, variables)
            if f is not None:
                return f
        return random_combination(rng, variables, max_terms)


def seeded(seed) -> random.Random:
    return random.Random(seed)
