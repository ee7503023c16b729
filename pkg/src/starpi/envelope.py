"""Grassmann Z/4-envelope of a graded *-algebra.

``E4(A)`` is spanned by ``b_i ⊗ e_S`` with ``grade(b_i) = |S| mod 4``. It is
realized as a :class:`FinDimAlgebra` whose basis is the list of such pairs
ordered by algebra index, then subset in colex order. Products and
involution images are computed on demand, so large truncations stay cheap
until they are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import grassmann as gr
from .algebra import AlgebraElement, FinDimAlgebra, homogeneous_basis, require_valid
from .errors import InsufficientGeneratorsError
from .transforms import eta

MINIMAL_SIZE = (0, 1, 2, 3)


class RealizedEnvelope(FinDimAlgebra):
    def __init__(self, base: FinDimAlgebra, n_generators: int):
        self.base = base
        self.n_generators = n_generators
        by_grade = {t: [m for m in range(1 << n_generators) if bin(m).count("1") % 4 == t] for t in range(4)}
        pairs = [(i, m) for i in range(base.dim) for m in by_grade[base.grading[i]]]
        self.pairs = pairs
        self.index_of = {p: k for k, p in enumerate(pairs)}
        self.basis_names = tuple(f"{base.basis_names[i]}⊗{gr.subset_name(gr.subset_of(m))}" for i, m in pairs)
        self.dim = len(pairs)
        self.grading = tuple(base.grading[i] for i, _ in pairs)
        self.name = f"E4({base.name or 'A'},{n_generators})"
        self._product_cache = lru_cache(maxsize=1 << 16)(self._product)

    def _product(self, p: int, q: int):
        i, s = self.pairs[p]
        j, t = self.pairs[q]
        sign = gr.mask_sign(s, t)
        if not sign:
            return {}
        u = s | t
        return {self.index_of[(k, u)]: sign * c for k, c in self.base.basis_product(i, j).items()}

    def basis_product(self, i, j):
        return self._product_cache(i, j)

    def involution_column(self, j):
        i, m = self.pairs[j]
        sign = gr.reversal_sign(bin(m).count("1"))
        return {self.index_of[(k, m)]: sign * c for k, c in self.base.involution_column(i).items()}

    def _all_products(self):
        for p in range(self.dim):
            for q in range(self.dim):
                v = self.basis_product(p, q)
                if v:
                    yield (p, q), v

    def tensor_form(self):
        return self.base, list(self.pairs)

    def embed(self, b: AlgebraElement, S) -> AlgebraElement:
        """The element ``b ⊗ e_S`` of the realized envelope."""
        m = gr.mask_of(S)
        if any(b.algebra.grading[k] != bin(m).count("1") % 4 for k in b.sparse):
            raise ValueError("b ⊗ e_S needs grade(b) = |S| mod 4")
        return AlgebraElement(self, {self.index_of[(k, m)]: x for k, x in b.sparse.items()})


@dataclass
class EnvelopeAlgebra:
    base: FinDimAlgebra
    n_generators: int
    realized: RealizedEnvelope

    @property
    def dim(self):
        return self.realized.dim


def build_envelope(A: FinDimAlgebra, n_generators: int, check: bool = True) -> EnvelopeAlgebra:
    if not isinstance(n_generators, int) or n_generators < 0:
        raise ValueError("n_generators must be a nonnegative integer")
    if check:
        require_valid(A)
    return EnvelopeAlgebra(A, n_generators, RealizedEnvelope(A, n_generators))


def expected_dim(A: FinDimAlgebra, n: int) -> int:
    from math import comb

    counts = [sum(comb(n, s) for s in range(n + 1) if s % 4 == t) for t in range(4)]
    return sum(counts[g] for g in A.grading)


def _crossed(theta, delta):
    sign = 1 if delta in (1, "+") else -1
    return sign * (-1) ** eta(theta)


def envelope_sym_skew_basis(env: EnvelopeAlgebra, theta: int, delta) -> list[AlgebraElement]:
    """Basis of the (theta, delta) part of E4(A).

    For theta 0, 1 it is ``A_theta^delta ⊗ E_theta``; for theta 2, 3 the
    symmetric and skew parts of A swap.
    """
    R = env.realized
    masks = [m for m in range(1 << env.n_generators) if bin(m).count("1") % 4 == theta % 4]
    out = []
    for b in homogeneous_basis(env.base, theta, _crossed(theta, delta)):
        bs = b.sparse
        for m in masks:
            out.append(AlgebraElement._raw(R, {R.index_of[(k, m)]: x for k, x in bs.items()}))
    return out


def minimal_supports(slots, n_generators: int):
    """Consecutive disjoint blocks of generators of sizes 0, 1, 2, 3 by grade."""
    need = sum(MINIMAL_SIZE[t % 4] for t, _ in slots)
    if need > n_generators:
        raise InsufficientGeneratorsError(
            f"minimal witnesses need {need} Grassmann generators, truncation has {n_generators}"
        )
    out, start = [], 1
    for t, _ in slots:
        size = MINIMAL_SIZE[t % 4]
        out.append(tuple(range(start, start + size)))
        start += size
    return out


def minimal_witness_candidates(env: EnvelopeAlgebra, slots) -> list[list[AlgebraElement]]:
    """For each (theta, delta) slot: ``b ⊗ e_S`` over a basis b, with S fixed per slot."""
    R = env.realized
    out = []
    for (t, d), S in zip(slots, minimal_supports(slots, env.n_generators)):
        m = gr.mask_of(S)
        cands = []
        for b in homogeneous_basis(env.base, t, _crossed(t, d)):
            cands.append(AlgebraElement._raw(R, {R.index_of[(k, m)]: x for k, x in b.sparse.items()}))
        out.append(cands)
    return out


def minimal_witnesses(env: EnvelopeAlgebra, slots) -> list[tuple[AlgebraElement, ...]]:
    import itertools

    return list(itertools.product(*minimal_witness_candidates(env, slots)))


def support_of(e: AlgebraElement):
    """Grassmann supports used by an element of a realized envelope."""
    R = e.algebra
    return {gr.subset_of(R.pairs[k][1]) for k in e.sparse}
