"""Batch evaluation of a multilinear polynomial over candidate tuples.

The compiled extension ``starpi._kernel`` is used when it imported and the
integer data provably fits in 64 bits; otherwise the pure-Python twin in
``starpi._kernel_py`` runs. Both visit tuples in the same order and return
the same first failing tuple.
"""

from __future__ import annotations

import os
from array import array
from fractions import Fraction
from math import lcm

from . import _kernel_py

try:  # pragma: no cover - depends on the build
    from . import _kernel as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

if os.environ.get("STARPI_PURE_PYTHON"):
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_LIMIT = 1 << 62


class NotTensorForm(ValueError):
    """A candidate mixes several Grassmann supports."""


def _den_lcm(values):
    out = 1
    for x in values:
        out = lcm(out, Fraction(x).denominator)
    return out


def _table(base):
    cached = getattr(base, "_kernel_table", None)
    if cached is not None:
        return cached
    dim = base.dim
    offsets, ks, cs, dens = [0], [], [], []
    for i in range(dim):
        for j in range(dim):
            for k, c in sorted(base.basis_product(i, j).items()):
                ks.append(k)
                cs.append(Fraction(c))
            offsets.append(len(ks))
    scale = _den_lcm(cs)
    ints = [int(c * scale) for c in cs]
    row_l1 = 0
    for n in range(dim * dim):
        row_l1 = max(row_l1, sum(abs(ints[e]) for e in range(offsets[n], offsets[n + 1])))
    cached = (dim, offsets, ks, ints, row_l1)
    try:
        base._kernel_table = cached
    except AttributeError:  # pragma: no cover
        pass
    return cached


def prepare(algebra, monomials, coefs, candidates):
    """Translate to the integer layout documented in ``_kernel_py``.

    monomials: list of slot-index tuples; coefs: rationals; candidates:
    per-slot lists of AlgebraElement of ``algebra``.
    """
    base, pairs = algebra.tensor_form()
    dim, offsets, ks, cs, row_l1 = _table(base)
    cscale = _den_lcm(coefs)
    icoefs = [int(Fraction(c) * cscale) for c in coefs]
    counts, masks, coff, cidx, cval = [], [], [0], [], []
    max_l1 = []
    for slot in candidates:
        counts.append(len(slot))
        best = 0
        for e in slot:
            sp = e.sparse
            ms = {pairs[k][1] for k in sp}
            if len(ms) > 1:
                raise NotTensorForm("candidate is not of the form b ⊗ e_S")
            masks.append(ms.pop() if ms else 0)
            s = _den_lcm(sp.values())
            items = sorted((pairs[k][0], int(x * s)) for k, x in sp.items())
            for i, x in items:
                cidx.append(i)
                cval.append(x)
            coff.append(len(cidx))
            best = max(best, sum(abs(x) for _, x in items))
        max_l1.append(best)
    d = len(candidates)
    flat = [s for w in monomials for s in w]
    bound = sum(abs(c) for c in icoefs) * max(row_l1, 1) ** max(d - 1, 0)
    for b in max_l1:
        bound *= max(b, 1)
    return (dim, offsets, ks, cs, flat, icoefs, d, counts, masks, coff, cidx, cval), bound


def find_nonvanishing(algebra, monomials, coefs, candidates, backend=None):
    """First tuple (per-slot candidate indices) where the polynomial is nonzero.

    Returns ``(indices or None, tuples_evaluated, backend_used)``.
    """
    args, bound = prepare(algebra, monomials, coefs, candidates)
    masks = args[8]
    use = backend or BACKEND
    if use == "compiled" and (_compiled is None or bound >= _LIMIT or any(m >> 63 for m in masks)):
        use = "python"
    if use == "compiled":
        dim, offsets, ks, cs, flat, icoefs, d, counts, masks, coff, cidx, cval = args
        q = lambda xs: array("q", xs)  # noqa: E731
        found, n = _compiled.find_nonvanishing(
            dim, q(offsets), q(ks), q(cs), q(flat), q(icoefs), d, q(counts),
            array("Q", masks), q(coff), q(cidx), q(cval),
        )
    else:
        found, n = _kernel_py.find_nonvanishing(*args)
    return found, n, use
