"""Small graded *-algebras used as reference instances."""

from __future__ import annotations

from fractions import Fraction

from . import grassmann as gr
from .algebra import FinDimAlgebra, direct_product

_M2_NAMES = ("e11", "e12", "e21", "e22")
_M2_UNITS = ((1, 1), (1, 2), (2, 1), (2, 2))


def _m2_products():
    prods = {}
    for a, (i, j) in enumerate(_M2_UNITS):
        for b, (k, l) in enumerate(_M2_UNITS):
            if j == k:
                prods[(a, b)] = {_M2_UNITS.index((i, l)): Fraction(1)}
    return prods


_M2_GRADINGS = {
    "trivial": (0, 0, 0, 0),
    # deg e_ij = g_i - g_j with g=(2,0) / g=(1,0)
    "z2": (0, 2, 2, 0),
    "z4": (0, 1, 3, 0),
}


def m2_transpose(grading="trivial") -> FinDimAlgebra:
    """M_2(Q) with the transpose involution."""
    if grading == "z4":
        raise ValueError("the transpose is not graded for the Z/4 grading (1,3)")
    cols = [{0: 1}, {2: 1}, {1: 1}, {3: 1}]
    name = "m2_transpose" if grading == "trivial" else f"m2_transpose_{grading}"
    return FinDimAlgebra(_M2_NAMES, _m2_products(), _M2_GRADINGS[grading], cols, name=name)


def m2_symplectic(grading="trivial") -> FinDimAlgebra:
    """M_2(Q) with a* = s a^t s^-1, s = e12 - e21: [[a,b],[c,d]] -> [[d,-b],[-c,a]]."""
    cols = [{3: 1}, {1: -1}, {2: -1}, {0: 1}]
    name = "m2_symplectic" if grading == "trivial" else f"m2_symplectic_{grading}"
    return FinDimAlgebra(_M2_NAMES, _m2_products(), _M2_GRADINGS[grading], cols, name=name)


def grassmann_algebra(n: int) -> FinDimAlgebra:
    """Truncated Grassmann algebra on n generators, natural grading, canonical involution.

    Basis: all subsets in colex order (bitmask order), the unit first.
    """
    masks = list(range(1 << n))
    prods = {}
    for a in masks:
        for b in masks:
            s = gr.mask_sign(a, b)
            if s:
                prods[(a, b)] = {a | b: Fraction(s)}
    subsets = [gr.subset_of(m) for m in masks]
    cols = [{m: Fraction(gr.reversal_sign(len(S)))} for m, S in zip(masks, subsets)]
    grading = [len(S) % 4 for S in subsets]
    return FinDimAlgebra([gr.subset_name(S) for S in subsets], prods, grading, cols, name=f"grassmann{n}")


def one_dim(grade=0, sign=1) -> FinDimAlgebra:
    """A one-dimensional algebra in the given grade with zero product (unless grade 0)."""
    prods = {(0, 0): {0: 1}} if grade % 4 == 0 else {}
    return FinDimAlgebra(["u"], prods, [grade], [{0: sign}], name=f"line{grade}{'+' if sign > 0 else '-'}")


def scalars() -> FinDimAlgebra:
    return FinDimAlgebra(["1"], {(0, 0): {0: 1}}, [0], [{0: 1}], name="field")


CATALOG = {
    "m2_transpose": lambda: m2_transpose("trivial"),
    "m2_transpose_z2": lambda: m2_transpose("z2"),
    "m2_symplectic": lambda: m2_symplectic("trivial"),
    "m2_symplectic_z4": lambda: m2_symplectic("z4"),
    "grassmann2": lambda: grassmann_algebra(2),
    "grassmann3": lambda: grassmann_algebra(3),
    "grassmann2_x_m2_symplectic_z4": lambda: direct_product(
        grassmann_algebra(2), m2_symplectic("z4"), name="grassmann2_x_m2_symplectic_z4"
    ),
}


def get(name: str) -> FinDimAlgebra:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG)}") from None
