"""Finite-dimensional Z/4-graded algebras with involution.

An algebra is given on a basis ``b_0..b_{d-1}``: every basis element has a
grade, ``b_i b_j`` is a sparse combination of basis elements, and the
involution is a rational matrix stored column by column (column j is the
image of ``b_j``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .errors import DimensionError, InvalidAlgebraError, SchemaError
from .linalg import rref

SparseVec = dict  # index -> Fraction, zeros never stored


def _clean(v: Mapping) -> SparseVec:
    return {int(k): Fraction(x) for k, x in v.items() if x}


def _axpy(acc: dict, c, v: Mapping):
    for k, x in v.items():
        nv = acc.get(k, 0) + c * x
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class FinDimAlgebra:
    """Structure-constant algebra with grading and involution.

    ``products`` maps ``(i, j)`` to the sparse vector of ``b_i b_j``;
    missing pairs multiply to zero. ``involution`` is a list of sparse
    columns. Construction does not validate; call :func:`validate`.
    """

    def __init__(self, basis_names, products, grading, involution, name=None):
        self.basis_names = tuple(str(b) for b in basis_names)
        self.dim = len(self.basis_names)
        if self.dim < 1:
            raise DimensionError("an algebra needs at least one basis element")
        self.grading = tuple(int(g) % 4 for g in grading)
        if len(self.grading) != self.dim:
            raise DimensionError("grading length differs from dim")
        self._products = {}
        for (i, j), v in products.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionError(f"product index ({i}, {j}) out of range")
            v = _clean(v)
            if any(not 0 <= k < self.dim for k in v):
                raise DimensionError(f"product b{i}*b{j} has an index out of range")
            if v:
                self._products[(i, j)] = v
        cols = [_clean(c) for c in involution]
        if len(cols) != self.dim or any(not 0 <= k < self.dim for c in cols for k in c):
            raise DimensionError("involution matrix has the wrong shape")
        self._involution = cols
        self.name = name

    # structure access
    def basis_product(self, i: int, j: int) -> SparseVec:
        return self._products.get((i, j), {})

    def involution_column(self, j: int) -> SparseVec:
        return self._involution[j]

    def _all_products(self):
        for i in range(self.dim):
            for j in range(self.dim):
                v = self.basis_product(i, j)
                if v:
                    yield (i, j), v

    @classmethod
    def from_dense(cls, sc, grading, involution, basis_names=None, name=None):
        dim = len(sc)
        if basis_names is None:
            basis_names = [f"b{i}" for i in range(dim)]
        products = {}
        for i in range(dim):
            if len(sc[i]) != dim:
                raise DimensionError("structure constants must be dim x dim x dim")
            for j in range(dim):
                if len(sc[i][j]) != dim:
                    raise DimensionError("structure constants must be dim x dim x dim")
                v = {k: Fraction(x) for k, x in enumerate(sc[i][j]) if Fraction(x)}
                if v:
                    products[(i, j)] = v
        if len(involution) != dim or any(len(r) != dim for r in involution):
            raise DimensionError("involution must be a dim x dim matrix")
        cols = [{r: Fraction(involution[r][c]) for r in range(dim) if Fraction(involution[r][c])} for c in range(dim)]
        return cls(basis_names, products, grading, cols, name=name)

    def dense_structure_constants(self):
        z = Fraction(0)
        sc = [[[z] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k, x in self.basis_product(i, j).items():
                    sc[i][j][k] = x
        return sc

    def dense_involution(self):
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for c in range(self.dim):
            for r, x in self.involution_column(c).items():
                m[r][c] = x
        return m

    # elements
    def element(self, coords) -> "AlgebraElement":
        if isinstance(coords, Mapping):
            return AlgebraElement(self, coords)
        if len(coords) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, {i: x for i, x in enumerate(coords)})

    def basis_element(self, i) -> "AlgebraElement":
        return AlgebraElement(self, {i: 1})

    def zero(self):
        return AlgebraElement(self, {})

    def tensor_form(self):
        """Describe the algebra as (base algebra, [(base index, grassmann mask)]).

        Plain algebras are their own base with empty Grassmann part; the
        realized Grassmann envelope overrides this. Used by the evaluation
        kernel.
        """
        return self, [(i, 0) for i in range(self.dim)]

    @cached_property
    def grade_indices(self):
        out = {0: [], 1: [], 2: [], 3: []}
        for i, g in enumerate(self.grading):
            out[g].append(i)
        return out

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinDimAlgebra{label} dim={self.dim}>"


class AlgebraElement:
    __slots__ = ("algebra", "_v")

    def __init__(self, algebra: FinDimAlgebra, coords: Mapping):
        self.algebra = algebra
        v = _clean(coords)
        if any(not 0 <= k < algebra.dim for k in v):
            raise DimensionError("coordinate index out of range")
        self._v = v

    @classmethod
    def _raw(cls, algebra, v):
        e = cls.__new__(cls)
        e.algebra = algebra
        e._v = v
        return e

    @property
    def coords(self) -> tuple:
        out = [Fraction(0)] * self.algebra.dim
        for k, x in self._v.items():
            out[k] = x
        return tuple(out)

    @property
    def sparse(self) -> SparseVec:
        return dict(self._v)

    def is_zero(self):
        return not self._v

    def __bool__(self):
        return bool(self._v)

    def _same(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise DimensionError("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        acc = dict(self._v)
        _axpy(acc, 1, other._v)
        return AlgebraElement._raw(self.algebra, acc)

    def __sub__(self, other):
        self._same(other)
        acc = dict(self._v)
        _axpy(acc, -1, other._v)
        return AlgebraElement._raw(self.algebra, acc)

    def __neg__(self):
        return AlgebraElement._raw(self.algebra, {k: -x for k, x in self._v.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return AlgebraElement._raw(self.algebra, {k: c * x for k, x in self._v.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return a_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra is other.algebra and self._v == other._v
        if other == 0:
            return not self._v
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._v.items()))

    def __str__(self):
        return element_to_text(self)

    def __repr__(self):
        return f"AlgebraElement({element_to_text(self)})"


def element_to_text(e: AlgebraElement) -> str:
    if not e._v:
        return "0"
    names = e.algebra.basis_names
    parts = []
    for n, k in enumerate(sorted(e._v)):
        c = e._v[k]
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag}*"
        text = coef + names[k]
        if n == 0:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append((" - " if c < 0 else " + ") + text)
    return "".join(parts)


def sparse_mul(A: FinDimAlgebra, u: Mapping, v: Mapping) -> SparseVec:
    acc: dict = {}
    for i, x in u.items():
        for j, w in v.items():
            p = A.basis_product(i, j)
            if p:
                _axpy(acc, x * w, p)
    return acc


def sparse_involute(A: FinDimAlgebra, u: Mapping) -> SparseVec:
    acc: dict = {}
    for j, x in u.items():
        _axpy(acc, x, A.involution_column(j))
    return acc


def a_mul(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    u._same(v)
    return AlgebraElement._raw(u.algebra, sparse_mul(u.algebra, u._v, v._v))


def a_involute(u: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._raw(u.algebra, sparse_involute(u.algebra, u._v))


def element_grade(e: AlgebraElement):
    """Common grade of the support, or None if e is zero or inhomogeneous."""
    grades = {e.algebra.grading[k] for k in e._v}
    return grades.pop() if len(grades) == 1 else None


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = "ok"
    check: str | None = None
    where: tuple | None = None

    def __bool__(self):
        return self.ok


def validate(A: FinDimAlgebra) -> ValidationReport:
    """Check associativity, grading, involution order, anti-automorphism and gradedness.

    Reports the first failing triple or index in a fixed scan order and
    never raises.
    """
    d = A.dim
    rng = range(d)
    for i in rng:
        for j in rng:
            bij = A.basis_product(i, j)
            target = (A.grading[i] + A.grading[j]) % 4
            for k, _ in bij.items():
                if A.grading[k] != target:
                    return ValidationReport(
                        False,
                        f"grading incompatible at ({i},{j}): b{i}*b{j} has a component of grade {A.grading[k]}, expected {target}",
                        "grading",
                        (i, j),
                    )
    for i in rng:
        for j in rng:
            bij = A.basis_product(i, j)
            for k in rng:
                left = sparse_mul(A, bij, {k: 1})
                right = sparse_mul(A, {i: 1}, A.basis_product(j, k))
                if left != right:
                    return ValidationReport(False, f"associativity fails at ({i},{j},{k})", "associativity", (i, j, k))
    for j in rng:
        if sparse_involute(A, A.involution_column(j)) != {j: Fraction(1)}:
            return ValidationReport(False, f"involution order: M^2 differs from the identity at column {j}", "involution order", (j,))
    for j in rng:
        for k in A.involution_column(j):
            if A.grading[k] != A.grading[j]:
                return ValidationReport(False, f"involution not graded: image of b{j} leaves grade {A.grading[j]}", "graded involution", (j,))
    for i in rng:
        mi = A.involution_column(i)
        for j in rng:
            lhs = sparse_involute(A, A.basis_product(i, j))
            rhs = sparse_mul(A, A.involution_column(j), mi)
            if lhs != rhs:
                return ValidationReport(
                    False, f"anti-automorphism fails at ({i},{j}): (b{i}b{j})* != b{j}* b{i}*", "anti-automorphism", (i, j)
                )
    return ValidationReport(True)


def require_valid(A: FinDimAlgebra):
    # algebras are immutable, so a passed check is remembered on the instance
    if getattr(A, "_validated", False):
        return A
    report = validate(A)
    if not report.ok:
        raise InvalidAlgebraError(report)
    A._validated = True
    return A


def homogeneous_basis(A: FinDimAlgebra, theta: int | None, delta: int | str) -> list[AlgebraElement]:
    """Basis of the (+1 or -1)-eigenspace of the involution inside grade theta.

    ``theta=None`` uses the whole algebra. The projector ``(I ± M)/2`` is
    applied to each basis element of the grade component and the images
    are row-reduced, so every returned vector has a leading coordinate 1.
    """
    sign = _delta_sign(delta)
    cache = A.__dict__.setdefault("_basis_cache", {})
    key = (None if theta is None else theta % 4, sign)
    if key not in cache:
        cache[key] = _eigenbasis(A, theta, sign)
    return list(cache[key])


def _eigenbasis(A, theta, sign):
    idx = list(range(A.dim)) if theta is None else A.grade_indices[theta % 4]
    if not idx:
        return []
    pos = {k: n for n, k in enumerate(idx)}
    half = Fraction(1, 2)
    rows = []
    for j in idx:
        img = {j: half}
        _axpy(img, sign * half, A.involution_column(j))
        row = [Fraction(0)] * len(idx)
        for k, x in img.items():
            if k not in pos:
                raise InvalidAlgebraError(ValidationReport(False, "involution not graded", "graded involution", (j,)))
            row[pos[k]] = x
        rows.append(row)
    reduced, _ = rref(rows, len(idx))
    return [AlgebraElement(A, {idx[n]: x for n, x in enumerate(r) if x}) for r in reduced]


def _delta_sign(delta) -> int:
    if delta in (1, "+", "sym", True):
        return 1
    if delta in (-1, "-", "skew", False):
        return -1
    raise ValueError(f"delta must be + or -, got {delta!r}")


def direct_product(A: FinDimAlgebra, B: FinDimAlgebra, name=None) -> FinDimAlgebra:
    require_valid(A)
    require_valid(B)
    off = A.dim
    products = dict(A._all_products())
    for (i, j), v in B._all_products():
        products[(i + off, j + off)] = {k + off: x for k, x in v.items()}
    cols = [A.involution_column(j) for j in range(A.dim)]
    cols += [{k + off: x for k, x in B.involution_column(j).items()} for j in range(B.dim)]
    names = [f"({n},0)" for n in A.basis_names] + [f"(0,{n})" for n in B.basis_names]
    return FinDimAlgebra(names, products, A.grading + B.grading, cols, name=name or f"{A.name}x{B.name}")


# JSON file contract
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["dim", "basis", "sc", "grading", "involution"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}},
        "sc": {"type": "array", "items": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}},
        "grading": {"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 3}},
        "involution": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
        "name": {"type": "string"},
    },
}


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s.strip()):
        raise SchemaError(f"not a rational literal: {s!r}")
    num, _, den = s.strip().partition("/")
    if den and int(den) == 0:
        raise SchemaError(f"zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def algebra_from_dict(data: dict, check: bool = True) -> FinDimAlgebra:
    import jsonschema

    try:
        jsonschema.validate(data, ALGEBRA_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"schema error at '{path}': {exc.message}") from None
    d = data["dim"]
    if len(data["basis"]) != d or len(data["grading"]) != d:
        raise SchemaError("basis and grading must have length dim")
    sc = data["sc"]
    if len(sc) != d or any(len(r) != d or any(len(c) != d for c in r) for r in sc):
        raise SchemaError("sc must be a dim x dim x dim array")
    inv = data["involution"]
    if len(inv) != d or any(len(r) != d for r in inv):
        raise SchemaError("involution must be a dim x dim array")
    sc_q = [[[parse_rational(x) for x in c] for c in r] for r in sc]
    inv_q = [[parse_rational(x) for x in r] for r in inv]
    A = FinDimAlgebra.from_dense(sc_q, data["grading"], inv_q, data["basis"], name=data.get("name"))
    if check:
        require_valid(A)
    return A


def algebra_to_dict(A: FinDimAlgebra) -> dict:
    sc = A.dense_structure_constants()
    out = {
        "dim": A.dim,
        "basis": list(A.basis_names),
        "sc": [[[format_rational(x) for x in c] for c in r] for r in sc],
        "grading": list(A.grading),
        "involution": [[format_rational(x) for x in r] for r in A.dense_involution()],
    }
    if A.name:
        out["name"] = A.name
    return out


def load_algebra(path, check: bool = True) -> FinDimAlgebra:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return algebra_from_dict(data, check=check)


def dump_algebra(A: FinDimAlgebra, path=None, indent=None) -> str:
    text = json.dumps(algebra_to_dict(A), indent=indent, ensure_ascii=False)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text
