import json
import random
from fractions import Fraction

import pytest

from starpi import catalog
from starpi.algebra import (
    AlgebraElement,
    FinDimAlgebra,
    a_involute,
    a_mul,
    algebra_from_dict,
    algebra_to_dict,
    direct_product,
    dump_algebra,
    homogeneous_basis,
    load_algebra,
    parse_rational,
    validate,
)
from starpi.errors import DimensionError, InvalidAlgebraError, SchemaError
from starpi.linalg import in_span

F = Fraction


def mat(e: AlgebraElement):
    """Coordinates of an M2 element (basis e11, e12, e21, e22) as a 2x2 matrix."""
    c = e.coords
    return [[c[0], c[1]], [c[2], c[3]]]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


ALGEBRAS = [catalog.get(n) for n in catalog.CATALOG] + [catalog.grassmann_algebra(4)]
IDS = list(catalog.CATALOG) + ["grassmann4"]


@pytest.mark.parametrize("A", ALGEBRAS, ids=IDS)
def test_catalog_validates(A):
    assert validate(A).ok


def _perturbations(A):
    sc = A.dense_structure_constants()
    M = A.dense_involution()
    d = A.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                s2 = [[list(c) for c in r] for r in sc]
                s2[i][j][k] += 1
                yield ("sc", i, j, k), FinDimAlgebra.from_dense(s2, A.grading, M, A.basis_names)
    for r in range(d):
        for c in range(d):
            m2 = [list(x) for x in M]
            m2[r][c] += 1
            yield ("inv", r, c), FinDimAlgebra.from_dense(sc, A.grading, m2, A.basis_names)


@pytest.mark.parametrize("A", ALGEBRAS[:6], ids=IDS[:6])
def test_single_entry_perturbations_rejected(A):
    for where, B in _perturbations(A):
        assert not validate(B).ok, where


def test_non_associative_sample():
    A = catalog.m2_transpose()
    sc = A.dense_structure_constants()
    sc[0][0][0] = F(2)  # e11*e11 = 2 e11
    rep = validate(FinDimAlgebra.from_dense(sc, A.grading, A.dense_involution()))
    assert not rep.ok
    assert rep.message.startswith("associativity fails at (")
    assert rep.check == "associativity"


def test_involution_order_violation():
    A = catalog.m2_transpose()
    M = A.dense_involution()
    M = [[x * 2 for x in r] for r in M]
    rep = validate(FinDimAlgebra.from_dense(A.dense_structure_constants(), A.grading, M))
    assert not rep.ok and "involution order" in rep.message


def test_matrix_products_against_explicit_matrices():
    A = catalog.m2_transpose()
    rng = random.Random(3)
    for _ in range(30):
        u = A.element([F(rng.randint(-3, 3)) for _ in range(4)])
        v = A.element([F(rng.randint(-3, 3)) for _ in range(4)])
        assert mat(a_mul(u, v)) == matmul(mat(u), mat(v))
    e11, e12 = A.basis_element(0), A.basis_element(1)
    assert a_mul(e11, e12) == e12
    assert a_mul(e12, e11).is_zero()
    assert a_mul(A.zero(), e12).is_zero()


def test_transpose_involution():
    A = catalog.m2_transpose()
    assert a_involute(A.basis_element(1)) == A.basis_element(2)
    assert a_involute(A.basis_element(0)) == A.basis_element(0)
    u = A.element([1, 2, 3, 4])
    assert a_involute(a_involute(u)) == u
    assert mat(a_involute(u)) == [[1, 3], [2, 4]]


def test_symplectic_involution_formula():
    S = catalog.m2_symplectic()
    u = S.element([1, 2, 3, 4])  # [[a,b],[c,d]] -> [[d,-b],[-c,a]]
    assert mat(a_involute(u)) == [[4, -2], [-3, 1]]


def test_transpose_eigenbases():
    A = catalog.m2_transpose()
    plus = homogeneous_basis(A, 0, +1)
    minus = homogeneous_basis(A, 0, -1)
    assert [mat(b) for b in plus] == [[[1, 0], [0, 0]], [[0, 1], [1, 0]], [[0, 0], [0, 1]]]
    assert [mat(b) for b in minus] == [[[0, 1], [-1, 0]]]
    assert homogeneous_basis(A, 1, +1) == []


def test_symplectic_parts():
    S = catalog.m2_symplectic()
    assert len(homogeneous_basis(S, 0, +1)) == 1  # the scalars
    assert len(homogeneous_basis(S, 0, -1)) == 3  # trace-zero matrices


@pytest.mark.parametrize("A", ALGEBRAS, ids=IDS)
def test_homogeneous_bases_exact(A):
    for theta in range(4):
        comp = A.grade_indices[theta]
        plus = homogeneous_basis(A, theta, +1)
        minus = homogeneous_basis(A, theta, -1)
        assert len(plus) + len(minus) == len(comp)
        for sign, basis in ((1, plus), (-1, minus)):
            for b in basis:
                assert a_involute(b) == b.scale(sign)
                assert all(A.grading[k] == theta for k in b.sparse)
        rows = [b.coords for b in plus + minus]
        for i in comp:
            assert in_span(rows, A.basis_element(i).coords)


def test_direct_product_of_fields():
    F2 = direct_product(catalog.scalars(), catalog.scalars())
    assert F2.dim == 2 and validate(F2).ok
    for i in range(2):
        for j in range(2):
            u, v = F2.basis_element(i), F2.basis_element(j)
            assert a_mul(u, v) == a_mul(v, u)


def test_direct_product_dims_and_blocks():
    A, B = catalog.grassmann_algebra(2), catalog.m2_symplectic("z4")
    P = direct_product(A, B)
    assert P.dim == A.dim + B.dim
    assert validate(P).ok
    assert P.grading == A.grading + B.grading
    # cross products vanish
    assert a_mul(P.basis_element(0), P.basis_element(A.dim)).is_zero()


def test_algebra_mismatch():
    A, B = catalog.m2_transpose(), catalog.grassmann_algebra(2)
    with pytest.raises(DimensionError):
        a_mul(A.basis_element(0), B.basis_element(0))


@pytest.mark.parametrize("name", list(catalog.CATALOG))
def test_json_round_trip(name, tmp_path):
    A = catalog.get(name)
    path = tmp_path / "a.json"
    dump_algebra(A, path)
    B = load_algebra(path)
    assert B.dense_structure_constants() == A.dense_structure_constants()
    assert B.dense_involution() == A.dense_involution()
    assert B.grading == A.grading and B.basis_names == A.basis_names


def test_json_errors(tmp_path):
    data = algebra_to_dict(catalog.m2_transpose())
    broken = dict(data)
    del broken["involution"]
    with pytest.raises(SchemaError, match="schema"):
        algebra_from_dict(broken)
    bad = json.loads(json.dumps(data))
    bad["involution"] = [["2" if x == "1" else x for x in r] for r in bad["involution"]]
    with pytest.raises(InvalidAlgebraError) as info:
        algebra_from_dict(bad)
    assert "involution order" in str(info.value)
    bad = json.loads(json.dumps(data))
    bad["sc"][0][0][0] = "1.5"
    with pytest.raises(SchemaError):
        algebra_from_dict(bad)


def test_rationals():
    assert parse_rational("-3/4") == F(-3, 4)
    assert parse_rational("7") == 7
    with pytest.raises(SchemaError):
        parse_rational("1/0")
    with pytest.raises(SchemaError):
        parse_rational("0.5")
