import itertools
from math import comb

import pytest

from starpi import catalog
from starpi.algebra import a_involute, a_mul, homogeneous_basis, validate
from starpi.envelope import (
    build_envelope,
    envelope_sym_skew_basis,
    expected_dim,
    minimal_supports,
    minimal_witnesses,
    support_of,
)
from starpi.errors import InsufficientGeneratorsError
from starpi.grassmann import reversal_sign
from starpi.transforms import eta

NAMES = list(catalog.CATALOG)


def _subset_count(n, theta):
    return sum(1 for k in range(n + 1) for _ in range(comb(n, k)) if k % 4 == theta)


def test_trivially_graded_m2_dimension():
    env = build_envelope(catalog.m2_transpose(), 4)
    assert env.dim == 8


def test_one_dim_grade_one():
    env = build_envelope(catalog.one_dim(1, 1), 1)
    assert env.dim == 1


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("n", range(0, 5))
def test_dimension_formula(name, n):
    A = catalog.get(name)
    env = build_envelope(A, n)
    want = sum(_subset_count(n, g) for g in A.grading)
    assert env.dim == want == expected_dim(A, n)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("n", range(1, 4))
def test_realized_envelope_validates(name, n):
    R = build_envelope(catalog.get(name), n).realized
    if R.dim > 40:
        pytest.skip("validation is cubic in the dimension")
    assert validate(R).ok


@pytest.mark.parametrize("name", ["m2_symplectic_z4", "grassmann3"])
def test_realized_envelope_validates_n4(name):
    assert validate(build_envelope(catalog.get(name), 4).realized).ok


def test_basis_order_and_names():
    R = build_envelope(catalog.m2_transpose("z2"), 2).realized
    assert R.pairs == [(0, 0), (1, 3), (2, 3), (3, 0)]
    assert R.basis_names[1] == "e12⊗e{1,2}"


def test_involution_sign_on_basis():
    A = catalog.m2_symplectic("z4")
    env = build_envelope(A, 4)
    R = env.realized
    for p, (i, mask) in enumerate(R.pairs):
        img = a_involute(R.basis_element(p))
        base_img = A.involution_column(i)
        s = reversal_sign(bin(mask).count("1"))
        assert s == (-1) ** eta(bin(mask).count("1") % 4)
        assert img.sparse == {R.index_of[(k, mask)]: s * c for k, c in base_img.items()}


def test_graded_sym_part_crosses_over():
    # b symmetric of grade 2 becomes skew after tensoring with e{1,2}
    A = catalog.m2_transpose("z2")
    env = build_envelope(A, 2)
    b = homogeneous_basis(A, 2, +1)[0]
    e = env.realized.embed(b, (1, 2))
    assert a_involute(e) == -e
    assert e in envelope_sym_skew_basis(env, 2, -1)


def test_trivial_m2_sizes():
    env = build_envelope(catalog.m2_transpose(), 4)
    assert len(envelope_sym_skew_basis(env, 0, +1)) == 3 * 2


def test_grade_one_part_with_one_generator():
    A = catalog.m2_symplectic("z4")
    env = build_envelope(A, 1)
    for d in (+1, -1):
        got = envelope_sym_skew_basis(env, 1, d)
        want = [env.realized.embed(b, (1,)) for b in homogeneous_basis(A, 1, d)]
        assert got == want


@pytest.mark.parametrize("name", NAMES)
def test_sym_skew_table(name):
    A = catalog.get(name)
    env = build_envelope(A, 3)
    R = env.realized
    total = 0
    for theta in range(4):
        for d in (+1, -1):
            basis = envelope_sym_skew_basis(env, theta, d)
            total += len(basis)
            for e in basis:
                assert a_involute(e) == e.scale(d)
                assert all(R.grading[k] == theta for k in e.sparse)
    assert total == R.dim


def test_minimal_supports():
    assert minimal_supports([(1, 1), (1, 1)], 2) == [(1,), (2,)]
    assert minimal_supports([(0, 1)], 0) == [()]
    assert minimal_supports([(3, -1), (2, 1)], 5) == [(1, 2, 3), (4, 5)]
    with pytest.raises(InsufficientGeneratorsError):
        minimal_supports([(3, 1), (3, 1)], 5)


def test_minimal_witnesses_are_products_of_bases():
    A = catalog.m2_symplectic("z4")
    env = build_envelope(A, 6)
    slots = [(1, 1), (3, -1), (0, 1)]
    ws = minimal_witnesses(env, slots)
    sizes = [len(homogeneous_basis(A, t, d * (-1) ** eta(t))) for t, d in slots]
    assert len(ws) == sizes[0] * sizes[1] * sizes[2]
    for tup in ws:
        assert [support_of(e) for e in tup] == [{(1,)}, {(2, 3, 4)}, {()}]


@pytest.mark.parametrize("n_base", [1, 2, 3])
def test_envelope_of_grassmann_is_commutative(n_base):
    R = build_envelope(catalog.grassmann_algebra(n_base), 3).realized
    nonzero = False
    for p, q in itertools.product(range(R.dim), repeat=2):
        u, v = R.basis_element(p), R.basis_element(q)
        uv = a_mul(u, v)
        assert uv == a_mul(v, u)
        # index 0 is 1 ⊗ 1; in E4(E_1) every other product vanishes since e1 e1 = 0
        nonzero |= not uv.is_zero() and (n_base == 1 or (p != 0 and q != 0))
    assert nonzero
