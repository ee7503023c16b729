import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from starpi.errors import DimensionError
from starpi.grassmann import (
    GrassmannElement,
    colex_subsets,
    g_grade_component,
    g_involute,
    g_mul,
    grade_of_subset,
    grassmann_to_text,
    mask_of,
    mask_sign,
    subset_of,
    subset_sign,
)


def E(n, *pairs):
    return GrassmannElement(n, {tuple(S): c for S, c in pairs})


def _sort_sign(word):
    """Sign of bubble-sorting a word of distinct generators (oracle)."""
    w = list(word)
    sign = 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                w[j], w[j + 1] = w[j + 1], w[j]
                sign = -sign
    return sign


def test_product_examples():
    assert g_mul(E(3, ((1,), 1)), E(3, ((2,), 1))) == E(3, ((1, 2), 1))
    assert g_mul(E(3, ((2,), 1)), E(3, ((1,), 1))) == E(3, ((1, 2), -1))
    assert g_mul(E(3, ((1,), 1)), E(3, ((1, 3), 1))) == E(3)


def test_involution_examples():
    assert g_involute(E(4, ((1,), 1))) == E(4, ((1,), 1))
    assert g_involute(E(4, ((1, 2), 1))) == E(4, ((1, 2), -1))
    assert g_involute(E(4, ((1, 2, 3, 4), 1))) == E(4, ((1, 2, 3, 4), 1))


def test_grade_component_examples():
    a = E(3, ((1,), 1), ((1, 2), 1))
    assert g_grade_component(a, 1) == E(3, ((1,), 1))
    total = E(3)
    for t in range(4):
        total = total + g_grade_component(a, t)
    assert total == a
    assert g_grade_component(GrassmannElement.unit(3), 0) == GrassmannElement.unit(3)


def test_mismatched_truncations():
    with pytest.raises(DimensionError):
        g_mul(GrassmannElement.unit(2), GrassmannElement.unit(3))


def test_invalid_subsets():
    with pytest.raises(ValueError):
        E(2, ((2, 1), 1))
    with pytest.raises(ValueError):
        E(2, ((3,), 1))


def test_signs_match_oracle():
    n = 5
    subsets = list(colex_subsets(n))
    for S in subsets:
        for T in subsets:
            if set(S) & set(T):
                assert subset_sign(S, T) == 0
                assert mask_sign(mask_of(S), mask_of(T)) == 0
            else:
                expect = _sort_sign(S + T)
                assert subset_sign(S, T) == expect
                assert mask_sign(mask_of(S), mask_of(T)) == expect


def test_colex_order():
    assert list(colex_subsets(2)) == [(), (1,), (2,), (1, 2)]
    assert all(subset_of(mask_of(S)) == S for S in colex_subsets(4))


@pytest.mark.parametrize("n", range(0, 9))
def test_symmetric_iff_grade_0_or_1(n):
    for S in colex_subsets(n):
        e = GrassmannElement.basis(n, S)
        sym = g_involute(e) == e
        assert sym == (len(S) % 4 in (0, 1))
        assert g_involute(e) == e.scale(1 if sym else -1)


@pytest.mark.parametrize("n", range(1, 6))
def test_associativity_exhaustive(n):
    basis = [GrassmannElement.basis(n, S) for S in colex_subsets(n)]
    for a, b, c in itertools.product(basis, repeat=3):
        assert g_mul(g_mul(a, b), c) == g_mul(a, g_mul(b, c))


@pytest.mark.parametrize("n", range(1, 7))
def test_grading_multiplicative(n):
    subsets = list(colex_subsets(n))
    for S, T in itertools.product(subsets, repeat=2):
        p = g_mul(GrassmannElement.basis(n, S), GrassmannElement.basis(n, T))
        for U in p.terms:
            assert grade_of_subset(U) == (grade_of_subset(S) + grade_of_subset(T)) % 4


@st.composite
def elements(draw, n=4):
    subsets = list(colex_subsets(n))
    terms = draw(st.dictionaries(st.sampled_from(subsets), st.integers(-3, 3).map(Fraction), max_size=5))
    return GrassmannElement(n, terms)


@given(elements(), elements())
def test_involution_is_anti_automorphism(a, b):
    assert g_involute(g_mul(a, b)) == g_mul(g_involute(b), g_involute(a))
    assert g_involute(g_involute(a)) == a


@given(elements())
def test_even_monomials_are_central(a):
    for S in colex_subsets(4):
        if len(S) % 2 == 0:
            e = GrassmannElement.basis(4, S)
            assert g_mul(e, a) == g_mul(a, e)


def test_text():
    assert grassmann_to_text(E(3, ((1, 3), Fraction(-1, 2)), ((2,), 1))) == "e{2} - 1/2*e{1,3}"
    assert grassmann_to_text(E(2)) == "0"
