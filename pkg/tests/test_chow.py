from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from frobenius_bundles.chow import (ChowClass, chern_E0_by_change_k, chern_E0_by_frobenius_step,
                                    chern_E0_symbolic, chi_line_bundle, chow_mul, dual_chern,
                                    euler_char_hrr, frobenius_pull_chern, inv_unit,
                                    power_series_divide, twist_chern, wedge_sym_chern)
from frobenius_bundles.errors import DimensionMismatchError, NonUnitError


def cls(n, terms):
    return ChowClass.from_terms(n, terms)


def grids(n, lo=-5, hi=5):
    size = (n + 1) * (n + 1)
    return st.lists(st.integers(lo, hi), min_size=size, max_size=size).map(
        lambda v: ChowClass(n, [v[i * (n + 1):(i + 1) * (n + 1)] for i in range(n + 1)]))


def units(n):
    return grids(n).map(lambda c: c - c[0, 0] + 1)


# -- ring --------------------------------------------------------------------------

def test_unit_and_truncation():
    c = cls(2, {(1, 0): 3, (1, 1): -2})
    assert ChowClass.one(2) * c == c
    L = ChowClass.divisor(2, 1, 0)
    assert (L * L) * L == ChowClass(2, [[0] * 3] * 3)


def test_hand_expansion():
    a = ChowClass.divisor(2, 0, 2, 1)
    b = ChowClass.divisor(2, 2, 0, 1)
    assert chow_mul(a, b) == cls(2, {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 4})


def test_mismatched_n():
    with pytest.raises(DimensionMismatchError):
        chow_mul(ChowClass.one(2), ChowClass.one(3))


@given(grids(2), grids(2), grids(2))
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_inverse_examples():
    assert inv_unit(ChowClass.one(3)) == ChowClass.one(3)
    p, n = 3, 3
    assert inv_unit(ChowClass.divisor(n, 0, -p, 1)) == cls(n, {(0, j): p ** j for j in range(n + 1)})
    got = inv_unit(ChowClass.divisor(2, 1, 1, 1))
    for key, v in {(0, 0): 1, (1, 0): -1, (0, 1): -1, (2, 0): 1, (1, 1): 2, (0, 2): 1}.items():
        assert got[key] == v


def test_non_unit():
    with pytest.raises(NonUnitError):
        inv_unit(ChowClass.divisor(2, 1, 0, 2))


@given(units(3))
def test_inverse_property(a):
    assert a * inv_unit(a) == ChowClass.one(3)


# -- E0 ------------------------------------------------------------------------------

def test_n2_display():
    for p in (2, 3, 5):
        c = twist_chern(2, chern_E0_symbolic(2, p, 1).total, (1, 0))
        assert c == cls(2, {(0, 0): 1, (0, 1): p - 1, (1, 0): 1, (0, 2): p * (p - 1),
                            (1, 1): p - 1, (2, 0): p})


@pytest.mark.parametrize("n,q", [(2, 2), (2, 4), (3, 2), (3, 3), (4, 5)])
def test_c1(n, q):
    assert chern_E0_symbolic(n, q, 1).c1() == (-1, q - 1)


def test_n3_q3_k2_against_closed_expansion():
    # (1 + L - 2h) * sum (3h)^j * sum (-3L)^i, expanded by hand
    expected = [[1, 1, 3, 9], [-2, 0, 0, 0], [6, 0, 0, 0], [-18, 0, 0, 0]]
    assert chern_E0_symbolic(3, 3, 2).total.grid() == expected
    num = {(0, 0): 1, (1, 0): 1, (0, 1): -2}
    den = {(0, 0): 1, (1, 0): 3, (0, 1): -3, (1, 1): -9}
    assert power_series_divide(num, den, 3).grid() == expected


def test_parameter_errors():
    with pytest.raises(ValueError):
        chern_E0_symbolic(2, 6, 1)
    with pytest.raises(ValueError):
        chern_E0_symbolic(2, 2, 3)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 4), (3, 3)])
def test_change_k_route(n, q):
    for k in range(2, q + 1):
        assert chern_E0_by_change_k(n, q, k) == chern_E0_symbolic(n, q, k).total


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("a", [0, 1])
def test_frobenius_recursion(n, p, a):
    assert chern_E0_by_frobenius_step(n, p, a) == chern_E0_symbolic(n, p ** (a + 1), 1).total


# -- functors ------------------------------------------------------------------------

def test_twist_examples():
    c = chern_E0_symbolic(2, 2, 1).total
    assert twist_chern(2, c, (0, 0)) == c
    assert twist_chern(1, ChowClass.divisor(2, 1, 2, 1), (3, -1)) == ChowClass.divisor(2, 4, 1, 1)


@pytest.mark.parametrize("a", range(-4, 5))
@pytest.mark.parametrize("b", range(-4, 5))
def test_twisted_n2_coefficients(a, b):
    # c(E0) = 1 + (h + L) + 2h^2 + hL + 2L^2 at p = 2; twisting a rank-2 class
    # by M = ah + bL gives c2 + c1 M + M^2 (hand expansion of (1+x1+M)(1+x2+M))
    e0 = twist_chern(2, chern_E0_symbolic(2, 2, 1).total, (1, 0))
    c = twist_chern(2, e0, (b, a))
    assert c[0, 2] == 2 + a + a * a
    assert c[2, 0] == 2 + b + b * b
    assert c[1, 1] == 1 + a + b + 2 * a * b
    assert (c[0, 1], c[1, 0]) == (2 * a + 1, 2 * b + 1)


@given(units(2), st.integers(-4, 4), st.integers(-4, 4), st.integers(4, 7))
def test_twist_inverse(c, a, b, r):
    # rank >= top degree so every grid is a valid rank-r class
    assert twist_chern(r, twist_chern(r, c, (a, b)), (-a, -b)) == c


@given(units(3))
def test_dual_involution(c):
    assert dual_chern(4, dual_chern(4, c)) == c


def test_dual_examples():
    assert dual_chern(1, ChowClass.one(2)) == ChowClass.one(2)
    assert dual_chern(1, ChowClass.divisor(2, 1, 0, 1)) == ChowClass.divisor(2, -1, 0, 1)


@given(units(2), units(2), st.integers(1, 5))
def test_frobenius_ring_endomorphism(a, b, q):
    assert frobenius_pull_chern(a * b, q) == frobenius_pull_chern(a, q) * frobenius_pull_chern(b, q)


def test_frobenius_examples():
    assert frobenius_pull_chern(ChowClass.one(2), 4) == ChowClass.one(2)
    assert frobenius_pull_chern(ChowClass.divisor(2, 1, 0, 1), 2) == ChowClass.divisor(2, 2, 0, 1)
    assert frobenius_pull_chern(cls(2, {(1, 1): 1}), 3) == cls(2, {(1, 1): 9})
    with pytest.raises(ValueError):
        frobenius_pull_chern(ChowClass.one(2), 0)


def test_wedge_top_is_determinant():
    c = chern_E0_symbolic(3, 2, 1).total
    det = wedge_sym_chern(3, c, 3, "wedge")
    assert det.rank == 1
    assert det.total == ChowClass.divisor(3, c[1, 0], c[0, 1], 1)


def test_wedge_n_minus_1_is_twisted_dual():
    # Λ^{n-1} E = E^v ⊗ det E for rank n
    c = chern_E0_symbolic(3, 2, 1).total
    w = wedge_sym_chern(3, c, 2, "wedge")
    assert w.rank == 3
    assert w.total == twist_chern(3, dual_chern(3, c), (c[1, 0], c[0, 1]))


def test_sym2_rank2():
    c = cls(2, {(0, 0): 1, (1, 0): 2, (0, 1): -1, (1, 1): 5, (2, 0): 3})
    s = wedge_sym_chern(2, c, 2, "sym")
    assert s.rank == 3
    assert s.c1() == (6, -3)


def test_sym2_against_roots():
    # split class (1 + L)(1 + h): Sym^2 has roots 2L, L + h, 2h
    c = ChowClass.divisor(2, 1, 0, 1) * ChowClass.divisor(2, 0, 1, 1)
    roots = ChowClass.divisor(2, 2, 0, 1) * ChowClass.divisor(2, 1, 1, 1) * ChowClass.divisor(2, 0, 2, 1)
    assert wedge_sym_chern(2, c, 2, "sym").total == roots


def test_wedge_range():
    with pytest.raises(ValueError):
        wedge_sym_chern(2, ChowClass.one(2), 3, "wedge")


# -- HRR -----------------------------------------------------------------------------

def test_hrr_examples():
    assert euler_char_hrr(1, ChowClass.one(3)) == 1
    assert euler_char_hrr(2, chern_E0_symbolic(2, 2, 1).total) == -3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hrr_line_bundles(n):
    def binom_poly(m, k):
        out = Fraction(1)
        for i in range(k):
            out *= Fraction(m - i, i + 1)
        return int(out)
    for a in range(-2 * n - 2, 2 * n + 3):
        for b in range(-2 * n - 2, 2 * n + 3):
            expected = binom_poly(n + a, n) * binom_poly(n + b, n)
            assert euler_char_hrr(1, ChowClass.divisor(n, a, b, 1)) == expected
            assert chi_line_bundle(n, a, b) == expected
            if a >= 0 and b >= 0:
                assert expected == comb(n + a, n) * comb(n + b, n)


def test_json_roundtrip():
    c = chern_E0_symbolic(3, 3, 2).total
    assert ChowClass.from_json(c.to_json()) == c
