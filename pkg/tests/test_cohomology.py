import json
from itertools import combinations_with_replacement

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobenius_bundles.chow import chern_E0_symbolic, euler_char_hrr, twist_chern
from frobenius_bundles.cohomology import (CohomTable, ExactTriple, Interval, block_map_matrix,
                                          bott_h, chi_vector, cohom_basis, kunneth_h, les_chase,
                                          monad_chi, monad_cohom_table, monad_cohomology,
                                          mult_matrix, product_h, rank_of, twist_box)
from frobenius_bundles.errors import InfeasibleChaseError
from frobenius_bundles.finite_field import field
from frobenius_bundles.model import build_monad, dual_monad, h0_twist, serre_twist
from frobenius_bundles.polynomials import Poly

from _h0_oracle import h0 as oracle_h0


# -- line bundles ----------------------------------------------------------------

def test_bott_examples():
    assert bott_h(2, 0) == [1, 0, 0]
    assert bott_h(2, 2) == [6, 0, 0]
    assert bott_h(2, -1) == [0, 0, 0]
    assert bott_h(2, -3) == [0, 0, 1]
    assert bott_h(2, -5) == [0, 0, 6]
    assert bott_h(1, -2) == [0, 1]


def test_kunneth_examples():
    assert kunneth_h(2, (1, -3)) == [0, 0, 3, 0, 0]
    assert kunneth_h(2, (-3, -3)) == [0, 0, 0, 0, 1]
    assert kunneth_h(1, (2, 2)) == [9, 0, 0]
    assert product_h((1, 2), (-2, 0)) == [0, 1, 0, 0]


@given(st.integers(1, 3), st.integers(-8, 8), st.integers(-8, 8))
def test_kunneth_chi_is_hrr(n, a, b):
    from frobenius_bundles.chow import ChowClass
    assert chi_vector(kunneth_h(n, (a, b))) == euler_char_hrr(1, ChowClass.divisor(n, a, b, 1))


@given(st.integers(1, 3), st.integers(-8, 8))
def test_bott_serre_duality(n, d):
    assert bott_h(n, d) == bott_h(n, -d - n - 1)[::-1]


def test_basis_sizes_match_dimensions():
    for tw in [(2, 1), (-3, 1), (-4, -3), (1, -5)]:
        v = kunneth_h(2, tw)
        for i in range(5):
            assert len(cohom_basis((2, 2), i, tw)) == v[i]


@pytest.mark.parametrize("n,a,e", [(1, 1, 2), (2, 0, 2), (2, 2, 1), (3, 1, 2)])
def test_top_multiplication_is_transpose(n, a, e):
    # multiplication on H^n is dual to multiplication on H^0 under x^m <-> x^(-m-1)
    F = field(3)
    rng = np.random.default_rng(a + 7 * e)
    f = Poly(F, n + 1)
    for m in combinations_with_replacement(range(n + 1), e):
        exps = [0] * (n + 1)
        for i in m:
            exps[i] += 1
        f = f + Poly(F, n + 1, {tuple(exps): int(rng.integers(0, 3))})
    M0 = mult_matrix(0, (a,), (a + e,), f, (n,))
    Mn = mult_matrix(n, (-a - e - n - 1,), (-a - n - 1,), f, (n,))
    B0s, B0t = cohom_basis((n,), 0, (a,)), cohom_basis((n,), 0, (a + e,))
    Bns, Bnt = cohom_basis((n,), n, (-a - e - n - 1,)), cohom_basis((n,), n, (-a - n - 1,))
    neg = lambda lab: tuple(-x - 1 for x in lab)
    P_t = [Bnt.index()[neg(lab)] for lab in B0s.labels]
    P_s = [Bns.index()[neg(lab)] for lab in B0t.labels]
    assert np.array_equal(Mn[np.ix_(P_t, P_s)], M0.T)


def test_mult_degree_mismatch():
    F = field(2)
    f = Poly.var(F, 6, 0)
    with pytest.raises(ValueError):
        mult_matrix(0, (0, 0), (0, 1), f)


# -- Euler characteristic --------------------------------------------------------------

def test_monad_chi_examples():
    assert monad_chi(2, 2, 1, (0, 0)) == -3
    assert monad_chi(2, 2, 1, (1, 0)) == -1


@pytest.mark.parametrize("n,q,k", [(2, 2, 1), (2, 4, 2), (3, 2, 1), (3, 3, 3)])
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_monad_chi_matches_hrr(n, q, k, s, t):
    c = chern_E0_symbolic(n, q, k)
    assert monad_chi(n, q, k, (s, t)) == euler_char_hrr(n, twist_chern(n, c.total, (s, t)))


# -- chaser --------------------------------------------------------------------------

def test_chase_all_known():
    out = les_chase({"A": [1, 0], "B": [3, 0], "C": [None, None]},
                    [ExactTriple("A", "B", "C")], 1)
    assert out["C"] == [Interval(2, 2), Interval(0, 0)]


def test_chase_underdetermined():
    out = les_chase({"A": [1, 1], "B": [1, 1], "C": [None, None]},
                    [ExactTriple("A", "B", "C")], 1)
    assert out["C"] == [Interval(0, 1), Interval(0, 1)]
    assert not out["C"][0].exact and out["C"][0].value is None


def test_chase_rank_fixes_interval():
    out = les_chase({"A": [1, 1], "B": [1, 1], "C": [None, None]},
                    [ExactTriple("A", "B", "C", {("delta", 0): 1})], 1)
    assert out["C"] == [Interval(1, 1), Interval(1, 1)]


def test_chase_infeasible():
    with pytest.raises(InfeasibleChaseError):
        les_chase({"A": [2, 0], "B": [1, 0], "C": [None, None]}, [ExactTriple("A", "B", "C")], 1)


def _wedge_h1_by_monomials(n, q):
    # (S/(y_i^q)) in degree 2q: monomials of degree 2q with every exponent < q
    count = 0
    for m in combinations_with_replacement(range(n + 1), 2 * q):
        if all(m.count(i) < q for i in range(n + 1)):
            count += 1
    return count


@pytest.mark.parametrize("n,q,expected", [(2, 2, 0), (2, 3, 1), (3, 2, 1)])
def test_chase_wedge_of_frobenius_quotient(n, q, expected):
    # Λ^{n-1} F^*Q is the kernel of (n+1)O(q) -> O(2q) given by the y_i^q
    assert _wedge_h1_by_monomials(n, q) == expected
    F = field(q if q in (2, 3) else 2)
    entries = [[Poly(F, n + 1, {tuple(q if j == i else 0 for j in range(n + 1)): 1})
                for i in range(n + 1)]]
    M = block_map_matrix(0, [(q,)] * (n + 1), [(2 * q,)], entries, (n,), F, (0,))
    r = rank_of(M, F)
    mid = [(n + 1) * x for x in bott_h(n, q)]
    out = les_chase({"K": [None] * (n + 1), "B": mid, "C": bott_h(n, 2 * q)},
                    [ExactTriple("K", "B", "C", {("quo", 0): r})], n)
    assert out["K"][1] == Interval(expected, expected)


# -- monad tables ------------------------------------------------------------------------

# values from the brute-force oracle in _h0_oracle (GF(2), identity form)
H0_GOLDEN = {(2, 2, 1): {(1, 0): 0, (1, 1): 3, (2, 0): 3, (2, 1): 19, (2, 2): 42, (3, 1): 42,
                         (1, 3): 17},
             (3, 2, 1): {(1, 0): 0, (2, 1): 40},
             (2, 4, 1): {(1, 0): 0, (2, 3): 54}}


@pytest.mark.parametrize("key", sorted(H0_GOLDEN))
def test_h0_golden(key):
    m = build_monad(*key)
    for tw, v in H0_GOLDEN[key].items():
        assert h0_twist(m, tw) == v


def test_oracle_reproduces_golden():
    for (n, q, k), vals in H0_GOLDEN.items():
        for tw, v in vals.items():
            assert oracle_h0(n, q, k, *tw) == v


@pytest.mark.parametrize("key", [(2, 2, 1), (2, 2, 2), (3, 2, 1)])
def test_table_alternating_sum_is_chi(key):
    n, q, k = key
    tab = monad_cohom_table(build_monad(*key), ((-2, 2), (-2, 2)))
    for tw in tab.twists():
        if tab.fully_exact(tw):
            assert chi_vector([iv.value for iv in tab.column(tw)]) == monad_chi(n, q, k, tw)


def test_table_serre_symmetry():
    m = build_monad(2, 2, 1)
    d = dual_monad(m)
    for tw in twist_box(((-2, 2), (-2, 2))):
        col = monad_cohomology(m, tw)
        dcol = monad_cohomology(d, serre_twist(m.dims, tw))
        assert col == dcol[::-1]


def test_twist_box_forms():
    assert len(twist_box(3)) == 9
    assert twist_box(((0, 1), (5, 5))) == [(0, 5), (1, 5)]
    assert twist_box([(1, 2), (3, 4)]) == [(1, 2), (3, 4)]


def test_table_json_and_csv_roundtrip():
    tab = monad_cohom_table(build_monad(2, 2, 1), 2)
    back = CohomTable.from_json(tab.to_json())
    assert back.entries == tab.entries and back.top == tab.top
    lines = tab.to_csv().strip().split("\n")
    assert lines[0] == "i,s,t,dim,lo,hi,exact"
    assert len(lines) == 1 + 5 * 4
    assert json.loads(tab.to_json())["entries"][0]["i"] == 0


def test_single_factor_table_roundtrip():
    tab = CohomTable(top=2)
    tab.set_column((3,), [Interval(10, 10), Interval(0, 0), Interval(0, None)])
    rows = tab.rows()
    assert rows[0]["t"] is None
    back = CohomTable.from_json(tab.to_json())
    assert back.entries == tab.entries
