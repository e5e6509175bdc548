from math import comb

import pytest

from frobenius_bundles.finite_field import field
from frobenius_bundles.polynomials import Poly, inverse_monomials, monomials


def test_monomial_counts_and_order():
    assert len(monomials(3, 4)) == comb(6, 2)
    assert monomials(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert monomials(2, -1) == ()


def test_inverse_monomials_count():
    # H^2(P^2, O(-5)) has dimension C(4, 2)
    assert len(inverse_monomials(3, -5)) == 6
    assert all(all(a <= -1 for a in m) and sum(m) == -5 for m in inverse_monomials(3, -5))
    assert inverse_monomials(3, -2) == ()


def test_frobenius_power_is_termwise_in_char_p():
    F = field(2, 1)
    x, y = Poly.var(F, 2, 0), Poly.var(F, 2, 1)
    f = x + y
    assert f ** 2 == x ** 2 + y ** 2
    assert (f * f) == f.frobenius()


def test_block_degree_and_json_roundtrip():
    F = field(3, 2)
    x0, y1 = Poly.var(F, 4, 0), Poly.var(F, 4, 3, 5)
    f = x0 * x0 * y1
    assert f.block_degree((2, 2)) == (2, 1)
    back = Poly.from_json(F, f.to_json((2, 2)), 4)
    assert back == f


def test_non_homogeneous_rejected():
    F = field(2, 1)
    f = Poly.var(F, 2, 0) + Poly.constant(F, 2)
    with pytest.raises(ValueError):
        f.block_degree((2,))


def test_substitute_and_evaluate():
    F = field(5, 1)
    x, y = Poly.var(F, 2, 0), Poly.var(F, 2, 1)
    f = x * x + y.scale(3)
    g = f.substitute([y, x])
    assert g.evaluate((2, 4)) == (4 * 4 + 3 * 2) % 5
