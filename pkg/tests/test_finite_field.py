import numpy as np
import pytest
from hypothesis import given, strategies as st

from frobenius_bundles.finite_field import (GF, default_extension, field, nullspace, rank, rref,
                                            split_prime_power)

FIELDS = [(2, 1), (3, 1), (2, 6), (3, 4), (5, 3)]


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms(p, e):
    F = field(p, e)
    rng = np.random.default_rng(1)
    for _ in range(200):
        a, b, c = (F.random(rng) for _ in range(3))
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1
        # Frobenius is additive
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


def test_multiplicative_group_order():
    F = field(2, 6)
    assert all(F.pow(a, 63) == 1 for a in range(1, 64))


def test_prime_power_split():
    assert split_prime_power(8) == (2, 3)
    assert split_prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        split_prime_power(6)


def test_default_extension():
    assert default_extension(2) == 6
    assert default_extension(3) == 4
    assert default_extension(5) == 3


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        GF(4)


@pytest.mark.parametrize("p,e", FIELDS)
@given(data=st.data())
def test_nullspace_is_kernel(p, e, data):
    F = field(p, e)
    rows = data.draw(st.integers(1, 6))
    cols = data.draw(st.integers(1, 7))
    M = np.array(data.draw(st.lists(st.integers(0, F.order - 1), min_size=rows * cols,
                                    max_size=rows * cols)), dtype=np.int64).reshape(rows, cols)
    N = nullspace(M, F)
    r = rank(M, F)
    assert N.shape[0] == cols - r
    if N.shape[0]:
        assert not np.any(F.matmul(M, N.T))
        assert rank(N, F) == N.shape[0]


def test_gf2_bitset_rank_matches_generic():
    rng = np.random.default_rng(5)
    F = field(2, 1)
    for _ in range(20):
        M = rng.integers(0, 2, size=(30, 45))
        R, piv = rref(M, F)
        assert rank(M, F) == len(piv)


def test_odd_prime_rank_matches_rref():
    rng = np.random.default_rng(6)
    F = field(3, 1)
    for _ in range(20):
        M = rng.integers(0, 3, size=(25, 20))
        M[:, 5] = (M[:, 1] + 2 * M[:, 2]) % 3
        assert rank(M, F) == len(rref(M, F)[1])
