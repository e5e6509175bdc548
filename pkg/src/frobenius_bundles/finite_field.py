"""Finite fields GF(p^e) and exact linear algebra over them.

Elements are plain ints in ``range(p**e)``; the base-p digits of an element
are the coefficients of its residue polynomial modulo a fixed primitive
polynomial.  The prime subfield is therefore ``range(p)`` with ordinary
modular arithmetic, which lets matrices with prime-field entries take a fast
elimination path.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power_exponent(q: int, p: int) -> int:
    """Return a with q == p**a, or raise ValueError."""
    if q < 1:
        raise ValueError(f"{q} is not a power of {p}")
    a = 0
    while q % p == 0:
        q //= p
        a += 1
    if q != 1:
        raise ValueError(f"not a power of {p}")
    return a


def split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, a) with q == p**a, p prime, a >= 1."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            return p, prime_power_exponent(q, p)
    raise ValueError(f"{q} is not a prime power")


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists a*b modulo a monic modulus over F_p."""
    e = len(modulus) - 1
    out = [0] * (2 * e)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for d in range(len(out) - 1, e - 1, -1):
        c = out[d]
        if c:
            for i in range(e + 1):
                out[d - e + i] = (out[d - e + i] - c * modulus[i]) % p
    return out[:e]


def _find_primitive(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        # x - g for a primitive root g, but any degree-1 modulus works: we
        # only need the field; F_p elements are residues directly.
        return (0, 1)
    order = p**e - 1
    for tail in product(range(p), repeat=e):
        if tail[0] == 0:
            continue
        modulus = list(tail) + [1]
        # order of x in (F_p[x]/modulus)^*; primitive iff it equals p^e - 1
        x = [0] * e
        x[1 % e] = 1
        cur = x[:]
        k = 1
        while k < order:
            if cur == [1] + [0] * (e - 1):
                break
            cur = _poly_mulmod(cur, x, modulus, p)
            k += 1
        if k == order and cur == [1] + [0] * (e - 1):
            return tuple(modulus)
    raise RuntimeError(f"no primitive polynomial of degree {e} over F_{p}")


class GF:
    """The field with p**e elements.

    >>> F = GF(2, 2)
    >>> F.mul(2, 2)   # x * x = x + 1
    3
    >>> F.frobenius(3, 1) == F.mul(3, 3)
    True
    """

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.order = p**e
        self.modulus = _find_primitive(p, e)
        self._build_tables()

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _from_digits(self, ds) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(ds))

    def _build_tables(self):
        Q, p = self.order, self.p
        digits = np.array([self._digits(a) for a in range(Q)], dtype=np.int64).reshape(Q, self.e)
        weights = p ** np.arange(self.e, dtype=np.int64)
        add = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (add * weights).sum(axis=2)
        sub = (digits[:, None, :] - digits[None, :, :]) % p
        self.sub_table = (sub * weights).sum(axis=2)
        if self.e == 1:
            r = np.arange(Q, dtype=np.int64)
            self.mul_table = np.outer(r, r) % p
        else:
            # log / antilog tables from the primitive element x
            exp = np.zeros(Q - 1, dtype=np.int64)
            cur = [1] + [0] * (self.e - 1)
            x = [0, 1] + [0] * (self.e - 2)
            for k in range(Q - 1):
                exp[k] = self._from_digits(cur)
                cur = _poly_mulmod(cur, x, self.modulus, p)
            log = np.zeros(Q, dtype=np.int64)
            log[exp] = np.arange(Q - 1)
            la = log[:, None] + log[None, :]
            mul = exp[la % (Q - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
            self.mul_table = mul
        self.neg_table = self.sub_table[0]
        inv = np.zeros(Q, dtype=np.int64)
        for a in range(1, Q):
            inv[a] = int(np.nonzero(self.mul_table[a] == 1)[0][0])
        self.inv_table = inv

    def __repr__(self):
        return f"GF({self.p}, {self.e})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.inv_table[a])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    def from_int(self, c: int) -> int:
        """Image of an integer under Z -> prime subfield."""
        return c % self.p

    def random(self, rng: np.random.Generator, size=None, nonzero=False):
        lo = 1 if nonzero else 0
        if size is None:
            return int(rng.integers(lo, self.order))
        return rng.integers(lo, self.order, size=size)

    def is_prime_field_array(self, M: np.ndarray) -> bool:
        return M.size == 0 or int(M.max()) < self.p

    # vectorized arithmetic
    def vadd(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self.add_table[a, b]

    def vsub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        return self.sub_table[a, b]

    def vmul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        return self.mul_table[a, b]

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.e == 1 or (self.is_prime_field_array(A) and self.is_prime_field_array(B)):
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            out = self.add_table[out, self.mul_table[A[:, k][:, None], B[k][None, :]]]
        return out


@lru_cache(maxsize=None)
def field(p: int, e: int = 1) -> GF:
    """Cached field constructor; tables are built once per (p, e)."""
    return GF(p, e)


def default_extension(p: int, minimum: int = 64) -> int:
    """Smallest e with p**e >= minimum."""
    e = 1
    while p**e < minimum:
        e += 1
    return e


# --------------------------------------------------------------------------
# linear algebra

def _rank_gf2_bits(M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    packed = np.packbits(M.astype(np.uint8), axis=1, bitorder="little")
    basis: dict[int, int] = {}
    for row in packed:
        r = int.from_bytes(row.tobytes(), "little")
        while r:
            lead = r.bit_length() - 1
            piv = basis.get(lead)
            if piv is None:
                basis[lead] = r
                break
            r ^= piv
    return len(basis)


def rref(M: np.ndarray, F: GF) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of M over F and its pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    prime = F.e == 1 or F.is_prime_field_array(R)
    p = F.p
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        piv = int(R[r, c])
        if piv != 1:
            inv = pow(piv, p - 2, p) if prime else F.inv(piv)
            R[r] = (R[r] * inv) % p if prime else F.mul_table[inv, R[r]]
        col = R[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            if prime:
                R[others] = (R[others] - np.outer(col[others], R[r])) % p
            else:
                prod = F.mul_table[col[others][:, None], R[r][None, :]]
                R[others] = F.sub_table[R[others], prod]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: np.ndarray, F: GF) -> int:
    """Rank of M over F.

    Matrices with prime-field entries are ranked over F_p (rank does not
    change under field extension); for p = 2 this uses bitset elimination.
    """
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.size == 0:
        return 0
    if F.is_prime_field_array(M):
        if F.p == 2:
            return _rank_gf2_bits(M)
        if M.shape[0] > M.shape[1]:
            M = M.T
        return _rank_prime_forward(M, F.p)
    return len(rref(M, F)[1])


def _rank_prime_forward(M: np.ndarray, p: int) -> int:
    R = M.copy()
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        below = R[r + 1:, c]
        idx = np.nonzero(below)[0]
        if idx.size:
            f = (below[idx] * inv) % p
            R[r + 1 + idx, c:] = (R[r + 1 + idx, c:] - np.outer(f, R[r, c:])) % p
        r += 1
    return r


def nullspace(M: np.ndarray, F: GF) -> np.ndarray:
    """Basis (as rows) of the right kernel {v : M v = 0}."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(M, F)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.neg(int(R[i, fc]))
    return basis
