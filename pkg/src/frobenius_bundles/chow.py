"""Chern class calculus in the Chow ring Z[L, h]/(L^{n+1}, h^{n+1}).

``coeff[i][j]`` is the coefficient of L^i h^j.  L is the hyperplane class of
the first factor P^n_L (coordinates x), h that of the second factor P^n_h
(coordinates y).  Divisors are written as pairs ``(a, b)`` meaning aL + bh.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import ArithmeticFault, DimensionMismatchError, NonUnitError
from .finite_field import split_prime_power


# -- generic grid arithmetic (ints or Fractions) ---------------------------

def _zero(n):
    return [[0] * (n + 1) for _ in range(n + 1)]


def _gmul(a, b, n):
    out = _zero(n)
    for i1 in range(n + 1):
        for j1 in range(n + 1):
            c = a[i1][j1]
            if not c:
                continue
            for i2 in range(n + 1 - i1):
                row = b[i2]
                for j2 in range(n + 1 - j1):
                    if row[j2]:
                        out[i1 + i2][j1 + j2] += c * row[j2]
    return out


def _gadd(a, b, n, s=1):
    return [[a[i][j] + s * b[i][j] for j in range(n + 1)] for i in range(n + 1)]


def _gscale(a, c, n):
    return [[c * a[i][j] for j in range(n + 1)] for i in range(n + 1)]


def _gdeg(a, d, n):
    """Keep only the degree-d part."""
    return [[a[i][j] if i + j == d else 0 for j in range(n + 1)] for i in range(n + 1)]


def _gone(n):
    g = _zero(n)
    g[0][0] = 1
    return g


def _gexp(x, n):
    """exp of a class with zero constant term."""
    out, term = _gone(n), _gone(n)
    for k in range(1, 2 * n + 1):
        term = _gscale(_gmul(term, x, n), Fraction(1, k), n)
        out = _gadd(out, term, n)
    return out


def _glog(c, n):
    """log of a class with constant term 1."""
    x = _gadd(c, _gone(n), n, -1)
    out, term = _zero(n), _gone(n)
    for k in range(1, 2 * n + 1):
        term = _gmul(term, x, n)
        out = _gadd(out, _gscale(term, Fraction((-1) ** (k + 1), k), n), n)
    return out


def _integral(grid, n, what):
    out = _zero(n)
    for i in range(n + 1):
        for j in range(n + 1):
            v = Fraction(grid[i][j])
            if v.denominator != 1:
                raise ArithmeticFault(f"{what}: non-integral coefficient {v} at L^{i}h^{j}")
            out[i][j] = int(v)
    return out


# -- ChowClass ------------------------------------------------------------------

@dataclass(frozen=True)
class ChowClass:
    n: int
    coeff: tuple

    def __post_init__(self):
        grid = tuple(tuple(int(v) for v in row) for row in self.coeff)
        if len(grid) != self.n + 1 or any(len(r) != self.n + 1 for r in grid):
            raise ValueError(f"coefficient grid must be {self.n + 1}x{self.n + 1}")
        object.__setattr__(self, "coeff", grid)

    @classmethod
    def from_terms(cls, n: int, terms: dict) -> "ChowClass":
        """Build from {(i, j): c}; terms beyond L^n or h^n are truncated."""
        g = _zero(n)
        for (i, j), c in terms.items():
            if i <= n and j <= n:
                g[i][j] += c
        return cls(n, g)

    @classmethod
    def one(cls, n):
        return cls.from_terms(n, {(0, 0): 1})

    @classmethod
    def divisor(cls, n, a, b, constant=0):
        """constant + aL + bh"""
        return cls.from_terms(n, {(0, 0): constant, (1, 0): a, (0, 1): b})

    def grid(self):
        return [list(r) for r in self.coeff]

    def __getitem__(self, ij):
        i, j = ij
        if i > self.n or j > self.n:
            return 0
        return self.coeff[i][j]

    def _check(self, other):
        if not isinstance(other, ChowClass):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatchError(f"n={self.n} vs n={other.n}")
        return None

    def __add__(self, other):
        if isinstance(other, int):
            other = ChowClass.from_terms(self.n, {(0, 0): other})
        self._check(other)
        return ChowClass(self.n, _gadd(self.coeff, other.coeff, self.n))

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.n, _gscale(self.coeff, -1, self.n))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.n, _gscale(self.coeff, other, self.n))
        return chow_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return inv_unit(self) ** (-k)
        out = ChowClass.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        return self * inv_unit(other)

    def degree_part(self, d: int) -> "ChowClass":
        return ChowClass(self.n, _gdeg(self.coeff, d, self.n))

    def c(self, d: int) -> dict:
        """Degree-d component as {(i, j): coefficient}, zeros dropped."""
        return {(i, d - i): self.coeff[i][d - i]
                for i in range(max(0, d - self.n), min(d, self.n) + 1)
                if self.coeff[i][d - i]}

    def __str__(self):
        parts = []
        for d in range(2 * self.n + 1):
            for i in range(self.n, -1, -1):
                j = d - i
                if 0 <= j <= self.n and self.coeff[i][j]:
                    mono = "*".join(s for s in (
                        ("L" if i == 1 else f"L^{i}") if i else "",
                        ("h" if j == 1 else f"h^{j}") if j else "") if s)
                    parts.append(f"{self.coeff[i][j]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"n": self.n, "coeff": [list(r) for r in self.coeff]}

    @classmethod
    def from_json(cls, obj) -> "ChowClass":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), obj["coeff"])


def chow_mul(a: ChowClass, b: ChowClass) -> ChowClass:
    """Truncated product.

    >>> L = ChowClass.divisor(2, 1, 0)
    >>> str(L * L * L)
    '0'
    """
    if a.n != b.n:
        raise DimensionMismatchError(f"n={a.n} vs n={b.n}")
    return ChowClass(a.n, _gmul(a.coeff, b.coeff, a.n))


def inv_unit(a: ChowClass) -> ChowClass:
    """Inverse of a class with constant term 1 (finite geometric series)."""
    if a.coeff[0][0] != 1:
        raise NonUnitError(f"constant term {a.coeff[0][0]} != 1")
    n = a.n
    x = _gadd(_gone(n), a.coeff, n, -1)       # 1 - a, nilpotent
    out, term = _gone(n), _gone(n)
    for _ in range(2 * n):
        term = _gmul(term, x, n)
        out = _gadd(out, term, n)
    return ChowClass(n, out)


@dataclass(frozen=True)
class BundleClassData:
    rank: int
    total: ChowClass

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        if self.total.coeff[0][0] != 1:
            raise ValueError("total Chern class must have constant term 1")

    @property
    def n(self):
        return self.total.n

    def c1(self) -> tuple[int, int]:
        """First Chern class as (L-coefficient, h-coefficient)."""
        return self.total[1, 0], self.total[0, 1]

    def to_json(self):
        return {"rank": self.rank, "total_chern": self.total.to_json()}


# -- functor calculus ----------------------------------------------------------

def _check_q(q: int):
    if q == 1:
        return
    split_prime_power(q)


def chern_E0_symbolic(n: int, q: int, k: int) -> BundleClassData:
    """Total Chern class of E0[n,q,k](-L), from its monad
    O(-qh) -> (n+1)O + O((q-k)L - kh) -> O(qL).
    """
    if n < 1:
        raise ValueError("n must be positive")
    _check_q(q)
    if not 1 <= k <= q:
        raise ValueError(f"k={k} outside [1, {q}]")
    num = ChowClass.divisor(n, q - k, -k, 1)
    den = ChowClass.divisor(n, 0, -q, 1) * ChowClass.divisor(n, q, 0, 1)
    return BundleClassData(n, num * inv_unit(den))


def twist_chern(r: int, c: ChowClass, m: tuple[int, int]) -> ChowClass:
    """c(E ⊗ O(aL + bh)) for E of rank r, with m = (a, b).

    Uses c_j(E⊗M) = sum_i C(r-i, j-i) c_i(E) m^(j-i).
    """
    n = c.n
    a, b = m
    D = ChowClass.divisor(n, a, b)
    powers = [ChowClass.one(n)]
    for _ in range(2 * n):
        powers.append(powers[-1] * D)
    out = ChowClass(n, _zero(n))
    for i in range(0, 2 * n + 1):
        ci = c.degree_part(i)
        if not any(any(r_) for r_ in ci.coeff):
            continue
        for j in range(i, 2 * n + 1):
            coef = comb(r - i, j - i) if r - i >= 0 else 0
            if coef:
                out = out + coef * (ci * powers[j - i])
    return out


def dual_chern(r: int, c: ChowClass) -> ChowClass:
    """c_i -> (-1)^i c_i."""
    n = c.n
    return ChowClass(n, [[(-1) ** (i + j) * c.coeff[i][j] for j in range(n + 1)]
                         for i in range(n + 1)])


def frobenius_pull_chern(c: ChowClass, q: int) -> ChowClass:
    """Pullback along the q-power Frobenius: codimension d scales by q^d."""
    if q < 1:
        raise ValueError("q must be >= 1")
    n = c.n
    return ChowClass(n, [[q ** (i + j) * c.coeff[i][j] for j in range(n + 1)]
                         for i in range(n + 1)])


def chern_character(r: int, c: ChowClass):
    """ch(E) as a rational grid (ch_0 = rank)."""
    n = c.n
    lg = _glog(c.coeff, n)
    ch = _zero(n)
    ch[0][0] = Fraction(r)
    for d in range(1, 2 * n + 1):
        part = _gscale(_gdeg(lg, d, n), Fraction((-1) ** (d - 1), factorial(d - 1)), n)
        ch = _gadd(ch, part, n)
    return ch


def chern_from_character(ch, n: int, what="chern_from_character") -> BundleClassData:
    """Inverse of chern_character; asserts integral rank and classes."""
    r = Fraction(ch[0][0])
    if r.denominator != 1 or r < 0:
        raise ArithmeticFault(f"{what}: rank {r}")
    lg = _zero(n)
    for d in range(1, 2 * n + 1):
        part = _gscale(_gdeg(ch, d, n), Fraction((-1) ** (d - 1)) * factorial(d - 1), n)
        lg = _gadd(lg, part, n)
    return BundleClassData(int(r), ChowClass(n, _integral(_gexp(lg, n), n, what)))


def _adams(ch, j, n):
    return [[ch[i][l] * j ** (i + l) for l in range(n + 1)] for i in range(n + 1)]


def wedge_sym_chern(r: int, c: ChowClass, k: int, kind: str = "wedge") -> BundleClassData:
    """Chern data of Λ^k E or Sym^k E.

    Works with formal Chern roots through power sums: the Chern character
    records the power sums of the roots, Adams operations psi^j scale them,
    and Newton's identities
        k λ^k = sum_j (-1)^(j-1) psi^j λ^(k-j),   k σ^k = sum_j psi^j σ^(k-j)
    build the exterior/symmetric powers.
    """
    n = c.n
    if kind not in ("wedge", "sym"):
        raise ValueError("kind must be 'wedge' or 'sym'")
    if k < 0 or (kind == "wedge" and k > r):
        raise ValueError(f"power {k} out of range for rank {r}")
    ch = chern_character(r, c)
    psi = [None] + [_adams(ch, j, n) for j in range(1, k + 1)]
    powers = [_gone(n)]
    for m in range(1, k + 1):
        acc = _zero(n)
        for j in range(1, m + 1):
            sign = (-1) ** (j - 1) if kind == "wedge" else 1
            acc = _gadd(acc, _gscale(_gmul(psi[j], powers[m - j], n), sign, n), n)
        powers.append(_gscale(acc, Fraction(1, m), n))
    expected = comb(r, k) if kind == "wedge" else comb(r + k - 1, k)
    out = chern_from_character(powers[k], n, f"{kind}^{k}")
    if out.rank != expected:
        raise ArithmeticFault(f"{kind}^{k} rank {out.rank} != {expected}")
    return out


def tensor_chern(e1: BundleClassData, e2: BundleClassData) -> BundleClassData:
    n = e1.n
    ch = _gmul(chern_character(e1.rank, e1.total), chern_character(e2.rank, e2.total), n)
    return chern_from_character(ch, n, "tensor")


def todd_series(n: int) -> list[Fraction]:
    """Coefficients of (x / (1 - e^-x))^(n+1) up to x^n."""
    g = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    inv = [Fraction(0)] * (n + 1)
    inv[0] = Fraction(1)
    for d in range(1, n + 1):
        inv[d] = -sum(g[i] * inv[d - i] for i in range(1, d + 1))
    out = [Fraction(1)] + [Fraction(0)] * n
    for _ in range(n + 1):
        out = [sum(out[i] * inv[d - i] for i in range(d + 1)) for d in range(n + 1)]
    return out


def euler_char_hrr(r: int, c: ChowClass) -> int:
    """χ(E) = ∫ ch(E) td(P^n) td(P^n) on P^n x P^n."""
    n = c.n
    ch = chern_character(r, c)
    td = todd_series(n)
    total = sum(ch[i][j] * td[n - i] * td[n - j]
                for i in range(n + 1) for j in range(n + 1))
    total = Fraction(total)
    if total.denominator != 1:
        raise ArithmeticFault(f"non-integral Euler characteristic {total}")
    return int(total)


def binom(m: int, k: int) -> int:
    """Polynomial binomial m(m-1)...(m-k+1)/k!, valid for negative m."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= m - i
    return num // factorial(k)


def chi_line_bundle(n: int, a: int, b: int) -> int:
    """χ(O(aL + bh)) on P^n x P^n."""
    return binom(n + a, n) * binom(n + b, n)


# -- independent routes to c(E0[n,q,k](-L)) ------------------------------------

def chern_structure_sheaf_divisor(n: int, D: tuple[int, int], thickness: int = 1) -> ChowClass:
    """c(O_{mA}(D)) for A ∈ |L+h|: (1 + D) / (1 + D - m(L+h))."""
    a, b = D
    m = thickness
    return ChowClass.divisor(n, a, b, 1) * inv_unit(ChowClass.divisor(n, a - m, b - m, 1))


def chern_E0_by_change_k(n: int, q: int, k: int) -> ChowClass:
    """Walk down from k = 1 using
    0 -> E0[k](-L) -> E0[k-1](-L) -> O_A((q-k+1)L - (k-1)h) -> 0.
    """
    c = chern_E0_by_modification(n, q, 1)
    for j in range(2, k + 1):
        c = c * inv_unit(chern_structure_sheaf_divisor(n, (q - j + 1, -(j - 1))))
    return c


def chern_E0_by_modification(n: int, q: int, k: int) -> ChowClass:
    """From 0 -> E0(-L) -> F^*Q_h -> O_{kA}(qL) -> 0, with c(Q_h) = 1/(1-h)."""
    cQ = inv_unit(ChowClass.divisor(n, 0, -1, 1))
    return frobenius_pull_chern(cQ, q) * inv_unit(chern_structure_sheaf_divisor(n, (q, 0), k))


def power_series_divide(num: dict, den: dict, n: int) -> ChowClass:
    """Coefficientwise long division num/den of truncated bivariate series.

    Independent of inv_unit: solves den * out = num degree by degree.
    """
    out = {}
    d00 = den.get((0, 0), 0)
    if d00 != 1:
        raise NonUnitError("denominator constant term must be 1")
    for tot in range(2 * n + 1):
        for i in range(0, tot + 1):
            j = tot - i
            if i > n or j > n:
                continue
            s = num.get((i, j), 0)
            for (a, b), v in den.items():
                if (a, b) != (0, 0) and a <= i and b <= j:
                    s -= v * out.get((i - a, j - b), 0)
            out[(i, j)] = s
    return ChowClass.from_terms(n, out)


def chern_E0_by_frobenius_step(n: int, p: int, a: int) -> ChowClass:
    """c(E0[n, p^(a+1)](-L)) from c(E0[n, p^a](-L)).

    Pulling the modification sequence back by F and comparing with the
    next one gives
        0 -> F^*E0[q](-L) -> E0[pq](-L) -> O_{(p-1)A}((pq-1)L - h) -> 0,
    since F^*O_A(qL) = O_{pA}(pqL) and O_{pA} -> O_A has kernel
    O_{(p-1)A}(-L-h).
    """
    q = p ** a
    prev = chern_E0_symbolic(n, q, 1).total
    quotient = chern_structure_sheaf_divisor(n, (p * q - 1, -1), p - 1)
    return frobenius_pull_chern(prev, p) * quotient


def chern_q_case_as_printed(n: int, p: int, a: int) -> ChowClass:
    """The recursion exactly as displayed for E = E0:
    F^*c(E[p^a]((1-p)L)) * (1 + h) / (1 + (1-p)L).  Kept to document
    that it does not reproduce the monad formula."""
    q = p ** a
    e0 = twist_chern(n, chern_E0_symbolic(n, q, 1).total, (1, 0))
    pulled = frobenius_pull_chern(twist_chern(n, e0, (1 - p, 0)), p)
    return pulled * ChowClass.divisor(n, 0, 1, 1) * inv_unit(ChowClass.divisor(n, 1 - p, 0, 1))
