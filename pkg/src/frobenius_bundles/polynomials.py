"""Sparse multivariate polynomials over GF(p^e) and monomial bases.

Variables are numbered 0..nvars-1; on a product of projective spaces the
blocks of variables are laid out consecutively (x-block before y-block).
Exponent tuples may be negative: those label inverse monomials, the standard
basis of top cohomology of a projective space.
"""
from __future__ import annotations

from functools import lru_cache

from .finite_field import GF


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the given degree, graded lex (x0^d first)."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def inverse_monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors with every entry <= -1 summing to ``degree``.

    These index H^n(P^n, O(degree)) with n = nvars - 1; empty unless
    degree <= -nvars.
    """
    shifted = monomials(nvars, -degree - nvars)
    return tuple(tuple(-1 - b for b in m) for m in shifted)


class Poly:
    """Polynomial as a dict {exponent tuple: nonzero field element}."""

    __slots__ = ("F", "nvars", "terms")

    def __init__(self, F: GF, nvars: int, terms=None):
        self.F = F
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, F, nvars):
        return cls(F, nvars)

    @classmethod
    def constant(cls, F, nvars, c=1):
        return cls(F, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, F, nvars, i, c=1):
        m = [0] * nvars
        m[i] = 1
        return cls(F, nvars, {tuple(m): c})

    @classmethod
    def linear(cls, F, nvars, coeffs, offset=0):
        """sum_i coeffs[i] * z_{offset+i}"""
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                m = [0] * nvars
                m[offset + i] = 1
                out[tuple(m)] = int(c)
        return cls(F, nvars, out)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in sorted(self.terms.items(), reverse=True))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def block_degree(self, blocks: tuple[int, ...]) -> tuple[int, ...] | None:
        """Multidegree w.r.t. variable blocks of the given sizes (None if 0).

        Raises ValueError for non-homogeneous input.
        """
        degs = None
        for m in self.terms:
            d, pos = [], 0
            for b in blocks:
                d.append(sum(m[pos:pos + b]))
                pos += b
            d = tuple(d)
            if degs is None:
                degs = d
            elif degs != d:
                raise ValueError("polynomial is not multihomogeneous")
        return degs

    def __add__(self, other):
        F = self.F
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, 0), c)
        return Poly(F, self.nvars, out)

    def __neg__(self):
        return Poly(self.F, self.nvars, {m: self.F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        return Poly(self.F, self.nvars, {m: self.F.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        F = self.F
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = F.add(out.get(m, 0), F.mul(c1, c2))
        return Poly(F, self.nvars, out)

    def frobenius(self):
        """p-th power, computed termwise (additive in characteristic p)."""
        F = self.F
        p = F.p
        return Poly(F, self.nvars, {tuple(p * a for a in m): F.pow(c, p)
                                    for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        p = self.F.p
        if k % p == 0 and k > 0:
            return (self ** (k // p)).frobenius()
        out = Poly.constant(self.F, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def evaluate(self, point) -> int:
        F = self.F
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, a in zip(point, m):
                if a:
                    v = F.mul(v, F.pow(int(x), a))
            total = F.add(total, v)
        return total

    def substitute(self, images: list["Poly"]) -> "Poly":
        """Replace variable i by images[i] (all in one target ring)."""
        F = self.F
        target = images[0].nvars
        cache: dict = {}

        def power(i, a):
            key = (i, a)
            if key not in cache:
                cache[key] = images[i] ** a
            return cache[key]

        out = Poly.zero(F, target)
        for m, c in self.terms.items():
            t = Poly.constant(F, target, c)
            for i, a in enumerate(m):
                if a:
                    t = t * power(i, a)
            out = out + t
        return out

    def permute(self, perm: list[int]) -> "Poly":
        """New polynomial whose variable perm[i] carries old variable i."""
        out = {}
        for m, c in self.terms.items():
            new = [0] * self.nvars
            for i, a in enumerate(m):
                new[perm[i]] = a
            out[tuple(new)] = c
        return Poly(self.F, self.nvars, out)

    def to_json(self, blocks: tuple[int, ...]):
        """[[coeff, block-0 exponents, block-1 exponents, ...], ...]"""
        rows = []
        for m, c in sorted(self.terms.items(), reverse=True):
            parts, pos = [], 0
            for b in blocks:
                parts.append(list(m[pos:pos + b]))
                pos += b
            rows.append([c] + parts)
        return rows

    @classmethod
    def from_json(cls, F, rows, nvars):
        terms = {}
        for row in rows:
            m = tuple(a for part in row[1:] for a in part)
            if len(m) != nvars:
                raise ValueError("exponent length mismatch")
            terms[m] = int(row[0])
        return cls(F, nvars, terms)
