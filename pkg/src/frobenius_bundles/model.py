"""Explicit monads over GF(p^e) for E0[n,q,k](-L) and their restrictions.

The standard monad on P^n_L x P^n_h (coordinates x, y) is

    O(-qh) --A--> (n+1)O ⊕ O((q-k)L - kh) --B--> O(qL)
    A = (y_0^q, ..., y_n^q, -f^(q-k))^T,   B = (λ_0^q, ..., λ_n^q, f^k),

with f = sum a_ij x_i y_j the equation of the divisor and λ_j = sum_i a_ij x_i.
B∘A = (sum λ_j y_j)^q - f^q = 0 in characteristic p.

A MonadData is a general three-term display of sums of line bundles on a
product of projective spaces, so the same code handles duals, flips, fibres,
lines and hyperplane sections.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .cohomology import block_map_matrix, cohom_basis, product_h
from .errors import ModelInconsistencyError, SamplingError, SmoothnessError
from .finite_field import GF, default_extension, field as make_field, nullspace, rank, \
    prime_power_exponent
from .polynomials import Poly, monomials


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int = 0          # 0: smallest extension with p^e >= 64

    @property
    def field(self) -> GF:
        return make_field(self.p, self.e or default_extension(self.p))


@dataclass(frozen=True)
class BilinearFormA:
    """Matrix of f = sum a_ij x_i y_j over the field; rows index x."""
    matrix: tuple
    field: GF

    def __post_init__(self):
        M = np.array(self.matrix, dtype=np.int64)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("form must be square")
        object.__setattr__(self, "matrix", tuple(tuple(int(v) for v in r) for r in M))
        if rank(M, self.field) < M.shape[0]:
            raise SmoothnessError("degenerate bilinear form: the divisor is singular")

    @property
    def size(self):
        return len(self.matrix)

    def array(self):
        return np.array(self.matrix, dtype=np.int64)

    @classmethod
    def identity(cls, n, F):
        return cls(tuple(tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)), F)

    @classmethod
    def random(cls, n, F, rng, prime_subfield=True):
        """Uniform nondegenerate form; entries from F_p unless told otherwise."""
        hi = F.p if prime_subfield else F.order
        for _ in range(1000):
            M = rng.integers(0, hi, size=(n + 1, n + 1))
            if rank(M, F) == n + 1:
                return cls(tuple(map(tuple, M)), F)
        raise SamplingError("could not draw a nondegenerate form")

    def transpose(self):
        return BilinearFormA(tuple(zip(*self.matrix)), self.field)


@dataclass(frozen=True)
class MonadData:
    """src --A--> ⊕ mid --B--> tgt on prod P^{dims}.

    Degrees are tuples, one entry per factor.  ``src``/``tgt`` may be None
    for a zero term (then A/B are empty).  ``n, q, k, form`` record how the
    monad was built; ``orientation`` is "h" for the standard construction
    (modification of p_h^* F^* Q_h) and "L" after a flip.
    """
    dims: tuple
    field: GF
    src: tuple | None
    mid: tuple
    tgt: tuple | None
    A: tuple
    B: tuple
    n: int = 0
    q: int = 1
    k: int = 1
    form: BilinearFormA | None = None
    orientation: str = "h"

    @property
    def nvars(self):
        return sum(d + 1 for d in self.dims)

    @property
    def blocks(self):
        return tuple(d + 1 for d in self.dims)

    @property
    def rank(self):
        return len(self.mid) - (self.src is not None) - (self.tgt is not None)

    def check(self):
        """Degrees of entries match the display and B∘A = 0."""
        for i, d in enumerate(self.mid):
            if self.src is not None:
                _check_degree(self.A[i], tuple(a - b for a, b in zip(d, self.src)), self.blocks)
            if self.tgt is not None:
                _check_degree(self.B[i], tuple(a - b for a, b in zip(self.tgt, d)), self.blocks)
        if self.src is not None and self.tgt is not None:
            comp = Poly.zero(self.field, self.nvars)
            for a, b in zip(self.A, self.B):
                comp = comp + a * b
            if not comp.is_zero():
                raise ValueError("B∘A != 0")
        return True

    def to_json(self) -> dict:
        blocks = self.blocks
        return {
            "field": {"p": self.field.p, "e": self.field.e},
            "dims": list(self.dims),
            "n": self.n, "q": self.q, "k": self.k,
            "orientation": self.orientation,
            "form": [list(r) for r in self.form.matrix] if self.form else None,
            "src": list(self.src) if self.src is not None else None,
            "mid": [list(d) for d in self.mid],
            "tgt": list(self.tgt) if self.tgt is not None else None,
            "A": [a.to_json(blocks) for a in self.A],
            "B": [b.to_json(blocks) for b in self.B],
        }

    @classmethod
    def from_json(cls, obj) -> "MonadData":
        if isinstance(obj, str):
            obj = json.loads(obj)
        F = make_field(obj["field"]["p"], obj["field"]["e"])
        dims = tuple(obj["dims"])
        nv = sum(d + 1 for d in dims)
        form = BilinearFormA(tuple(map(tuple, obj["form"])), F) if obj.get("form") else None
        m = cls(dims, F,
                tuple(obj["src"]) if obj["src"] is not None else None,
                tuple(tuple(d) for d in obj["mid"]),
                tuple(obj["tgt"]) if obj["tgt"] is not None else None,
                tuple(Poly.from_json(F, a, nv) for a in obj["A"]),
                tuple(Poly.from_json(F, b, nv) for b in obj["B"]),
                obj.get("n", 0), obj.get("q", 1), obj.get("k", 1), form,
                obj.get("orientation", "h"))
        m.check()
        return m


def _check_degree(f: Poly, expected, blocks):
    if f.is_zero():
        return
    deg = f.block_degree(blocks)
    if deg != tuple(expected):
        raise ValueError(f"entry of degree {deg}, expected {tuple(expected)}")


def build_monad(n: int, q: int, k: int, form: BilinearFormA | None = None,
                field: GF | FieldSpec | int | None = None) -> MonadData:
    """The monad of E0[n,q,k](-L) for the divisor {f = 0}.

    ``field`` may be a GF, a FieldSpec, or a prime p (then GF(p^e) with
    p^e >= 64).  Without a form the identity form f = sum x_i y_i is used.
    """
    if form is not None:
        F = form.field
    elif isinstance(field, GF):
        F = field
    elif isinstance(field, FieldSpec):
        F = field.field
    else:
        p = field if isinstance(field, int) else _char_of(q)
        F = make_field(p, default_extension(p))
    prime_power_exponent(q, F.p)
    if not 1 <= k <= q:
        raise ValueError(f"k={k} outside [1, {q}]")
    if form is None:
        form = BilinearFormA.identity(n, F)
    if form.size != n + 1:
        raise ValueError("form size does not match n")
    nv = 2 * (n + 1)
    a = form.array()
    x = [Poly.var(F, nv, i) for i in range(n + 1)]
    y = [Poly.var(F, nv, n + 1 + j) for j in range(n + 1)]
    lam = [Poly.linear(F, nv, a[:, j]) for j in range(n + 1)]
    f = Poly.zero(F, nv)
    for j in range(n + 1):
        f = f + lam[j] * y[j]
    A = tuple(yj ** q for yj in y) + (-(f ** (q - k)),)
    B = tuple(lj ** q for lj in lam) + (f ** k,)
    m = MonadData((n, n), F, (0, -q), tuple([(0, 0)] * (n + 1) + [(q - k, -k)]), (q, 0),
                  A, B, n, q, k, form, "h")
    m.check()
    return m


def _char_of(q):
    from .finite_field import split_prime_power
    return split_prime_power(q)[0]


def divisor_equation(m: MonadData) -> Poly:
    """f for the monad's divisor, in the monad's variables."""
    n, F, a = m.n, m.field, m.form.array()
    nv = 2 * (n + 1)
    f = Poly.zero(F, nv)
    for i in range(n + 1):
        for j in range(n + 1):
            if a[i, j]:
                xi = i if m.orientation == "h" else n + 1 + i
                yj = n + 1 + j if m.orientation == "h" else j
                f = f + Poly.var(F, nv, xi) * Poly.var(F, nv, yj, int(a[i, j]))
    return f


def line_bundle_monad(dims, degree, F) -> MonadData:
    nv = sum(d + 1 for d in dims)
    return MonadData(tuple(dims), F, None, (tuple(degree),), None, (), (),
                     n=dims[0])


def dual_monad(m: MonadData) -> MonadData:
    """tgt^v --B^T--> ⊕ mid^v --A^T--> src^v."""
    def neg(d):
        return None if d is None else tuple(-a for a in d)
    return replace(m, src=neg(m.tgt), mid=tuple(neg(d) for d in m.mid), tgt=neg(m.src),
                   A=m.B, B=m.A)


def serre_twist(dims, tw):
    """Twist t' with h^i(E(t)) = h^{top-i}(E^v(t')) (canonical O(-d-1) per factor)."""
    return tuple(-t - d - 1 for t, d in zip(tw, dims))


def _shift(d, tw):
    return tuple(a + b for a, b in zip(d, tw))


def _B_matrix(m, tw, i=0):
    return block_map_matrix(i, m.mid, [m.tgt], [list(m.B)], m.dims, m.field, tw)


def _A_matrix(m, tw, i=0):
    return block_map_matrix(i, [m.src], m.mid, [[a] for a in m.A], m.dims, m.field, tw)


def h0_twist(m: MonadData, tw) -> int:
    """dim H^0(E(tw)) = dim ker H^0(B) - rank H^0(A).

    Valid because H^1 of a line bundle vanishes on a product of projective
    spaces of dimension >= 2 each.
    """
    if min(m.dims) < 2:
        raise ValueError("h0_twist needs every factor of dimension >= 2")
    mid_dim = sum(product_h(m.dims, _shift(d, tw))[0] for d in m.mid)
    if m.tgt is not None and mid_dim:
        kernel = mid_dim - rank(_B_matrix(m, tw), m.field)
    else:
        kernel = mid_dim
    image = rank(_A_matrix(m, tw), m.field) if m.src is not None and kernel else 0
    return kernel - image


def h0_sections(m: MonadData, tw) -> list[list[Poly]]:
    """Sections of the kernel bundle K(tw) spanning H^0(E(tw)) modulo im A,
    as lists of polynomials (one per middle summand)."""
    F = m.field
    bases = [cohom_basis(m.dims, 0, _shift(d, tw)).labels for d in m.mid]
    total = sum(len(b) for b in bases)
    if total == 0:
        return []
    if m.tgt is not None:
        N = nullspace(_B_matrix(m, tw), F)
    else:
        N = np.eye(total, dtype=np.int64)
    out = []
    for v in N:
        polys, pos = [], 0
        for b in bases:
            polys.append(Poly(F, m.nvars, {lab: int(v[pos + r]) for r, lab in enumerate(b)}))
            pos += len(b)
        out.append(polys)
    return out


def table_h0(m: MonadData, box) -> dict:
    from .cohomology import twist_box
    return {tw: h0_twist(m, tw) for tw in twist_box(box)}


# -- flips and restrictions -----------------------------------------------------

def flip_monad(m: MonadData) -> MonadData:
    """Pullback under the involution exchanging the two factors.

    Swaps the x and y blocks, the bidegree components and transposes the
    form; a standard monad becomes a presentation of the kernel of
    p_L^* F^* Q_L -> O(qh) on the swapped divisor.
    """
    if len(m.dims) != 2 or m.dims[0] != m.dims[1]:
        raise ValueError("flip needs P^n x P^n")
    n1 = m.dims[0] + 1
    perm = [i + n1 for i in range(n1)] + list(range(n1))

    def sw(d):
        return None if d is None else (d[1], d[0])
    return replace(m, src=sw(m.src), mid=tuple(sw(d) for d in m.mid), tgt=sw(m.tgt),
                   A=tuple(a.permute(perm) for a in m.A),
                   B=tuple(b.permute(perm) for b in m.B),
                   form=m.form.transpose() if m.form else None,
                   orientation="L" if m.orientation == "h" else "h")


def restrict_hyperplane_pair(m: MonadData) -> MonadData:
    """Substitute x_n = y_n = 0: a monad on P^{n-1} x P^{n-1}."""
    n = m.dims[0]
    F = m.field
    a = m.form.array()
    block = a[:n, :n]
    if rank(block, F) < n:
        raise SmoothnessError("restricted form is degenerate; change coordinates first")
    nv_new = 2 * n
    images = []
    for i in range(n + 1):
        images.append(Poly.var(F, nv_new, i) if i < n else Poly.zero(F, nv_new))
    for j in range(n + 1):
        images.append(Poly.var(F, nv_new, n + j) if j < n else Poly.zero(F, nv_new))
    form = BilinearFormA(tuple(map(tuple, block)), F)
    return replace(m, dims=(n - 1, n - 1),
                   A=tuple(p.substitute(images) for p in m.A),
                   B=tuple(p.substitute(images) for p in m.B),
                   n=n - 1, form=form)


def restrict_to_fiber(m: MonadData, point, factor: int = 1) -> MonadData:
    """Restrict to P^n × {point} (factor=1) or {point} × P^n (factor=0)."""
    n = m.dims[0]
    F = m.field
    keep = 1 - factor
    nv_new = n + 1
    images = []
    for blk in range(2):
        for i in range(n + 1):
            if blk == keep:
                images.append(Poly.var(F, nv_new, i))
            else:
                images.append(Poly.constant(F, nv_new, int(point[i])))

    def deg(d):
        return None if d is None else (d[keep],)
    return replace(m, dims=(n,), src=deg(m.src), mid=tuple(deg(d) for d in m.mid),
                   tgt=deg(m.tgt), A=tuple(p.substitute(images) for p in m.A),
                   B=tuple(p.substitute(images) for p in m.B))


# -- lines and splitting types ----------------------------------------------------

@dataclass(frozen=True)
class LineSpec:
    """A line in a fibre: ``factor`` is the factor the line lives in
    (0: an L-line in P^n_L × {point}, 1: an h-line in {point} × P^n_h);
    the line is spanned by P and Q."""
    factor: int
    point: tuple
    P: tuple
    Q: tuple


@dataclass(frozen=True)
class SplittingType:
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees, reverse=True)))

    def profile(self, ts):
        return [sum(max(0, a + t + 1) for a in self.degrees) for t in ts]

    def __iter__(self):
        return iter(self.degrees)


def restrict_to_line(m: MonadData, line: LineSpec) -> MonadData:
    n = m.dims[0]
    F = m.field
    nv_new = 2
    u, v = Poly.var(F, 2, 0), Poly.var(F, 2, 1)
    images = []
    for blk in range(2):
        for i in range(n + 1):
            if blk == line.factor:
                images.append(u.scale(int(line.P[i])) + v.scale(int(line.Q[i])))
            else:
                images.append(Poly.constant(F, nv_new, int(line.point[i])))

    def deg(d):
        return None if d is None else (d[line.factor],)
    return replace(m, dims=(1,), src=deg(m.src), mid=tuple(deg(d) for d in m.mid),
                   tgt=deg(m.tgt), A=tuple(p.substitute(images) for p in m.A),
                   B=tuple(p.substitute(images) for p in m.B))


def _is_unit_constant(f: Poly) -> bool:
    return len(f.terms) == 1 and all(a == 0 for a in next(iter(f.terms)))


def line_h0(r: MonadData, t: int) -> int:
    """h^0(E(t)) for a monad restricted to a line P^1.

    A nonzero constant entry of A splits off the trivial sub-line bundle,
    leaving E = ker(B on the other summands); a constant entry of B does the
    same for the target, leaving E = coker(A on the other summands), whose
    h^0 picks up ker(H^1 A).
    """
    F = r.field
    tw = (t,)
    for j, a in enumerate(r.A):
        if _is_unit_constant(a) and r.mid[j] == r.src:
            keep = [i for i in range(len(r.mid)) if i != j]
            mids = [r.mid[i] for i in keep]
            dim = sum(product_h((1,), _shift(d, tw))[0] for d in mids)
            if r.tgt is None or dim == 0:
                return dim
            M = block_map_matrix(0, mids, [r.tgt], [[r.B[i] for i in keep]], (1,), F, tw)
            return dim - rank(M, F)
    for j, b in enumerate(r.B):
        if _is_unit_constant(b) and r.mid[j] == r.tgt:
            keep = [i for i in range(len(r.mid)) if i != j]
            mids = [r.mid[i] for i in keep]
            h0W = sum(product_h((1,), _shift(d, tw))[0] for d in mids)
            h1W = sum(product_h((1,), _shift(d, tw))[1] for d in mids)
            hA = product_h((1,), _shift(r.src, tw))
            out = h0W
            if hA[0] and h0W:
                out -= rank(block_map_matrix(0, [r.src], mids, [[r.A[i]] for i in keep],
                                             (1,), F, tw), F)
            if hA[1]:
                r1 = rank(block_map_matrix(1, [r.src], mids, [[r.A[i]] for i in keep],
                                           (1,), F, tw), F) if h1W else 0
                out += hA[1] - r1
            return out
    raise ModelInconsistencyError("restricted monad has no constant entry to split off")


def profile_to_splitting(profile: dict, rank_: int) -> SplittingType:
    """Recover a_1 >= ... >= a_r from t -> h^0(⊕O(a_i + t))."""
    ts = sorted(profile)
    t0, t1 = ts[0], ts[-1]
    if ts != list(range(t0, t1 + 1)):
        raise ValueError("profile must be on consecutive twists")
    if profile[t0] != 0:
        raise ModelInconsistencyError(f"h^0 at t={t0} is {profile[t0]}; window too small")
    at_least = {t: profile[t] - profile[t - 1] for t in ts[1:]}   # #{a_i >= -t}
    if at_least[t1] != rank_:
        raise ModelInconsistencyError("summands below the scanned window")
    degrees = []
    prev = 0
    for t in ts[1:]:
        cnt = at_least[t] - prev
        if cnt < 0:
            raise ModelInconsistencyError("non-monotone profile")
        degrees += [-t] * cnt
        prev = at_least[t]
    st = SplittingType(tuple(degrees))
    if st.profile(ts) != [profile[t] for t in ts]:
        raise ModelInconsistencyError(f"profile {profile} is not of the form sum max(0, a+t+1)")
    return st


def splitting_type(m: MonadData, line: LineSpec, window=None) -> SplittingType:
    """Splitting type of the monad's bundle on a line inside a fibre."""
    r = restrict_to_line(m, line)
    if window is None:
        window = (-m.q - 2, m.q + 2)
    prof = {t: line_h0(r, t) for t in range(window[0], window[1] + 1)}
    return profile_to_splitting(prof, m.rank)


# -- points and lines over GF(p^e) -------------------------------------------------

def random_point(F: GF, size: int, rng) -> tuple:
    for _ in range(1000):
        v = F.random(rng, size)
        if np.any(v):
            return tuple(int(a) for a in v)
    raise SamplingError("could not sample a nonzero vector")


def _kernel_of_row(F, row):
    return nullspace(np.array([row], dtype=np.int64), F)


def _random_in_span(F, basis, rng):
    for _ in range(1000):
        c = F.random(rng, basis.shape[0])
        v = np.zeros(basis.shape[1], dtype=np.int64)
        for ci, b in zip(c, basis):
            v = F.vadd(v, F.vmul(np.full_like(b, int(ci)), b))
        if np.any(v):
            return tuple(int(a) for a in v)
    raise SamplingError("could not sample a nonzero vector in a subspace")


def divisor_slice(m: MonadData, point, factor: int) -> np.ndarray:
    """Coefficients c with A ∩ fibre = {sum c_i z_i = 0} for the free factor."""
    F = m.field
    n = m.dims[0]
    f = divisor_equation(m)
    coeffs = []
    for i in range(n + 1):
        c = 0
        for mono, val in f.terms.items():
            free = mono[:n + 1] if factor == 0 else mono[n + 1:]
            fixed = mono[n + 1:] if factor == 0 else mono[:n + 1]
            if free[i] == 1:
                j = fixed.index(1)
                c = F.add(c, F.mul(val, int(point[j])))
        coeffs.append(c)
    return np.array(coeffs, dtype=np.int64)


def random_line(m: MonadData, factor: int, rng, in_divisor: bool | None = False,
                point=None) -> LineSpec:
    """Random line in a fibre.  in_divisor=True: line inside A; False: line
    not inside A; None: unconstrained."""
    F = m.field
    n = m.dims[0]
    for _ in range(1000):
        pt = point if point is not None else random_point(F, n + 1, rng)
        sl = divisor_slice(m, pt, factor)
        if not np.any(sl):
            continue
        if in_divisor:
            K = _kernel_of_row(F, sl)
            P = _random_in_span(F, K, rng)
            Q = _random_in_span(F, K, rng)
        else:
            P = random_point(F, n + 1, rng)
            Q = random_point(F, n + 1, rng)
        if rank(np.array([P, Q]), F) < 2:
            continue
        inside = _evaluate_linear(F, sl, P) == 0 and _evaluate_linear(F, sl, Q) == 0
        if in_divisor is False and inside:
            continue
        return LineSpec(factor, tuple(pt), P, Q)
    raise SamplingError("could not sample a line")


def _evaluate_linear(F, coeffs, v):
    s = 0
    for c, x in zip(coeffs, v):
        s = F.add(s, F.mul(int(c), int(x)))
    return s


def random_point_on_divisor(m: MonadData, rng) -> tuple:
    """(x, y) with f(x, y) = 0, as a flat coordinate tuple."""
    F = m.field
    n = m.dims[0]
    y = random_point(F, n + 1, rng)
    sl = divisor_slice(m, y, 0)
    x = _random_in_span(F, _kernel_of_row(F, sl), rng)
    return x + y


# -- global generation --------------------------------------------------------------

def global_gen_probe(m: MonadData, tw, samples: int = 25, seed: int = 0,
                     on_divisor: bool = False):
    """Spot-check that H^0(E(tw)) generates every sampled fibre.

    Sections of the kernel bundle are evaluated at random points; together
    with A(P) they must span the fibre of K (dimension rank(E) + 1 when A
    is present).  On the divisor, sections of E|_A are taken from the monad
    reduced modulo f.  Returns (ok, witnesses) with one (point, rank,
    needed) triple per sample.
    """
    rng = np.random.default_rng(seed)
    F = m.field
    if on_divisor:
        sections = divisor_sections(m, tw, 1)
    else:
        sections = h0_sections(m, tw)
    needed = m.rank + (m.src is not None)
    witnesses = []
    ok = True
    for _ in range(samples):
        pt = random_point_on_divisor(m, rng) if on_divisor else _random_ambient_point(m, rng)
        rows = [[p.evaluate(pt) for p in sec] for sec in sections]
        if m.src is not None:
            rows.append([a.evaluate(pt) for a in m.A])
        r = rank(np.array(rows, dtype=np.int64).reshape(len(rows), len(m.mid)), F) if rows else 0
        witnesses.append((pt, r, needed))
        ok = ok and r == needed
    return ok, witnesses


def _random_ambient_point(m, rng):
    pt = ()
    for d in m.dims:
        pt += random_point(m.field, d + 1, rng)
    return pt


# -- thickened divisor ------------------------------------------------------------

def _quotient_relations(m, f_power: Poly, deg, power_deg):
    """Rows spanning f^k · S_{deg - power_deg} inside S_deg (in H^0 basis)."""
    dims = m.dims
    src = tuple(a - b for a, b in zip(deg, power_deg))
    M = block_map_matrix(0, [src], [deg], [[f_power]], dims, m.field, tuple(0 for _ in dims))
    return M


def _induced_rank(F, M, R2):
    """Rank of V1 -> V2/R2 given by M (columns = images of V1 basis)."""
    if M.shape[1] == 0:
        return 0
    if R2.shape[1] == 0:
        return rank(M, F)
    return rank(np.hstack([M, R2]), F) - rank(R2, F)


def _sum_relations(m, degs, tw, fk, kdeg):
    blocks = []
    for d in degs:
        blocks.append(_quotient_relations(m, fk, _shift(d, tw), kdeg))
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    R = np.zeros((rows, cols), dtype=np.int64)
    r0 = c0 = 0
    for b in blocks:
        R[r0:r0 + b.shape[0], c0:c0 + b.shape[1]] = b
        r0 += b.shape[0]
        c0 += b.shape[1]
    return R


def thickened_h0(m: MonadData, tw, k: int, summands=None) -> int:
    """h^0 of the monad's cohomology computed on graded pieces of R/(f^k),
    optionally keeping only the given middle summands."""
    F = m.field
    f = divisor_equation(m)
    fk = f ** k
    kdeg = (k, k)
    idx = list(range(len(m.mid))) if summands is None else list(summands)
    mids = [m.mid[i] for i in idx]
    Rmid = _sum_relations(m, mids, tw, fk, kdeg)
    mid_dim = Rmid.shape[0] - (rank(Rmid, F) if Rmid.size else 0)
    if m.tgt is not None:
        Rtgt = _sum_relations(m, [m.tgt], tw, fk, kdeg)
        Bm = block_map_matrix(0, mids, [m.tgt], [[m.B[i] for i in idx]], m.dims, F, tw)
        kernel = mid_dim - _induced_rank(F, Bm, Rtgt)
    else:
        kernel = mid_dim
    if m.src is not None:
        Am = block_map_matrix(0, [m.src], mids, [[m.A[i]] for i in idx], m.dims, F, tw)
        image = _induced_rank(F, Am, Rmid)
    else:
        image = 0
    return kernel - image


def divisor_line_bundle_h0(m: MonadData, degree, tw, k) -> int:
    """dim of the graded piece of R/(f^k) in degree degree+tw."""
    f = divisor_equation(m)
    R = _quotient_relations(m, f ** k, _shift(degree, tw), (k, k))
    return R.shape[0] - (rank(R, m.field) if R.size else 0)


def restrict_to_kA(m: MonadData, box, k: int | None = None) -> dict:
    """h^0 bookkeeping for E0[n,q,k](-L)|_{kA} = O_{kA}((q-k)L - kh) ⊕ E'.

    For each twist returns (total, line summand, E') where E' is the
    cohomology of O(-qh) -> (n+1)O -> O(qL) on kA.
    """
    from .cohomology import twist_box
    k = m.k if k is None else k
    out = {}
    top = list(range(len(m.mid) - 1))
    for tw in twist_box(box):
        total = thickened_h0(m, tw, k)
        line = divisor_line_bundle_h0(m, m.mid[-1], tw, k)
        eprime = thickened_h0(m, tw, k, summands=top)
        out[tw] = (total, line, eprime)
    return out


def divisor_sections(m: MonadData, tw, k: int = 1) -> list[list[Poly]]:
    """Polynomial representatives of sections of K(tw)|_{kA}."""
    F = m.field
    f = divisor_equation(m)
    fk = f ** k
    Rtgt = _sum_relations(m, [m.tgt], tw, fk, (k, k))
    Bm = block_map_matrix(0, m.mid, [m.tgt], [list(m.B)], m.dims, F, tw)
    N = nullspace(np.hstack([Bm, Rtgt]), F)[:, :Bm.shape[1]]
    bases = [cohom_basis(m.dims, 0, _shift(d, tw)).labels for d in m.mid]
    out = []
    for v in N:
        if not np.any(v):
            continue
        polys, pos = [], 0
        for b in bases:
            polys.append(Poly(F, m.nvars, {lab: int(v[pos + r]) for r, lab in enumerate(b)}))
            pos += len(b)
        out.append(polys)
    return out


# -- Frobenius on presentations --------------------------------------------------

def frobenius_presentation(matrix, q: int):
    """Entrywise q-th power of a matrix of polynomials (nested lists)."""
    F = None
    for row in matrix:
        for e in row:
            F = e.F
            break
    if F is not None:
        prime_power_exponent(q, F.p)
    return [[e ** q for e in row] for row in matrix]


def euler_column(n: int, F: GF, offset: int = 0, nvars: int | None = None):
    """The column (z_0, ..., z_n)^T of the Euler sequence O(-1) -> (n+1)O."""
    nv = nvars if nvars is not None else n + 1
    return [[Poly.var(F, nv, offset + i)] for i in range(n + 1)]


def presentation_chern(src_degrees, tgt_degrees, n: int):
    """c of the cokernel of an injective map ⊕O(src) -> ⊕O(tgt) on P^n,
    as a list of coefficients of the hyperplane class."""
    num = [1] + [0] * n
    for d in tgt_degrees:
        num = _series_mul(num, [1, d] + [0] * (n - 1), n)
    for d in src_degrees:
        inv = [(-d) ** i for i in range(n + 1)]
        num = _series_mul(num, inv, n)
    return num


def _series_mul(a, b, n):
    out = [0] * (n + 1)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            out[i + j] += a[i] * b[j]
    return out


# -- characteristic-p multilinear algebra on P^n ------------------------------------

class _GradedQuotient:
    """M = (free module on ``gens`` in degree 0) / (relations).

    Each relation is (degree, {gen_index: Poly}).  Graded pieces are handled
    as ambient coordinate spaces S_d^gens with a relation subspace.
    """

    def __init__(self, F, nv, ngens, relations):
        self.F, self.nv, self.ngens, self.relations = F, nv, ngens, relations

    def basis(self, d):
        return monomials(self.nv, d) if d >= 0 else ()

    def ambient_dim(self, d):
        return self.ngens * len(self.basis(d))

    def index(self, d):
        mons = self.basis(d)
        pos = {m: r for r, m in enumerate(mons)}
        return lambda g, mono: g * len(mons) + pos[mono]

    def relation_matrix(self, d):
        """Columns span the relation subspace in degree d."""
        idx = self.index(d)
        cols = []
        for rdeg, rel in self.relations:
            for mono in self.basis(d - rdeg):
                col = np.zeros(self.ambient_dim(d), dtype=np.int64)
                for g, poly in rel.items():
                    for m, c in poly.terms.items():
                        k = idx(g, tuple(a + b for a, b in zip(m, mono)))
                        col[k] = self.F.add(int(col[k]), c)
                cols.append(col)
        if not cols:
            return np.zeros((self.ambient_dim(d), 0), dtype=np.int64)
        return np.array(cols, dtype=np.int64).T

    def dim(self, d):
        R = self.relation_matrix(d)
        return self.ambient_dim(d) - (rank(R, self.F) if R.size else 0)

    def generic_rank(self, rng):
        """Rank of the associated sheaf: gens minus the rank of the relation
        matrix at a random point."""
        F = self.F
        E = field_for_points(F)
        pt = random_point(E, self.nv, rng)
        rows = []
        for _, rel in self.relations:
            row = [0] * self.ngens
            for g, poly in rel.items():
                row[g] = _lift(poly, E).evaluate(pt)
            rows.append(row)
        return self.ngens - rank(np.array(rows, dtype=np.int64), E)


def field_for_points(F):
    return make_field(F.p, default_extension(F.p)) if F.e == 1 else F


def _lift(poly, E):
    # prime-field elements keep their integer labels in every extension
    return Poly(E, poly.nvars, dict(poly.terms))


def _constant_map(G, nmons):
    """Map of free modules sending gens to constant combinations, on a
    graded piece with nmons monomials."""
    return np.kron(np.array(G, dtype=np.int64), np.eye(nmons, dtype=np.int64))


def _span_rank(F, *mats):
    mats = [M for M in mats if M.shape[1]]
    if not mats:
        return 0
    return rank(np.hstack(mats), F)


def _in_span(F, vecs, R):
    """True iff every column of vecs lies in the column span of R."""
    if vecs.shape[1] == 0:
        return True
    return _span_rank(F, R, vecs) == _span_rank(F, R)


def charp_multilinear_suite(n: int, p: int, max_degree: int = 4, seed: int = 0) -> dict:
    """Graded-module checks of the multilinear sequences for Q on P^n.

    Q = S^{n+1}/(v), v = sum x_i e_i.  Sym^2 Q, Λ^2 Q, Q⊗Q and F^*Q are
    presented from this, D^2 Q is ker(Q⊗Q -> Λ^2 Q).  For p = 2 checks, in
    each degree 0..max_degree, exactness of
        0 -> F^*Q -> Sym^2 Q -> Λ^2 Q -> 0,   e_i -> e_i^2,
        0 -> Λ^2 Q -> D^2 Q -> F^*Q -> 0,     D^2 -> F^* via the diagonal
    of a symmetric representative.  For every p checks
    0 -> Λ^2 Q -> Q⊗Q -> Sym^2 Q -> 0.
    """
    from .finite_field import field as gf
    F = gf(p, 1)
    nv = n + 1
    N = n + 1
    x = [Poly.var(F, nv, i) for i in range(N)]
    pairs_le = [(i, j) for i in range(N) for j in range(i, N)]
    pairs_lt = [(i, j) for i in range(N) for j in range(i + 1, N)]
    pairs_all = [(i, j) for i in range(N) for j in range(N)]
    i_le = {pr: r for r, pr in enumerate(pairs_le)}
    i_lt = {pr: r for r, pr in enumerate(pairs_lt)}
    i_all = {pr: r for r, pr in enumerate(pairs_all)}
    minus_one = F.neg(1)

    Q = _GradedQuotient(F, nv, N, [(1, {i: x[i] for i in range(N)})])
    sym2 = _GradedQuotient(F, nv, len(pairs_le), [
        (1, {i_le[tuple(sorted((i, j)))]: x[i] for i in range(N)}) for j in range(N)])
    wedge_rels = []
    for j in range(N):
        rel = {}
        for i in range(N):
            if i == j:
                continue
            if i < j:
                rel[i_lt[(i, j)]] = x[i]
            else:
                rel[i_lt[(j, i)]] = x[i].scale(minus_one)
        wedge_rels.append((1, rel))
    wedge2 = _GradedQuotient(F, nv, len(pairs_lt), wedge_rels)
    frob = _GradedQuotient(F, nv, N, [(p, {i: x[i] ** p for i in range(N)})])
    tens_rels = [(1, {i_all[(i, j)]: x[i] for i in range(N)}) for j in range(N)]
    tens_rels += [(1, {i_all[(i, j)]: x[j] for j in range(N)}) for i in range(N)]
    tens = _GradedQuotient(F, nv, len(pairs_all), tens_rels)

    # constant generator maps (rows: target gens, cols: source gens)
    G_wedge_to_tens = np.zeros((len(pairs_all), len(pairs_lt)), dtype=np.int64)
    for (i, j), c in i_lt.items():
        G_wedge_to_tens[i_all[(i, j)], c] = 1
        G_wedge_to_tens[i_all[(j, i)], c] = minus_one
    G_tens_to_sym = np.zeros((len(pairs_le), len(pairs_all)), dtype=np.int64)
    G_tens_to_wedge = np.zeros((len(pairs_lt), len(pairs_all)), dtype=np.int64)
    for (i, j), c in i_all.items():
        G_tens_to_sym[i_le[tuple(sorted((i, j)))], c] = 1
        if i < j:
            G_tens_to_wedge[i_lt[(i, j)], c] = 1
        elif i > j:
            G_tens_to_wedge[i_lt[(j, i)], c] = minus_one
    G_frob_to_sym = np.zeros((len(pairs_le), N), dtype=np.int64)
    for i in range(N):
        G_frob_to_sym[i_le[(i, i)], i] = 1
    G_sym_to_wedge = np.zeros((len(pairs_lt), len(pairs_le)), dtype=np.int64)
    for (i, j), c in i_le.items():
        if i < j:
            G_sym_to_wedge[i_lt[(i, j)], c] = 1

    rng = np.random.default_rng(seed)
    report = {"n": n, "p": p, "max_degree": max_degree,
              "ranks": {"Q": Q.generic_rank(rng), "Sym2": sym2.generic_rank(rng),
                        "Wedge2": wedge2.generic_rank(rng), "FrobQ": frob.generic_rank(rng),
                        "QxQ": tens.generic_rank(rng)},
              "degrees": []}
    all_ok = True
    for d in range(max_degree + 1):
        nm = len(Q.basis(d))
        entry = {"degree": d}
        R_w, R_t, R_s = wedge2.relation_matrix(d), tens.relation_matrix(d), sym2.relation_matrix(d)
        # 0 -> Λ² -> Q⊗Q -> Sym² -> 0
        ok_t = _exact_three(F, wedge2, tens, sym2, d,
                            _constant_map(G_wedge_to_tens, nm), _constant_map(G_tens_to_sym, nm))
        entry["tensor_sequence"] = ok_t
        all_ok &= ok_t["exact"]
        if p == 2:
            phi = _constant_map(G_frob_to_sym, nm)
            psi = _constant_map(G_sym_to_wedge, nm)
            ok1 = _exact_three(F, frob, sym2, wedge2, d, phi, psi)
            entry["frobenius_sequence"] = ok1
            all_ok &= ok1["exact"]
            # D² as the preimage of the wedge relations
            pi = _constant_map(G_tens_to_wedge, nm)
            Kfull = nullspace(np.hstack([pi, R_w]), F)[:, :pi.shape[1]] if pi.size else \
                np.zeros((0, tens.ambient_dim(d)), dtype=np.int64)
            K = Kfull.T if Kfull.size else np.zeros((tens.ambient_dim(d), 0), dtype=np.int64)
            dimD = _span_rank(F, K, R_t) - _span_rank(F, R_t)
            entry["dim_D2"] = dimD
            omega = _diagonal_map(F, K, R_t, N, nm, i_all)
            omega_R = _diagonal_map(F, R_t, R_t, N, nm, i_all)
            chi = _constant_map(G_wedge_to_tens, nm)
            R_f = frob.relation_matrix(d)
            ok2 = {"well_defined": _in_span(F, omega_R, R_f) and _in_span(F, _fmul(F, pi, R_t), R_w)}
            dim_w, dim_f = wedge2.dim(d), frob.dim(d)
            rank_chi = _span_rank(F, chi, R_t) - _span_rank(F, R_t)
            rank_omega = _span_rank(F, omega, R_f) - _span_rank(F, R_f)
            ok2["composite_zero"] = _in_span(F, _diagonal_map(F, chi, R_t, N, nm, i_all), R_f)
            ok2["injective"] = rank_chi == dim_w
            ok2["middle"] = dimD - rank_omega == rank_chi
            ok2["surjective"] = rank_omega == dim_f
            ok2["dims"] = [dim_w, dimD, dim_f]
            ok2["exact"] = all(ok2[k] for k in ("well_defined", "composite_zero", "injective",
                                                "middle", "surjective"))
            entry["divided_power_sequence"] = ok2
            all_ok &= ok2["exact"]
        report["degrees"].append(entry)
    report["exact"] = bool(all_ok)
    if p == 2 and n == 2:
        report["example"] = divided_power_example()
    return report


def _exact_three(F, X, Y, Z, d, f, g):
    """Exactness of 0 -> X_d -> Y_d -> Z_d -> 0 for maps given on ambients."""
    RX, RY, RZ = X.relation_matrix(d), Y.relation_matrix(d), Z.relation_matrix(d)
    dx, dy, dz = X.dim(d), Y.dim(d), Z.dim(d)
    out = {"dims": [dx, dy, dz]}
    out["well_defined"] = _in_span(F, _fmul(F, f, RX), RY) and _in_span(F, _fmul(F, g, RY), RZ)
    out["composite_zero"] = _in_span(F, _fmul(F, g, f), RZ)
    rf = _span_rank(F, f, RY) - _span_rank(F, RY)
    rg = _span_rank(F, g, RZ) - _span_rank(F, RZ)
    out["injective"] = rf == dx
    out["middle"] = dy - rg == rf
    out["surjective"] = rg == dz
    out["exact"] = all(out[k] for k in ("well_defined", "composite_zero", "injective",
                                        "middle", "surjective"))
    return out


def _fmul(F, A, B):
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    return F.matmul(A, B)


def _diagonal_map(F, W, R, N, nm, i_all):
    """Columns of W (in Q⊗Q ambient) sent to F^*Q: subtract a relation making
    the tensor symmetric, then read off the diagonal (characteristic 2)."""
    cols = []
    n_pairs = [(i, j) for i in range(N) for j in range(i + 1, N)]

    def antisym(V):
        out = np.zeros((len(n_pairs) * nm, V.shape[1]), dtype=np.int64)
        for r, (i, j) in enumerate(n_pairs):
            a = V[i_all[(i, j)] * nm:(i_all[(i, j)] + 1) * nm]
            b = V[i_all[(j, i)] * nm:(i_all[(j, i)] + 1) * nm]
            out[r * nm:(r + 1) * nm] = F.vsub(a, b)
        return out
    TR = antisym(R) if R.shape[1] else np.zeros((len(n_pairs) * nm, 0), dtype=np.int64)
    TW = antisym(W)
    for c in range(W.shape[1]):
        w = W[:, c]
        if TR.shape[1]:
            sol = nullspace(np.hstack([TR, TW[:, c:c + 1]]), F)
            usable = [s for s in sol if s[-1] != 0]
            if not usable and np.any(TW[:, c]):
                raise ValueError("tensor has no symmetric representative")
            if usable:
                s = usable[0]
                scale = F.neg(F.inv(int(s[-1])))
                coeffs = F.vmul(np.full(len(s) - 1, scale, dtype=np.int64), s[:-1])
                w = F.vsub(w, F.matmul(R, coeffs.reshape(-1, 1))[:, 0])
        elif np.any(TW[:, c]):
            raise ValueError("tensor has no symmetric representative")
        diag = np.concatenate([w[i_all[(i, i)] * nm:(i_all[(i, i)] + 1) * nm] for i in range(N)])
        cols.append(diag)
    if not cols:
        return np.zeros((N * nm, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def divided_power_example() -> dict:
    """Sheaf dimensions for D^2 Q on P^2 in characteristic 2, by chasing

        0 -> O(-2) -> 3O -> F^*Q -> 0
        0 -> O(1) -> D^2 Q -> F^*Q -> 0       (Λ^2 Q = O(1) on P^2)
        0 -> O(-2) -> O(1) ⊕ 3O -> D^2 Q -> 0
    """
    from .cohomology import ExactTriple, bott_h, les_chase
    from .finite_field import field as gf
    F = gf(2, 1)
    dims = (2,)
    squares = [[Poly.var(F, 3, i) ** 2] for i in range(3)]
    out = {}
    for t in range(-1, 5):
        rank_sq = rank(block_map_matrix(0, [(-2,)], [(0,)] * 3, squares, dims, F, (t,)), F) \
            if bott_h(2, t - 2)[0] else 0
        rank_sq2 = rank(block_map_matrix(2, [(-2,)], [(0,)] * 3, squares, dims, F, (t,)), F) \
            if bott_h(2, t - 2)[2] and bott_h(2, t)[2] else 0
        three = [3 * v for v in bott_h(2, t)]
        res_mid = [a + b for a, b in zip(bott_h(2, t + 1), three)]
        objects = {"Om2": bott_h(2, t - 2), "3O": three, "FQ": [None] * 3,
                   "O1": bott_h(2, t + 1), "D2": [None] * 3, "Om2b": bott_h(2, t - 2),
                   "res": res_mid}
        chase = les_chase(objects, [
            ExactTriple("Om2", "3O", "FQ", {("sub", 0): rank_sq, ("sub", 2): rank_sq2}),
            ExactTriple("O1", "D2", "FQ"),
            ExactTriple("Om2b", "res", "D2")], 2)
        out[t] = {"FQ": [(iv.lo, iv.hi) for iv in chase["FQ"]],
                  "D2": [(iv.lo, iv.hi) for iv in chase["D2"]]}
    return out
