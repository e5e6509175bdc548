"""Line bundle cohomology on products of projective spaces and a chaser for
long exact sequences.

Cohomology of O(d) on P^n is modelled concretely: H^0 by monomials of
degree d, H^n by inverse monomials x^-a (all a_i >= 1, sum a_i = -d).
Multiplication by a polynomial acts on inverse monomials by contraction,
dropping any product with a nonnegative exponent.  On a product the
Künneth decomposition is used factor by factor.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .chow import binom
from .errors import InfeasibleChaseError
from .polynomials import Poly, inverse_monomials, monomials


def bott_h(n: int, d: int) -> list[int]:
    """[h^0, ..., h^n] of O(d) on P^n."""
    out = [0] * (n + 1)
    if d >= 0:
        out[0] = binom(n + d, n)
    elif d <= -n - 1:
        out[n] = binom(-d - 1, n)
    return out


def product_h(dims: tuple[int, ...], degrees: tuple[int, ...]) -> list[int]:
    """Künneth: cohomology vector of O(degrees) on prod P^{dims[f]}."""
    out = [1]
    for n, d in zip(dims, degrees):
        v = bott_h(n, d)
        new = [0] * (len(out) + n)
        for i, x in enumerate(out):
            if x:
                for j, y in enumerate(v):
                    new[i + j] += x * y
        out = new
    return out


def kunneth_h(n: int, twist: tuple[int, int]) -> list[int]:
    """Cohomology vector of O(aL + bh) on P^n x P^n (length 2n+1)."""
    return product_h((n, n), tuple(twist))


def chi_vector(v) -> int:
    return sum((-1) ** i * x for i, x in enumerate(v))


# -- explicit bases and multiplication maps ----------------------------------

@dataclass(frozen=True)
class CohomBasis:
    degree: int
    twist: tuple[int, ...]
    labels: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.labels)

    def index(self):
        return {m: k for k, m in enumerate(self.labels)}


def cohom_basis(dims: tuple[int, ...], i: int, twist: tuple[int, ...]) -> CohomBasis:
    """Basis of H^i(O(twist)) as concatenated exponent tuples, one block
    per factor (monomials for H^0 factors, inverse monomials for H^top)."""
    labels = []
    for strata in sorted(set(product(*[(0, n) for n in dims]))):
        if sum(strata) != i:
            continue
        parts = []
        for n, j, d in zip(dims, strata, twist):
            parts.append(monomials(n + 1, d) if j == 0 else inverse_monomials(n + 1, d))
        for combo in product(*parts):
            labels.append(tuple(a for part in combo for a in part))
    return CohomBasis(i, tuple(twist), tuple(labels))


def mult_matrix(i: int, src: tuple[int, ...], dst: tuple[int, ...], f: Poly,
                dims: tuple[int, ...] = None) -> np.ndarray:
    """Matrix of multiplication by f: H^i(O(src)) -> H^i(O(dst)).

    Rows index the target basis, columns the source basis.
    """
    if dims is None:
        n = (f.nvars - 2) // 2
        dims = (n, n)
    blocks = tuple(n + 1 for n in dims)
    if not f.is_zero():
        deg = f.block_degree(blocks)
        if tuple(d - s for d, s in zip(dst, src)) != deg:
            raise ValueError(f"degree mismatch: {src} -> {dst} by a form of degree {deg}")
    S = cohom_basis(dims, i, src)
    T = cohom_basis(dims, i, dst)
    M = np.zeros((len(T), len(S)), dtype=np.int64)
    if f.is_zero() or not len(S) or not len(T):
        return M
    F = f.F
    tindex = T.index()
    for col, lab in enumerate(S.labels):
        for m, c in f.terms.items():
            row = tindex.get(tuple(a + b for a, b in zip(lab, m)))
            if row is not None:
                M[row, col] = F.add(int(M[row, col]), c)
    return M


def block_map_matrix(i: int, src_degs, dst_degs, entries, dims, F, twist) -> np.ndarray:
    """Block matrix of a map ⊕O(src_degs) -> ⊕O(dst_degs) on H^i after
    twisting everything by ``twist``.  entries[r][c] is a Poly (or None)."""
    def tw(d):
        return tuple(a + b for a, b in zip(d, twist))
    row_sizes = [len(cohom_basis(dims, i, tw(d)).labels) for d in dst_degs]
    col_sizes = [len(cohom_basis(dims, i, tw(d)).labels) for d in src_degs]
    M = np.zeros((sum(row_sizes), sum(col_sizes)), dtype=np.int64)
    r0 = 0
    for r, dd in enumerate(dst_degs):
        c0 = 0
        for c, sd in enumerate(src_degs):
            f = entries[r][c]
            if f is not None and not f.is_zero() and row_sizes[r] and col_sizes[c]:
                M[r0:r0 + row_sizes[r], c0:c0 + col_sizes[c]] = mult_matrix(
                    i, tw(sd), tw(dd), f, dims)
            c0 += col_sizes[c]
        r0 += row_sizes[r]
    return M


# -- Euler characteristics -----------------------------------------------------

def monad_chi(n: int, q: int, k: int, twist: tuple[int, int]) -> int:
    """χ(E0[n,q,k](-L) ⊗ O(sL + th)) from the monad, in closed form."""
    s, t = twist

    def chi(a, b):
        return binom(n + a, n) * binom(n + b, n)
    return (n + 1) * chi(s, t) + chi(s + q - k, t - k) - chi(s, t - q) - chi(s + q, t)


# -- long exact sequence chaser --------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int | None          # None: unbounded above

    @property
    def exact(self):
        return self.hi is not None and self.lo == self.hi

    @property
    def value(self):
        return self.lo if self.exact else None


@dataclass
class ExactTriple:
    """0 -> sub -> mid -> quo -> 0.  ``ranks`` may fix, per degree i, the
    rank of H^i(sub)->H^i(mid) ("sub"), H^i(mid)->H^i(quo) ("quo") or the
    connecting map H^i(quo)->H^{i+1}(sub) ("delta")."""
    sub: str
    mid: str
    quo: str
    ranks: dict = field(default_factory=dict)


def les_chase(objects: dict, triples: list[ExactTriple], top: int) -> dict:
    """Every cohomology dimension forced by exactness.

    ``objects`` maps a name to a list of length top+1 with ints for known
    dimensions and None for unknown ones.  Returns name -> list[Interval].
    Unknown ranks of connecting maps are left free; an entry whose value is
    not forced comes back as a proper interval.
    """
    var_index: dict = {}

    def var(key):
        if key not in var_index:
            var_index[key] = len(var_index)
        return var_index[key]

    def hterm(name, i):
        v = objects[name][i] if 0 <= i <= top else 0
        return (None, v) if v is not None else (var(("h", name, i)), 0)

    eqs = []          # (dict var->coef, rhs)
    for t, tr in enumerate(triples):
        for i in range(top + 1):
            for kind in ("sub", "quo", "delta"):
                if kind == "delta" and i == top:
                    continue
                var(("r", t, kind, i))
        for i in range(top + 1):
            for name, parts in ((tr.sub, [("delta", i - 1), ("sub", i)]),
                                (tr.mid, [("sub", i), ("quo", i)]),
                                (tr.quo, [("quo", i), ("delta", i)])):
                coefs: dict = {}
                rhs = 0
                hv, hc = hterm(name, i)
                if hv is None:
                    rhs += hc
                else:
                    coefs[hv] = coefs.get(hv, 0) - 1
                for kind, j in parts:
                    if j < 0 or (kind == "delta" and j >= top):
                        continue
                    rv = var(("r", t, kind, j))
                    coefs[rv] = coefs.get(rv, 0) + 1
                eqs.append((coefs, rhs))
        for (kind, i), val in tr.ranks.items():
            eqs.append(({var(("r", t, kind, i)): 1}, val))

    nv = len(var_index)
    known = _propagate(eqs, nv)
    targets = [(name, i) for name, vec in objects.items() for i in range(top + 1)
               if vec[i] is None]
    out = {name: [Interval(v, v) if v is not None else None for v in vec]
           for name, vec in objects.items()}
    pending = []
    for name, i in targets:
        key = ("h", name, i)
        if key not in var_index:
            out[name][i] = Interval(0, None)
            continue
        v = var_index[key]
        if v in known:
            out[name][i] = Interval(known[v], known[v])
        else:
            pending.append((name, i, v))
    if pending or len(known) < nv:
        _ilp_check_and_bound(eqs, nv, known, pending, out)
    return out


def _propagate(eqs, nv):
    known: dict = {}
    changed = True
    while changed:
        changed = False
        for coefs, rhs in eqs:
            unknown = [v for v in coefs if v not in known and coefs[v]]
            rest = rhs - sum(c * known[v] for v, c in coefs.items() if v in known)
            if not unknown:
                if rest != 0:
                    raise InfeasibleChaseError("exactness violated by the given data")
                continue
            if len(unknown) == 1:
                v = unknown[0]
                val, r = divmod(rest, coefs[v])
                if r or val < 0:
                    raise InfeasibleChaseError("exactness forces a negative or fractional rank")
                known[v] = val
                changed = True
            elif rest == 0 and all(coefs[v] > 0 for v in unknown):
                for v in unknown:
                    known[v] = 0
                changed = True
    return known


def _ilp_check_and_bound(eqs, nv, known, pending, out):
    A = np.zeros((len(eqs), nv))
    b = np.zeros(len(eqs))
    for r, (coefs, rhs) in enumerate(eqs):
        for v, c in coefs.items():
            A[r, v] = c
        b[r] = rhs
    lb = np.zeros(nv)
    ub = np.full(nv, np.inf)
    for v, val in known.items():
        lb[v] = ub[v] = val
    cons = LinearConstraint(A, b, b)
    integrality = np.ones(nv)
    bounds = Bounds(lb, ub)
    res = milp(np.zeros(nv), constraints=cons, integrality=integrality, bounds=bounds)
    if res.status != 0:
        raise InfeasibleChaseError("no assignment of ranks is compatible with exactness")
    for name, i, v in pending:
        c = np.zeros(nv)
        c[v] = 1
        lo = milp(c, constraints=cons, integrality=integrality, bounds=bounds)
        hi = milp(-c, constraints=cons, integrality=integrality, bounds=bounds)
        lo_v = int(round(lo.fun))
        hi_v = None if hi.status != 0 else int(round(-hi.fun))
        out[name][i] = Interval(lo_v, hi_v)


# -- tables ------------------------------------------------------------------------

@dataclass
class CohomTable:
    """(i, s, t) -> Interval; exact entries have lo == hi.  Tables on a
    single projective space use keys (i, s)."""
    entries: dict = field(default_factory=dict)
    top: int = 0

    def set_column(self, twist, intervals):
        for i, iv in enumerate(intervals):
            self.entries[(i,) + tuple(twist)] = iv

    def column(self, twist):
        return [self.entries[(i,) + tuple(twist)] for i in range(self.top + 1)]

    def twists(self):
        return sorted({k[1:] for k in self.entries})

    def dim(self, i, twist):
        return self.entries[(i,) + tuple(twist)].value

    def fully_exact(self, twist):
        return all(iv.exact for iv in self.column(twist))

    def rows(self):
        out = []
        for key in sorted(self.entries, key=lambda k: (k[1:], k[0])):
            iv = self.entries[key]
            out.append({"i": key[0], "s": key[1], "t": key[2] if len(key) > 2 else None,
                        "dim": iv.value, "lo": iv.lo, "hi": iv.hi, "exact": iv.exact})
        return out

    def to_json(self) -> str:
        return json.dumps({"entries": self.rows()}, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["i", "s", "t", "dim", "lo", "hi", "exact"],
                           lineterminator="\n")
        w.writeheader()
        for row in self.rows():
            w.writerow({k: ("" if v is None else v) for k, v in row.items()})
        return buf.getvalue()

    @classmethod
    def from_json(cls, text) -> "CohomTable":
        obj = json.loads(text) if isinstance(text, str) else text
        tab = cls()
        for e in obj["entries"]:
            key = (e["i"], e["s"]) if e.get("t") is None else (e["i"], e["s"], e["t"])
            tab.entries[key] = Interval(e["lo"], e["hi"])
            tab.top = max(tab.top, e["i"])
        return tab


def twist_box(box) -> list[tuple[int, int]]:
    """Accepts an int B (meaning [0, B-1]^2), a tuple ((s0, s1), (t0, t1)) of
    inclusive ranges, or a list of twists."""
    if isinstance(box, int):
        return [(s, t) for s in range(box) for t in range(box)]
    if isinstance(box, tuple) and len(box) == 2 and all(
            isinstance(r, tuple) and len(r) == 2 and all(isinstance(x, int) for x in r)
            for r in box):
        (s0, s1), (t0, t1) = box
        return [(s, t) for s in range(s0, s1 + 1) for t in range(t0, t1 + 1)]
    return [tuple(x) for x in box]


def monad_cohom_table(monad, box) -> CohomTable:
    """Cohomology of the monad's bundle over a box of twists.

    h^0 comes from the kernel computation, h^top from the dual monad by
    Serre duality, and the middle degrees from chasing
    0 -> K -> B -> C -> 0 and 0 -> A -> K -> E -> 0 with the ranks of the
    induced maps on line-bundle cohomology supplied.
    """
    from .model import h0_twist, dual_monad, serre_twist

    dual = dual_monad(monad)
    top = sum(monad.dims)
    table = CohomTable(top=top)
    for tw in twist_box(box):
        table.set_column(tw, monad_cohomology(monad, tw, dual=dual))
    return table


def monad_cohomology(monad, tw, dual=None) -> list[Interval]:
    from .model import h0_twist, dual_monad, serre_twist

    dims, F = monad.dims, monad.field
    top = sum(dims)
    if dual is None:
        dual = dual_monad(monad)

    def shift(d):
        return tuple(a + b for a, b in zip(d, tw))

    hA = product_h(dims, shift(monad.src))
    hC = product_h(dims, shift(monad.tgt))
    hB = [0] * (top + 1)
    for d in monad.mid:
        for i, x in enumerate(product_h(dims, shift(d))):
            hB[i] += x
    rB, rA = {}, {}
    strata = sorted({sum(s) for s in product(*[(0, n) for n in dims])})
    for j in strata:
        if hB[j] and hC[j]:
            rB[("quo", j)] = rank_of(block_map_matrix(
                j, monad.mid, [monad.tgt], [monad.B], dims, F, tw), F)
        else:
            rB[("quo", j)] = 0
        # H^j(K) embeds in H^j(B) when H^{j-1}(C) = 0
        if j == 0 or hC[j - 1] == 0:
            if hA[j] and hB[j]:
                rA[("sub", j)] = rank_of(block_map_matrix(
                    j, [monad.src], monad.mid, [[a] for a in monad.A], dims, F, tw), F)
            else:
                rA[("sub", j)] = 0
    objects = {"A": hA, "B": hB, "C": hC, "K": [None] * (top + 1), "E": [None] * (top + 1)}
    objects["E"][0] = h0_twist(monad, tw)
    objects["E"][top] = h0_twist(dual, serre_twist(monad.dims, tw))
    res = les_chase(objects, [ExactTriple("K", "B", "C", rB), ExactTriple("A", "K", "E", rA)], top)
    return res["E"]


def rank_of(M, F):
    from .finite_field import rank
    return rank(M, F)
