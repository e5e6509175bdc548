"""Bundle expressions and their Chern data; pullback obstructions.

An expression tree is evaluated to (rank, total Chern class) on a fixed
P^n x P^n.  Trees serialize to JSON as ``{"kind": ..., ...fields,
"children": [...]}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .chow import (BundleClassData, ChowClass, chern_E0_symbolic, dual_chern,
                   frobenius_pull_chern, inv_unit, tensor_chern, twist_chern,
                   wedge_sym_chern)


@dataclass(frozen=True)
class BundleExpr:
    kind: str
    children: tuple = ()
    params: tuple = ()

    KINDS = ("LineBundle", "PullbackQh", "PullbackQL", "Frobenius", "Dual", "Tensor",
             "DirectSum", "Wedge", "Sym", "PaperKernel")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")

    def to_json(self) -> dict:
        obj = {"kind": self.kind}
        obj.update(dict(self.params))
        if self.children:
            obj["children"] = [c.to_json() for c in self.children]
        return obj

    @classmethod
    def from_json(cls, obj) -> "BundleExpr":
        if isinstance(obj, str):
            obj = json.loads(obj)
        obj = dict(obj)
        kind = obj.pop("kind")
        children = tuple(cls.from_json(c) for c in obj.pop("children", []))
        params = tuple(sorted((k, v if not isinstance(v, list) else tuple(v))
                              for k, v in obj.items()))
        return cls(kind, children, params)

    def param(self, name):
        return dict(self.params)[name]


# constructors

def LineBundle(a: int, b: int) -> BundleExpr:
    """O(aL + bh)."""
    return BundleExpr("LineBundle", params=(("a", a), ("b", b)))


def PullbackQh() -> BundleExpr:
    return BundleExpr("PullbackQh")


def PullbackQL() -> BundleExpr:
    return BundleExpr("PullbackQL")


def Frobenius(a: int, child: BundleExpr, p: int) -> BundleExpr:
    """Pullback along the p^a-power Frobenius."""
    return BundleExpr("Frobenius", (child,), (("a", a), ("p", p)))


def Dual(child):
    return BundleExpr("Dual", (child,))


def Tensor(*children):
    return BundleExpr("Tensor", tuple(children))


def DirectSum(*children):
    return BundleExpr("DirectSum", tuple(children))


def Wedge(k, child):
    return BundleExpr("Wedge", (child,), (("k", k),))


def Sym(k, child):
    return BundleExpr("Sym", (child,), (("k", k),))


def PaperKernel(n, q, k):
    """E0[n,q,k](-L), the kernel of p_h^* F^{a*} Q_h -> O_{kA}(qL)."""
    return BundleExpr("PaperKernel", params=(("k", k), ("n", n), ("q", q)))


def eval_expr(e: BundleExpr, n: int) -> BundleClassData:
    """Rank and total Chern class of an expression on P^n x P^n."""
    kind = e.kind
    if kind == "LineBundle":
        return BundleClassData(1, ChowClass.divisor(n, e.param("a"), e.param("b"), 1))
    if kind == "PullbackQh":
        return BundleClassData(n, inv_unit(ChowClass.divisor(n, 0, -1, 1)))
    if kind == "PullbackQL":
        return BundleClassData(n, inv_unit(ChowClass.divisor(n, -1, 0, 1)))
    if kind == "PaperKernel":
        if e.param("n") != n:
            raise ValueError(f"kernel for n={e.param('n')} evaluated on n={n}")
        return chern_E0_symbolic(n, e.param("q"), e.param("k"))
    kids = [eval_expr(c, n) for c in e.children]
    if kind == "Frobenius":
        q = e.param("p") ** e.param("a")
        return BundleClassData(kids[0].rank, frobenius_pull_chern(kids[0].total, q))
    if kind == "Dual":
        return BundleClassData(kids[0].rank, dual_chern(kids[0].rank, kids[0].total))
    if kind == "DirectSum":
        total = ChowClass.one(n)
        for kd in kids:
            total = total * kd.total
        return BundleClassData(sum(kd.rank for kd in kids), total)
    if kind == "Tensor":
        out = kids[0]
        for kd in kids[1:]:
            out = _tensor2(out, kd)
        return out
    if kind in ("Wedge", "Sym"):
        return wedge_sym_chern(kids[0].rank, kids[0].total, e.param("k"),
                               "wedge" if kind == "Wedge" else "sym")
    raise ValueError(kind)


def _tensor2(a: BundleClassData, b: BundleClassData) -> BundleClassData:
    # tensoring with a line bundle has a closed form
    if b.rank == 1:
        a, b = b, a
    if a.rank == 1:
        m = a.c1()
        if a.total == ChowClass.divisor(a.n, m[0], m[1], 1):
            return BundleClassData(b.rank, twist_chern(b.rank, b.total, m))
    return tensor_chern(a, b)


def twisted(e: BundleExpr, a: int, b: int) -> BundleExpr:
    return Tensor(e, LineBundle(a, b))


# -- pullback obstructions -----------------------------------------------------

def factor_pullback_obstruction(n: int, q: int) -> bool:
    """True iff no twist of E0[n,q] has c_1 a multiple of L alone or h alone.

    c_1(E0(-L) ⊗ O(aL + bh)) = (nb + q - 1) h + (na - 1) L, so a factor
    pullback needs n | (q - 1) or n | 1.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    h_part_can_vanish = (q - 1) % n == 0
    L_part_can_vanish = 1 % n == 0
    return not (h_part_can_vanish or L_part_can_vanish)


@dataclass(frozen=True)
class PullbackSolution:
    """A twist O(aL + bh) of a rank-2 class on P^2 x P^2 whose Chern data
    equal φ^*c(F) for c(F) = 1 + u1 ℓ + u2 ℓ^2, φ^*ℓ = αL + βh."""
    twist: tuple[int, int]
    alpha: int
    beta: int
    u: tuple[int, int]

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or (self.alpha, self.beta) == (0, 0):
            raise ValueError("pullback class must be a nonzero nef class")

    def to_json(self):
        return {"twist": list(self.twist), "alpha": self.alpha, "beta": self.beta,
                "u": list(self.u)}


def _match_u2(c2: dict, alpha: int, beta: int):
    """u2 with c2 = u2 (αL + βh)^2, or None."""
    target = {(2, 0): alpha * alpha, (1, 1): 2 * alpha * beta, (0, 2): beta * beta}
    ratios = set()
    for key, t in target.items():
        v = c2.get(key, 0)
        if t == 0:
            if v != 0:
                return None
        else:
            ratios.add(Fraction(v, t))
    if not ratios:
        return 0
    if len(ratios) != 1:
        return None
    u2 = ratios.pop()
    return int(u2) if u2.denominator == 1 else None


def nondegeneracy_search(r: int, c: ChowClass, box: int) -> list[PullbackSolution]:
    """Enumerate twists |a|, |b| <= box of a rank-2 bundle on P^2 x P^2 whose
    Chern classes are pulled back from a variety with Chow groups Z in
    degrees 1, 2.

    The source bundle's u1 is normalized to {0, 1} by an even twist.  When
    u1 = 0 the class ℓ is not fixed by c_1; then α, β range over [0, box].
    Results are ordered lexicographically in (a, b, α, β).
    """
    if c.n != 2 or r != 2:
        raise ValueError("search is implemented for rank-2 classes on P^2 x P^2")
    found = []
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            ct = twist_chern(r, c, (a, b))
            gL, gh = ct[1, 0], ct[0, 1]
            c2 = ct.c(2)
            if (gL, gh) == (0, 0):
                cands = [(al, be, 0) for al in range(box + 1) for be in range(box + 1)
                         if (al, be) != (0, 0)]
            elif gL >= 0 and gh >= 0:
                cands = [(gL, gh, 1)]
            else:
                cands = []
            for al, be, u1 in cands:
                u2 = _match_u2(c2, al, be)
                if u2 is not None:
                    found.append(PullbackSolution((a, b), al, be, (u1, u2)))
    found.sort(key=lambda s: (s.twist, s.alpha, s.beta))
    return found
