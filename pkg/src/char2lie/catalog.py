"""Built-in algebras: the Heisenberg superalgebra hei(0|2), its dual
structures and Manin double, an invertible derivation of that double,
abelian algebras, and the 1|1 odd-pairing seed."""
from __future__ import annotations

from .derivations import GradedOperator, operator
from .field import Field, gf
from .forms import BilinearForm
from .manin import DualPair, ManinTriple, build_manin
from .superalgebra import LieSuperAlgebra, abelian


class CatalogError(ValueError):
    pass


def hei2(field: Field | None = None) -> LieSuperAlgebra:
    """p, q odd, z even, [p, q] = z, s(p) = s(q) = 0."""
    F = field or gf(1)
    return LieSuperAlgebra.from_sparse(F, [("p", 1), ("q", 1), ("z", 0)], {("p", "q"): {"z": 1}})


def hei2_dual(s: int = 0, t: int = 0, u: int = 0, v: int = 0, field: Field | None = None) -> LieSuperAlgebra:
    """[p*, z*] = s q* + t p*, [q*, z*] = u q* + v p*, zero squaring."""
    F = field or gf(1)
    for a in (s, t, u, v):
        F.check(a)
    br = {("p*", "z*"): {"q*": s, "p*": t}, ("q*", "z*"): {"q*": u, "p*": v}}
    return LieSuperAlgebra.from_sparse(F, [("p*", 1), ("q*", 1), ("z*", 0)], br)


def hei2_pair(s=0, t=0, u=0, v=0, field: Field | None = None) -> DualPair:
    F = field or gf(1)
    return DualPair(hei2(F), hei2_dual(s, t, u, v, F))


def hei2_manin(s=0, t=0, u=0, v=0, field: Field | None = None) -> ManinTriple:
    return build_manin(hei2_pair(s, t, u, v, field))


def hei2_deriv_gf4(a2: int, a4: int, a9: int, a10: int, triple: ManinTriple | None = None) -> GradedOperator:
    """α₂D₂ + α₄D₄ + α₉D₉ + α₁₀D₁₀ + (α₉+α₁₀)D₁₁ on the dual-abelian double over GF(4).

    D₂: q ↦ q*.  D₄: p ↦ p*.  D₉ fixes p, q*, z.  D₁₀ fixes q, p*, z.
    D₁₁ fixes q*, p*, z*.
    """
    F = gf(2)
    for a in (a2, a4, a9, a10):
        F.check(a)
    if a9 in (0, 1) or a10 in (0, 1):
        raise CatalogError("α₉ and α₁₀ must lie outside {0, 1}")
    h = (triple or hei2_manin(field=F)).h
    if h.field != F:
        raise CatalogError("the derivation lives over GF(4)")
    ix = h.index
    n = h.n
    m = [[0] * n for _ in range(n)]

    def put(src, dst, c):
        m[ix[dst]][ix[src]] ^= c

    put("q", "q*", a2)
    put("p", "p*", a4)
    for nm in ("p", "q*", "z"):
        put(nm, nm, a9)
    for nm in ("q", "p*", "z"):
        put(nm, nm, a10)
    for nm in ("q*", "p*", "z*"):
        put(nm, nm, a9 ^ a10)
    return operator(h, m, 0)


def abelian_algebra(m: int, n: int, field: Field | None = None) -> LieSuperAlgebra:
    return abelian(field or gf(1), m, n)


def oddpair(field: Field | None = None) -> tuple[LieSuperAlgebra, BilinearForm]:
    """Abelian 1|1 algebra span{u, w} (u even, w odd) with the odd pairing B(u, w) = 1."""
    F = field or gf(1)
    a = LieSuperAlgebra.from_sparse(F, [("u", 0), ("w", 1)])
    return a, BilinearForm.make(a, [[0, 1], [1, 0]], 1)


ENTRIES = {
    "hei2": "Heisenberg superalgebra hei(0|2); no parameters",
    "hei2-dual": "dual structure on hei(0|2)*; parameters s,t,u,v",
    "hei2-manin": "Manin double of hei(0|2); parameters s,t,u,v",
    "hei2-pair": "hei(0|2) and its dual with a dual block; parameters s,t,u,v",
    "hei2-deriv-gf4": "invertible derivation of the dual-abelian double over GF(4); parameters a2,a4,a9,a10",
    "abelian": "abelian algebra of dimension m|n; parameters m,n",
    "oddpair": "1|1 abelian seed with an odd pairing; no parameters",
}
