"""Left-symmetric products x⋆y = Δ⁻¹[x, Δy] and the superization of
ℤ/2-graded Lie algebras with an invertible even derivation."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

from . import linalg as la
from ._poly import polarized, quadratic_instances
from .derivations import GradedOperator, is_derivation
from .field import Field
from .report import Report, Tally
from .superalgebra import LieSuperAlgebra, fmt_vec


class VinbergError(ValueError):
    pass


@dataclass(frozen=True)
class Product:
    """A bilinear product given by its table: t[i][j] = e_i ⋆ e_j."""

    field: Field
    names: tuple[str, ...]
    table: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def n(self) -> int:
        return len(self.names)

    def e(self, i: int) -> list[int]:
        v = [0] * self.n
        v[i] = 1
        return v

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        F = self.field
        out = [0] * self.n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        la.axpy(F, F.mul(a, b), self.table[i][j], out)
        return out

    def associator(self, x, y, z) -> list[int]:
        """(x⋆y)⋆z + x⋆(y⋆z)."""
        return la.vadd(self(self(x, y), z), self(x, self(y, z)))


class StarProduct(Product):
    pass


def star_product(g: LieSuperAlgebra, delta: GradedOperator) -> StarProduct:
    F = g.field
    inv = delta.inverse(F)
    if inv is None:
        raise VinbergError("Δ is singular")
    if delta.parity != 0 or not is_derivation(delta, g):
        raise VinbergError("Δ must be an even derivation")
    cols = [delta.column(j) for j in range(g.n)]
    table = tuple(
        tuple(tuple(inv.apply(F, g.bracket_basis(i, cols[j]))) for j in range(g.n)) for i in range(g.n)
    )
    return StarProduct(F, g.names, table)


def star(g: LieSuperAlgebra, delta: GradedOperator, x, y) -> list[int]:
    return star_product(g, delta)(x, y)


def associator(g: LieSuperAlgebra, delta: GradedOperator, x, y, z) -> list[int]:
    return star_product(g, delta).associator(x, y, z)


def _fmt(p: Product, v) -> str:
    terms = [nm if c == 1 else f"{c}*{nm}" for nm, c in zip(p.names, v) if c]
    return "+".join(terms) or "0"


def left_symmetry_report(p: Product) -> Report:
    t = Tally(["left-symmetric"])
    n = p.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                d = la.vadd(p.associator(p.e(i), p.e(j), p.e(k)), p.associator(p.e(j), p.e(i), p.e(k)))
                if any(d):
                    t.fail("left-symmetric", f"({p.names[i]},{p.names[j]},{p.names[k]}) -> {_fmt(p, d)}")
    return t.report()


def left_alternating_report(p: Product) -> Report:
    """Asso(x, x, z) = 0: basis values Asso(e_i, e_i, e_k) plus the
    bilinears Asso(e_i, e_j, e_k) + Asso(e_j, e_i, e_k)."""
    t = Tally(["left-alternating"])
    n = p.n
    for k in range(n):
        z = p.e(k)
        for label, v, parts in quadratic_instances(range(n), n):
            d = polarized(lambda x: p.associator(x, x, z), v, parts)
            if any(d):
                t.fail("left-alternating", f"x={label}, z={p.names[k]} -> {_fmt(p, d)}")
    return t.report()


def is_left_symmetric(p: Product) -> bool:
    return left_symmetry_report(p).passed


def is_left_alternating(p: Product) -> bool:
    return left_alternating_report(p).passed


@dataclass
class Obstruction:
    """Returned by :func:`superize` when Asso(x, x, y) ≠ 0 for some odd x."""

    x: str
    y: str
    value: list[int]

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"Asso(x,x,y) ≠ 0 at x={self.x}, y={self.y}"


def superize(g: LieSuperAlgebra, delta: GradedOperator) -> LieSuperAlgebra | Obstruction:
    """Squaring s(x) = x⋆x on the odd part of a ℤ/2-graded Lie algebra.

    ``g`` is read through its bracket and parities only, so a desuperized
    algebra is the usual input.  Returns an :class:`Obstruction` when
    Asso(x, x, y) ≠ 0 for an odd x.
    """
    F, n = g.field, g.n
    if delta.parity != 0 or any(
        delta.matrix[i][j] and g.parities[i] != g.parities[j] for i in range(n) for j in range(n)
    ):
        raise VinbergError("Δ must preserve the grading")
    p = star_product(g.desuperize(), delta)
    for label, v, parts in quadratic_instances(g.odd, n):
        for k in range(n):
            z = g.e(k)
            d = polarized(lambda x: p.associator(x, x, z), v, parts)
            if any(d):
                return Obstruction(fmt_vec(g, v), g.names[k], d)
    q = [p(g.e(i), g.e(i)) if g.parities[i] else [0] * n for i in range(n)]
    out = LieSuperAlgebra(F, g.names, g.parities, g.c, q)
    rep = out.verify()
    if not rep.passed:
        raise VinbergError(f"superized algebra fails verify(): {rep.failures()[0].line()}")
    for a, i in enumerate(g.odd):
        for j in g.odd[a + 1 :]:
            v = la.vadd(g.e(i), g.e(j))
            lhs = la.vadd(out.squaring(v), la.vadd(out.q[i], out.q[j]))
            if lhs != list(g.c[i][j]):
                raise VinbergError(f"s(x+y)+s(x)+s(y) ≠ [x,y] at ({g.names[i]},{g.names[j]})")
    return out


def squaring_identity_holds(g: LieSuperAlgebra, delta: GradedOperator) -> bool:
    """[x⋆x, y] + [x, [x, y]] = Asso(x, x, y) on odd basis x and every basis y."""
    p = star_product(g.desuperize(), delta)
    for i in g.odd:
        x = g.e(i)
        sx = p(x, x)
        for k in range(g.n):
            y = g.e(k)
            lhs = la.vadd(g.bracket(sx, y), g.bracket(x, g.bracket(x, y)))
            if lhs != p.associator(x, x, y):
                return False
    return True


def product_from_table(field: Field, names: Sequence[str], table) -> Product:
    n = len(names)
    for i, j in iproduct(range(n), repeat=2):
        if len(table[i][j]) != n:
            raise ValueError("product table must be n x n x n")
    return Product(field, tuple(names), tuple(tuple(tuple(v) for v in row) for row in table))
