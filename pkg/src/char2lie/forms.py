"""Bilinear and quadratic forms on Lie superalgebras in characteristic 2.

In characteristic 2 "antisymmetric" is replaced by: symmetric Gram
matrix with zero diagonal on one of the two diagonal blocks.  A form is
even-antisymmetric when the odd-odd block has zero diagonal, and
odd-antisymmetric when the even-even block has zero diagonal.  The same
definition is used for forms of either parity.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from . import linalg as la
from .derivations import GradedOperator, derivation_report, operator_parity
from .report import Tally
from .superalgebra import LieSuperAlgebra

SYMMETRIC = "symmetric"
EVEN_ANTI = "even-antisymmetric"
ODD_ANTI = "odd-antisymmetric"
MIXED = "mixed"


class FormError(ValueError):
    pass


def form_parity(gram: Sequence[Sequence[int]], parities: Sequence[int]) -> int | str:
    found = {(parities[i] + parities[j]) % 2 for i, r in enumerate(gram) for j, a in enumerate(r) if a}
    if len(found) > 1:
        return MIXED
    return found.pop() if found else 0


@dataclass(frozen=True)
class BilinearForm:
    """Gram matrix G with G[i][j] = B(e_i, e_j)."""

    gram: tuple[tuple[int, ...], ...]
    parity: int | str = 0

    @classmethod
    def make(cls, g: LieSuperAlgebra, gram: Sequence[Sequence[int]], parity: int | str | None = None):
        if la.shape(gram) != (g.n, g.n):
            raise FormError(f"Gram matrix must be {g.n}x{g.n}")
        for r in gram:
            for a in r:
                g.field.check(a)
        found = form_parity(gram, g.parities)
        if parity is not None and found != parity and any(map(any, gram)):
            raise FormError(f"Gram matrix has parity {found}, declared {parity}")
        return cls(tuple(map(tuple, gram)), found if parity is None or any(map(any, gram)) else parity)

    def __call__(self, F, x: Sequence[int], y: Sequence[int]) -> int:
        return la.dot(F, la.matvec(F, la.transpose(self.gram), x), y)

    def rows(self) -> la.Matrix:
        return [list(r) for r in self.gram]


def bform(g: LieSuperAlgebra, gram, parity=None) -> BilinearForm:
    return BilinearForm.make(g, gram, parity)


def evaluate(F, gram, x, y) -> int:
    gram = getattr(gram, "gram", gram)
    s = 0
    for i, a in enumerate(x):
        if a:
            s ^= F.mul(a, la.dot(F, gram[i], y))
    return s


def classify_symmetry(B: BilinearForm, g: LieSuperAlgebra) -> list[str]:
    G = B.gram
    n = len(G)
    labels = []
    if all(G[i][j] == G[j][i] for i in range(n) for j in range(n)):
        labels.append(SYMMETRIC)
        if all(G[i][i] == 0 for i in g.odd):
            labels.append(EVEN_ANTI)
        if all(G[i][i] == 0 for i in g.even):
            labels.append(ODD_ANTI)
    return labels


def invariance_report(B: BilinearForm, g: LieSuperAlgebra):
    F = g.field
    t = Tally(["invariant"])
    # rows[i][k] = B([e_i, e_j], e_k) for fixed j computed below
    for i in range(g.n):
        for j in range(g.n):
            for k in range(g.n):
                lhs = evaluate(F, B.gram, g.c[i][j], g.e(k))
                rhs = evaluate(F, B.gram, g.e(i), g.c[j][k])
                if lhs != rhs:
                    nm = g.names
                    t.fail("invariant", f"({nm[i]},{nm[j]},{nm[k]})")
    return t.report()


def is_invariant(B: BilinearForm, g: LieSuperAlgebra) -> bool:
    return invariance_report(B, g).passed


def closed_report(w: BilinearForm, g: LieSuperAlgebra):
    """Cocycle identity on basis triples and ω(s(x), z) = ω(x, [x, z]) on odd basis x.

    Basis instances suffice for the squaring identity: both sides are
    quadratic in x and its polarization is the cocycle identity on the odd
    pair, which the first check already covers.
    """
    F, n, G = g.field, g.n, w.gram
    t = Tally(["cocycle", "squaring-cocycle"])
    if form_parity(G, g.parities) == MIXED:
        t.fail("cocycle", "mixed-parity forms are not supported")
        return t.report()
    for i, j, k in combinations_with_replacement(range(n), 3):
        for a, b, c in {(i, j, k), (i, k, j), (j, i, k)}:
            s = evaluate(F, G, g.c[a][b], g.e(c))
            s ^= evaluate(F, G, g.c[c][a], g.e(b))
            s ^= evaluate(F, G, g.c[b][c], g.e(a))
            if s:
                t.fail("cocycle", f"({g.names[a]},{g.names[b]},{g.names[c]})")
    if g.has_squaring:
        for i in g.odd:
            for k in range(n):
                if evaluate(F, G, g.q[i], g.e(k)) != evaluate(F, G, g.e(i), g.c[i][k]):
                    t.fail("squaring-cocycle", f"x={g.names[i]},z={g.names[k]}")
    return t.report()


def is_closed(w: BilinearForm, g: LieSuperAlgebra) -> bool:
    return closed_report(w, g).passed


def is_nondegenerate(B: BilinearForm, g: LieSuperAlgebra) -> bool:
    return la.rank(g.field, B.gram) == g.n


def is_NIS(B: BilinearForm, g: LieSuperAlgebra) -> bool:
    return (
        B.parity != MIXED
        and is_nondegenerate(B, g)
        and EVEN_ANTI in classify_symmetry(B, g)
        and is_invariant(B, g)
    )


def vocabulary(B: BilinearForm) -> str:
    """Name of a nondegenerate form by parity."""
    return {0: "ortho-orthogonal", 1: "periplectic"}.get(B.parity, MIXED)


def delta_invariance_ok(g: LieSuperAlgebra, B: BilinearForm, D: GradedOperator) -> bool:
    """B(Dx, y) = B(x, Dy) on basis pairs."""
    F = g.field
    lhs = la.matmul(F, la.transpose(D.matrix), B.gram)
    rhs = la.matmul(F, B.gram, D.matrix)
    return lhs == rhs


def omega_diagonal_ok(g: LieSuperAlgebra, B: BilinearForm, D: GradedOperator) -> bool:
    """B(Δe, e) = 0 for every even basis vector e."""
    F = g.field
    return all(evaluate(F, B.gram, D.column(i), g.e(i)) == 0 for i in g.even)


def delta_to_form(g: LieSuperAlgebra, B: BilinearForm, D: GradedOperator) -> BilinearForm:
    """ω(x, y) = B(Δx, y).

    For an invertible even derivation Δ with B Δ-invariant, ω is closed.
    It is odd-antisymmetric only when B(Δx, x) = 0 on the even basis as
    well; see :func:`omega_diagonal_ok`.
    """
    F = g.field
    gram = la.matmul(F, la.transpose(D.matrix), B.gram)
    w = BilinearForm.make(g, gram)
    if (
        D.parity == 0
        and derivation_report(D, g).passed
        and D.is_invertible(F)
        and delta_invariance_ok(g, B, D)
        and is_NIS(B, g)
    ):
        if not is_closed(w, g):
            raise FormError("ω = B(Δ·,·) should be closed")
    return w


def form_to_delta(g: LieSuperAlgebra, B: BilinearForm, w: BilinearForm) -> tuple[GradedOperator | None, str]:
    """Solve ω(x, y) = B(Δx, y) and check Δ; returns (Δ or None, diagnostic)."""
    F = g.field
    sol = la.solve_bilinear(F, B.gram, la.transpose(w.gram))
    if sol is None:
        raise FormError("B is degenerate")
    par = operator_parity(sol, g.parities)
    D = GradedOperator(tuple(map(tuple, sol)), 0 if par is None else par)
    if par != 0:
        return None, "Δ is not even"
    rep = derivation_report(D, g)
    if not rep.passed:
        c = rep.failures()[0]
        return None, f"Δ is not a derivation ({c.id} {c.witness})"
    if not D.is_invertible(F):
        return None, "Δ is not invertible"
    if not delta_invariance_ok(g, B, D):
        return None, "B is not Δ-invariant"
    return D, ""


@dataclass(frozen=True)
class QuadraticForm:
    """α on the odd part: basis values plus its polar form."""

    values: tuple[int, ...]  # α(e_i), zero on even indices
    polar: tuple[tuple[int, ...], ...]  # full n x n, supported on the odd block

    def __call__(self, F, x: Sequence[int]) -> int:
        s = 0
        nz = [i for i, a in enumerate(x) if a]
        for a, i in enumerate(nz):
            s ^= F.mul(F.mul(x[i], x[i]), self.values[i])
            for j in nz[a + 1 :]:
                s ^= F.mul(F.mul(x[i], x[j]), self.polar[i][j])
        return s

    def polar_value(self, F, x, y) -> int:
        return evaluate(F, self.polar, x, y)


def quadratic_form(g: LieSuperAlgebra, values: Sequence[int], polar: Sequence[Sequence[int]]) -> QuadraticForm:
    n = g.n
    vals = [values[i] if g.parities[i] else 0 for i in range(n)]
    if any(values[i] for i in g.even):
        raise FormError("α is defined on the odd part only")
    for i in range(n):
        for j in range(n):
            if polar[i][j] != polar[j][i] or (polar[i][j] and (g.parities[i] == 0 or g.parities[j] == 0)):
                raise FormError("polar form must be symmetric and supported on the odd block")
        if polar[i][i]:
            raise FormError("polar form must have zero diagonal")
    return QuadraticForm(tuple(vals), tuple(map(tuple, polar)))


def zero_quadratic(g: LieSuperAlgebra) -> QuadraticForm:
    return QuadraticForm(tuple([0] * g.n), tuple(map(tuple, la.zeros(g.n, g.n))))


def quadratic_from_derivation(
    g: LieSuperAlgebra,
    B: BilinearForm,
    D: GradedOperator,
    side: str = "right",
    values: Sequence[int] | None = None,
) -> QuadraticForm | None:
    """α with polar form B(a, D b) (side="right") or B(D a, b) (side="left").

    Returns None unless that polar form is symmetric with zero diagonal on
    the odd part.
    """
    F, n = g.field, g.n
    polar = la.zeros(n, n)
    for i in g.odd:
        for j in g.odd:
            if side == "right":
                polar[i][j] = evaluate(F, B.gram, g.e(i), D.column(j))
            elif side == "left":
                polar[i][j] = evaluate(F, B.gram, D.column(i), g.e(j))
            else:
                raise ValueError("side must be 'right' or 'left'")
    for i in g.odd:
        if polar[i][i]:
            return None
        for j in g.odd:
            if polar[i][j] != polar[j][i]:
                return None
    vals = list(values) if values is not None else [0] * n
    return quadratic_form(g, vals, polar)
