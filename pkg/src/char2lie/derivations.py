"""Graded operators, derivations and eigenvector search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .report import Tally
from .superalgebra import LieSuperAlgebra, Subspace, fmt_vec


@dataclass(frozen=True)
class GradedOperator:
    """Linear map stored column-wise: column j is the image of e_j."""

    matrix: tuple[tuple[int, ...], ...]
    parity: int

    @classmethod
    def make(cls, matrix: Sequence[Sequence[int]], parities: Sequence[int] | None = None, parity: int | None = None):
        m = tuple(tuple(r) for r in matrix)
        if parities is not None:
            found = operator_parity(m, parities)
            if found is None:
                raise ValueError("operator is not parity-homogeneous")
            if parity is not None and found != parity and any(map(any, m)):
                raise ValueError(f"operator has parity {found}, expected {parity}")
            parity = found if any(map(any, m)) or parity is None else parity
        return cls(m, 0 if parity is None else parity)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def rows(self) -> la.Matrix:
        return [list(r) for r in self.matrix]

    def apply(self, F, v: Sequence[int]) -> list[int]:
        return la.matvec(F, self.matrix, v)

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.matrix]

    def compose(self, F, other: "GradedOperator") -> "GradedOperator":
        """self ∘ other."""
        return GradedOperator(
            tuple(map(tuple, la.matmul(F, self.matrix, other.matrix))), (self.parity + other.parity) % 2
        )

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        return GradedOperator(tuple(map(tuple, la.madd(self.rows(), other.rows()))), self.parity)

    def scale(self, F, a: int) -> "GradedOperator":
        return GradedOperator(tuple(tuple(F.mul(a, x) for x in r) for r in self.matrix), self.parity)

    def is_invertible(self, F) -> bool:
        return la.rank(F, self.matrix) == self.n

    def inverse(self, F) -> "GradedOperator | None":
        inv = la.inverse(F, self.matrix)
        return None if inv is None else GradedOperator(tuple(map(tuple, inv)), self.parity)

    def restrict_parity(self, parities: Sequence[int], p: int) -> bool:
        return operator_parity(self.matrix, parities) in (p, None)


def operator_parity(m: Sequence[Sequence[int]], parities: Sequence[int]) -> int | None:
    """Parity of a homogeneous operator (0 for the zero map), else None."""
    found = set()
    for i, row in enumerate(m):
        for j, a in enumerate(row):
            if a:
                found.add((parities[i] + parities[j]) % 2)
    if len(found) > 1:
        return None
    return found.pop() if found else 0


def operator(g: LieSuperAlgebra, matrix: Sequence[Sequence[int]], parity: int | None = None) -> GradedOperator:
    return GradedOperator.make(matrix, g.parities, parity)


def identity(g: LieSuperAlgebra) -> GradedOperator:
    return GradedOperator(tuple(map(tuple, la.identity(g.n))), 0)


def zero(g: LieSuperAlgebra, parity: int = 0) -> GradedOperator:
    return GradedOperator(tuple(map(tuple, la.zeros(g.n, g.n))), parity)


def ad(g: LieSuperAlgebra, x: Sequence[int]) -> GradedOperator:
    p = g.parity_of(x)
    return GradedOperator(tuple(map(tuple, g.ad(x))), 0 if p is None else p)


def commutator(g: LieSuperAlgebra, a: GradedOperator, b: GradedOperator) -> GradedOperator:
    F = g.field
    m = la.madd(la.matmul(F, a.matrix, b.matrix), la.matmul(F, b.matrix, a.matrix))
    return GradedOperator(tuple(map(tuple, m)), (a.parity + b.parity) % 2)


def derivation_report(D: GradedOperator, g: LieSuperAlgebra):
    """Leibniz rule on basis pairs and D(s(x)) = [D(x), x] on odd basis x."""
    F, n = g.field, g.n
    t = Tally(["parity", "leibniz", "squaring"])
    if operator_parity(D.matrix, g.parities) is None:
        t.fail("parity", "operator mixes parities")
    cols = [D.column(j) for j in range(n)]
    for i in range(n):
        for j in range(i, n):
            lhs = D.apply(F, g.c[i][j])
            rhs = la.vadd(g.bracket(cols[i], g.e(j)), g.bracket_basis(i, cols[j]))
            if lhs != rhs:
                t.fail("leibniz", f"({g.names[i]},{g.names[j]}) -> {fmt_vec(g, la.vadd(lhs, rhs))}")
    if g.has_squaring:
        for i in g.odd:
            lhs = D.apply(F, g.q[i])
            rhs = g.bracket(cols[i], g.e(i))
            if lhs != rhs:
                t.fail("squaring", f"x={g.names[i]} -> {fmt_vec(g, la.vadd(lhs, rhs))}")
    return t.report()


def is_derivation(D: GradedOperator, g: LieSuperAlgebra) -> bool:
    return derivation_report(D, g).passed


def derivation_space(g: LieSuperAlgebra, parity: int) -> list[GradedOperator]:
    """Basis of the parity-``parity`` derivations, by solving the linear system."""
    F, n = g.field, g.n
    unknowns = [(a, b) for a in range(n) for b in range(n) if (g.parities[a] + g.parities[b]) % 2 == parity]
    pos = {u: k for k, u in enumerate(unknowns)}
    rows: list[list[int]] = []

    def leibniz(i, j):
        # component k of D[e_i,e_j] + [D e_i, e_j] + [e_i, D e_j]
        for k in range(n):
            row = [0] * len(unknowns)
            for b in range(n):
                if g.c[i][j][b] and (k, b) in pos:
                    row[pos[(k, b)]] ^= g.c[i][j][b]
            for a in range(n):
                if g.c[a][j][k] and (a, i) in pos:
                    row[pos[(a, i)]] ^= g.c[a][j][k]
                if g.c[i][a][k] and (a, j) in pos:
                    row[pos[(a, j)]] ^= g.c[i][a][k]
            if any(row):
                rows.append(row)

    for i in range(n):
        for j in range(i, n):
            leibniz(i, j)
    if g.has_squaring:
        for i in g.odd:
            for k in range(n):
                row = [0] * len(unknowns)
                for b in range(n):
                    if g.q[i][b] and (k, b) in pos:
                        row[pos[(k, b)]] ^= g.q[i][b]
                for a in range(n):
                    if g.c[a][i][k] and (a, i) in pos:
                        row[pos[(a, i)]] ^= g.c[a][i][k]
                if any(row):
                    rows.append(row)
    sols = la.kernel(F, rows, len(unknowns)) if rows else [
        [1 if k == m else 0 for k in range(len(unknowns))] for m in range(len(unknowns))
    ]
    out = []
    for w in sols:
        m = la.zeros(n, n)
        for (a, b), k in pos.items():
            m[a][b] = w[k]
        out.append(GradedOperator(tuple(map(tuple, m)), parity))
    return out


def find_eigen_in(F, D: GradedOperator, subspace: Subspace | None = None) -> list[tuple[int, Subspace]]:
    """All (λ ≠ 0, basis of ker(D − λ) ∩ subspace), by sweeping the field."""
    n = D.n
    sub = la.identity(n) if subspace is None else subspace
    out = []
    if not sub:
        return out
    for lam in F.nonzero():
        m = [list(r) for r in D.matrix]
        for i in range(n):
            m[i][i] ^= lam
        ker = la.kernel(F, m, n)
        if not ker:
            continue
        common = la.intersect(F, la.span(F, ker, n), sub, n)
        if common:
            out.append((lam, common))
    return out
