"""Lie superalgebras over GF(2^k).

A :class:`LieSuperAlgebra` stores structure constants ``c[i][j]`` (the
coordinate vector of [e_i, e_j]) for every ordered pair, and a squaring
table ``q[i]`` (the coordinate vector of s(e_i)) for odd basis vectors.
Elements are plain coordinate lists.

Why basis checks are enough for the squaring Jacobi identity
[s(x), y] = [x, [x, y]]: both sides are quadratic in x.  Replacing x by
x + x' and subtracting the x and x' instances leaves
[[x, x'], y] = [x, [x', y]] + [x', [x, y]], which is the ordinary Jacobi
identity on the odd pair (x, x').  Scaling by λ multiplies both sides by
λ².  So the basis instances plus ordinary Jacobi cover every odd x.
"""
from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Callable, Mapping, Sequence

from . import linalg as la
from .field import Field, format_literal
from .report import Report, Tally

Vector = list[int]
Subspace = list[list[int]]

IRREDUCIBLE = "proven-yes"
REDUCIBLE = "proven-no"
UNKNOWN = "unknown"


class StructureError(ValueError):
    """A table violates a structural invariant of Lie superalgebras."""


def fmt_vec(g: "LieSuperAlgebra", v: Sequence[int]) -> str:
    terms = []
    for name, c in zip(g.names, v):
        if c == 1:
            terms.append(name)
        elif c:
            terms.append(f"{format_literal(c)}*{name}")
    return "+".join(terms) if terms else "0"


class LieSuperAlgebra:
    def __init__(
        self,
        field: Field,
        names: Sequence[str],
        parities: Sequence[int],
        brackets: Sequence[Sequence[Sequence[int]]],
        squares: Sequence[Sequence[int]] | None = None,
        *,
        has_squaring: bool = True,
        pair_squares: Mapping[tuple[int, int], Sequence[int]] | None = None,
    ):
        n = len(names)
        self.field = field
        self.names = tuple(names)
        self.parities = tuple(int(p) for p in parities)
        self.n = n
        self.c = tuple(tuple(tuple(v) for v in row) for row in brackets)
        if squares is None:
            squares = [[0] * n for _ in range(n)]
        self.q = tuple(tuple(v) for v in squares)
        self.has_squaring = has_squaring
        self.index = {name: i for i, name in enumerate(self.names)}
        self._validate(pair_squares or {})
        self.even = [i for i in range(n) if self.parities[i] == 0]
        self.odd = [i for i in range(n) if self.parities[i] == 1]

    # -- construction -----------------------------------------------------

    def _validate(self, pair_squares) -> None:
        n, F, par = self.n, self.field, self.parities
        if len(set(self.names)) != n:
            raise StructureError("basis names must be distinct")
        if len(par) != n or any(p not in (0, 1) for p in par):
            raise StructureError("parities must be 0 or 1, one per basis vector")
        if len(self.c) != n or any(len(r) != n or any(len(v) != n for v in r) for r in self.c):
            raise StructureError("bracket table must be n x n x n")
        if len(self.q) != n or any(len(v) != n for v in self.q):
            raise StructureError("squaring table must be n x n")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    a = self.c[i][j][k]
                    F.check(a)
                    if a != self.c[j][i][k]:
                        raise StructureError(f"bracket not symmetric at ({self.names[i]},{self.names[j]})")
                    if a and par[k] != (par[i] + par[j]) % 2:
                        raise StructureError(
                            f"bracket [{self.names[i]},{self.names[j]}] has a component of the wrong parity"
                        )
            if any(self.c[i][i]):
                raise StructureError(f"[{self.names[i]},{self.names[i]}] must vanish")
            for k in range(n):
                F.check(self.q[i][k])
            if any(self.q[i]):
                if par[i] == 0 or not self.has_squaring:
                    raise StructureError(f"squaring given on non-odd vector {self.names[i]}")
                if any(self.q[i][k] and par[k] for k in range(n)):
                    raise StructureError(f"s({self.names[i]}) must be even")
        for (i, j), v in pair_squares.items():
            want = la.vadd(la.vadd(self.q[i], self.q[j]), self.c[i][j])
            if list(v) != want:
                raise StructureError(
                    f"squaring of {self.names[i]}+{self.names[j]} is inconsistent with "
                    f"[{self.names[i]},{self.names[j]}] (polarization)"
                )

    @classmethod
    def from_sparse(
        cls,
        field: Field,
        basis: Sequence[tuple[str, int]],
        brackets: Mapping[tuple[str, str], Mapping[str, int]] | None = None,
        squares: Mapping[str, Mapping[str, int]] | None = None,
        has_squaring: bool = True,
    ) -> "LieSuperAlgebra":
        """Build from name-keyed sparse tables; brackets are symmetrized."""
        names = [b[0] for b in basis]
        idx = {nm: i for i, nm in enumerate(names)}
        n = len(names)
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for (a, b), terms in (brackets or {}).items():
            i, j = idx[a], idx[b]
            for name, coef in terms.items():
                c[i][j][idx[name]] ^= coef
                if i != j:
                    c[j][i][idx[name]] ^= coef
        q = [[0] * n for _ in range(n)]
        for a, terms in (squares or {}).items():
            for name, coef in terms.items():
                q[idx[a]][idx[name]] ^= coef
        return cls(field, names, [b[1] for b in basis], c, q, has_squaring=has_squaring)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieSuperAlgebra)
            and self.field == other.field
            and self.names == other.names
            and self.parities == other.parities
            and self.c == other.c
            and self.q == other.q
            and self.has_squaring == other.has_squaring
        )

    def __hash__(self) -> int:
        return hash((self.names, self.parities, self.c, self.q))

    def __repr__(self) -> str:
        n0 = len(self.even)
        return f"<LieSuperAlgebra dim {n0}|{self.n - n0} over GF({self.field.order})>"

    # -- elements ---------------------------------------------------------

    def zero(self) -> Vector:
        return [0] * self.n

    def e(self, i: int | str) -> Vector:
        if isinstance(i, str):
            i = self.index[i]
        v = [0] * self.n
        v[i] = 1
        return v

    def vec(self, coeffs: Mapping[str, int]) -> Vector:
        v = [0] * self.n
        for name, a in coeffs.items():
            v[self.index[name]] ^= a
        return v

    def parity_of(self, v: Sequence[int]) -> int | None:
        """0 or 1 for nonzero homogeneous vectors, None otherwise."""
        ps = {self.parities[i] for i, a in enumerate(v) if a}
        return ps.pop() if len(ps) == 1 else (0 if not ps else None)

    def _len(self, *vs: Sequence[int]) -> None:
        for v in vs:
            if len(v) != self.n:
                raise ValueError(f"vector of length {len(v)} in an algebra of dimension {self.n}")

    # -- products ---------------------------------------------------------

    def bracket_basis(self, i: int, v: Sequence[int]) -> Vector:
        out = [0] * self.n
        row = self.c[i]
        for j, a in enumerate(v):
            if a:
                la.axpy(self.field, a, row[j], out)
        return out

    def bracket(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        self._len(x, y)
        out = [0] * self.n
        mul = self.field.mul
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.c[i]
            for j, b in enumerate(y):
                if b:
                    la.axpy(self.field, mul(a, b), row[j], out)
        return out

    def ad(self, x: Sequence[int]) -> la.Matrix:
        """Matrix of ad_x; column j is [x, e_j]."""
        cols = [self.bracket(x, self.e(j)) for j in range(self.n)]
        return la.transpose(cols)

    def squaring(self, x: Sequence[int]) -> Vector:
        self._len(x)
        if any(x[i] for i in self.even):
            raise ValueError("squaring is defined on odd elements only")
        F = self.field
        out = [0] * self.n
        if not self.has_squaring:
            raise ValueError("a desuperized algebra carries no squaring")
        nz = [i for i in self.odd if x[i]]
        for a_i, i in enumerate(nz):
            la.axpy(F, F.mul(x[i], x[i]), self.q[i], out)
            for j in nz[a_i + 1 :]:
                la.axpy(F, F.mul(x[i], x[j]), self.c[i][j], out)
        return out

    def odd_part(self, v: Sequence[int]) -> Vector:
        return [a if self.parities[i] else 0 for i, a in enumerate(v)]

    def even_part(self, v: Sequence[int]) -> Vector:
        return [0 if self.parities[i] else a for i, a in enumerate(v)]

    # -- verification -------------------------------------------------------

    def verify(self) -> Report:
        """Ordinary Jacobi on basis triples; squaring Jacobi on (odd x, any y)."""
        n = self.n
        t = Tally(["jacobi"] + (["squaring-jacobi"] if self.has_squaring else []))
        for i, j, k in combinations_with_replacement(range(n), 3):
            s = self.bracket_basis(i, self.c[j][k])
            s = la.vadd(s, self.bracket_basis(j, self.c[k][i]))
            s = la.vadd(s, self.bracket_basis(k, self.c[i][j]))
            if any(s):
                nm = self.names
                t.fail("jacobi", f"({nm[i]},{nm[j]},{nm[k]}) -> {fmt_vec(self, s)}")
        if self.has_squaring:
            for i in self.odd:
                for j in range(n):
                    lhs = la.vadd(self.bracket(self.q[i], self.e(j)), self.bracket_basis(i, self.c[i][j]))
                    if any(lhs):
                        t.fail(
                            "squaring-jacobi",
                            f"x={self.names[i]},y={self.names[j]} -> {fmt_vec(self, lhs)}",
                        )
        return t.report()

    def is_valid(self) -> bool:
        return self.verify().passed

    # -- subspaces ----------------------------------------------------------

    def span(self, vectors: Sequence[Sequence[int]]) -> Subspace:
        return la.span(self.field, [list(v) for v in vectors], self.n)

    def whole(self) -> Subspace:
        return la.identity(self.n)

    def coordinate_space(self, parity: int) -> Subspace:
        return [self.e(i) for i in range(self.n) if self.parities[i] == parity]

    def graded_part(self, sub: Subspace, parity: int) -> Subspace:
        return la.intersect(self.field, sub, self.coordinate_space(parity), self.n)

    def center(self) -> Subspace:
        n = self.n
        # x central <=> sum_i x_i c[i][j][k] = 0 for all j, k
        rows = [[self.c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
        return self.span(la.kernel(self.field, rows, n))

    def square_span(self, sub: Subspace | None = None) -> Subspace:
        """Span of s(V_1) where V_1 is the odd part of ``sub`` (default: g)."""
        if not self.has_squaring:
            return []
        odd = self.coordinate_space(1) if sub is None else self.graded_part(sub, 1)
        vecs = [self.squaring(v) for v in odd]
        for a in range(len(odd)):
            for b in range(a + 1, len(odd)):
                vecs.append(self.bracket(odd[a], odd[b]))
        return self.span(vecs)

    def derived_algebra(self, i: int) -> list[Subspace]:
        chain = [self.whole()]
        for _ in range(i):
            cur = chain[-1]
            vecs = [self.bracket(u, v) for a, u in enumerate(cur) for v in cur[a:]]
            vecs += self.square_span(cur)
            chain.append(self.span(vecs))
        return chain

    def is_two_step_nilpotent(self) -> bool:
        """[[g, g], g] = 0."""
        dg = self.span([self.c[i][j] for i in range(self.n) for j in range(i, self.n)])
        return all(not any(self.bracket_basis(j, v)) for v in dg for j in range(self.n))

    def is_ideal(self, sub: Subspace) -> bool:
        F = self.field
        for v in sub:
            for j in range(self.n):
                if not la.in_span(F, sub, self.bracket_basis(j, v)):
                    return False
        return all(la.in_span(F, sub, w) for w in self.square_span(sub))

    def is_subalgebra(self, sub: Subspace) -> bool:
        F = self.field
        for a, u in enumerate(sub):
            for v in sub[a:]:
                if not la.in_span(F, sub, self.bracket(u, v)):
                    return False
        return all(la.in_span(F, sub, w) for w in self.square_span(sub))

    def is_graded(self, sub: Subspace) -> bool:
        return len(self.graded_part(sub, 0)) + len(self.graded_part(sub, 1)) == len(sub)

    # -- derived objects ------------------------------------------------------

    def desuperize(self) -> "LieSuperAlgebra":
        return LieSuperAlgebra(
            self.field, self.names, self.parities, self.c, None, has_squaring=False
        )

    def direct_sum(self, other: "LieSuperAlgebra") -> "LieSuperAlgebra":
        if other.field != self.field:
            raise ValueError("direct sum of algebras over different fields")
        n, m = self.n, other.n
        names = list(self.names)
        for nm in other.names:
            names.append(nm if nm not in self.index else nm + "'")
        c = [[[0] * (n + m) for _ in range(n + m)] for _ in range(n + m)]
        q = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            q[i][:n] = self.q[i]
            for j in range(n):
                c[i][j][:n] = self.c[i][j]
        for i in range(m):
            q[n + i][n:] = other.q[i]
            for j in range(m):
                c[n + i][n + j][n:] = other.c[i][j]
        return LieSuperAlgebra(
            self.field,
            names,
            self.parities + other.parities,
            c,
            q,
            has_squaring=self.has_squaring and other.has_squaring,
        )

    def restrict(self, basis: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> "LieSuperAlgebra":
        """Subalgebra on the span of homogeneous ``basis`` vectors, in that basis."""
        F = self.field
        basis = [list(v) for v in basis]
        pars = []
        for v in basis:
            p = self.parity_of(v)
            if p is None or not any(v):
                raise StructureError("restrict needs nonzero homogeneous basis vectors")
            pars.append(p)
        if la.rank(F, basis) != len(basis):
            raise StructureError("restrict needs linearly independent vectors")
        cols = la.transpose(basis)

        def coords(w):
            x = la.solve(F, cols, w)
            if x is None:
                raise StructureError(f"subspace is not closed: {fmt_vec(self, w)} escapes")
            return x

        m = len(basis)
        c = [[coords(self.bracket(basis[a], basis[b])) for b in range(m)] for a in range(m)]
        q = [
            coords(self.squaring(basis[a])) if pars[a] and self.has_squaring else [0] * m
            for a in range(m)
        ]
        if names is None:
            names = []
            for k, v in enumerate(basis):
                nz = [i for i, a in enumerate(v) if a]
                names.append(self.names[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else f"u{k}")
        return LieSuperAlgebra(F, names, pars, c, q, has_squaring=self.has_squaring)

    # -- forms-dependent queries -------------------------------------------------

    def orthogonal_complement(self, gram: Sequence[Sequence[int]], sub: Subspace) -> Subspace:
        return orthogonal_complement(self.field, gram, sub, self.n)

    def special_center(self, gram) -> Subspace:
        gram = getattr(gram, "gram", gram)
        perp = self.orthogonal_complement(gram, self.square_span())
        return la.intersect(self.field, self.center(), perp, self.n)

    def cone(self, gram) -> Callable[[Sequence[int]], bool]:
        """Predicate: x odd and B(s(x), s(t)) = 0 for every odd t."""
        gram = getattr(gram, "gram", gram)
        F = self.field
        targets = [self.q[j] for j in self.odd]
        targets += [self.c[j][l] for a, j in enumerate(self.odd) for l in self.odd[a + 1 :]]

        def member(x: Sequence[int]) -> bool:
            if any(x[i] for i in self.even):
                return False
            sx = self.squaring(x)
            row = la.matvec(F, la.transpose(gram), sx)  # row[k] = B(s(x), e_k)
            return all(la.dot(F, row, t) == 0 for t in targets)

        return member

    def is_irreducible(self, gram, budget: int = 1 << 20, max_ideals: int = 4096) -> str:
        """Tri-state search for a decomposition into orthogonal ideals."""
        gram = getattr(gram, "gram", gram)
        F = self.field
        if F.order ** self.n > budget:
            return UNKNOWN
        homog = []
        for p in (0, 1):
            idx = [i for i in range(self.n) if self.parities[i] == p]
            for coeffs in product(range(F.order), repeat=len(idx)):
                if any(coeffs):
                    v = [0] * self.n
                    for i, a in zip(idx, coeffs):
                        v[i] = a
                    homog.append(v)
        seen: set[tuple] = set()
        frontier: list[Subspace] = [[]]
        while frontier:
            cur = frontier.pop()
            for v in homog:
                if la.in_span(F, cur, v):
                    continue
                ideal = self.ideal_closure(cur + [v])
                key = tuple(map(tuple, ideal))
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > max_ideals:
                    return UNKNOWN
                if len(ideal) < self.n:
                    if self._splits(gram, ideal):
                        return REDUCIBLE
                    frontier.append(ideal)
        return IRREDUCIBLE

    def ideal_closure(self, gens: Sequence[Sequence[int]]) -> Subspace:
        sub = self.span(gens)
        while True:
            new = [self.bracket_basis(j, v) for v in sub for j in range(self.n)]
            new += self.square_span(sub)
            grown = self.span(sub + [w for w in new if any(w)])
            if len(grown) == len(sub):
                return sub
            sub = grown

    def _splits(self, gram, ideal: Subspace) -> bool:
        F = self.field
        restricted = la.matmul(F, la.matmul(F, ideal, gram), la.transpose(ideal))
        if la.rank(F, restricted) < len(ideal):
            return False
        perp = self.orthogonal_complement(gram, ideal)
        return self.is_ideal(perp)


def orthogonal_complement(F: Field, gram, sub: Subspace, n: int) -> Subspace:
    """{v : B(w, v) = 0 for all w in sub}."""
    gram = getattr(gram, "gram", gram)
    if not sub:
        return la.identity(n)
    rows = la.matmul(F, sub, gram)
    return la.span(F, la.kernel(F, rows, n), n)


def abelian(field: Field, n_even: int, n_odd: int) -> LieSuperAlgebra:
    names = [f"e{i}" for i in range(n_even)] + [f"o{i}" for i in range(n_odd)]
    n = n_even + n_odd
    zero = [[[0] * n for _ in range(n)] for _ in range(n)]
    return LieSuperAlgebra(field, names, [0] * n_even + [1] * n_odd, zero)


# functional aliases
def verify(g: LieSuperAlgebra) -> Report:
    return g.verify()


def bracket(g: LieSuperAlgebra, x, y) -> Vector:
    return g.bracket(x, y)


def squaring(g: LieSuperAlgebra, x) -> Vector:
    return g.squaring(x)


def center(g: LieSuperAlgebra) -> Subspace:
    return g.center()


def special_center(g: LieSuperAlgebra, B) -> Subspace:
    return g.special_center(B)


def cone(g: LieSuperAlgebra, B) -> Callable[[Sequence[int]], bool]:
    return g.cone(B)


def derived_algebra(g: LieSuperAlgebra, i: int) -> list[Subspace]:
    return g.derived_algebra(i)


def desuperize(g: LieSuperAlgebra) -> LieSuperAlgebra:
    return g.desuperize()


def direct_sum(g: LieSuperAlgebra, k: LieSuperAlgebra) -> LieSuperAlgebra:
    return g.direct_sum(k)


def restrict(g: LieSuperAlgebra, basis) -> LieSuperAlgebra:
    return g.restrict(basis)


def is_ideal(g: LieSuperAlgebra, sub: Subspace) -> bool:
    return g.is_ideal(sub)


def is_irreducible(g: LieSuperAlgebra, B) -> str:
    return g.is_irreducible(B)
