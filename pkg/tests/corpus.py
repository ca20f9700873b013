"""Exhaustive corpora of small superalgebras over GF(2)."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from char2lie import linalg as la
from char2lie.derivations import GradedOperator, derivation_space
from char2lie.field import gf
from char2lie.superalgebra import LieSuperAlgebra, StructureError

F2 = gf(1)


def splits(n: int):
    """Parity vectors with the even basis first, one per split m|n-m."""
    return [tuple([0] * m + [1] * (n - m)) for m in range(n, -1, -1)]


def _slots(par, squaring):
    n = len(par)
    slots = []
    for i in range(n):
        for j in range(i + 1, n):
            p = (par[i] + par[j]) % 2
            slots += [("c", i, j, k) for k in range(n) if par[k] == p]
    if squaring:
        for i in range(n):
            if par[i]:
                slots += [("q", i, None, k) for k in range(n) if not par[k]]
    return slots


def tables(par, squaring=True, bits=None):
    """Every bracket/squaring table of the given parity shape, valid or not."""
    n = len(par)
    slots = _slots(par, squaring)
    choices = product((0, 1), repeat=len(slots)) if bits is None else bits
    for word in choices:
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        q = [[0] * n for _ in range(n)]
        for (kind, i, j, k), b in zip(slots, word):
            if b:
                if kind == "c":
                    c[i][j][k] = c[j][i][k] = 1
                else:
                    q[i][k] = 1
        yield c, q


def _names(par):
    return [f"{'e' if p == 0 else 'o'}{i}" for i, p in enumerate(par)]


def _valid(par, c, q, squaring):
    try:
        g = LieSuperAlgebra(F2, _names(par), par, c, q, has_squaring=squaring)
    except StructureError:
        return None
    return g if g.verify().passed else None


@lru_cache(maxsize=None)
def superalgebras(max_dim: int = 3) -> tuple[LieSuperAlgebra, ...]:
    """All Lie superalgebras over GF(2) of dimension 1..max_dim on the
    standard bases, including every parity split (no isomorphism reduction)."""
    out = []
    for n in range(1, max_dim + 1):
        for par in splits(n):
            for c, q in tables(par):
                g = _valid(par, c, q, True)
                if g is not None:
                    out.append(g)
    return tuple(out)


@lru_cache(maxsize=None)
def graded_lie(max_dim: int = 4, sample_even: int = 3000, seed: int = 11) -> tuple[LieSuperAlgebra, ...]:
    """ℤ/2-graded Lie algebras over GF(2) of dimension ≤ max_dim without
    squaring.  The purely even split of dimension 4 has 2^24 tables, so
    that split is sampled and topped up with every semidirect product
    F·d ⋉ h of a 3-dimensional even member h; every other split is
    exhaustive."""
    rng = random.Random(seed)
    out = []
    for n in range(1, max_dim + 1):
        seen = set()
        for par in splits(n):
            m = len(_slots(par, False))
            bits = None
            if m > 16:
                bits = [tuple(rng.randrange(2) for _ in range(m)) for _ in range(sample_even)]
            for c, q in tables(par, squaring=False, bits=bits):
                g = _valid(par, c, q, False)
                if g is not None:
                    out.append(g)
                    seen.add(g.c)
        if n == 4 and max_dim >= 4:
            for h in [g for g in out if g.n == 3 and not g.odd]:
                for g in semidirect_products(h):
                    if g.c not in seen:
                        seen.add(g.c)
                        out.append(g)
    return tuple(out)


def semidirect_products(h: LieSuperAlgebra):
    """F·d ⋉ h with [d, x] = D(x) for every even derivation D of h; d is e0."""
    n = h.n + 1
    par = (0,) + tuple(h.parities)
    for m in combinations(h.field, derivation_space(h, 0), h.n):
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(h.n):
            for j in range(h.n):
                c[i + 1][j + 1] = [0] + list(h.c[i][j])
            col = [0] + [m[k][i] for k in range(h.n)]
            c[0][i + 1] = c[i + 1][0] = col
        yield LieSuperAlgebra(h.field, _names(par), par, c, None, has_squaring=False)


def combinations(F, basis, n):
    """Every F-linear combination of the operators in ``basis``."""
    for coeffs in product(range(F.order), repeat=len(basis)):
        m = [[0] * n for _ in range(n)]
        for a, D in zip(coeffs, basis):
            if a:
                m = la.madd(m, [[F.mul(a, x) for x in r] for r in D.matrix])
        yield m


def invertible_derivations(g: LieSuperAlgebra, parity: int = 0, limit: int | None = None):
    """Invertible derivations of the given parity, in enumeration order."""
    F = g.field
    basis = derivation_space(g, parity)
    found = []
    for m in combinations(F, basis, g.n):
        if la.rank(F, m) == g.n:
            found.append(GradedOperator(tuple(map(tuple, m)), parity))
            if limit is not None and len(found) >= limit:
                break
    return found


def even_symmetric_tensors(g: LieSuperAlgebra):
    """All even symmetric r ∈ g⊗g over GF(2)."""
    n = g.n
    slots = [(i, j) for i in range(n) for j in range(i, n) if g.parities[i] == g.parities[j]]
    for word in product((0, 1), repeat=len(slots)):
        r = [[0] * n for _ in range(n)]
        for (i, j), b in zip(slots, word):
            if b:
                r[i][j] = r[j][i] = 1
        yield r


def invariant_derivation_basis(g: LieSuperAlgebra, B) -> list[GradedOperator]:
    """Even derivations D with B(Dx, y) = B(x, Dy), as a basis."""
    F, n = g.field, g.n
    basis = derivation_space(g, 0)
    if not basis:
        return []
    G = B.gram
    cols = []
    for D in basis:
        m = la.madd(la.matmul(F, la.transpose(D.matrix), G), la.matmul(F, G, D.matrix))
        cols.append([a for row in m for a in row])
    out = []
    for coeffs in la.kernel(F, la.transpose(cols), len(basis)):
        m = la.zeros(n, n)
        for a, D in zip(coeffs, basis):
            if a:
                m = la.madd(m, [[F.mul(a, x) for x in r] for r in D.matrix])
        out.append(GradedOperator(tuple(map(tuple, m)), 0))
    return out


def invertible_invariant_derivations(g: LieSuperAlgebra, B, limit: int | None = None):
    F = g.field
    found = []
    for m in combinations(F, invariant_derivation_basis(g, B), g.n):
        if la.rank(F, m) == g.n:
            found.append(GradedOperator(tuple(map(tuple, m)), 0))
            if limit is not None and len(found) >= limit:
                break
    return found


def nis_forms(g: LieSuperAlgebra):
    """Every NIS on g over GF(2), even and odd."""
    from char2lie.forms import BilinearForm, form_parity, is_NIS

    n = g.n
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    for word in product((0, 1), repeat=len(slots)):
        m = [[0] * n for _ in range(n)]
        for (i, j), b in zip(slots, word):
            m[i][j] = m[j][i] = b
        par = form_parity(m, g.parities)
        if par in (0, 1):
            B = BilinearForm(tuple(map(tuple, m)), par)
            if is_NIS(B, g):
                yield B
