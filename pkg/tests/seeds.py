"""Seed generators shared by the double-extension tests."""
from __future__ import annotations

from itertools import product

from char2lie import linalg as la
from char2lie.derivations import GradedOperator, derivation_space
from char2lie.doubleext import DoubleExtensionError, extend, lift_delta, lift_space
from char2lie.forms import BilinearForm
from char2lie.manin import DualPair, assemble_double, check_manin_conditions, hyperbolic_gram
from char2lie.superalgebra import LieSuperAlgebra, StructureError, abelian


def _form(a, gram):
    return BilinearForm.make(a, gram)


def even_seeds(F):
    out = []
    a = abelian(F, 0, 2)
    out.append((a, _form(a, [[0, 1], [1, 0]])))
    a = abelian(F, 2, 0)
    out.append((a, _form(a, [[0, 1], [1, 0]])))
    out.append((a, _form(a, [[1, 0], [0, 1]])))
    a = abelian(F, 1, 0)
    out.append((a, _form(a, [[1]])))
    a = abelian(F, 2, 2)
    out.append((a, _form(a, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])))
    a = abelian(F, 1, 2)
    out.append((a, _form(a, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])))
    a = abelian(F, 0, 2)
    for al in ([1, 0], [1, 1], [0, 1]):
        ext = extend("even-even", a, out[0][1], GradedOperator(((0, 0), (0, 0)), 0), al)
        out.append((ext.g, ext.B))
    for pair in small_dual_pairs(F):
        if check_manin_conditions(pair).passed:
            h = assemble_double(pair)
            if any(any(map(any, r)) for r in h.c) or any(map(any, h.q)):
                out.append((h, _form(h, hyperbolic_gram(pair.n))))
    return out


def odd_seeds(F):
    out = []
    a = LieSuperAlgebra.from_sparse(F, [("u", 0), ("w", 1)])
    out.append((a, _form(a, [[0, 1], [1, 0]])))
    a = LieSuperAlgebra.from_sparse(F, [("u0", 0), ("u1", 0), ("w0", 1), ("w1", 1)])
    out.append((a, _form(a, [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])))
    out.append((a, _form(a, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])))
    a, B = out[0]
    zero = GradedOperator(((0, 0), (0, 0)), 1)
    for m in (1,):
        for al in ([0, 0], [0, 1]):
            ext = extend("odd-odd", a, B, zero, al, [0, 0], m)
            out.append((ext.g, ext.B))
    ext = extend("even-odd", a, B, GradedOperator(((0, 0), (0, 0)), 0))
    out.append((ext.g, ext.B))
    return out


def small_dual_pairs(F):
    """Dual pairs on 1|1 spaces over GF(2) coefficients."""
    basis = [("a", 0), ("b", 1)]
    dbasis = [("a*", 0), ("b*", 1)]
    algs = []
    for names in (basis, dbasis):
        A = []
        for c1, s1 in product(range(2), repeat=2):
            (e, o) = names[0][0], names[1][0]
            try:
                g = LieSuperAlgebra.from_sparse(F, names, {(e, o): {o: c1}}, {o: {e: s1}})
            except StructureError:
                continue
            if g.verify().passed:
                A.append(g)
        algs.append(A)
    return [DualPair(g, k) for g in algs[0] for k in algs[1]]


def admissible(a, Ba, parity, alpha_side=None):
    """Derivations D of the given parity with B(Da, b) = B(a, Db), zero even
    diagonals and, when ``alpha_side`` is set, a polar form B(a, Db)
    ("right") or B(Da, b) ("left") that is alternating on the odd part."""
    F, n, G = a.field, a.n, Ba.gram
    basis = derivation_space(a, parity)
    rows = []
    for D in basis:
        DtG = la.matmul(F, la.transpose(D.matrix), G)
        GD = la.matmul(F, G, D.matrix)
        r = [x for row in la.madd(DtG, GD) for x in row]
        r += [DtG[i][i] for i in a.even] + [GD[i][i] for i in a.even]
        P = GD if alpha_side == "right" else DtG
        if alpha_side:
            r += [P[i][j] ^ P[j][i] for i in a.odd for j in a.odd] + [P[i][i] for i in a.odd]
        rows.append(r)
    if not basis:
        return []
    ker = la.kernel(F, la.transpose(rows), len(basis))
    out = []
    for k in ker:
        m = [[0] * n for _ in range(n)]
        for c, D in zip(k, basis):
            if c:
                m = la.madd(m, [[F.mul(c, x) for x in r] for r in D.matrix])
        out.append(GradedOperator(tuple(map(tuple, m)), parity))
    return out


def _rand(F, rng):
    return rng.randrange(F.order)


def _combo(F, rng, basis, n):
    out = [[0] * n for _ in range(n)]
    for D in basis:
        c = _rand(F, rng)
        if c:
            out = la.madd(out, [[F.mul(c, x) for x in r] for r in D.matrix])
    return out


def _solve_a0(a, Dm, rng):
    """Even a₀ with ad_{a₀} = D², or None."""
    F, n = a.field, a.n
    D2 = la.matmul(F, Dm, Dm)
    idx = a.even
    cols = [[x for r in a.ad(a.e(i)) for x in r] for i in idx]
    target = [x for r in D2 for x in r]
    if not cols:
        return [0] * n if not any(target) else None
    sol = la.solve(F, la.transpose(cols), target)
    if sol is None:
        return None
    ker = la.kernel(F, la.transpose(cols), len(idx))
    for k in ker:
        la.axpy(F, _rand(F, rng), k, sol)
    v = [0] * n
    for i, c in zip(idx, sol):
        v[i] = c
    return v


def cases(variant, F, count, rng, tries=4000, max_dim=4):
    """Yield (ext, lam, Dt, shift, mu, lift) tuples, at most ``count``."""
    pD = {"even-even": 0, "odd-even": 1, "odd-odd": 1, "even-odd": 0}[variant]
    pB = {"even-even": 0, "odd-even": 0, "odd-odd": 1, "even-odd": 1}[variant]
    seeds = [s for s in (even_seeds(F) if pB == 0 else odd_seeds(F)) if s[0].n <= max_dim]
    found = 0
    spaces = {}
    for _ in range(tries):
        if found >= count:
            return
        a, Ba = seeds[rng.randrange(len(seeds))]
        key = (id(a), id(Ba), pD)
        if key not in spaces:
            spaces[key] = admissible(a, Ba, pD, {"even-even": "right", "odd-odd": "left"}.get(variant))
        Dm = _combo(F, rng, spaces[key], a.n)
        D = GradedOperator(tuple(map(tuple, Dm)), pD)
        alpha = [(_rand(F, rng) if a.parities[i] else 0) for i in range(a.n)]
        a0 = None
        m = 0
        if pD == 1:
            a0 = _solve_a0(a, Dm, rng)
            if a0 is None:
                continue
            m = _rand(F, rng)
        try:
            ext = extend(variant, a, Ba, D, alpha, a0, m)
        except DoubleExtensionError:
            continue
        lam = rng.randrange(1, F.order)
        space = lift_space(ext, lam)
        if space.particular is None:
            continue
        for _ in range(8):
            coeffs = [_rand(F, rng) for _ in space.directions]
            Dt, shift, mu = space.point(coeffs)
            if not Dt.is_invertible(F):
                continue
            try:
                lift = lift_delta(ext, Dt, lam, shift, mu)
            except DoubleExtensionError as exc:
                raise AssertionError(f"lift space point rejected by the extension conditions: {exc}")
            found += 1
            yield ext, lam, Dt, shift, mu, lift
            break
