"""Dual pairs, Manin triples, bialgebra cocycles and matched pairs.

A dual pair (g, g*) stores two algebras on index-matched bases with
⟨e^i, e_j⟩ = δ_ij.  The Manin double h = g ⊕ g* uses the basis
(e_1..e_n, e^1..e^n) and the hyperbolic form B(e_i, e^j) = δ_ij.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from typing import Mapping, Sequence

from . import linalg as la
from ._poly import polarized, quadratic_instances
from .forms import BilinearForm, evaluate, is_NIS
from .report import Report, Tally
from .superalgebra import LieSuperAlgebra, StructureError, Subspace, fmt_vec


class ManinError(ValueError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class DualPair:
    g: LieSuperAlgebra
    gstar: LieSuperAlgebra

    def __post_init__(self):
        if self.g.field != self.gstar.field:
            raise StructureError("dual pair over different fields")
        if self.g.parities != self.gstar.parities:
            raise StructureError("dual bases must have matching parities")

    @property
    def field(self):
        return self.g.field

    @property
    def n(self) -> int:
        return self.g.n

    def swap(self) -> "DualPair":
        return DualPair(self.gstar, self.g)

    def coad_right(self, f: Sequence[int], x: Sequence[int]) -> list[int]:
        """f∘ad_x ∈ g*, i.e. y ↦ f([x, y]_g)."""
        return la.matvec(self.field, la.transpose(self.g.ad(x)), f)

    def coad_left(self, x: Sequence[int], f: Sequence[int]) -> list[int]:
        """x∘ad_f ∈ g, the vector with coordinates x([f, e^i]_{g*})."""
        return la.matvec(self.field, la.transpose(self.gstar.ad(f)), x)


def coad_right(pair: DualPair, f, x) -> list[int]:
    return pair.coad_right(f, x)


def coad_left(pair: DualPair, x, f) -> list[int]:
    return pair.coad_left(x, f)


@dataclass(frozen=True)
class ManinTriple:
    h: LieSuperAlgebra
    B: BilinearForm
    g_sub: tuple[tuple[int, ...], ...]
    k_sub: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, h, B, g_sub: Subspace, k_sub: Subspace) -> "ManinTriple":
        return cls(h, B, tuple(map(tuple, h.span(g_sub))), tuple(map(tuple, h.span(k_sub))))

    def wing(self, which: str) -> LieSuperAlgebra:
        sub = self.g_sub if which == "g" else self.k_sub
        return self.h.restrict([list(v) for v in sub])

    def report(self) -> Report:
        h, F = self.h, self.h.field
        rep = Report()
        rep.extend(h.verify())
        rep.add("nis", is_NIS(self.B, h))
        g, k = [list(v) for v in self.g_sub], [list(v) for v in self.k_sub]
        rep.add("complement", len(g) + len(k) == h.n and la.rank(F, g + k) == h.n)
        for name, sub in (("g", g), ("k", k)):
            rep.add(f"{name}-subalgebra", h.is_subalgebra(sub))
            iso = all(evaluate(F, self.B.gram, u, v) == 0 for u in sub for v in sub)
            rep.add(f"{name}-isotropic", iso)
        return rep


# -- conditions for a Manin double ------------------------------------------------


def _sq_report(pair: DualPair, label: str) -> Report:
    """s_g(x)∘ad_h + [x, x∘ad_h] + x∘ad_{h∘ad_x} = 0, odd x ∈ g, h ∈ g*.

    Quadratic in x, so odd basis vectors plus pair polarizations are a
    complete certificate.  The polarized instances are exactly the
    (x, y odd, f even) case of the trilinear bracket condition.
    """
    g, n = pair.g, pair.n
    t = Tally([label])

    def Q(h):
        def q(x):
            out = pair.coad_left(g.squaring(x), h)
            out = la.vadd(out, g.bracket(x, pair.coad_left(x, h)))
            return la.vadd(out, pair.coad_left(x, pair.coad_right(h, x)))

        return q

    for j in range(n):
        h = [0] * n
        h[j] = 1
        q = Q(h)
        for lab, v, parts in quadratic_instances(g.odd, n):
            w = polarized(q, v, parts)
            if any(w):
                t.fail(label, f"x={fmt_vec(g, v)},h={pair.gstar.names[j]} -> {fmt_vec(g, w)}")
    return t.report()


def _bra_instances(g: LieSuperAlgebra):
    n, par = g.n, g.parities
    for i, j, f in product(range(n), repeat=3):
        pi, pj, pf = par[i], par[j], par[f]
        if (pi == 0 and pj == 0) or (pi == 0 and pf == 0) or (pi == 1 and pf == 1):
            yield i, j, f


def _bra_report(pair: DualPair) -> Report:
    """[x∘ad_f, y] + y∘ad_{f∘ad_x} + [x, y∘ad_f] + x∘ad_{f∘ad_y} + [x,y]∘ad_f = 0."""
    g, gs = pair.g, pair.gstar
    t = Tally(["Bra"])
    for i, j, k in _bra_instances(g):
        x, y, f = g.e(i), g.e(j), gs.e(k)
        w = g.bracket(pair.coad_left(x, f), y)
        w = la.vadd(w, pair.coad_left(y, pair.coad_right(f, x)))
        w = la.vadd(w, g.bracket(x, pair.coad_left(y, f)))
        w = la.vadd(w, pair.coad_left(x, pair.coad_right(f, y)))
        w = la.vadd(w, pair.coad_left(g.c[i][j], f))
        if any(w):
            t.fail("Bra", f"x={g.names[i]},y={g.names[j]},f={gs.names[k]} -> {fmt_vec(g, w)}")
    return t.report()


def check_manin_conditions(pair: DualPair) -> Report:
    rep = Report()
    rep.extend(_sq_report(pair, "Sq"))
    rep.extend(_sq_report(pair.swap(), "Sq*"))
    rep.extend(_bra_report(pair))
    return rep


def double_names(pair: DualPair) -> list[str]:
    names = list(pair.g.names)
    for nm in pair.gstar.names:
        names.append(nm if nm not in names else nm + "'")
    return names


def assemble_double(pair: DualPair) -> LieSuperAlgebra:
    """The algebra g ⊕ g* with cross brackets [e_i, e^j] = e_i∘ad_{e^j} + e^j∘ad_{e_i}."""
    g, gs, n = pair.g, pair.gstar, pair.n
    N = 2 * n
    c = [[[0] * N for _ in range(N)] for _ in range(N)]
    q = [[0] * N for _ in range(N)]
    for i in range(n):
        q[i][:n] = g.q[i]
        q[n + i][n:] = gs.q[i]
        for j in range(n):
            c[i][j][:n] = g.c[i][j]
            c[n + i][n + j][n:] = gs.c[i][j]
            cross = pair.coad_left(g.e(i), gs.e(j)) + pair.coad_right(gs.e(j), g.e(i))
            c[i][n + j] = cross
            c[n + j][i] = list(cross)
    return LieSuperAlgebra(g.field, double_names(pair), g.parities + gs.parities, c, q)


def hyperbolic_gram(n: int) -> la.Matrix:
    G = la.zeros(2 * n, 2 * n)
    for i in range(n):
        G[i][n + i] = G[n + i][i] = 1
    return G


def build_manin(pair: DualPair) -> ManinTriple:
    rep = check_manin_conditions(pair)
    if not rep.passed:
        raise ManinError("Manin conditions fail: " + ", ".join(sorted(rep.failed_ids())), rep)
    h = assemble_double(pair)
    n = pair.n
    B = BilinearForm.make(h, hyperbolic_gram(n))
    triple = ManinTriple.make(h, B, la.identity(2 * n)[:n], la.identity(2 * n)[n:])
    post = triple.report()
    if not post.passed:
        raise ManinError("assembled double fails its postconditions", post)
    return triple


# -- bialgebra 1-cocycles -------------------------------------------------------------


def cocycle_tensors(pair: DualPair) -> list[la.Matrix]:
    """T_k with c_g(e_k) = Σ T_k[a][b] e_a ⊗ e_b, dual to the bracket of g*."""
    gs, n = pair.gstar, pair.n
    return [[[gs.c[a][b][k] for b in range(n)] for a in range(n)] for k in range(n)]


def _cocycle_side(g: LieSuperAlgebra, T: list[la.Matrix], label: str) -> Report:
    F, n = g.field, g.n
    t = Tally([f"{label}-cond1", f"{label}-cond2"])
    ads = [g.ad(g.e(i)) for i in range(n)]

    def c(v):
        out = la.zeros(n, n)
        for k, a in enumerate(v):
            if a:
                for r in range(n):
                    for s in range(n):
                        out[r][s] ^= F.mul(a, T[k][r][s])
        return out

    def act(adx, M):
        return la.madd(la.matmul(F, adx, M), la.matmul(F, M, la.transpose(adx)))

    def act_vec(x, M):
        return act(g.ad(x), M)

    for i in range(n):
        for j in range(i + 1, n):
            s = la.madd(la.madd(act(ads[i], T[j]), act(ads[j], T[i])), c(g.c[i][j]))
            if any(map(any, s)):
                t.fail(f"{label}-cond1", f"({g.names[i]},{g.names[j]})")
    if g.has_squaring:
        def Q(x):
            M = la.madd(act_vec(x, c(x)), c(g.squaring(x)))
            return [a for row in M for a in row]

        for lab, v, parts in quadratic_instances(g.odd, n):
            if any(polarized(Q, v, parts)):
                t.fail(f"{label}-cond2", f"x={fmt_vec(g, v)}")
    return t.report()


def cocycle_check(pair: DualPair) -> Report:
    """c_g and c_{g*} are 1-cocycles for the adjoint action on the tensor square."""
    rep = Report()
    rep.extend(_cocycle_side(pair.g, cocycle_tensors(pair), "g"))
    rep.extend(_cocycle_side(pair.gstar, cocycle_tensors(pair.swap()), "g*"))
    return rep


def symmetric_images(pair: DualPair) -> bool:
    return all(T == la.transpose(T) for T in cocycle_tensors(pair))


def eqbra0_report(pair: DualPair) -> Report:
    """h([x, y∘ad_f]_g) = [f, h∘ad_x]_{g*}(y) on all basis quadruples."""
    g, gs, n, F = pair.g, pair.gstar, pair.n, pair.field
    t = Tally(["eqbra0"])
    for i, j, a, b in product(range(n), repeat=4):
        lhs = la.dot(F, gs.e(b), g.bracket(g.e(i), pair.coad_left(g.e(j), gs.e(a))))
        rhs = la.dot(F, gs.bracket(gs.e(a), pair.coad_right(gs.e(b), g.e(i))), g.e(j))
        if lhs != rhs:
            t.fail("eqbra0", f"x={g.names[i]},y={g.names[j]},f={gs.names[a]},h={gs.names[b]}")
    return t.report()


# -- matched pairs ----------------------------------------------------------------------

# Cross products are stored per basis pair (i in g, a in k) as the g- and
# k-components of [e_i, e_a].  Which named map a table entry belongs to
# depends only on the parities of e_i and e_a:
#   (0,0): ρ (g-part), π (k-part)      (0,1): λ̃ (g-part), λ (k-part)
#   (1,0): μ (g-part), μ̃ (k-part)      (1,1): r_g (g-part), r_k (k-part)
MAP_NAMES = {(0, 0): ("rho", "pi"), (0, 1): ("lambda~", "lambda"), (1, 0): ("mu", "mu~"), (1, 1): ("r_g", "r_k")}


@dataclass(frozen=True)
class MatchedPairData:
    g: LieSuperAlgebra
    k: LieSuperAlgebra
    g_part: tuple  # g_part[i][a]: coordinates in g
    k_part: tuple  # k_part[i][a]: coordinates in k

    @classmethod
    def from_maps(cls, g, k, maps: Mapping[str, Mapping[tuple[int, int], Sequence[int]]]) -> "MatchedPairData":
        """``maps[name][(i, a)]`` gives the named map's value on (e_i, e_a)."""
        gp = [[[0] * g.n for _ in range(k.n)] for _ in range(g.n)]
        kp = [[[0] * k.n for _ in range(k.n)] for _ in range(g.n)]
        for i in range(g.n):
            for a in range(k.n):
                gname, kname = MAP_NAMES[(g.parities[i], k.parities[a])]
                gp[i][a] = list(maps.get(gname, {}).get((i, a), [0] * g.n))
                kp[i][a] = list(maps.get(kname, {}).get((i, a), [0] * k.n))
        return cls(g, k, _freeze(gp), _freeze(kp))

    def maps(self) -> dict[str, dict[tuple[int, int], tuple[int, ...]]]:
        out: dict[str, dict] = {nm: {} for pair in MAP_NAMES.values() for nm in pair}
        for i in range(self.g.n):
            for a in range(self.k.n):
                gname, kname = MAP_NAMES[(self.g.parities[i], self.k.parities[a])]
                out[gname][(i, a)] = self.g_part[i][a]
                out[kname][(i, a)] = self.k_part[i][a]
        return out

    def mutate(self, name: str, i: int, a: int, coord: int, delta: int = 1) -> "MatchedPairData":
        """Copy with one coefficient of a named map changed."""
        gname, kname = MAP_NAMES[(self.g.parities[i], self.k.parities[a])]
        if name not in (gname, kname):
            raise ValueError(f"{name} is not defined on ({self.g.names[i]},{self.k.names[a]})")
        tab = [[list(v) for v in row] for row in (self.g_part if name == gname else self.k_part)]
        tab[i][a][coord] ^= delta
        if name == gname:
            return MatchedPairData(self.g, self.k, _freeze(tab), self.k_part)
        return MatchedPairData(self.g, self.k, self.g_part, _freeze(tab))


def _freeze(t):
    return tuple(tuple(tuple(v) for v in row) for row in t)


def canonical_matched_pair(pair: DualPair) -> MatchedPairData:
    """π, λ, μ̃, r_k are f∘ad_x; ρ, μ, λ̃, r_g are x∘ad_f."""
    g, gs, n = pair.g, pair.gstar, pair.n
    gp = [[pair.coad_left(g.e(i), gs.e(a)) for a in range(n)] for i in range(n)]
    kp = [[pair.coad_right(gs.e(a), g.e(i)) for a in range(n)] for i in range(n)]
    return MatchedPairData(g, gs, _freeze(gp), _freeze(kp))


def assemble_matched_pair(data: MatchedPairData) -> LieSuperAlgebra:
    """h = g ⊕ k with the tabulated cross brackets; S(x₁ + a₁) = s_g + s_k + r."""
    g, k = data.g, data.k
    n, m = g.n, k.n
    N = n + m
    c = [[[0] * N for _ in range(N)] for _ in range(N)]
    q = [[0] * N for _ in range(N)]
    for i in range(n):
        q[i][:n] = g.q[i]
        for j in range(n):
            c[i][j][:n] = g.c[i][j]
    for a in range(m):
        q[n + a][n:] = k.q[a]
        for b in range(m):
            c[n + a][n + b][n:] = k.c[a][b]
    for i in range(n):
        for a in range(m):
            v = list(data.g_part[i][a]) + list(data.k_part[i][a])
            c[i][n + a] = v
            c[n + a][i] = list(v)
    names = list(g.names) + [nm if nm not in g.names else nm + "'" for nm in k.names]
    return LieSuperAlgebra(g.field, names, g.parities + k.parities, c, q)


def matched_pair_conditions(data: MatchedPairData) -> Report:
    """The compatibility conditions, read as components of the Jacobi identities of h.

    hev: mixed triples of even vectors.  hod: mixed triples with an odd
    member.  sq5/sq6: g-/k-component of [S(u), w] = [u, [u, w]] for odd u
    and even w; sq8/sq7: the same for odd w.  The squaring identities are
    quadratic in u, so u runs over odd basis vectors and pair sums.
    """
    try:
        h = assemble_matched_pair(data)
    except StructureError as exc:
        t = Tally(["parity"])
        t.fail("parity", str(exc))
        return t.report()
    n = data.g.n
    t = Tally(["hev", "hod", "sq5", "sq6", "sq7", "sq8"])
    side = lambda i: i < n  # noqa: E731
    for i, j, k in combinations_with_replacement(range(h.n), 3):
        if len({side(i), side(j), side(k)}) == 1:
            continue
        s = h.bracket_basis(i, h.c[j][k])
        s = la.vadd(s, h.bracket_basis(j, h.c[k][i]))
        s = la.vadd(s, h.bracket_basis(k, h.c[i][j]))
        if any(s):
            label = "hev" if h.parities[i] + h.parities[j] + h.parities[k] == 0 else "hod"
            t.fail(label, f"({h.names[i]},{h.names[j]},{h.names[k]}) -> {fmt_vec(h, s)}")
    for w in range(h.n):
        def Q(u, w=w):
            return la.vadd(h.bracket(h.squaring(u), h.e(w)), h.bracket(u, h.bracket(u, h.e(w))))

        for lab, v, parts in quadratic_instances(h.odd, h.n):
            inside = {side(i) for i, a in enumerate(v) if a} | {side(w)}
            if len(inside) == 1:
                continue
            r = polarized(Q, v, parts)
            gpart, kpart = any(r[:n]), any(r[n:])
            even_w = h.parities[w] == 0
            where = f"u={fmt_vec(h, v)},w={h.names[w]}"
            if gpart:
                t.fail("sq5" if even_w else "sq8", where)
            if kpart:
                t.fail("sq6" if even_w else "sq7", where)
    return t.report()


def build_matched_pair(data: MatchedPairData) -> LieSuperAlgebra:
    rep = matched_pair_conditions(data)
    if not rep.passed:
        bad = rep.failures()[0]
        raise ManinError(f"matched-pair condition {bad.id} fails at {bad.witness}", rep)
    h = assemble_matched_pair(data)
    post = h.verify()
    if not post.passed:
        raise ManinError("assembled algebra fails Jacobi", post)
    return h


# -- double extensions of Manin triples ------------------------------------------------------


@dataclass(frozen=True)
class ManinExtension:
    triple: ManinTriple
    ext: object  # doubleext.DoubleExtension
    checks: Report


def _inside(F, sub, vectors) -> bool:
    return all(la.in_span(F, [list(v) for v in sub], w) for w in vectors)


def _extended_triple(triple: ManinTriple, ext) -> ManinExtension:
    g = ext.g
    N = g.n
    xv, pv = g.e(0), g.e(N - 1)
    gt = [xv] + [ext.embed(v) for v in triple.g_sub]
    kt = [pv] + [ext.embed(v) for v in triple.k_sub]
    new = ManinTriple.make(g, ext.B, gt, kt)
    checks = new.report()
    if not checks.passed:
        bad = checks.failures()[0]
        raise ManinError(f"extended triple fails {bad.id}", checks)
    return ManinExtension(new, ext, checks)


def manin_dext_even(triple: ManinTriple, D, alpha=None) -> ManinExtension:
    """Even double extension with x joining g and x* joining k.

    Needs D(k₀) ⊆ k₀ and α(k₁) = 0; D(k₁) ⊆ k₁ is then verified.
    """
    from .doubleext import dext_even_even

    h, F = triple.h, triple.h.field
    k = [list(v) for v in triple.k_sub]
    k0, k1 = h.graded_part(k, 0), h.graded_part(k, 1)
    if not _inside(F, k, [D.apply(F, v) for v in k0]):
        raise ManinError("D(k₀) ⊄ k₀")
    ext = dext_even_even(h, triple.B, D, alpha, 0)
    al = ext.alpha
    for a, u in enumerate(k1):
        if al(F, u):
            raise ManinError(f"α does not vanish on k₁ at {fmt_vec(h, u)}")
        for v in k1[a + 1 :]:
            if al.polar_value(F, u, v):
                raise ManinError(f"α does not vanish on k₁ at {fmt_vec(h, la.vadd(u, v))}")
    if not _inside(F, k, [D.apply(F, v) for v in k1]):
        raise ManinError("D(k₁) ⊄ k₁ although α(k₁) = 0")
    return _extended_triple(triple, ext)


def manin_dext_odd(triple: ManinTriple, D, a0) -> ManinExtension:
    """Odd double extension; needs D(k) ⊆ k and a₀ ∈ k₀."""
    from .doubleext import dext_odd_even

    h, F = triple.h, triple.h.field
    k = [list(v) for v in triple.k_sub]
    if not _inside(F, k, [D.apply(F, v) for v in k]):
        raise ManinError("D(k) ⊄ k")
    if not la.in_span(F, k, list(a0)) or h.parity_of(a0) != 0:
        raise ManinError("a₀ must lie in k₀")
    return _extended_triple(triple, dext_odd_even(h, triple.B, D, a0))


@dataclass
class ManinReduction:
    variant: str
    seed: ManinTriple
    D: object
    alpha: object
    a0: list[int] | None
    x: list[int]
    partner: list[int]
    basis: list[list[int]]
    swapped: bool
    extension: ManinExtension


@dataclass
class NoReduction:
    reason: str

    def __bool__(self) -> bool:
        return False


def _central_candidates(triple: ManinTriple, variant: str, wing) -> list[list[int]]:
    h = triple.h
    F = h.field
    if variant == "even":
        sub = h.graded_part(la.intersect(F, h.special_center(triple.B.gram), wing, h.n), 0)
        return sub
    sub = h.graded_part(la.intersect(F, h.center(), wing, h.n), 1)
    cone = h.cone(triple.B.gram)
    return [v for v in sub if cone(v) and not any(h.squaring(v))]


def manin_reduce(triple: ManinTriple, variant: str = "even"):
    """Exhibit a Manin triple as a double extension of a smaller one."""
    from .doubleext import gP_sub, same_tables

    if variant not in ("even", "odd"):
        raise ValueError("variant must be 'even' or 'odd'")
    h, F, B = triple.h, triple.h.field, triple.B
    for swapped in (False, True):
        wing = [list(v) for v in (triple.k_sub if swapped else triple.g_sub)]
        other = [list(v) for v in (triple.g_sub if swapped else triple.k_sub)]
        cands = _central_candidates(triple, variant, wing)
        if not cands:
            continue
        x = min(cands, key=lambda v: (sum(1 for a in v if a), next(i for i, a in enumerate(v) if a)))
        piv = next(i for i, a in enumerate(x) if a)
        x = la.vscale(F, F.inv(x[piv]), x)
        px = h.parity_of(x)
        xs = None
        for w in other:
            b = evaluate(F, B.gram, x, w)
            if b and h.parity_of(w) == px:
                xs = la.vscale(F, F.inv(b), w)
                break
        if xs is None:
            continue
        c_sub = h.orthogonal_complement(B.gram, [x, xs])
        P = [x] + c_sub + [xs]
        cols = la.transpose(P)
        names = []
        for k, v in enumerate(P):
            nz = [i for i, a in enumerate(v) if a]
            names.append(h.names[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else f"u{k}")
        if len(set(names)) != len(names):
            names = [f"u{k}" for k in range(len(P))]
        hP = h.restrict(P, names)
        n = len(c_sub)
        c_alg = gP_sub(hP, n)
        GP = la.matmul(F, la.matmul(F, la.transpose(cols), B.gram), cols)
        Bc = BilinearForm.make(c_alg, [r[1:-1] for r in GP[1:-1]])

        def coords_in_c(v):
            return la.solve(F, cols, v)[1:-1]

        a_sub = [coords_in_c(v) for v in la.intersect(F, wing, c_sub, h.n)]
        b_sub = [
            coords_in_c(v)
            for v in la.intersect(F, other, h.orthogonal_complement(B.gram, [x]), h.n)
        ]
        if swapped:
            seed = ManinTriple.make(c_alg, Bc, b_sub, a_sub)
            oriented = ManinTriple.make(c_alg, Bc, a_sub, b_sub)
        else:
            seed = ManinTriple.make(c_alg, Bc, a_sub, b_sub)
            oriented = seed
        from .derivations import GradedOperator

        pD = 0 if variant == "even" else 1
        Dm = [[hP.c[hP.n - 1][1 + j][1 + i] for j in range(n)] for i in range(n)]
        D = GradedOperator(tuple(map(tuple, Dm)), pD)
        alpha = a0 = None
        try:
            if variant == "even":
                alpha = [hP.q[1 + i][0] if c_alg.parities[i] else 0 for i in range(n)]
                ext = manin_dext_even(oriented, D, alpha)
            else:
                a0 = list(hP.q[hP.n - 1][1:-1])
                ext = manin_dext_odd(oriented, D, a0)
        except (ManinError, ValueError) as exc:
            return NoReduction(f"re-extension fails: {exc}")
        if not same_tables(ext.ext.g, hP) or [list(r) for r in ext.ext.B.gram] != GP:
            return NoReduction("re-extension does not reproduce h")
        want_g = h.span([la.matvec(F, cols, v) for v in ext.triple.g_sub])
        want_k = h.span([la.matvec(F, cols, v) for v in ext.triple.k_sub])
        if (want_g, want_k) != (h.span(wing), h.span(other)):
            return NoReduction("re-extension does not reproduce the splitting")
        return ManinReduction(
            variant, seed, D, ext.ext.alpha, a0, x, xs, P, swapped, ext
        )
    return NoReduction("the central locus meets neither wing")


# -- search for Manin splittings ----------------------------------------------------------


def _subspaces(F, coords: Sequence[int], n: int, d: int):
    """Every d-dimensional subspace of span{e_i : i ∈ coords}, in RREF."""
    m = len(coords)
    for piv in combinations(range(m), d):
        free = [(r, j) for r, p in enumerate(piv) for j in range(p + 1, m) if j not in piv]
        for vals in product(range(F.order), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for r, p in enumerate(piv):
                rows[r][coords[p]] = 1
            for (r, j), a in zip(free, vals):
                rows[r][coords[j]] = a
            yield rows


def lagrangian_subalgebras(h: LieSuperAlgebra, B: BilinearForm, budget: int = 1 << 16) -> list[Subspace]:
    """Graded subalgebras of dimension n/2 on which B vanishes identically."""
    F, n = h.field, h.n
    if n % 2:
        return []
    seen = 0
    out = []
    for d0 in range(len(h.even) + 1):
        d1 = n // 2 - d0
        if not 0 <= d1 <= len(h.odd):
            continue
        odd_parts = list(_subspaces(F, h.odd, n, d1))
        for S0 in _subspaces(F, h.even, n, d0):
            for S1 in odd_parts:
                seen += 1
                if seen > budget:
                    raise ManinError(f"more than {budget} candidate subspaces")
                V = S0 + S1
                if all(evaluate(F, B.gram, u, v) == 0 for u in V for v in V) and h.is_subalgebra(V):
                    out.append(V)
    return out


def manin_search(h: LieSuperAlgebra, B: BilinearForm, budget: int = 1 << 16) -> list[ManinTriple]:
    """Every splitting of (h, B) into two complementary Lagrangian subalgebras.

    Exhaustive up to ``budget`` candidate subspaces; an empty list means
    that no splitting exists, not that none was found in time.
    """
    if not is_NIS(B, h):
        raise ManinError("B is not a NIS on h")
    F, n = h.field, h.n
    subs = lagrangian_subalgebras(h, B, budget)
    found = []
    for a, U in enumerate(subs):
        for V in subs[a + 1 :]:
            if la.rank(F, U + V) == n:
                found.append(ManinTriple.make(h, B, U, V))
    return found
