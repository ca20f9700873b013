"""Classical r-matrices on Lie superalgebras in characteristic 2.

A tensor r = Σ r[i][j] e_i⊗e_j is stored as its coefficient matrix.  All
brackets are taken in the underlying Lie algebra (signs vanish in
characteristic 2); parities are kept so graded constraints can be checked.

The map R: g* → g, R(f) = Σ f(a_i) b_i, has matrix rᵀ in column form.
Functionals are coordinate vectors in the dual basis.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import linalg as la
from ._poly import polarized, quadratic_instances
from .derivations import GradedOperator, operator_parity
from .forms import BilinearForm, closed_report, is_NIS
from .report import Report, Tally
from .superalgebra import LieSuperAlgebra, fmt_vec

CONSTRAINTS = ("even", "symmetric", "cybe", "hajj", "feldvoss", "graded")


class RMatrixError(ValueError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


class BudgetError(RMatrixError):
    pass


@dataclass(frozen=True)
class Tensor2:
    g: LieSuperAlgebra
    r: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, g: LieSuperAlgebra, r: Sequence[Sequence[int]]) -> "Tensor2":
        if la.shape(r) != (g.n, g.n):
            raise ValueError(f"tensor must be {g.n}x{g.n}")
        for row in r:
            for a in row:
                g.field.check(a)
        return cls(g, tuple(map(tuple, r)))

    @classmethod
    def zero(cls, g: LieSuperAlgebra) -> "Tensor2":
        return cls(g, tuple(map(tuple, la.zeros(g.n, g.n))))

    @classmethod
    def simple(cls, g: LieSuperAlgebra, a: Sequence[int], b: Sequence[int]) -> "Tensor2":
        """a⊗b."""
        F = g.field
        return cls(g, tuple(tuple(F.mul(x, y) for y in b) for x in a))

    def rows(self) -> la.Matrix:
        return [list(r) for r in self.r]

    def __add__(self, other: "Tensor2") -> "Tensor2":
        return Tensor2(self.g, tuple(map(tuple, la.madd(self.rows(), other.rows()))))

    def tau(self) -> "Tensor2":
        return Tensor2(self.g, tuple(map(tuple, la.transpose(self.r))))

    def is_even(self) -> bool:
        p = self.g.parities
        return all(not a or p[i] == p[j] for i, row in enumerate(self.r) for j, a in enumerate(row))

    def is_symmetric(self) -> bool:
        return self.tau().r == self.r

    def is_zero(self) -> bool:
        return not any(map(any, self.r))

    def entries(self) -> list[tuple[int, int, int]]:
        return [(i, j, a) for i, row in enumerate(self.r) for j, a in enumerate(row) if a]


@dataclass(frozen=True)
class Tensor3:
    coeffs: tuple[tuple[tuple[int, ...], ...], ...]

    def is_zero(self) -> bool:
        return not any(any(map(any, m)) for m in self.coeffs)

    def nonzero(self) -> list[tuple[int, int, int, int]]:
        return [
            (i, j, k, a)
            for i, m in enumerate(self.coeffs)
            for j, row in enumerate(m)
            for k, a in enumerate(row)
            if a
        ]


def _act(g: LieSuperAlgebra, x: Sequence[int], t: Sequence[Sequence[int]]) -> la.Matrix:
    """x·t = (ad_x ⊗ 1 + 1 ⊗ ad_x) t as a coefficient matrix."""
    F = g.field
    A = g.ad(x)
    return la.madd(la.matmul(F, A, t), la.matmul(F, t, la.transpose(A)))


# -- Yang-Baxter ----------------------------------------------------------------


def cybo(r: Tensor2) -> Tensor3:
    """[r¹², r¹³] + [r¹², r²³] + [r¹³, r²³]."""
    g, F, n = r.g, r.g.field, r.g.n
    T = [[[0] * n for _ in range(n)] for _ in range(n)]
    ent = r.entries()
    for i, k, a in ent:
        for j, l, b in ent:
            w = F.mul(a, b)
            for p, c in enumerate(g.c[i][j]):
                if c:
                    T[p][k][l] ^= F.mul(w, c)
            for q, c in enumerate(g.c[k][j]):
                if c:
                    T[i][q][l] ^= F.mul(w, c)
            for s, c in enumerate(g.c[k][l]):
                if c:
                    T[i][j][s] ^= F.mul(w, c)
    return Tensor3(tuple(tuple(map(tuple, m)) for m in T))


def is_r_matrix(r: Tensor2) -> bool:
    return cybo(r).is_zero()


# -- coboundary and the quasitriangular conditions ---------------------------------


def delta_r(r: Tensor2, x: Sequence[int]) -> Tensor2:
    """δ_r(x) = x·r."""
    return Tensor2(r.g, tuple(map(tuple, _act(r.g, x, r.r))))


def quasitriangular_conditions(r: Tensor2) -> Report:
    """(H) Hajj, (F) Feldvoss and (I) invariance of r + τ(r).

    (H) asks ⟨f⊗f, δ_r(y)⟩ = 0 for every f and basis y.  The left side is a
    quadratic form in f with matrix δ_r(y), so it is certified by the basis
    values (diagonal) and the polarizations δ[p][q] + δ[q][p].
    """
    g, F, n = r.g, r.g.field, r.g.n
    t = Tally(["hajj", "feldvoss", "invariant"])
    # Im(1+τ) is spanned by E_pq + E_qp (p < q); its coordinates are the strict upper triangle
    sym_basis = []
    for p in range(n):
        for q in range(p + 1, n):
            m = [0] * (n * n)
            m[p * n + q] = m[q * n + p] = 1
            sym_basis.append(m)
    s = la.madd(r.rows(), la.transpose(r.r))
    for y in range(n):
        d = delta_r(r, g.e(y)).r
        nm = g.names[y]
        for p in range(n):
            if d[p][p]:
                t.fail("hajj", f"y={nm}, f=e^{g.names[p]}")
            for q in range(p + 1, n):
                if d[p][q] != d[q][p]:
                    t.fail("hajj", f"y={nm}, f=e^{g.names[p]}+e^{g.names[q]}")
        flat = [a for row in d for a in row]
        if any(flat) and not (sym_basis and la.in_span(F, sym_basis, flat)):
            t.fail("feldvoss", f"δ_r({nm}) ∉ Im(1+τ)")
        if any(map(any, _act(g, g.e(y), s))):
            t.fail("invariant", f"{nm}·(r+τ(r)) ≠ 0")
    return t.report()


def coboundary_is_cocycle(r: Tensor2) -> bool:
    """x·δ_r(x) = δ_r(s(x)) for odd x, via basis values and pair polarizations."""
    g = r.g
    if not r.is_even():
        raise RMatrixError("r must be graded: a_i and b_i of equal parity")
    if not g.has_squaring:
        return True

    def Q(x):
        lhs = _act(g, x, delta_r(r, x).r)
        rhs = delta_r(r, g.squaring(x)).r
        return [a ^ b for la_, lb in zip(lhs, rhs) for a, b in zip(la_, lb)]

    return all(not any(polarized(Q, v, parts)) for _, v, parts in quadratic_instances(g.odd, g.n))


# -- the dual structure --------------------------------------------------------


def _require_graded(r: Tensor2) -> None:
    if not r.is_even():
        raise RMatrixError("r must be graded: a_i and b_i of equal parity")


def dual_bracket_table(r: Tensor2) -> list[list[list[int]]]:
    """c*[p][q][m] = ⟨e^p ⊗ e^q, δ_r(e_m)⟩."""
    g, n = r.g, r.g.n
    ds = [delta_r(r, g.e(m)).r for m in range(n)]
    return [[[ds[m][p][q] for m in range(n)] for q in range(n)] for p in range(n)]


def dual_squaring_from_r(r: Tensor2, f: Sequence[int]) -> list[int]:
    """s_{g*}(f) = Σ f([−, a_i]) f(b_i)."""
    _require_graded(r)
    g, F = r.g, r.g.field
    if any(f[i] for i in g.even):
        raise ValueError("the dual squaring is defined on odd functionals")
    out = [0] * g.n
    for i, k, a in r.entries():
        fb = F.mul(a, f[k])
        if fb:
            for m in range(g.n):
                out[m] ^= F.mul(fb, la.dot(F, f, g.c[m][i]))
    return out


def dual_algebra(r: Tensor2, names: Sequence[str] | None = None) -> LieSuperAlgebra:
    """g* with the bracket dual to δ_r and basis squares s_{g*}(e^p)."""
    g = r.g
    names = names or [nm + "*" for nm in g.names]
    q = [dual_squaring_from_r(r, g.e(p)) if g.parities[p] else [0] * g.n for p in range(g.n)]
    return LieSuperAlgebra(g.field, names, g.parities, dual_bracket_table(r), q)


def _jisqdual(r: Tensor2, x: int, f: Sequence[int]) -> list[int]:
    """LHS + RHS of the Jacobi identity [s(f), h] = [f, [f, h]] at e_x,
    expanded through the terms a⊗b of r.  Both sides are linear in h, so
    the result is the vector V with value h(V)."""
    g, F = r.g, r.g.field
    n = g.n
    c = g.c
    fv = lambda v: la.dot(F, f, v)
    ent = r.entries()
    out = [0] * n
    for i, k, u in ent:
        xa, xb = c[x][i], c[x][k]
        f_xa, f_a = fv(xa), f[i]
        for j, l, w in ent:
            uw = F.mul(u, w)
            fb2, fa2 = f[l], f[j]
            # f(b')·(f([[x,a],a'])·b + f([a,a'])·[x,b])
            if fb2:
                la.axpy(F, F.mul(uw, F.mul(fb2, fv(g.bracket_basis(j, xa)))), g.e(k), out)
                la.axpy(F, F.mul(uw, F.mul(fb2, fv(c[i][j]))), xb, out)
            # f([x,a])·(f([b,a'])·b' + f(a')·[b,b'])
            if f_xa:
                la.axpy(F, F.mul(uw, F.mul(f_xa, fv(c[k][j]))), g.e(l), out)
                la.axpy(F, F.mul(uw, F.mul(f_xa, fa2)), c[k][l], out)
            # f(a)·(f([[x,b],a'])·b' + f(a')·[[x,b],b'])
            if f_a:
                la.axpy(F, F.mul(uw, F.mul(f_a, fv(g.bracket_basis(j, xb)))), g.e(l), out)
                la.axpy(F, F.mul(uw, F.mul(f_a, fa2)), g.bracket_basis(l, xb), out)
    return out


def jacobi_obstruction(r: Tensor2) -> Report:
    """Whether (g*, δ_r-dual bracket, s_{g*}) is a Lie superalgebra.

    ids: dual-bracket (the dual table is symmetric with zero diagonal),
    dual-jacobi (ordinary Jacobi of the dual bracket), dual-polarization
    (s_{g*}(f+f') − s_{g*}(f) − s_{g*}(f') = [f, f']), JIsqdual (the
    squaring Jacobi identity, on odd basis f and pair sums).
    """
    _require_graded(r)
    g, F, n = r.g, r.g.field, r.g.n
    t = Tally(["dual-bracket", "dual-jacobi", "dual-polarization", "JIsqdual"])
    c = dual_bracket_table(r)
    nm = g.names
    for p in range(n):
        if any(c[p][p]):
            t.fail("dual-bracket", f"[e^{nm[p]},e^{nm[p]}] ≠ 0")
        for q in range(p + 1, n):
            if c[p][q] != c[q][p]:
                t.fail("dual-bracket", f"[e^{nm[p]},e^{nm[q]}] not symmetric")
    if "dual-bracket" not in t.first:
        dual = LieSuperAlgebra(F, [f"{a}*" for a in nm], g.parities, c, None, has_squaring=False)
        rep = dual.verify()
        if not rep.passed:
            t.fail("dual-jacobi", rep.failures()[0].witness)
    for a, p in enumerate(g.odd):
        for q in g.odd[a + 1 :]:
            fp, fq = g.e(p), g.e(q)
            lhs = la.vadd(
                dual_squaring_from_r(r, la.vadd(fp, fq)),
                la.vadd(dual_squaring_from_r(r, fp), dual_squaring_from_r(r, fq)),
            )
            if lhs != [c[p][q][m] for m in range(n)]:
                t.fail("dual-polarization", f"f=e^{nm[p]}, f'=e^{nm[q]}")
    for label, v, parts in quadratic_instances(g.odd, n):
        for xi in range(n):
            val = _jisqdual(r, xi, v)
            for part in parts:
                val = la.vadd(val, _jisqdual(r, xi, part))
            bad = [m for m in range(n) if val[m]]
            if bad:
                t.fail("JIsqdual", f"f={label}, h=e^{nm[bad[0]]}, x={nm[xi]}")
    return t.report()


# -- the operator R ----------------------------------------------------------------


def r_to_R(r: Tensor2) -> GradedOperator:
    m = la.transpose(r.r)
    par = operator_parity(m, r.g.parities)
    return GradedOperator(tuple(map(tuple, m)), 0 if par is None else par)


def R_to_r(g: LieSuperAlgebra, R: GradedOperator) -> Tensor2:
    return Tensor2.make(g, la.transpose(R.matrix))


def ijr_check(g: LieSuperAlgebra, R: GradedOperator) -> Report:
    """R even, (i) ⟨f, R(h)⟩ = ⟨h, R(f)⟩, (ii) the cyclic sum on basis triples."""
    n = g.n
    t = Tally(["even", "ijr-i", "ijr-ii"])
    if operator_parity(R.matrix, g.parities) != 0:
        t.fail("even", "R mixes parities")
    M = R.matrix
    nm = g.names
    for p in range(n):
        for q in range(p + 1, n):
            if M[p][q] != M[q][p]:
                t.fail("ijr-i", f"f=e^{nm[p]}, h=e^{nm[q]}")
    cols = [R.column(p) for p in range(n)]
    for p, q, s in product(range(n), repeat=3):
        v = g.bracket(cols[q], cols[s])[p] ^ g.bracket(cols[p], cols[q])[s] ^ g.bracket(cols[s], cols[p])[q]
        if v:
            t.fail("ijr-ii", f"(e^{nm[p]},e^{nm[q]},e^{nm[s]})")
    return t.report()


def _coad(g: LieSuperAlgebra, phi: Sequence[int], y: Sequence[int]) -> list[int]:
    """φ∘ad_y: x ↦ φ([y, x])."""
    return la.matvec(g.field, la.transpose(g.ad(y)), phi)


def dual_structure_via_R(g: LieSuperAlgebra, R: GradedOperator):
    """Functions (bracket, squaring) on g*:
    [f, h] = h∘ad_{R(f)} + f∘ad_{R(h)} and s(f) = f∘ad_{R(f)}."""
    F = g.field

    def bracket(f, h):
        return la.vadd(_coad(g, h, R.apply(F, f)), _coad(g, f, R.apply(F, h)))

    def squaring(f):
        return _coad(g, f, R.apply(F, f))

    return bracket, squaring


def sqgdual2_report(g: LieSuperAlgebra, R: GradedOperator) -> Report:
    """[s(f), h] = [f, [f, h]] on g* for the R-built structure, with f odd
    (basis and pair sums), h and the test vector x running over bases."""
    n = g.n
    bracket, squaring = dual_structure_via_R(g, R)
    t = Tally(["sqgdual2"])

    def Q(f, h):
        return la.vadd(bracket(squaring(f), h), bracket(f, bracket(f, h)))

    for label, v, parts in quadratic_instances(g.odd, n):
        for hi in range(n):
            h = g.e(hi)
            val = polarized(lambda f: Q(f, h), v, parts)
            if any(val):
                t.fail("sqgdual2", f"f={label}, h=e^{g.names[hi]} -> {fmt_vec(g, val)}")
    return t.report()


# -- the form on Im(R) ---------------------------------------------------------------


@dataclass
class ImageForm:
    basis: list[list[int]]  # R(e^p) for the pivot indices
    preimages: list[int]
    algebra: LieSuperAlgebra | None
    omega: BilinearForm | None
    report: Report


def imR_form(g: LieSuperAlgebra, R: GradedOperator) -> ImageForm:
    """Im(R) as a ℤ/2-graded Lie algebra with ω(R(f), R(h)) = ⟨h, R(f)⟩."""
    F, n = g.field, g.n
    rep = Report()
    cols = [R.column(p) for p in range(n)]
    _, piv = la.rref(F, la.transpose(cols)) if cols else ([], [])
    basis = [cols[p] for p in piv]
    # ⟨k, R(h)⟩ = 0 for k ∈ Ker(R) makes ω independent of preimages
    ker = la.kernel(F, R.matrix, n)
    bad = [(k, p) for k in ker for p in range(n) if la.dot(F, k, cols[p])]
    rep.add("well-defined", not bad, f"kernel vector pairs with e^{g.names[bad[0][1]]}" if bad else "")
    closed = all(la.in_span(F, basis, g.bracket(a, b)) for a in basis for b in basis) if basis else True
    rep.add("closed-bracket", closed, "" if closed else "[Im R, Im R] ⊄ Im R")
    if not basis:
        return ImageForm([], [], None, None, rep)
    homog = [v for v in basis if g.parity_of(v) is not None]
    if len(homog) != len(basis) or not closed:
        rep.add("graded", len(homog) == len(basis), "Im(R) basis not homogeneous")
        return ImageForm(basis, piv, None, None, rep)
    sub = g.desuperize().restrict(basis, [f"R{g.names[p]}" for p in piv])
    gram = [[R.matrix[pb][pa] for pb in piv] for pa in piv]
    w = BilinearForm(tuple(map(tuple, gram)), 0)
    rep.add("nondegenerate", la.rank(F, gram) == len(piv), "ω is degenerate")
    cr = closed_report(w, sub)
    rep.add("cocycle", cr.passed, "" if cr.passed else cr.failures()[0].witness)
    m = len(piv)
    sym = all(gram[a][b] == gram[b][a] for a in range(m) for b in range(m))
    diag = [sub.names[a] for a in sub.even if gram[a][a]]
    rep.add("antisymmetric", sym and not diag, "" if sym and not diag else f"ω(v, v) ≠ 0 for v={diag[0] if diag else '?'}")
    return ImageForm(basis, piv, sub, w, rep)


# -- deformations ----------------------------------------------------------------


def u_invariance_check(g: LieSuperAlgebra, B: BilinearForm, U: GradedOperator) -> Report:
    rep = Report()
    par = operator_parity(U.matrix, g.parities)
    rep.add("U-even", par == 0, "U mixes or flips parity" if par != 0 else "")
    F = g.field
    ok = la.matmul(F, la.transpose(U.matrix), B.gram) == la.matmul(F, B.gram, U.matrix)
    rep.add("U-symmetric", ok, "" if ok else "B(Ux, y) ≠ B(x, Uy)")
    return rep


def deformed_algebra(g: LieSuperAlgebra, U: GradedOperator) -> LieSuperAlgebra:
    """[x, y]~ = [Ux, y] + [x, Uy] and s~(x) = [Ux, x]."""
    F, n = g.field, g.n
    cols = [U.column(j) for j in range(n)]
    c = [[la.vadd(g.bracket_basis(j, cols[i]), g.bracket_basis(i, cols[j])) for j in range(n)] for i in range(n)]
    q = [g.bracket_basis(i, cols[i]) if g.parities[i] else [0] * n for i in range(n)]
    return LieSuperAlgebra(F, g.names, g.parities, c, q, has_squaring=g.has_squaring)


def morphism_report(g: LieSuperAlgebra, gt: LieSuperAlgebra, U: GradedOperator) -> Report:
    """U: (g, ~) → (g, ·) preserves brackets and squares."""
    F, n = g.field, g.n
    t = Tally(["morphism-bracket", "morphism-squaring"])
    cols = [U.column(j) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if U.apply(F, gt.c[i][j]) != g.bracket(cols[i], cols[j]):
                t.fail("morphism-bracket", f"({g.names[i]},{g.names[j]})")
    if g.has_squaring:
        for i in g.odd:
            if U.apply(F, gt.q[i]) != g.squaring(cols[i]):
                t.fail("morphism-squaring", f"x={g.names[i]}")
    return t.report()


@dataclass
class Deformation:
    algebra: LieSuperAlgebra
    U: GradedOperator
    R: GradedOperator
    report: Report


def deform(g: LieSuperAlgebra, B: BilinearForm, r: Tensor2) -> Deformation:
    F = g.field
    pre = Report()
    pre.add("nis", is_NIS(B, g), "B is not a NIS")
    pre.add("r-even", r.is_even(), "r is not even")
    pre.add("r-symmetric", r.is_symmetric(), "r is not symmetric")
    pre.add("cybe", is_r_matrix(r), "CYB(r) ≠ 0")
    R = r_to_R(r)
    pre.add("R-invertible", R.is_invertible(F), "R is singular")
    if not pre.passed:
        raise RMatrixError("deformation preconditions fail", pre)
    U = R.compose(F, GradedOperator(tuple(map(tuple, la.transpose(B.gram))), 0))  # Φ has matrix Gᵀ
    gt = deformed_algebra(g, U)
    rep = Report()
    rep.extend(gt.verify(), "deformed-")
    if not rep.passed:
        raise RMatrixError("deformed structure fails the Jacobi identities", rep)
    # U preserves brackets here; it need not preserve squares (see tests)
    rep.extend(morphism_report(g, gt, U))
    return Deformation(gt, U, R, rep)


def build_from_symmetric_U(g: LieSuperAlgebra, B: BilinearForm, U: GradedOperator) -> Deformation:
    """Deformation from an even B-symmetric U, with R = U∘Φ⁻¹.

    The returned report carries verify() of the deformed structure; it
    passes when R is an r-matrix and can fail otherwise.
    """
    F = g.field
    pre = u_invariance_check(g, B, U)
    pre.add("nis", is_NIS(B, g), "B is not a NIS")
    if not pre.passed:
        raise RMatrixError("U preconditions fail", pre)
    Ginv = la.inverse(F, la.transpose(B.gram))
    R = U.compose(F, GradedOperator(tuple(map(tuple, Ginv)), 0))
    gt = deformed_algebra(g, U)
    rep = Report()
    rep.extend(gt.verify(), "deformed-")
    rep.extend(morphism_report(g, gt, U))
    return Deformation(gt, U, R, rep)


# -- search ---------------------------------------------------------------------


def free_positions(g: LieSuperAlgebra, constraints: Iterable[str]) -> list[tuple[int, int]]:
    cons = set(constraints)
    unknown = cons - set(CONSTRAINTS)
    if unknown:
        raise ValueError(f"unknown constraints: {sorted(unknown)}")
    n, p = g.n, g.parities
    pos = []
    for i in range(n):
        for j in range(n):
            if {"even", "graded"} & cons and p[i] != p[j]:
                continue
            if "symmetric" in cons and j < i:
                continue
            pos.append((i, j))
    return pos


def _tensor_from(g, pos, vals, symmetric) -> Tensor2:
    m = la.zeros(g.n, g.n)
    for (i, j), a in zip(pos, vals):
        m[i][j] = a
        if symmetric:
            m[j][i] = a
    return Tensor2(g, tuple(map(tuple, m)))


def _passes(r: Tensor2, cons: set[str]) -> bool:
    if "cybe" in cons and not is_r_matrix(r):
        return False
    if {"hajj", "feldvoss"} & cons:
        rep = quasitriangular_conditions(r)
        failed = rep.failed_ids()
        if "hajj" in cons and "hajj" in failed:
            return False
        if "feldvoss" in cons and "feldvoss" in failed:
            return False
    return True


def _search_chunk(args) -> list[tuple[int, ...]]:
    g, pos, cons, first = args
    sym = "symmetric" in cons
    out = []
    for rest in product(list(g.field.elements()), repeat=len(pos) - 1):
        vals = (first,) + rest
        if _passes(_tensor_from(g, pos, vals, sym), cons):
            out.append(vals)
    return out


def search_r_matrices(
    g: LieSuperAlgebra, constraints: Iterable[str] = ("cybe",), budget: int = 1 << 16, workers: int = 1
) -> list[Tensor2]:
    """Every tensor satisfying ``constraints``, by exhaustive enumeration.

    With workers > 1 the space is split by the value of the first free
    coefficient and searched in separate processes.
    """
    cons = set(constraints)
    pos = free_positions(g, cons)
    size = g.field.order ** len(pos)
    if size > budget:
        raise BudgetError(f"{size} candidate tensors exceed the budget of {budget}")
    sym = "symmetric" in cons
    if not pos:
        z = Tensor2.zero(g)
        return [z] if _passes(z, cons) else []
    jobs = [(g, pos, frozenset(cons), a) for a in g.field.elements()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_search_chunk, jobs))
    else:
        chunks = [_search_chunk(j) for j in jobs]
    return [_tensor_from(g, pos, vals, sym) for ch in chunks for vals in ch]
