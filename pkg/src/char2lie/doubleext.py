"""Double extensions of NIS superalgebras, lifts of derivations to them,
and the converse reconstructions.

Variants are named by the parities of the driving derivation D and of
the form B:

============  ======  ======  ==========================  ==================
variant       D       B       new basis vectors           partner squaring
============  ======  ======  ==========================  ==================
even-even     even    even    x, x* even                  none
odd-even      odd     even    x, x* odd                   s(x*) = a₀
odd-odd       odd     odd     x even, e odd               s(e) = m·x + a₀
even-odd      even    odd     x odd, e even               none
============  ======  ======  ==========================  ==================

In every variant x is central, [partner, a] = D(a),
[a, b]_g = [a, b]_a + B(D a, b)·x, B(x, partner) = 1 and a ⊥ x, partner.
The extended basis is (x, basis of a, partner).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg as la
from ._poly import quadratic_instances
from .derivations import (
    GradedOperator,
    commutator,
    derivation_report,
    find_eigen_in,
    operator_parity,
)
from .forms import (
    BilinearForm,
    FormError,
    QuadraticForm,
    delta_invariance_ok,
    delta_to_form,
    evaluate,
    form_to_delta,
    is_NIS,
    omega_diagonal_ok,
    quadratic_form,
    quadratic_from_derivation,
)
from .superalgebra import IRREDUCIBLE, REDUCIBLE, LieSuperAlgebra, StructureError, fmt_vec

VARIANTS = ("even-even", "odd-even", "odd-odd", "even-odd")

# (parity of D, parity of B, parity of x, parity of the partner)
_SHAPE = {
    "even-even": (0, 0, 0, 0),
    "odd-even": (1, 0, 1, 1),
    "odd-odd": (1, 1, 0, 1),
    "even-odd": (0, 1, 1, 0),
}


class DoubleExtensionError(ValueError):
    def __init__(self, label: str, witness: str = ""):
        super().__init__(f"{label} fails" + (f" at {witness}" if witness else ""))
        self.label = label
        self.witness = witness


@dataclass(frozen=True)
class DoubleExtension:
    variant: str
    g: LieSuperAlgebra
    B: BilinearForm
    a: LieSuperAlgebra
    Ba: BilinearForm
    D: GradedOperator
    alpha: QuadraticForm | None = None
    a0: tuple[int, ...] | None = None
    m: int = 0
    c: int = 0

    @property
    def x(self) -> int:
        return 0

    @property
    def partner(self) -> int:
        return self.g.n - 1

    def embed(self, v: Sequence[int]) -> list[int]:
        return [0] + list(v) + [0]

    def project(self, v: Sequence[int]) -> list[int]:
        return list(v[1:-1])


def _names(a: LieSuperAlgebra, partner: str) -> list[str]:
    def fresh(nm):
        while nm in a.index:
            nm += "'"
        return nm

    return [fresh("x")] + list(a.names) + [fresh(partner)]


def _vec(a: LieSuperAlgebra, v) -> list[int]:
    v = list(v) if v is not None else [0] * a.n
    if len(v) != a.n:
        raise DoubleExtensionError("shape", f"vector of length {len(v)} in dimension {a.n}")
    return v


def _check_operator(a: LieSuperAlgebra, D: GradedOperator, parity: int) -> None:
    if operator_parity(D.matrix, a.parities) not in (parity,) and any(map(any, D.matrix)):
        raise DoubleExtensionError("D-parity", f"D must be {'odd' if parity else 'even'}")
    rep = derivation_report(D, a)
    if not rep.passed:
        c = rep.failures()[0]
        raise DoubleExtensionError("derivation", f"{c.id} {c.witness}")


def _check_seed(a: LieSuperAlgebra, Ba: BilinearForm, parity: int) -> None:
    if Ba.parity != parity and any(map(any, Ba.gram)):
        raise DoubleExtensionError("B-parity", f"B must be {'odd' if parity else 'even'}")
    if not is_NIS(Ba, a):
        raise DoubleExtensionError("NIS", "the seed form is not a NIS")


def _B(F, Ba, u, v) -> int:
    return evaluate(F, Ba.gram, u, v)


def _check_pairs(a, Ba, D, label, relation, pairs=None) -> None:
    """relation(BDab, BaDb) must hold for every basis pair."""
    F = a.field
    cols = [D.column(j) for j in range(a.n)]
    if pairs is None:
        pairs = [(i, j) for i in range(a.n) for j in range(a.n)]
    for i, j in pairs:
        if not relation(_B(F, Ba, cols[i], a.e(j)), _B(F, Ba, a.e(i), cols[j])):
            raise DoubleExtensionError(label, f"({a.names[i]},{a.names[j]})")


def _check_square_is_ad(a, D, a0, label) -> None:
    F = a.field
    lhs = la.matmul(F, D.matrix, D.matrix)
    if lhs != a.ad(a0):
        j = next(j for j in range(a.n) if [r[j] for r in lhs] != [r[j] for r in a.ad(a0)])
        raise DoubleExtensionError(label, f"D²({a.names[j]}) ≠ [a₀,{a.names[j]}]")


def _alpha(a, Ba, D, alpha, side, label) -> QuadraticForm:
    want = quadratic_from_derivation(a, Ba, D, side)
    if want is None:
        raise DoubleExtensionError(label, "B(D·,·) is not symmetric with zero diagonal on the odd part")
    if alpha is None:
        return want
    if isinstance(alpha, QuadraticForm):
        if alpha.polar != want.polar:
            i, j = next(
                (i, j) for i in range(a.n) for j in range(a.n) if alpha.polar[i][j] != want.polar[i][j]
            )
            raise DoubleExtensionError(label, f"({a.names[i]},{a.names[j]})")
        return alpha
    return quadratic_form(a, list(alpha), want.polar)


def _assemble(variant, a, Ba, D, alpha=None, a0=None, m=0, c=0) -> DoubleExtension:
    F, n = a.field, a.n
    _, pB, px, pp = _SHAPE[variant]
    N = n + 2
    names = _names(a, "x*" if pB == 0 else "e")
    par = [px] + list(a.parities) + [pp]
    cols = [D.column(j) for j in range(n)]
    br = [[[0] * N for _ in range(N)] for _ in range(N)]
    sq = [[0] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            br[1 + i][1 + j] = [_B(F, Ba, cols[i], a.e(j))] + list(a.c[i][j]) + [0]
        br[N - 1][1 + i] = [0] + cols[i] + [0]
        br[1 + i][N - 1] = [0] + cols[i] + [0]
        if a.parities[i] and a.has_squaring:
            sq[1 + i] = [alpha.values[i] if alpha else 0] + list(a.q[i]) + [0]
    if pp == 1:
        sq[N - 1] = [m] + list(a0 if a0 is not None else [0] * n) + [0]
    gram = [[0] * N for _ in range(N)]
    for i in range(n):
        gram[1 + i][1:-1] = Ba.gram[i]
    gram[0][N - 1] = gram[N - 1][0] = 1
    gram[N - 1][N - 1] = c
    try:
        g = LieSuperAlgebra(F, names, par, br, sq, has_squaring=a.has_squaring)
        B = BilinearForm.make(g, gram, pB)
    except (StructureError, FormError) as exc:
        raise DoubleExtensionError("structure", str(exc)) from exc
    ext = DoubleExtension(
        variant, g, B, a, Ba, D, alpha, None if a0 is None else tuple(a0), m, c
    )
    rep = g.verify()
    if not rep.passed:
        bad = rep.failures()[0]
        raise DoubleExtensionError(bad.id, bad.witness)
    if not is_NIS(B, g):
        raise DoubleExtensionError("NIS", "the extended form is not a NIS")
    if any(any(g.c[0][j]) for j in range(N)) or (px and any(g.q[0])):
        raise DoubleExtensionError("central", "x is not central")
    return ext


def dext_even_even(a, Ba, D, alpha=None, c: int = 0) -> DoubleExtension:
    """D even, B even; s(a) = s_a(a) + α(a)x with polar(α)(a, b) = B(a, D b)."""
    F = a.field
    _check_seed(a, Ba, 0)
    _check_operator(a, D, 0)
    _check_pairs(a, Ba, D, "D1", lambda l, r: l == r)
    _check_pairs(a, Ba, D, "D1", lambda l, r: l == 0, [(i, i) for i in a.even])
    al = _alpha(a, Ba, D, alpha, "right", "D3")
    F.check(c)
    return _assemble("even-even", a, Ba, D, al, c=c)


def dext_odd_even(a, Ba, D, a0=None) -> DoubleExtension:
    """D odd, B even; s(r x + a + t x*) = s_a(a) + t²a₀ + t D(a)."""
    a0 = _vec(a, a0)
    _check_seed(a, Ba, 0)
    _check_operator(a, D, 1)
    if a.parity_of(a0) != 0:
        raise DoubleExtensionError("a0-even", fmt_vec(a, a0))
    _check_pairs(a, Ba, D, "2D1", lambda l, r: l == r)
    _check_square_is_ad(a, D, a0, "2D2")
    if any(D.apply(a.field, a0)):
        raise DoubleExtensionError("2D3", f"D(a₀) = {fmt_vec(a, D.apply(a.field, a0))}")
    return _assemble("odd-even", a, Ba, D, a0=a0)


def dext_odd_odd(a, Ba, D, a0=None, alpha=None, m: int = 0) -> DoubleExtension:
    """D odd, B odd; s(a + μe) = s_a(a) + (μ²m + α(a))x + μ²a₀ + μD(a)."""
    a0 = _vec(a, a0)
    _check_seed(a, Ba, 1)
    _check_operator(a, D, 1)
    if a.parity_of(a0) != 0:
        raise DoubleExtensionError("a0-even", fmt_vec(a, a0))
    _check_pairs(a, Ba, D, "3D1", lambda l, r: l == r)
    _check_pairs(a, Ba, D, "3D1p", lambda l, r: r == 0, [(i, i) for i in a.even])
    _check_square_is_ad(a, D, a0, "3D2")
    if any(D.apply(a.field, a0)):
        raise DoubleExtensionError("3D3", f"D(a₀) = {fmt_vec(a, D.apply(a.field, a0))}")
    al = _alpha(a, Ba, D, alpha, "left", "alpha-polar")
    a.field.check(m)
    return _assemble("odd-odd", a, Ba, D, al, a0=a0, m=m)


def dext_even_odd(a, Ba, D) -> DoubleExtension:
    """D even, B odd; s(a + μx) = s_a(a), [a, e] = D(a)."""
    _check_seed(a, Ba, 1)
    _check_operator(a, D, 0)
    _check_pairs(a, Ba, D, "4D1", lambda l, r: l == r)
    return _assemble("even-odd", a, Ba, D)


def extend(variant: str, a, Ba, D, alpha=None, a0=None, m: int = 0, c: int = 0) -> DoubleExtension:
    if variant == "even-even":
        return dext_even_even(a, Ba, D, alpha, c)
    if variant == "odd-even":
        return dext_odd_even(a, Ba, D, a0)
    if variant == "odd-odd":
        return dext_odd_odd(a, Ba, D, a0, alpha, m)
    if variant == "even-odd":
        return dext_even_odd(a, Ba, D)
    raise ValueError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")


# -- lifting derivations ------------------------------------------------------------------


@dataclass(frozen=True)
class Lift:
    delta: GradedOperator
    omega: BilinearForm


def _check_eq7(ext: DoubleExtension, Dt: GradedOperator, lam: int, shift, label: str) -> None:
    a, F = ext.a, ext.a.field
    lhs = commutator(a, Dt, ext.D).matrix
    rhs = la.madd(ext.D.scale(F, lam).rows(), a.ad(shift))
    if [list(r) for r in lhs] != rhs:
        j = next(j for j in range(a.n) if [r[j] for r in lhs] != [r[j] for r in rhs])
        raise DoubleExtensionError(label, a.names[j])


def _check_eq8(ext: DoubleExtension, Dt: GradedOperator, lam: int, shift, label: str) -> None:
    """λα(a) + B(D Δ̃ a, a) = B(s_a(a), shift) for odd a, certified by polarization."""
    a, F, Ba = ext.a, ext.a.field, ext.Ba
    alpha = ext.alpha

    def Q(v):
        s = F.mul(lam, alpha(F, v)) if alpha else 0
        s ^= _B(F, Ba, ext.D.apply(F, Dt.apply(F, v)), v)
        s ^= _B(F, Ba, a.squaring(v), shift)
        return [s]

    for lab, v, parts in quadratic_instances(a.odd, a.n):
        r = Q(v)[0]
        for p in parts:
            r ^= Q(p)[0]
        if r:
            raise DoubleExtensionError(label, fmt_vec(a, v))


def _lift(ext: DoubleExtension, Dt: GradedOperator, lam: int, shift, mu: int = 0) -> Lift:
    g, F = ext.g, ext.a.field
    m = _lift_matrix(ext, Dt, lam, shift, mu)
    D = GradedOperator(tuple(map(tuple, m)), 0)
    if operator_parity(D.matrix, g.parities) != 0:
        raise DoubleExtensionError("Δ-parity", "the lifted map is not even")
    rep = derivation_report(D, g)
    if not rep.passed:
        c = rep.failures()[0]
        raise DoubleExtensionError(f"Δ-{c.id}", c.witness)
    if not D.is_invertible(F):
        raise DoubleExtensionError("Δ-invertible", "the lifted map is singular")
    if not delta_invariance_ok(g, ext.B, D):
        raise DoubleExtensionError("Δ-invariance", "B(Δ·,·) ≠ B(·,Δ·)")
    if not omega_diagonal_ok(g, ext.B, D):
        raise DoubleExtensionError("ω-antisymmetric", "B(Δe, e) ≠ 0 for an even basis vector e")
    return Lift(D, delta_to_form(g, ext.B, D))


def _lift_common(ext, variant, Dt, lam, shift_parity, shift):
    if ext.variant != variant:
        raise DoubleExtensionError("variant", f"expected a {variant} extension, got {ext.variant}")
    a = ext.a
    if lam == 0:
        raise DoubleExtensionError("lambda", "λ must be nonzero")
    shift = _vec(a, shift)
    if any(shift) and a.parity_of(shift) != shift_parity:
        raise DoubleExtensionError("shift-parity", fmt_vec(a, shift))
    if operator_parity(Dt.matrix, a.parities) != 0:
        raise DoubleExtensionError("Δ̃-parity", "Δ̃ must be even")
    rep = derivation_report(Dt, a)
    if not rep.passed:
        c = rep.failures()[0]
        raise DoubleExtensionError("Δ̃-derivation", f"{c.id} {c.witness}")
    if not Dt.is_invertible(a.field):
        raise DoubleExtensionError("Δ̃-invertible", "Δ̃ is singular")
    if not delta_invariance_ok(a, ext.Ba, Dt):
        raise DoubleExtensionError("Δ̃-invariance", "B_a(Δ̃·,·) ≠ B_a(·,Δ̃·)")
    if not omega_diagonal_ok(a, ext.Ba, Dt):
        raise DoubleExtensionError("ω_a-antisymmetric", "B_a(Δ̃e, e) ≠ 0 for an even basis vector e")
    return shift


def lift_delta_even_even(ext: DoubleExtension, Dt: GradedOperator, lam: int, a0=None) -> Lift:
    """Δx = λx, Δx* = λx* + a₀, Δa = Δ̃a + B(a, a₀)x."""
    a0 = _lift_common(ext, "even-even", Dt, lam, 0, a0)
    if ext.c:
        raise DoubleExtensionError("x*-isotropic", "B(x*, x*) must vanish")
    _check_eq7(ext, Dt, lam, a0, "eq7")
    _check_eq8(ext, Dt, lam, a0, "eq8")
    return _lift(ext, Dt, lam, a0)


def lift_delta_odd_even(ext: DoubleExtension, Dt: GradedOperator, lam: int, b0=None, mu: int = 0) -> Lift:
    """Δx = λx, Δx* = λx* + b₀ + μx, Δa = Δ̃a + B(a, b₀)x."""
    b0 = _lift_common(ext, "odd-even", Dt, lam, 1, b0)
    _check_eq7(ext, Dt, lam, b0, "eqb9")
    F = ext.a.field
    if Dt.apply(F, ext.a0) != ext.D.apply(F, b0):
        raise DoubleExtensionError("eqb10", "Δ̃(a₀) ≠ D(b₀)")
    return _lift(ext, Dt, lam, b0, mu)


def lift_delta_odd_odd(ext: DoubleExtension, Dt: GradedOperator, lam: int, a1=None) -> Lift:
    """Δx = λx, Δe = λe + a₁, Δa = Δ̃a + B(a, a₁)x."""
    a1 = _lift_common(ext, "odd-odd", Dt, lam, 1, a1)
    F = ext.a.field
    _check_eq7(ext, Dt, lam, a1, "eqOO7")
    _check_eq8(ext, Dt, lam, a1, "eqOO8")
    if ext.m != F.mul(F.inv(lam), _B(F, ext.Ba, ext.a0, a1)):
        raise DoubleExtensionError("eqOO9", "m ≠ λ⁻¹B(a₀, a₁)")
    if ext.D.apply(F, a1) != Dt.apply(F, ext.a0):
        raise DoubleExtensionError("eqOO10", "D(a₁) ≠ Δ̃(a₀)")
    return _lift(ext, Dt, lam, a1)


def lift_delta_even_odd(ext: DoubleExtension, Dt: GradedOperator, lam: int, b0=None) -> Lift:
    """Δx = λx, Δe = λe + b₀, Δa = Δ̃a + B(a, b₀)x."""
    b0 = _lift_common(ext, "even-odd", Dt, lam, 0, b0)
    _check_eq7(ext, Dt, lam, b0, "eqOE7")
    return _lift(ext, Dt, lam, b0)


def lift_delta(ext: DoubleExtension, Dt: GradedOperator, lam: int, shift=None, mu: int = 0) -> Lift:
    if ext.variant == "even-even":
        return lift_delta_even_even(ext, Dt, lam, shift)
    if ext.variant == "odd-even":
        return lift_delta_odd_even(ext, Dt, lam, shift, mu)
    if ext.variant == "odd-odd":
        return lift_delta_odd_odd(ext, Dt, lam, shift)
    return lift_delta_even_odd(ext, Dt, lam, shift)


# -- reconstruction ----------------------------------------------------------------------------


@dataclass
class Reconstruction:
    variant: str
    x: list[int]
    partner: list[int]
    a_basis: list[list[int]]  # basis of a inside g
    lam: int
    a: LieSuperAlgebra
    Ba: BilinearForm
    omega_a: BilinearForm
    D: GradedOperator
    Dt: GradedOperator
    alpha: QuadraticForm | None
    a0: list[int] | None
    m: int
    c: int
    shift: list[int]
    mu: int
    ext: DoubleExtension
    lift: Lift
    notes: list[str] = field(default_factory=list)

    @property
    def basis(self) -> list[list[int]]:
        """Columns of the change of basis from the extension's basis to g's."""
        return [self.x] + self.a_basis + [self.partner]


@dataclass
class Absent:
    reason: str

    def __bool__(self) -> bool:
        return False


def _locus(g, B, variant):
    """Candidates for x: a subspace and, for odd x, the cone predicate."""
    if variant == "even-even":
        return g.graded_part(g.special_center(B.gram), 0), None
    if variant == "odd-odd":
        return g.graded_part(g.center(), 0), None
    return g.graded_part(g.center(), 1), g.cone(B.gram)


_REDIRECT = {"odd-even": "even-even", "even-odd": "odd-odd"}


def _pick_x(g, Delta, sub, cone):
    """Eigenvector choice: sparsest row, then smallest pivot column, then smaller λ.

    Rows are taken from the reduced echelon basis of each eigenspace, so
    a basis vector of g that qualifies is always found.
    """
    F = g.field
    best = None
    for lam, space in find_eigen_in(F, Delta, sub):
        for row in space:
            if cone is not None and not cone(row):
                continue
            piv = next(i for i, a in enumerate(row) if a)
            v = la.vscale(F, F.inv(row[piv]), row)
            key = (sum(1 for a in row if a), piv)
            if best is None or key < best[0]:
                best = (key, lam, v)
    return best


def _pick_partner(g, B, x, parity):
    F = g.field
    for j in range(g.n):
        if g.parities[j] != parity:
            continue
        b = _B(F, B, x, g.e(j))
        if b:
            return la.vscale(F, F.inv(b), g.e(j))
    return None


def reconstruct(g: LieSuperAlgebra, B: BilinearForm, omega: BilinearForm, variant: str, irreducible: bool | None = None):
    """Recover seed data (a, B_a, ω_a, D, …) exhibiting g as a double extension.

    Returns a :class:`Reconstruction`, or :class:`Absent` with the reason.
    ``irreducible=True`` asserts irreducibility and skips the search.
    """
    F = g.field
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    _, pB, px, pp = _SHAPE[variant]
    if B.parity != pB:
        return Absent(f"the {variant} variant needs a form of parity {pB}")
    Delta, why = form_to_delta(g, B, omega)
    if Delta is None:
        return Absent(why)
    if irreducible is None:
        verdict = g.is_irreducible(B.gram)
        if verdict == REDUCIBLE:
            return Absent("g decomposes into orthogonal ideals")
        if verdict != IRREDUCIBLE:
            return Absent("irreducibility unknown within budget; pass irreducible=True to assert it")
    sub, cone = _locus(g, B, variant)
    pick = _pick_x(g, Delta, sub, cone)
    notes = []
    if pick is None:
        if variant in _REDIRECT and sub:
            return _redirect(g, B, omega, variant, notes, "no eigenvector of Δ in the central cone")
        return Absent("no eigenvector of Δ in the central locus over this field; try a larger field")
    _, lam, x = pick
    if px and any(g.squaring(x)):
        return _redirect(g, B, omega, variant, notes, "s(x) ≠ 0")
    if _B(F, B, x, x):
        return Absent("B(x, x) ≠ 0, so g is reducible")
    xs = _pick_partner(g, B, x, pp)
    if xs is None:
        return Absent("no partner vector pairs with x")
    c = _B(F, B, xs, xs)
    if c and variant == "even-even":
        # x* ↦ x* + v with v ⊥ x, x* and B(v, v) = c keeps B(x, x*) = 1.
        perp = g.orthogonal_complement(B.gram, [x, xs])
        for v in perp:
            bv = _B(F, B, v, v)
            if bv and g.parity_of(v) == 0:
                xs = la.vadd(xs, la.vscale(F, F.sqrt(F.div(c, bv)), v))
                break
        c = _B(F, B, xs, xs)
        if c:
            notes.append("B(x*, x*) could not be made zero")
    a_sub = g.orthogonal_complement(B.gram, [x, xs])
    P = [x] + a_sub + [xs]
    if la.rank(F, P) != g.n:
        return Absent("x, x* and their orthogonal do not span g")
    cols = la.transpose(P)

    def split(w):
        coords = la.solve(F, cols, w)
        return coords[0], coords[1:-1], coords[-1]

    n = len(a_sub)
    try:
        gP = g.restrict(P, _basis_names(g, P))
    except StructureError as exc:
        return Absent(str(exc))
    a = gP_sub(gP, n)
    Ba = BilinearForm.make(a, [r[1:-1] for r in la.matmul(F, la.matmul(F, la.transpose(cols), B.gram), cols)[1:-1]])
    Dm = [[gP.c[gP.n - 1][1 + j][1 + i] for j in range(n)] for i in range(n)]
    D = GradedOperator(tuple(map(tuple, Dm)), _SHAPE[variant][0])
    alpha = None
    if variant in ("even-even", "odd-odd") and a.has_squaring:
        vals = [gP.q[1 + i][0] if a.parities[i] else 0 for i in range(n)]
        alpha = vals
    a0 = None
    m = 0
    if pp == 1:
        m = gP.q[gP.n - 1][0]
        a0 = list(gP.q[gP.n - 1][1:-1])
    DeltaP = la.solve_matrix(F, cols, la.matmul(F, Delta.matrix, cols))
    Dt = GradedOperator(tuple(tuple(r[1:-1]) for r in DeltaP[1:-1]), 0)
    shift = [DeltaP[1 + i][-1] for i in range(n)]
    mu = DeltaP[0][-1]
    try:
        ext = extend(variant, a, Ba, D, alpha, a0, m, c)
        lift = lift_delta(ext, Dt, lam, shift, mu)
    except DoubleExtensionError as exc:
        return Absent(f"re-extension fails: {exc}")
    WP = la.matmul(F, la.matmul(F, la.transpose(cols), omega.gram), cols)
    if not same_tables(ext.g, gP) or [list(r) for r in ext.B.gram] != la.matmul(F, la.matmul(F, la.transpose(cols), B.gram), cols):
        return Absent("re-extension does not reproduce g")
    if [list(r) for r in lift.omega.gram] != WP or [list(r) for r in lift.delta.matrix] != DeltaP:
        return Absent("re-extension does not reproduce ω")
    omega_a = BilinearForm.make(a, [r[1:-1] for r in WP[1:-1]])
    al = ext.alpha if variant in ("even-even", "odd-odd") else None
    return Reconstruction(
        variant, x, xs, a_sub, lam, a, Ba, omega_a, D, Dt, al, a0, m, c, shift, mu, ext, lift, notes
    )


def same_tables(g: LieSuperAlgebra, h: LieSuperAlgebra) -> bool:
    """Equal structure constants, squaring and parities; names are ignored."""
    return (g.field, g.parities, g.c, g.q, g.has_squaring) == (h.field, h.parities, h.c, h.q, h.has_squaring)


def _redirect(g, B, omega, variant, notes, why):
    target = _REDIRECT[variant]
    res = reconstruct(g, B, omega, target, irreducible=True)
    if res:
        res.notes = notes + [f"{why}; redirected to the {target} variant"]
    return res


def _basis_names(g, P):
    names = []
    for k, v in enumerate(P):
        nz = [i for i, a in enumerate(v) if a]
        names.append(g.names[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else f"u{k}")
    if len(set(names)) != len(names):
        names = [f"u{k}" for k in range(len(P))]
    return names


def gP_sub(gP: LieSuperAlgebra, n: int) -> LieSuperAlgebra:
    """The seed a: the middle block of g in the adapted basis, modulo x."""
    idx = range(1, n + 1)
    c = [[list(gP.c[i][j][1 : n + 1]) for j in idx] for i in idx]
    q = [list(gP.q[i][1 : n + 1]) for i in idx]
    return LieSuperAlgebra(
        gP.field, gP.names[1 : n + 1], gP.parities[1 : n + 1], c, q, has_squaring=gP.has_squaring
    )


# -- solving for lifts ---------------------------------------------------------------------------


@dataclass
class LiftSpace:
    """Affine space of (Δ̃, shift, μ) making the lifted map an invariant derivation.

    Every condition on the lifted Δ (Leibniz rule, squaring rule,
    B-invariance) is affine in the unknowns, so the space is
    ``particular + span(directions)``.  Invertibility of Δ̃ is not linear
    and is left to the caller.
    """

    ext: DoubleExtension
    lam: int
    unknowns: list[tuple[str, int, int]]
    particular: list[int] | None
    directions: list[list[int]]

    def decode(self, u: Sequence[int]):
        a = self.ext.a
        n = a.n
        Dt = la.zeros(n, n)
        shift = [0] * n
        mu = 0
        for (kind, i, j), val in zip(self.unknowns, u):
            if kind == "Dt":
                Dt[i][j] = val
            elif kind == "shift":
                shift[i] = val
            else:
                mu = val
        return GradedOperator(tuple(map(tuple, Dt)), 0), shift, mu

    def point(self, coeffs: Sequence[int]):
        F = self.ext.a.field
        u = list(self.particular)
        for c, d in zip(coeffs, self.directions):
            la.axpy(F, c, d, u)
        return self.decode(u)


def _lift_matrix(ext: DoubleExtension, Dt, lam, shift, mu) -> la.Matrix:
    F, a, N = ext.a.field, ext.a, ext.g.n
    m = la.zeros(N, N)
    m[0][0] = lam
    for j in range(a.n):
        col = [_B(F, ext.Ba, a.e(j), shift)] + Dt.column(j) + [0]
        for i in range(N):
            m[i][j + 1] = col[i]
    col = [mu] + list(shift) + [lam]
    for i in range(N):
        m[i][N - 1] = col[i]
    return m


def _lift_residual(ext: DoubleExtension, m: la.Matrix) -> list[int]:
    g, F, G = ext.g, ext.g.field, ext.B.gram
    out: list[int] = []
    cols = [[r[j] for r in m] for j in range(g.n)]
    for i in range(g.n):
        for j in range(i, g.n):
            w = la.matvec(F, m, g.c[i][j])
            w = la.vadd(w, g.bracket(cols[i], g.e(j)))
            out += la.vadd(w, g.bracket_basis(i, cols[j]))
    for i in g.odd:
        out += la.vadd(la.matvec(F, m, g.q[i]), g.bracket(cols[i], g.e(i)))
    mtG = la.matmul(F, la.transpose(m), G)
    for r in la.madd(mtG, la.matmul(F, G, m)):
        out += r
    out += [mtG[i][i] for i in g.even]
    return out


def lift_space(ext: DoubleExtension, lam: int) -> LiftSpace:
    a, F = ext.a, ext.a.field
    _, _, _, pp = _SHAPE[ext.variant]
    shift_parity = pp  # the shift has the partner's parity
    unknowns = [("Dt", i, j) for i in range(a.n) for j in range(a.n) if a.parities[i] == a.parities[j]]
    unknowns += [("shift", i, 0) for i in range(a.n) if a.parities[i] == shift_parity]
    if ext.variant == "odd-even":
        unknowns.append(("mu", 0, 0))
    space = LiftSpace(ext, lam, unknowns, None, [])
    k = len(unknowns)
    Dt0, shift0, mu0 = space.decode([0] * k)
    base = _lift_residual(ext, _lift_matrix(ext, Dt0, lam, shift0, mu0))
    cols = []
    for t in range(k):
        u = [0] * k
        u[t] = 1
        Dt, shift, mu = space.decode(u)
        r = _lift_residual(ext, _lift_matrix(ext, Dt, lam, shift, mu))
        cols.append(la.vadd(r, base))
    L = la.transpose(cols) if cols else []
    if not k:
        space.particular = [] if not any(base) else None
        return space
    sol = la.solve(F, L, base)
    space.particular = sol
    space.directions = la.kernel(F, L, k) if sol is not None else []
    return space
