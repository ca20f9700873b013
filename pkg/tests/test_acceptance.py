"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact.  Run with ``pytest tests/test_acceptance.py -v``;
the verdicts are repeated in an "acceptance" section of the terminal summary.
"""
import itertools
import random
import time

from char2lie import catalog as cat
from char2lie import linalg as la
from char2lie.derivations import GradedOperator, derivation_space, is_derivation
from char2lie.doubleext import VARIANTS, extend, reconstruct, same_tables
from char2lie.field import gf
from char2lie.forms import delta_to_form, form_to_delta
from char2lie.manin import (
    ManinError,
    build_manin,
    build_matched_pair,
    canonical_matched_pair,
    check_manin_conditions,
    cocycle_check,
    manin_dext_even,
    manin_dext_odd,
    manin_reduce,
)
from char2lie.rmatrix import (
    Tensor2,
    dual_algebra,
    ijr_check,
    imR_form,
    is_r_matrix,
    jacobi_obstruction,
    r_to_R,
)
from char2lie.superalgebra import LieSuperAlgebra
from char2lie.vinberg import Obstruction, is_left_symmetric, star_product, superize

from corpus import (
    combinations,
    even_symmetric_tensors,
    graded_lie,
    invertible_derivations,
    invertible_invariant_derivations,
    nis_forms,
    superalgebras,
)
from manin_corpus import corpus
from seeds import cases, even_seeds, odd_seeds

F2, F4 = gf(1), gf(2)
PARAMS = list(itertools.product(range(2), repeat=4))


def vectors(F, n):
    return [list(v) for v in itertools.product(range(F.order), repeat=n)]


# -- 1 ---------------------------------------------------------------------------


def heisenberg_mismatches(s, t, u, v):
    pair = cat.hei2_pair(s, t, u, v)
    h = build_manin(pair).h
    e = h.e
    z = e("z")

    def comb(*terms):
        out = [0] * h.n
        for c, w in terms:
            if c:
                out = la.vadd(out, w)
        return out

    expected = {
        ("p", "p*"): comb((t, z)),
        ("p", "q*"): comb((v, z)),
        ("p", "z*"): comb((t, e("p")), (v, e("q")), (1, e("q*"))),
        ("q", "p*"): comb((s, z)),
        ("q", "q*"): comb((u, z)),
        ("q", "z*"): comb((s, e("p")), (u, e("q")), (1, e("p*"))),
        ("z", "p*"): [0] * 6,
        ("z", "q*"): [0] * 6,
        ("z", "z*"): [0] * 6,
    }
    # the wings keep their own brackets
    for a, b in itertools.combinations(pair.g.names, 2):
        expected[a, b] = list(pair.g.c[pair.g.index[a]][pair.g.index[b]]) + [0, 0, 0]
    for a, b in itertools.combinations(pair.gstar.names, 2):
        expected[a, b] = [0, 0, 0] + list(pair.gstar.c[pair.gstar.index[a]][pair.gstar.index[b]])
    bad = [(a, b) for (a, b), want in expected.items() if h.bracket(e(a), e(b)) != want]
    for a1, a2, a3, a4 in itertools.product(range(2), repeat=4):
        x = comb((a1, e("p")), (a2, e("q")), (a3, e("p*")), (a4, e("q*")))
        want = (a1 * a2 + a1 * a3 * t + a1 * a4 * v + a2 * a3 * s + a2 * a4 * u) % 2
        if h.squaring(x)[h.index["z"]] != want:
            bad.append(("s", (a1, a2, a3, a4)))
    return bad


def test_criterion_1_heisenberg_manin_triples(verdict):
    start = time.perf_counter()
    bad = {p: heisenberg_mismatches(*p) for p in PARAMS}
    bad = {p: b for p, b in bad.items() if b}
    dt = time.perf_counter() - start
    verdict(1, not bad and dt < 1, f"16 parameter vectors, mismatches={len(bad)}, {dt:.2f}s")


# -- 2 ---------------------------------------------------------------------------


def test_criterion_2_gf4_derivation(verdict):
    start = time.perf_counter()
    T = cat.hei2_manin(field=F4)
    D = cat.hei2_deriv_gf4(0, 0, 2, 3, triple=T)
    deriv = is_derivation(D, T.h)
    inv = D.is_invertible(F4)
    back, _ = form_to_delta(T.h, T.B, delta_to_form(T.h, T.B, D))
    round_trip = back is not None and back.matrix == D.matrix and back.parity == D.parity
    dt = time.perf_counter() - start
    verdict(2, deriv and inv and round_trip and dt < 1,
            f"derivation={deriv}, invertible={inv}, round trip={round_trip}, {dt:.2f}s")


# -- 3 and 4 ---------------------------------------------------------------------


def test_criterion_3_checker_equivalence(verdict):
    start = time.perf_counter()
    pairs = corpus()
    disagree = sum(check_manin_conditions(p).passed != cocycle_check(p).passed for p in pairs)
    passing = sum(check_manin_conditions(p).passed for p in pairs)
    dt = time.perf_counter() - start
    verdict(3, len(pairs) >= 200 and disagree == 0 and dt < 10,
            f"{len(pairs)} pairs ({passing} passing), disagreements={disagree}, {dt:.2f}s")


def test_criterion_4_matched_pair_specialization(verdict):
    start = time.perf_counter()
    passing = [p for p in corpus() if check_manin_conditions(p).passed]
    differ = 0
    for p in passing:
        h = build_matched_pair(canonical_matched_pair(p))
        if not same_tables(h, build_manin(p).h):
            differ += 1
    dt = time.perf_counter() - start
    verdict(4, bool(passing) and differ == 0 and dt < 5, f"{len(passing)} passing pairs, differences={differ}, {dt:.2f}s")


# -- 5 ---------------------------------------------------------------------------


def test_criterion_5_double_extension_round_trips(verdict):
    start = time.perf_counter()
    counts, failures = {}, []
    for variant in VARIANTS:
        n = 0
        for F, seed in ((F2, 21), (F4, 22)):
            for ext, lam, Dt, shift, mu, lift in cases(variant, F, 12, random.Random(seed)):
                rec = reconstruct(ext.g, ext.B, lift.omega, variant, irreducible=True)
                ok = bool(rec) and rec.variant == variant
                if ok:
                    ok = (
                        rec.basis == la.identity(ext.g.n)
                        and (rec.lam, rec.D, rec.Dt, rec.shift, rec.mu) == (lam, ext.D, Dt, list(shift), mu)
                        and same_tables(rec.ext.g, ext.g)
                    )
                if ok:
                    again = extend(variant, rec.a, rec.Ba, rec.D, rec.alpha, rec.a0, rec.m, rec.c)
                    ok = again.g == ext.g and again.B == ext.B
                if not ok:
                    failures.append((variant, F.order))
                n += 1
        counts[variant] = n
    dt = time.perf_counter() - start
    enough = all(n >= 20 for n in counts.values())
    verdict(5, enough and not failures and dt < 30,
            f"seeds per variant={counts}, failures={len(failures)}, {dt:.2f}s")


# -- 6, 7 and 8 --------------------------------------------------------------------


def _tensor_corpus():
    for g in superalgebras(3):
        for m in even_symmetric_tensors(g):
            yield g, Tensor2.make(g, m)


def test_criterion_6_ijr_equivalence(verdict):
    start = time.perf_counter()
    n = bad = 0
    for g, r in _tensor_corpus():
        n += 1
        bad += is_r_matrix(r) != ("ijr-ii" not in ijr_check(g, r_to_R(r)).failed_ids())
    dt = time.perf_counter() - start
    verdict(6, bad == 0 and dt < 60, f"{n} even symmetric tensors, discrepancies={bad}, {dt:.2f}s")


def test_criterion_7_dual_squaring_obstruction(verdict):
    start = time.perf_counter()
    n = bad = 0
    for g, r in _tensor_corpus():
        n += 1
        bad += jacobi_obstruction(r).passed != dual_algebra(r).verify().passed
    dt = time.perf_counter() - start
    verdict(7, bad == 0, f"{n} tensors, discrepancies={bad}, {dt:.2f}s")


def test_criterion_8_image_form(verdict):
    # Left failing on purpose: in characteristic 2 the form on Im(R) is
    # symmetric with ω(R f, R f) = f(R f), which is nonzero for r = z⊗z
    n = 0
    failed = {}
    first = None
    for g, r in _tensor_corpus():
        if not is_r_matrix(r):
            continue
        n += 1
        rep = imR_form(g, r_to_R(r)).report
        for c in rep.failures():
            failed[c.id] = failed.get(c.id, 0) + 1
            if first is None:
                first = f"{g.names} r={r.r}: {c.line()}"
    verdict(8, not failed, f"{n} symmetric r-matrices, failures by check={failed}, first: {first}")


# -- 9 ---------------------------------------------------------------------------


def two_step_nilpotent(g):
    n = g.n
    return all(not any(g.bracket(g.e(i), g.c[j][k])) for i in range(n) for j in range(n) for k in range(n))


def over_gf4(g):
    return LieSuperAlgebra(F4, g.names, g.parities, g.c, g.q, has_squaring=False)


def test_criterion_9_vinberg(verdict):
    start = time.perf_counter()
    problems = []
    stars = superized = extended = 0
    for g in graded_lie(4):
        V = vectors(F2, g.n)
        for D in invertible_derivations(g, 0, limit=2):
            p = star_product(g, D)
            stars += 1
            if not is_left_symmetric(p):
                problems.append(("left-symmetric", g.c))
            for x, y in itertools.product(V, repeat=2):
                if la.vadd(p(x, y), p(y, x)) != g.bracket(x, y):
                    problems.append(("symmetrized", g.c))
                    break
        if not two_step_nilpotent(g):
            continue
        # over GF(2) a non-abelian algebra may lack an invertible derivation; GF(4) supplies one
        ds = invertible_derivations(g, 0, limit=1)
        h = g
        if not ds:
            h = over_gf4(g)
            ds = invertible_derivations(h, 0, limit=1)
            extended += 1
        if not ds:
            problems.append(("no-derivation", g.c))
            continue
        s = superize(h, ds[0])
        if isinstance(s, Obstruction) or not s.verify().passed:
            problems.append(("superize", g.c))
            continue
        superized += 1
        p = star_product(h, ds[0])
        for x in vectors(h.field, h.n):
            if h.parity_of(x) == 1 and any(x) and s.squaring(x) != p(x, x):
                problems.append(("s=x*x", g.c))
                break
    dt = time.perf_counter() - start
    verdict(9, not problems and stars > 0,
            f"{len(graded_lie(4))} algebras, {stars} star products, {superized} superized "
            f"({extended} over GF(4)), problems={len(problems)}, {dt:.2f}s")


# -- 10 --------------------------------------------------------------------------


def _invariant_derivation_corpus():
    for g in superalgebras(3):
        for B in nis_forms(g):
            yield g, B
    for F in (F2, F4):
        yield from even_seeds(F)
        yield from odd_seeds(F)
        for variant in VARIANTS:
            for ext, *_ in cases(variant, F, 6, random.Random(1)):
                yield ext.g, ext.B
    for p in PARAMS:
        T = cat.hei2_manin(*p)
        yield T.h, T.B
    T = cat.hei2_manin(field=F4)
    yield T.h, T.B


def test_criterion_10_special_center_and_cone(verdict):
    start = time.perf_counter()
    instances = with_squares = 0
    bad = []
    for g, B in _invariant_derivation_corpus():
        F = g.field
        ds = invertible_invariant_derivations(g, B, limit=4)
        if not ds:
            continue
        instances += len(ds)
        if la.rank(F, g.square_span()):
            with_squares += 1
        z = g.center()
        if la.rank(F, la.intersect(F, g.special_center(B), z, g.n)) != la.rank(F, z):
            bad.append(("special-center", g.names))
        cone = g.cone(B)
        zo = g.graded_part(z, 1)
        for coeffs in itertools.product(range(F.order), repeat=len(zo)):
            x = [0] * g.n
            for c, v in zip(coeffs, zo):
                x = la.vadd(x, la.vscale(F, c, v))
            if not cone(x):
                bad.append(("cone", g.names))
                break
    dt = time.perf_counter() - start
    verdict(10, not bad and with_squares > 0,
            f"{instances} (algebra, B, Δ) instances, {with_squares} algebras with s(g₁) ≠ 0, "
            f"counterexamples={len(bad)}, {dt:.2f}s")


# -- 11 --------------------------------------------------------------------------


def test_criterion_11_manin_double_extensions(verdict):
    start = time.perf_counter()
    built = {"even": 0, "odd": 0}
    bad = []
    for p in PARAMS:
        T = cat.hei2_manin(*p)
        h = T.h
        for variant, parity in (("even", 0), ("odd", 1)):
            for m in combinations(F2, derivation_space(h, parity), h.n):
                D = GradedOperator(tuple(map(tuple, m)), parity)
                try:
                    E = manin_dext_even(T, D) if variant == "even" else manin_dext_odd(T, D, h.zero())
                except (ManinError, ValueError):
                    continue
                built[variant] += 1
                if not E.checks.passed or not E.triple.report().passed:
                    bad.append((p, variant, "assertions"))
                red = manin_reduce(E.triple, variant)
                if not red or red.seed != T:
                    bad.append((p, variant, "reduce"))
    dt = time.perf_counter() - start
    verdict(11, not bad and all(built.values()),
            f"extensions built={built}, failures={len(bad)}, {dt:.2f}s")
