import itertools

from hypothesis import given, settings, strategies as st

from char2lie import catalog as cat
from char2lie import linalg as la
from char2lie.derivations import (
    GradedOperator,
    ad,
    commutator,
    derivation_space,
    find_eigen_in,
    identity,
    is_derivation,
    operator_parity,
)
from char2lie.field import gf
from char2lie.superalgebra import abelian

from corpus import combinations, superalgebras

F2, F4 = gf(1), gf(2)


def brute_force_derivations(g):
    """Oracle: all 2^(n²) matrices over GF(2), checked against the raw tables.

    D[x,y] = [Dx,y] + [x,Dy] on basis pairs and D(s(x)) = [Dx,x] on odd
    basis x; returns the counts of even and odd solutions.
    """
    n = g.n
    counts = {0: 0, 1: 0}

    def br(u, v):
        return [sum(u[i] * v[j] * g.c[i][j][k] for i in range(n) for j in range(n)) % 2 for k in range(n)]

    def app(M, v):
        return [sum(M[k][j] * v[j] for j in range(n)) % 2 for k in range(n)]

    e = [[int(i == j) for i in range(n)] for j in range(n)]
    for bits in itertools.product((0, 1), repeat=n * n):
        M = [list(bits[k * n : (k + 1) * n]) for k in range(n)]
        par = operator_parity(M, g.parities)
        if par is None:
            continue
        ok = all(
            app(M, br(e[i], e[j])) == [(a + b) % 2 for a, b in zip(br(app(M, e[i]), e[j]), br(e[i], app(M, e[j])))]
            for i in range(n)
            for j in range(n)
        ) and all(app(M, list(g.q[i])) == br(app(M, e[i]), e[i]) for i in g.odd)
        if ok:
            counts[par] += 1
            if not any(bits):
                counts[1] += 1  # the zero map has both parities
    return counts


def test_hei_derivation_dimensions_pinned():
    g = cat.hei2()
    counts = brute_force_derivations(g)
    assert counts == {0: 2**2, 1: 2**2}
    assert len(derivation_space(g, 0)) == 2
    assert len(derivation_space(g, 1)) == 2


def test_pins():
    g = cat.hei2()
    zero = GradedOperator(tuple(map(tuple, la.zeros(3, 3))), 0)
    assert is_derivation(zero, g)
    assert not is_derivation(identity(g), g)
    a = abelian(F2, 1, 2)
    assert len(derivation_space(a, 0)) == 1 + 4
    assert len(derivation_space(a, 1)) == 2 + 2


def test_gf4_catalog_derivation():
    T = cat.hei2_manin(field=F4)
    D = cat.hei2_deriv_gf4(0, 0, 2, 3, triple=T)
    assert is_derivation(D, T.h) and D.is_invertible(F4)
    # oracle: sweep every λ ∈ GF(4)* and every vector of the center
    h = T.h
    center = h.center()
    expected = []
    for lam in range(1, 4):
        vecs = []
        for coeffs in itertools.product(range(4), repeat=len(center)):
            v = [0] * h.n
            for c, b in zip(coeffs, center):
                la.axpy(F4, c, b, v)
            if any(v) and D.apply(F4, v) == la.vscale(F4, lam, v):
                vecs.append(v)
        if vecs:
            expected.append((lam, len(vecs)))
    got = [(lam, 4 ** len(sp) - 1) for lam, sp in find_eigen_in(F4, D, center)]
    assert got == expected


def test_eigen_pins():
    g = cat.hei2(F4)
    lam0 = GradedOperator(tuple(tuple(2 if i == j else 0 for j in range(3)) for i in range(3)), 0)
    res = find_eigen_in(F4, lam0)
    assert res == [(2, la.identity(3))]
    nil = GradedOperator(((0, 0, 0), (0, 0, 0), (1, 0, 0)), 1)
    assert find_eigen_in(F4, nil) == []
    assert find_eigen_in(F4, lam0, [g.e("z")]) == [(2, [[0, 0, 1]])]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(superalgebras(3)), st.integers(0, 1))
def test_space_is_exact(g, parity):
    basis = derivation_space(g, parity)
    for D in basis:
        assert is_derivation(D, g)
    # every even ad_a lies in the even derivations
    if parity == 0:
        for i in g.even:
            A = ad(g, g.e(i))
            assert la.rank(F2, [sum(map(list, D.matrix), []) for D in basis] + [sum(map(list, A.matrix), [])]) == len(basis)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(superalgebras(3)))
def test_commutator_of_derivations(g):
    basis = derivation_space(g, 0) + derivation_space(g, 1)
    for a, b in itertools.combinations(basis[:5], 2):
        assert is_derivation(commutator(g, a, b), g)


def test_combinations_helper():
    g = abelian(F2, 1, 0)
    assert len(list(combinations(F2, derivation_space(g, 0), 1))) == 2
