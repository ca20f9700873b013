import itertools

import pytest
from hypothesis import given, settings, strategies as st

from char2lie import catalog as cat
from char2lie import linalg as la
from char2lie.field import gf
from char2lie.superalgebra import (
    IRREDUCIBLE,
    REDUCIBLE,
    LieSuperAlgebra,
    StructureError,
    abelian,
)

from corpus import superalgebras

F2, F4 = gf(1), gf(2)


def hei(F=F2):
    return cat.hei2(F)


def test_hei_bracket_and_squaring():
    g = hei()
    p, q, z = g.e("p"), g.e("q"), g.e("z")
    assert g.bracket(p, q) == z
    assert g.bracket(p, g.zero()) == [0, 0, 0]
    assert g.bracket(p, p) == [0, 0, 0]
    assert g.squaring(p) == g.squaring(q) == [0, 0, 0]
    assert g.squaring(g.zero()) == [0, 0, 0]


def test_hei_squaring_is_product_over_gf4():
    # s(ap + bq) = s(ap) + s(bq) + [ap, bq] = ab z
    g = hei(F4)
    for a, b in itertools.product(range(4), repeat=2):
        assert g.squaring([a, b, 0]) == [0, 0, F4.mul(a, b)]


def test_verify():
    assert hei().verify().passed
    assert abelian(F2, 2, 3).verify().passed


def test_hei_with_s_p_equal_z_still_passes():
    # [s(p), y] = [z, y] = 0 and [p, [p, y]] ∈ [p, span{z}] = 0 for every y
    g = LieSuperAlgebra.from_sparse(
        F2, [("p", 1), ("q", 1), ("z", 0)], {("p", "q"): {"z": 1}}, {"p": {"z": 1}}
    )
    assert g.verify().passed
    assert g.squaring([1, 1, 0]) == [0, 0, 0]


def test_verify_localizes_squaring_failure():
    # s(o) = e with [e, o] = o: [s(o), o] = o but [o, [o, o]] = 0
    g = LieSuperAlgebra.from_sparse(F2, [("e", 0), ("o", 1)], {("e", "o"): {"o": 1}}, {"o": {"e": 1}})
    rep = g.verify()
    assert rep.failed_ids() == {"squaring-jacobi"}
    assert rep.failures()[0].witness == "x=o,y=o -> o"


def test_jacobi_failure_witness():
    # sl2-like table over GF(2) that breaks Jacobi
    g = LieSuperAlgebra.from_sparse(
        F2,
        [("a", 0), ("b", 0), ("c", 0)],
        {("a", "b"): {"a": 1}, ("a", "c"): {"b": 1}, ("b", "c"): {"b": 1}},
    )
    rep = g.verify()
    assert "jacobi" in rep.failed_ids()


@pytest.mark.parametrize(
    "brackets, squares",
    [
        ({("e", "e"): {"e": 1}}, {}),
        ({("e", "o"): {"e": 1}}, {}),
        ({}, {"o": {"o": 1}}),
        ({}, {"e": {"e": 1}}),
    ],
)
def test_invariant_violations_rejected(brackets, squares):
    with pytest.raises(StructureError):
        LieSuperAlgebra.from_sparse(F2, [("e", 0), ("o", 1)], brackets, squares)


def test_pair_squares_polarization():
    g = hei()
    c = g.c
    with pytest.raises(StructureError, match="polarization"):
        LieSuperAlgebra(F2, ["p", "q", "z"], [1, 1, 0], c, None, pair_squares={(0, 1): [0, 0, 0]})
    LieSuperAlgebra(F2, ["p", "q", "z"], [1, 1, 0], c, None, pair_squares={(0, 1): [0, 0, 1]})


def test_center_and_derived_series():
    g = hei()
    assert g.center() == [[0, 0, 1]]
    chain = g.derived_algebra(2)
    assert chain[1] == [[0, 0, 1]] and chain[2] == []
    assert g.is_two_step_nilpotent()
    assert abelian(F2, 2, 1).derived_algebra(1)[1] == []
    assert g.is_ideal([[0, 0, 1]])
    assert not g.is_ideal([[1, 0, 0]])


def test_special_center():
    a = abelian(F2, 1, 1)
    B = [[0, 1], [1, 0]]
    assert a.special_center(B) == la.identity(2)
    T = cat.hei2_manin(0, 0, 0, 0)
    h = T.h
    z = h.e("z")
    # s(h₁) ⊆ span{z} here, and B(z, z) = 0
    assert h.square_span() == [z]
    assert z in h.special_center(T.B.gram)


def test_desuperize():
    g = hei()
    d = g.desuperize()
    assert d.n == g.n and d.c == g.c and not d.has_squaring
    assert d.verify().passed


def test_direct_sum_restrict_complement():
    line = abelian(F2, 1, 0)
    plane = line.direct_sum(line)
    assert plane.n == 2 and plane.names[0] != plane.names[1]
    assert plane.c == abelian(F2, 2, 0).c
    G = [[0, 1], [1, 0]]
    assert plane.orthogonal_complement(G, la.identity(2)) == []
    g = hei()
    sub = g.restrict([[1, 0, 0], [0, 0, 1]])
    assert sub.names == ("p", "z") and not any(any(map(any, r)) for r in sub.c)
    with pytest.raises(StructureError):
        g.restrict([[1, 0, 0], [0, 1, 0]])


def test_irreducibility():
    T = cat.hei2_manin(0, 0, 0, 0)
    assert T.h.is_irreducible(T.B.gram) == IRREDUCIBLE
    a = abelian(F2, 2, 0)
    assert a.is_irreducible([[1, 0], [0, 1]]) == REDUCIBLE


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(superalgebras(3)), st.data())
def test_squaring_axioms(g, data):
    odd = lambda: [data.draw(st.integers(0, 1)) if p else 0 for p in g.parities]
    x, y = odd(), odd()
    pol = la.vadd(la.vadd(g.squaring(la.vadd(x, y)), g.squaring(x)), g.squaring(y))
    assert pol == g.bracket(x, y)
    for k in range(g.n):
        assert g.bracket(g.squaring(x), g.e(k)) == g.bracket(x, g.bracket(x, g.e(k)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(superalgebras(3)))
def test_center_is_central(g):
    for v in g.center():
        assert all(not any(g.bracket_basis(j, v)) for j in range(g.n))


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_squaring_scales_quadratically(lam, a, b):
    g = cat.hei2_manin(1, 0, 1, 1, field=F4).h
    x = [a, b, 0, b, a, 0]
    assert g.squaring(la.vscale(F4, lam, x)) == la.vscale(F4, F4.mul(lam, lam), g.squaring(x))
