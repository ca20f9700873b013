import pytest
from hypothesis import given, strategies as st

from char2lie.field import (
    DEFAULT_MODULI,
    Field,
    FieldError,
    add,
    enumerate_field,
    format_literal,
    gf,
    is_irreducible_poly,
    mul,
    parse_literal,
    sqrt,
)


def slow_mul(a, b, modulus):
    """Schoolbook product followed by polynomial long division."""
    p = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            p ^= a << i
    deg = modulus.bit_length() - 1
    while p.bit_length() - 1 >= deg:
        p ^= modulus << (p.bit_length() - 1 - deg)
    return p


def test_add_pins():
    F = gf(2)
    assert F.add(0x3, 0x3) == 0
    assert F.add(0x1, 0x2) == 0x3
    g = F.element(0x2)
    assert int(add(g, F.element(1))) == 0x3


def test_gf4_mul_against_long_division():
    F = gf(2)
    assert F.modulus == 0x7
    assert slow_mul(2, 2, 0x7) == 3
    assert F.mul(0x2, 0x2) == 0x3
    assert int(mul(F.element(2), F.element(2))) == 3


def test_gf4_sqrt_by_enumerating_squares():
    F = gf(2)
    squares = {slow_mul(a, a, 0x7): a for a in range(4)}
    assert squares[2] == 3
    assert F.sqrt(0x2) == 0x3
    assert int(sqrt(F.element(2))) == 3


def test_inv_one():
    for k in (1, 2, 3, 8):
        assert gf(k).inv(1) == 1


def test_enumerate():
    assert [int(e) for e in enumerate_field(gf(1))] == [0, 1]
    assert len(enumerate_field(gf(2))) == 4
    assert len(enumerate_field(gf(3))) == 8


@pytest.mark.parametrize("k", range(1, 9))
def test_mul_table_matches_oracle(k):
    F = gf(k)
    els = range(F.order) if F.order <= 16 else range(0, F.order, 7)
    for a in els:
        for b in els:
            assert F.mul(a, b) == slow_mul(a, b, F.modulus)


def test_default_moduli_irreducible():
    assert all(is_irreducible_poly(m) for m in DEFAULT_MODULI.values())


def test_bad_fields():
    with pytest.raises(FieldError):
        Field(2, 0b101)  # t^2+1 = (t+1)^2
    with pytest.raises(FieldError):
        Field(3, 0b111)
    with pytest.raises(FieldError):
        Field(0)
    with pytest.raises(ZeroDivisionError):
        gf(2).inv(0)
    with pytest.raises(FieldError):
        gf(2).check(4)


def test_non_primitive_modulus():
    # t^4+t^3+t^2+t+1 is irreducible but t has order 5
    F = Field(4, 0b11111)
    for a in range(1, 16):
        assert F.mul(a, F.inv(a)) == 1
        assert F.mul(a, a) == slow_mul(a, a, 0b11111)


def test_literals():
    assert format_literal(10) == "0xa"
    assert parse_literal(" 0x1F ") == 31
    for bad in ("12", "0x", "0xg"):
        with pytest.raises(FieldError):
            parse_literal(bad)


@st.composite
def field_and_elements(draw, n=3):
    F = gf(draw(st.integers(1, 8)))
    return F, [draw(st.integers(0, F.order - 1)) for _ in range(n)]


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    assert a ^ a == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


@given(field_and_elements(2))
def test_frobenius_and_sqrt(data):
    F, (a, b) = data
    sq = lambda x: F.mul(x, x)
    assert sq(a ^ b) == sq(a) ^ sq(b)
    assert sq(F.sqrt(a)) == a
    assert F.pow(a, F.order) == a
