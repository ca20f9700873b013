"""
Arithmetic in GF(2^k).

Elements are plain ``int`` bit masks (bit i is the coefficient of t^i).
A :class:`Field` carries the modulus and log/antilog tables so that the
linear-algebra kernels can work on raw ints.  :class:`FieldElement` is a
thin tagged wrapper for callers that want operator syntax and field checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

MAX_DEGREE = 16

DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class FieldError(ValueError):
    pass


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit masks."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible_poly(m: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(m)//2."""
    d = m.bit_length() - 1
    if d < 1:
        return False
    for p in range(2, 1 << (d // 2 + 1)):
        if polymod(m, p) == 0:
            return False
    return True


class Field:
    """GF(2^k) with a fixed irreducible modulus.

    Parameters
    ----------
    degree : int
        Extension degree k, 1 <= k <= 16.
    modulus : int, optional
        Bit mask of a degree-k irreducible polynomial. Defaults to a
        standard choice (t^2+t+1 for GF(4), t^3+t+1 for GF(8), ...).
    """

    __slots__ = ("degree", "modulus", "order", "_exp", "_log", "_sqrt")

    def __init__(self, degree: int, modulus: int | None = None):
        if not 1 <= degree <= MAX_DEGREE:
            raise FieldError(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
        if modulus is None:
            modulus = DEFAULT_MODULI[degree]
        if modulus.bit_length() - 1 != degree:
            raise FieldError(f"modulus {modulus:#x} does not have degree {degree}")
        if not is_irreducible_poly(modulus):
            raise FieldError(f"modulus {modulus:#x} is reducible")
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        self._build_tables()

    def _build_tables(self) -> None:
        n = self.order - 1
        # find a primitive element; the modulus need not be primitive
        for g in range(2, self.order) if n > 1 else [1]:
            exp = [0] * (2 * n)
            log = [0] * self.order
            x = 1
            ok = True
            for i in range(n):
                if i and x == 1:
                    ok = False
                    break
                exp[i] = x
                log[x] = i
                x = polymod(clmul(x, g), self.modulus)
            if ok:
                break
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        self._sqrt = [0] * self.order
        for a in range(self.order):
            self._sqrt[self.mul(a, a)] = a

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.degree, self.modulus) == (
            other.degree,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.modulus))

    def __repr__(self) -> str:
        return f"Field(degree={self.degree}, modulus={self.modulus:#x})"

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.order):
            raise FieldError(f"{a!r} is not an element of GF({self.order})")
        return a

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^k)")
        n = self.order - 1
        return self._exp[(n - self._log[a]) % n] if n > 1 else 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        return self._sqrt[a]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        n = self.order - 1
        return self._exp[(self._log[a] * e) % n] if n > 1 else 1

    def elements(self) -> Iterator[int]:
        """All elements, 0 first and 1 second."""
        return iter(range(self.order))

    def nonzero(self) -> Iterator[int]:
        return iter(range(1, self.order))

    def fmt(self, a: int) -> str:
        return format_literal(a)

    def element(self, a: int | str) -> "FieldElement":
        if isinstance(a, str):
            a = parse_literal(a)
        return FieldElement(self, self.check(a))


@lru_cache(maxsize=None)
def gf(degree: int, modulus: int | None = None) -> Field:
    """Shared field instance (tables are built once per modulus)."""
    return Field(degree, modulus)


def format_literal(a: int) -> str:
    return f"0x{a:x}"


def parse_literal(s: str) -> int:
    s = s.strip()
    if not s.startswith("0x") or len(s) < 3:
        raise FieldError(f"bad field literal {s!r}")
    try:
        return int(s[2:], 16)
    except ValueError:
        raise FieldError(f"bad field literal {s!r}") from None


@dataclass(frozen=True)
class FieldElement:
    field: Field
    bits: int

    def _same(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldError("field elements from different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        return FieldElement(self.field, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        return FieldElement(self.field, self.field.mul(self.bits, other.bits))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        return FieldElement(self.field, self.field.div(self.bits, other.bits))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.bits))

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.field, self.field.sqrt(self.bits))

    def __bool__(self) -> bool:
        return self.bits != 0

    def __int__(self) -> int:
        return self.bits

    def __str__(self) -> str:
        return format_literal(self.bits)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def sqrt(a: FieldElement) -> FieldElement:
    return a.sqrt()


def enumerate_field(field: Field) -> list[FieldElement]:
    return [FieldElement(field, a) for a in field.elements()]
