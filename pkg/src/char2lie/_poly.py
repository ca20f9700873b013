"""Certifying quadratic identities by basis values and pair polarizations.

A map Q that is quadratic in an odd argument (Q(λx) = λ²Q(x) and
Q(x+y) − Q(x) − Q(y) bilinear) vanishes identically iff it vanishes on
every odd basis vector e_i and every polarization
Q(e_i + e_j) − Q(e_i) − Q(e_j), i < j.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence


def quadratic_instances(odd: Sequence[int], n: int) -> Iterable[tuple[str, list[int], list[list[int]]]]:
    """Yield (label, vector, parts) where the identity must hold for
    Q(vector) − Σ Q(parts) (parts empty for basis instances)."""
    for i in odd:
        v = [0] * n
        v[i] = 1
        yield f"{i}", v, []
    for a, i in enumerate(odd):
        for j in odd[a + 1 :]:
            v = [0] * n
            v[i] = v[j] = 1
            ei = [0] * n
            ei[i] = 1
            ej = [0] * n
            ej[j] = 1
            yield f"{i}+{j}", v, [ei, ej]


def polarized(Q: Callable[[list[int]], list[int]], v: list[int], parts: list[list[int]]) -> list[int]:
    out = list(Q(v))
    for p in parts:
        for k, a in enumerate(Q(p)):
            out[k] ^= a
    return out
