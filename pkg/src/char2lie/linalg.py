"""Dense exact linear algebra over GF(2^k).

Matrices are lists of rows of ints; vectors are lists of ints.  Pivoting
is deterministic (first nonzero entry in column order).
"""
from __future__ import annotations

from typing import Sequence

from .field import Field

Matrix = list[list[int]]
Vector = list[int]


class ShapeError(ValueError):
    pass


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in m]


def madd(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ShapeError(f"cannot add {shape(a)} and {shape(b)}")
    return [[x ^ y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def vadd(a: Sequence[int], b: Sequence[int]) -> Vector:
    if len(a) != len(b):
        raise ShapeError("vector length mismatch")
    return [x ^ y for x, y in zip(a, b)]


def vscale(F: Field, c: int, v: Sequence[int]) -> Vector:
    if c == 0:
        return [0] * len(v)
    if c == 1:
        return list(v)
    return [F.mul(c, x) for x in v]


def axpy(F: Field, c: int, x: Sequence[int], y: list[int]) -> None:
    """y += c*x in place."""
    if c == 0:
        return
    if c == 1:
        for i, xi in enumerate(x):
            y[i] ^= xi
        return
    mul = F.mul
    for i, xi in enumerate(x):
        if xi:
            y[i] ^= mul(c, xi)


def dot(F: Field, a: Sequence[int], b: Sequence[int]) -> int:
    mul = F.mul
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s ^= mul(x, y)
    return s


def matvec(F: Field, m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    if m and len(m[0]) != len(v):
        raise ShapeError(f"matrix {shape(m)} times vector of length {len(v)}")
    return [dot(F, row, v) for row in m]


def matmul(F: Field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    out = zeros(ra, cb)
    for i in range(ra):
        row = out[i]
        for k in range(ca):
            if a[i][k]:
                axpy(F, a[i][k], b[k], row)
    return out


def rref(F: Field, m: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = copy(m)
    rows, cols = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        if a[r][c] != 1:
            a[r] = vscale(F, F.inv(a[r][c]), a[r])
        for i in range(rows):
            if i != r and a[i][c]:
                axpy(F, a[i][c], a[r], a[i])
        pivots.append(c)
        r += 1
    return a, pivots


def rank(F: Field, m: Sequence[Sequence[int]]) -> int:
    return len(rref(F, m)[1])


def kernel(F: Field, m: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Basis of {w : m w = 0}."""
    cols = shape(m)[1] if m else (ncols or 0)
    if ncols is not None and m and ncols != cols:
        raise ShapeError("column count mismatch")
    red, piv = rref(F, m)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = []
    for f in free:
        w = [0] * cols
        w[f] = 1
        for r, pc in enumerate(piv):
            w[pc] = red[r][f]
        basis.append(w)
    return basis


def solve(F: Field, m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector | None:
    """One solution of m w = v, or None."""
    rows, cols = shape(m)
    if len(v) != rows:
        raise ShapeError(f"matrix {rows}x{cols} with rhs of length {len(v)}")
    aug = [list(row) + [b] for row, b in zip(m, v)]
    red, piv = rref(F, aug)
    if cols in piv:
        return None
    w = [0] * cols
    for r, pc in enumerate(piv):
        w[pc] = red[r][cols]
    return w


def solve_matrix(F: Field, m: Sequence[Sequence[int]], rhs: Sequence[Sequence[int]]) -> Matrix | None:
    """X with m X = rhs, or None."""
    rows, cols = shape(m)
    if len(rhs) != rows:
        raise ShapeError("row count mismatch")
    k = shape(rhs)[1]
    aug = [list(row) + list(b) for row, b in zip(m, rhs)]
    red, piv = rref(F, aug)
    if any(p >= cols for p in piv):
        return None
    x = zeros(cols, k)
    for r, pc in enumerate(piv):
        x[pc] = red[r][cols:]
    return x


def inverse(F: Field, m: Sequence[Sequence[int]]) -> Matrix | None:
    n, c = shape(m)
    if n != c:
        raise ShapeError(f"inverse of non-square {n}x{c} matrix")
    aug = [list(row) + e for row, e in zip(m, identity(n))]
    red, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def solve_bilinear(F: Field, gram: Sequence[Sequence[int]], target: Sequence[Sequence[int]]) -> Matrix | None:
    """Δ with gramᵀ·Δ = target, or None when gram is singular.

    With operator matrices stored column-wise (column j = image of e_j) this
    is the Δ for which B(Δ e_j, e_i) = target[i][j].
    """
    n, c = shape(gram)
    if n != c or shape(target) != (n, n):
        raise ShapeError("gram and target must be square of the same size")
    gi = inverse(F, transpose(gram))
    if gi is None:
        return None
    return matmul(F, gi, target)


# --- subspaces -------------------------------------------------------------

def span(F: Field, vectors: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Canonical (row-reduced, zero rows dropped) basis of a span."""
    if not vectors:
        return []
    red, piv = rref(F, vectors)
    return red[: len(piv)]


def in_span(F: Field, basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(F, list(basis) + [list(v)]) == len(span(F, basis, len(v)))


def intersect(F: Field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Intersection of two row-spans."""
    if not a or not b:
        return []
    # solve x·A = y·B  <=>  [Aᵀ | Bᵀ] (x, y) = 0
    at, bt = transpose(a), transpose(b)
    m = [ra + rb for ra, rb in zip(at, bt)]
    vecs = []
    for w in kernel(F, m):
        x = w[: len(a)]
        v = [0] * dim
        for c, row in zip(x, a):
            axpy(F, c, row, v)
        vecs.append(v)
    return span(F, vecs, dim)


def complement_coords(F: Field, basis: Sequence[Sequence[int]], dim: int) -> list[int]:
    """Standard basis indices completing ``basis`` to the full space."""
    _, piv = rref(F, basis) if basis else ([], [])
    return [i for i in range(dim) if i not in set(piv)]


def is_singular(F: Field, m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    return rank(F, m) < n
