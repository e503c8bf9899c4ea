"""Exact dense linear algebra over int and Fraction (internal helpers)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows) -> IntMatrix:
    """Validate and freeze a square integer matrix (0x0 allowed)."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    for row in m:
        if len(row) != len(m):
            raise ValueError("matrix must be square")
    return m


def identity(k: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    # Skipping zero entries keeps products of sparse 0/1 blocks near O(k^2).
    k = len(a)
    out = [[0] * k for _ in range(k)]
    for i in range(k):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if x:
                bt = b[t]
                for j in range(k):
                    if bt[j]:
                        acc[j] += x * bt[j]
    return tuple(tuple(r) for r in out)


def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_pow(a: IntMatrix, e: int) -> IntMatrix:
    if e < 0:
        raise ValueError("exponent must be >= 0")
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if e > 1 else base
        e >>= 1
    return result


def trace(a: IntMatrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    base = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[base + i][base : base + len(b)] = list(row)
        base += len(b)
    return tuple(tuple(r) for r in out)


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for i in range(n - 1):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[-1][-1]


def det_fraction(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix: clear denominators, then Bareiss."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    entries = [[Fraction(x) for x in row] for row in rows]
    scale = lcm(*(x.denominator for row in entries for x in row))
    ints = [[int(x * scale) for x in row] for row in entries]
    return Fraction(det_int(ints), scale**n)


def solve_exact(rows, rhs):
    """Solve rows . x = rhs exactly over the rationals.

    Returns (particular solution with free variables set to 0, free column
    indices), or None when the system is inconsistent.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][-1] != 0:
            return None
    solution = [Fraction(0)] * ncols
    for row_i, c in enumerate(pivot_cols):
        solution[c] = m[row_i][-1]
    free = [c for c in range(ncols) if c not in pivot_cols]
    return solution, free
