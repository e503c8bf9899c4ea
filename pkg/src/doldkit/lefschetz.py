"""Trace-difference sequences and Hankel rationality machinery.

a_n = trace(A^n) - trace(B^n) for square integer matrices A (k x k) and
B (l x l).  The generating sequence (c_n) of such a window satisfies a linear
recurrence of order at most max(k, l), so the Hankel determinants

    D_m = det( c_{1+i+j} )  for 0 <= i, j <= m

vanish for every m >= max(k, l).  A nonzero D_m therefore rules out all
matrix pairs of dimension <= m.  The Hankel window is laid out from the first
generating term: window position i holds c_{1+i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import seqkit
from ._linalg import (
    IntMatrix,
    as_matrix,
    block_diagonal,
    det_fraction,
    solve_exact,
)
from .dynsys import trace_sequence
from .errors import ShortWindowError
from .seqkit import PeriodicCombination, Verdict


def lefschetz_sequence(A, B, length: int) -> list[int]:
    """Window of trace(A^n) - trace(B^n); either matrix may be 0 x 0."""
    ta = trace_sequence(as_matrix(A), length)
    tb = trace_sequence(as_matrix(B), length)
    return [x - y for x, y in zip(ta, tb)]


def hankel_dets(window, m_max: int) -> list[Fraction]:
    """Determinants D_0 .. D_m of the Hankel matrices (w_{i+j}), exact.

    The window is 0-indexed and must cover positions 0 .. 2*m_max.
    """
    w = [Fraction(x) for x in window]
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    if len(w) < 2 * m_max + 1:
        raise ShortWindowError(f"window covers 0..{len(w) - 1}, need 0..{2 * m_max}")
    out = []
    for m in range(m_max + 1):
        rows = [[w[i + j] for j in range(m + 1)] for i in range(m + 1)]
        out.append(det_fraction(rows))
    return out


def generating_hankel_test(a, bound: int, width: int) -> Verdict:
    """Check that Hankel determinants of the generating sequence vanish.

    Computes c = the generating sequence of the window, lays out window
    position i = c_{1+i}, and verdicts D_m = 0 for bound <= m <= bound+width.
    Holds for every trace-difference window of matrices with dimensions at
    most ``bound``.
    """
    if bound < 0 or width < 0:
        raise ValueError("bound and width must be >= 0")
    need = 2 * (bound + width) + 1
    vals = list(a)
    if len(vals) < need:
        raise ShortWindowError(f"window of length {len(vals)}, need {need}")
    c = seqkit.transform_C(vals)
    for m in range(bound, bound + width + 1):
        rows = [[c[i + j] for j in range(m + 1)] for i in range(m + 1)]
        det = det_fraction(rows)
        if det != 0:
            return Verdict.fails(m, det)
    return Verdict.holds(bound + width)


@dataclass(frozen=True)
class Recurrence:
    """c_{n+p} = coefficients[p-1] c_{n+p-1} + ... + coefficients[0] c_n."""

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def validates(self, window: Sequence) -> bool:
        w = [Fraction(x) for x in window]
        p = self.order
        return all(
            w[i + p] == sum(self.coefficients[j] * w[i + j] for j in range(p))
            for i in range(len(w) - p)
        )


def recurrence_detect(window, p_max: int) -> Recurrence | None:
    """Minimal-order recurrence valid across the entire window, or None.

    Validity is required from the very first term (the stricter convention,
    matching Hankel column dependence); candidates are cross-validated on
    every index before being reported.
    """
    w = [Fraction(x) for x in window]
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    if len(w) < 2 * p_max + 2:
        raise ShortWindowError(f"window of length {len(w)}, need {2 * p_max + 2}")
    if all(x == 0 for x in w):
        return Recurrence((Fraction(1),))
    for p in range(1, p_max + 1):
        rows = [w[i : i + p] for i in range(len(w) - p)]
        rhs = [w[i + p] for i in range(len(w) - p)]
        solved = solve_exact(rows, rhs)
        if solved is None:
            continue
        solution, free = solved
        if solution[0] == 0 and 0 in free:
            # any value fits a free leading coefficient; keep it nonzero
            pinned_rhs = [r - row[0] for row, r in zip(rows, rhs)]
            repinned = solve_exact([row[1:] for row in rows], pinned_rhs)
            if repinned is not None:
                solution = [Fraction(1)] + repinned[0]
        rec = Recurrence(tuple(solution))
        if rec.validates(w):
            return rec
    return None


def cyclic_block(k: int) -> IntMatrix:
    """k x k cyclic permutation block; trace of its n-th power is reg_k(n)."""
    if k < 1:
        raise ValueError("block size must be >= 1")
    return as_matrix(
        [[1 if j == (i + 1) % k else 0 for j in range(k)] for i in range(k)]
    )


def periodic_to_matrices(comb: PeriodicCombination) -> tuple[IntMatrix, IntMatrix]:
    """Matrix pair whose trace difference evaluates the periodic combination.

    Positive coefficients stack copies of the cyclic block into A, negative
    ones into B, so lefschetz_sequence(A, B, N) equals comb.evaluate(N).
    """
    pos = []
    neg = []
    for d in sorted(comb.coeffs):
        c = comb.coeffs[d]
        blocks = pos if c > 0 else neg
        blocks.extend(cyclic_block(d) for _ in range(abs(c)))
    return block_diagonal(pos), block_diagonal(neg)
