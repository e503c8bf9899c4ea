"""Explicit finite dynamical systems and closed-form fixed-point counters.

A FiniteMap is a self-map of {0, .., m-1} given by its value table (not
necessarily a bijection).  Periodic points live exactly on the cycles of the
functional graph, so the closed-orbit census determines every fixed-point
count of every iterate:

    F(n) = sum over d | n of d * O(d)

realize() inverts this: any finitely supported orbit census is achieved by a
disjoint union of cycles.
"""

from __future__ import annotations

from functools import lru_cache
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import seqkit
from ._linalg import (
    IntMatrix,
    as_matrix,
    det_int,
    identity,
    mat_mul,
    mat_pow,
    mat_sub,
    trace,
)
from .arith import is_prime
from .errors import RealizabilityError

#: above this many table lookups count_fixed switches to the cycle census.
_BRUTE_FORCE_LIMIT = 4096


@dataclass(frozen=True, init=False)
class FiniteMap:
    """Self-map of {0, .., size-1} stored as a value table."""

    table: tuple[int, ...]

    def __init__(self, table: Sequence[int]):
        t = tuple(int(x) for x in table)
        for x in t:
            if not 0 <= x < len(t):
                raise ValueError(f"table entry {x} outside [0, {len(t)})")
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return len(self.table)


@lru_cache(maxsize=None)
def _cycle_census(table: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    state = [0] * len(table)  # 0 new, 1 on current path, 2 finished
    census: dict[int, int] = {}
    for start in range(len(table)):
        if state[start]:
            continue
        path: list[int] = []
        position: dict[int, int] = {}
        x = start
        while state[x] == 0:
            state[x] = 1
            position[x] = len(path)
            path.append(x)
            x = table[x]
        if state[x] == 1:  # closed a new cycle inside the current path
            length = len(path) - position[x]
            census[length] = census.get(length, 0) + 1
        for y in path:
            state[y] = 2
    return tuple(sorted(census.items()))


def orbit_spec(T: FiniteMap) -> dict[int, int]:
    """Census of closed-orbit lengths (transient points excluded)."""
    return dict(_cycle_census(T.table))


def _count_fixed_iterate(table: tuple[int, ...], n: int) -> int:
    count = 0
    for x in range(len(table)):
        y = x
        for _ in range(n):
            y = table[y]
        if y == x:
            count += 1
    return count


def count_fixed(T: FiniteMap, n: int) -> int:
    """Number of points fixed by the n-th iterate of T."""
    if n < 1:
        raise ValueError("count_fixed requires n >= 1")
    if T.size == 0:
        return 0
    if n * T.size <= _BRUTE_FORCE_LIMIT:
        return _count_fixed_iterate(T.table, n)
    # O(size) census beats O(size * n) iteration for large n.
    return sum(d * c for d, c in _cycle_census(T.table) if n % d == 0)


def fixed_count_window(T: FiniteMap, length: int) -> list[int]:
    """The window (F(1), .., F(length)) of fixed-point counts of iterates."""
    census = _cycle_census(T.table)
    return [sum(d * c for d, c in census if n % d == 0) for n in range(1, length + 1)]


def realize(spec: Mapping[int, int]) -> FiniteMap:
    """Disjoint union of cycles matching the orbit census.

    Cycles are laid out in increasing length on contiguous indices, so the
    output is deterministic.
    """
    table: list[int] = []
    for length in sorted(spec):
        count = spec[length]
        if length < 1 or count < 0:
            raise ValueError("orbit spec needs lengths >= 1 and counts >= 0")
        for _ in range(count):
            base = len(table)
            table.extend(range(base + 1, base + length))
            table.append(base)
    return FiniteMap(table)


def realize_sequence(a) -> FiniteMap:
    """Build a map whose fixed-point counts reproduce the window exactly."""
    verdict = seqkit.is_realizable(a)
    if not verdict:
        raise RealizabilityError(verdict.index, verdict.witness)
    b = [int(x) for x in seqkit.transform_B(a)]
    return realize({n: c for n, c in enumerate(b, start=1) if c})


def trace_sequence(A, length: int) -> list[int]:
    """Exact traces of A^n for 1 <= n <= length (repeated multiplication)."""
    m = as_matrix(A)
    out = []
    power = m
    for _ in range(length):
        out.append(trace(power))
        power = mat_mul(power, m)
    return out


def euler_fermat_check(A, p: int, r: int) -> bool:
    """trace(A^(p^r)) = trace(A^(p^(r-1))) mod p^r, for p prime and r >= 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError("r must be >= 1")
    m = as_matrix(A)
    low = mat_pow(m, p ** (r - 1))
    high = mat_pow(low, p)
    return (trace(high) - trace(low)) % p**r == 0


def det_fix_sequence(A, length: int) -> list[int]:
    """Window |det(I - A^n)|: fixed points of the induced toral map's iterates."""
    m = as_matrix(A)
    eye = identity(len(m))
    out = []
    power = m
    for _ in range(length):
        out.append(abs(det_int(mat_sub(eye, power))))
        power = mat_mul(power, m)
    return out


def nielsen_circle(d: int, length: int) -> list[int]:
    """Window |1 - d^n| for a degree-d circle map."""
    return [abs(1 - d**n) for n in range(1, length + 1)]


def nielsen_klein(u: int, v: int, length: int) -> list[int]:
    """Klein-bottle window: |u^n (v^n - 1)| when |u| > 1, else |v^n - 1|."""
    if abs(u) > 1:
        return [abs(u**n * (v**n - 1)) for n in range(1, length + 1)]
    return [abs(v**n - 1) for n in range(1, length + 1)]


def _two_adic_split(n: int) -> tuple[int, int]:
    a = 0
    while n % 2 == 0:
        n //= 2
        a += 1
    return a, n


def sharkovskii_precedes(m: int, n: int) -> bool:
    """Strict order: odd multiples first by (2-adic valuation, odd part), then
    powers of two in decreasing order, ending at 2, 1."""
    if m < 1 or n < 1:
        raise ValueError("order is defined on positive integers")
    am, qm = _two_adic_split(m)
    an, qn = _two_adic_split(n)
    if qm > 1 and qn > 1:
        return (am, qm) < (an, qn)
    if qm > 1:  # odd-part numbers precede every power of two
        return True
    if qn > 1:
        return False
    return m > n


def parse_matrix_text(text: str) -> IntMatrix:
    """Matrix file format: first line k, then k rows of k integers."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        k = int(lines[0])
    except ValueError:
        raise ValueError("first line must be the dimension") from None
    if k < 0:
        raise ValueError("dimension must be >= 0")
    if len(lines) != k + 1:
        raise ValueError(f"expected {k} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        row = [int(tok) for tok in line.split()]
        if len(row) != k:
            raise ValueError(f"expected {k} entries per row, found {len(row)}")
        rows.append(row)
    return as_matrix(rows)
