"""Repair factors, named special sequences, and index time changes.

The repair (failure) factor of a non-negative sequence A over a window is

    lcm of denom( (1/n) sum_{d|n} mu(n/d) A(d) )  for n <= N,

together with the last index at which the running lcm grew, so callers can
judge stabilization for themselves; a window value is never claimed to be
the true (unbounded) factor.

Time changes rescale the index set: monomials n -> l * n^k always preserve
the divisibility congruences, as does the prime dilation n -> p*n on
multiples of p.  Applying a non-identity permutation of the indices to some
elementary periodic window always breaks realizability; the witness search
here is bounded by the permutation window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Callable, Sequence

from ._linalg import as_matrix, mat_pow, trace
from .arith import divisor_table, factorize, is_prime, mobius_window
from .errors import HorizonExceededError, NotPermutationError
from .seqkit import is_realizable


def _fib_pair(n: int) -> tuple[int, int]:
    """(F(n), F(n+1)) by fast doubling."""
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fibonacci_number(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return _fib_pair(n)[0]


def lucas_number(n: int) -> int:
    f_n, f_n1 = _fib_pair(n)
    return 2 * f_n1 - f_n


def stirling1(n: int, k: int) -> int:
    """Signless count of permutations of n elements with exactly k cycles."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return _stirling1(n, k)


@lru_cache(maxsize=None)
def _stirling1(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return _stirling1(n - 1, k - 1) + (n - 1) * _stirling1(n - 1, k)


def stirling2(n: int, k: int) -> int:
    """Number of partitions of n elements into exactly k non-empty blocks."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return _stirling2(n, k)


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def _bernoulli(m: int) -> Fraction:
    # sum_{j<=m} C(m+1, j) B_j = 0, B_0 = 1
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(m):
        acc += comb(m + 1, j) * _bernoulli(j)
    return -acc / (m + 1)


def bernoulli_pair(n: int) -> tuple[int, int]:
    """(numerator, denominator) of |B_{2n} / (2n)| in lowest terms."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = abs(_bernoulli(2 * n) / (2 * n))
    return value.numerator, value.denominator


@lru_cache(maxsize=None)
def _euler_even(n: int) -> int:
    # sum_{k<=n} C(2n, 2k) E_{2k} = 0, E_0 = 1
    if n == 0:
        return 1
    return -sum(comb(2 * n, 2 * k) * _euler_even(k) for k in range(n))


def euler_abs(n: int) -> int:
    """(-1)^n E_{2n}: the positive secant numbers 1, 5, 61, 1385, ..."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (-1) ** n * _euler_even(n)


@dataclass(frozen=True)
class SequenceSource:
    """Total rule n -> integer, evaluable for 1 <= n <= horizon.

    The horizon is explicit because time changes evaluate far beyond the
    output window (entry n needs the value at h(n)).
    """

    name: str
    horizon: int
    rule: Callable[[int], int] = field(repr=False, compare=False)

    def __call__(self, n: int) -> int:
        if not 1 <= n <= self.horizon:
            raise HorizonExceededError(
                f"{self.name} declared up to {self.horizon}, asked for {n}"
            )
        return self.rule(n)

    def window(self, length: int) -> list[int]:
        return [self(n) for n in range(1, length + 1)]

    @classmethod
    def fibonacci(cls, horizon: int) -> "SequenceSource":
        return cls("fibonacci", horizon, fibonacci_number)

    @classmethod
    def lucas(cls, horizon: int) -> "SequenceSource":
        return cls("lucas", horizon, lucas_number)

    @classmethod
    def fibonacci_power(cls, j: int, horizon: int) -> "SequenceSource":
        if j < 1:
            raise ValueError("power must be >= 1")
        return cls(f"fibonacci-power-{j}", horizon, lambda n: fibonacci_number(n**j))

    @classmethod
    def stirling1_row(cls, k: int, horizon: int) -> "SequenceSource":
        if k < 1:
            raise ValueError("row index must be >= 1")
        return cls(f"stirling1-row-{k}", horizon, lambda n: stirling1(n + k - 1, k))

    @classmethod
    def stirling2_row(cls, k: int, horizon: int) -> "SequenceSource":
        if k < 1:
            raise ValueError("row index must be >= 1")
        return cls(f"stirling2-row-{k}", horizon, lambda n: stirling2(n + k - 1, k))

    @classmethod
    def trace_of(cls, A, horizon: int) -> "SequenceSource":
        m = as_matrix(A)
        return cls(f"trace-{len(m)}x{len(m)}", horizon, lambda n: trace(mat_pow(m, n)))

    @classmethod
    def bernoulli_tau(cls, horizon: int) -> "SequenceSource":
        return cls("bernoulli-tau", horizon, lambda n: bernoulli_pair(n)[0])

    @classmethod
    def bernoulli_beta(cls, horizon: int) -> "SequenceSource":
        return cls("bernoulli-beta", horizon, lambda n: bernoulli_pair(n)[1])

    @classmethod
    def euler_abs(cls, horizon: int) -> "SequenceSource":
        return cls("euler-abs", horizon, euler_abs)

    @classmethod
    def from_prefix(cls, values: Sequence[int]) -> "SequenceSource":
        vals = [int(v) for v in values]
        if not vals:
            raise ValueError("empty prefix")
        return cls("prefix", len(vals), lambda n: vals[n - 1])


def scaled_source(src: SequenceSource, c: int) -> SequenceSource:
    """Pointwise multiple: n -> c * src(n), same horizon."""
    if c < 1:
        raise ValueError("scale must be >= 1")
    if c == 1:
        return src
    return SequenceSource(f"{c}*{src.name}", src.horizon, lambda n: c * src.rule(n))


@dataclass(frozen=True)
class Monomial:
    """Index map n -> scale * n**exponent."""

    exponent: int
    scale: int = 1

    def apply(self, n: int) -> int:
        return self.scale * n**self.exponent


@dataclass(frozen=True)
class PrimeStretch:
    """Index map that multiplies n by p exactly when p divides n."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def apply(self, n: int) -> int:
        return n * self.p if n % self.p == 0 else n


@dataclass(frozen=True)
class Composition:
    """Time changes applied left to right."""

    steps: tuple

    def apply(self, n: int) -> int:
        for step in self.steps:
            n = step.apply(n)
        return n


def apply_time_change(src: SequenceSource, change, length: int) -> list[int]:
    """Window whose entry n is src(h(n)) for the index map h."""
    images = [change.apply(n) for n in range(1, length + 1)]
    worst = max(images, default=0)
    if worst > src.horizon:
        raise HorizonExceededError(
            f"time change needs {src.name} at {worst}, horizon is {src.horizon}"
        )
    return [src(m) for m in images]


@dataclass(frozen=True)
class FailureResult:
    """Windowed repair factor with growth bookkeeping."""

    window: int
    lcm_value: int
    last_new_prime_at: int

    def distinct_primes(self) -> list[int]:
        return [p for p, _ in factorize(self.lcm_value)] if self.lcm_value > 1 else []


def failure_window(src: SequenceSource, length: int) -> FailureResult:
    """lcm of the denominators of the orbit-count transform over 1..length."""
    vals = src.window(length)
    mu = mobius_window(length)
    table = divisor_table(length)
    running = 1
    last_growth = 0
    for n in range(1, length + 1):
        acc = 0
        for d in table[n]:
            m = mu[n // d - 1]
            if m:
                acc += m * vals[d - 1]
        den = Fraction(acc, n).denominator
        grown = lcm(running, den)
        if grown != running:
            running = grown
            last_growth = n
    return FailureResult(length, running, last_growth)


def surjective_tc_witness(sigma: Sequence[int]) -> tuple[int, int] | None:
    """Witness that a non-identity permutation breaks realizability.

    sigma lists the images of 1..N (extended by the identity beyond N).
    Returns None for the identity, else the first (k, n) found, in increasing
    k then n, such that the window reg_k(sigma(.)) fails realizability at n.
    The search is bounded by the window; a witness is guaranteed to exist for
    some k but not necessarily within it.
    """
    images = [int(x) for x in sigma]
    n_max = len(images)
    if sorted(images) != list(range(1, n_max + 1)):
        raise NotPermutationError("window is not a permutation of 1..N")
    if images == list(range(1, n_max + 1)):
        return None
    for k in range(1, n_max + 1):
        window = [k if m % k == 0 else 0 for m in images]
        verdict = is_realizable(window)
        if not verdict:
            return k, verdict.index
    return None
