"""Exact integer arithmetic and classical multiplicative functions.

Everything is int or Fraction; there is no floating point anywhere in the
package.  Prefixes of arithmetic functions are 1-indexed: entry ``i`` of a
Python list holds the value at ``i + 1``.

Key definitions:
    mu(n)      = 1 if n=1, 0 if n has a squared factor, (-1)^r for r distinct primes
    phi(n)     = #{ 1 <= k <= n : gcd(k, n) = 1 }
    sigma_k(n) = sum of k-th powers of divisors
    Omega(n)   = number of prime factors counted with multiplicity
    (f*g)(n)   = sum over d | n of f(d) g(n/d)       (Dirichlet convolution)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NonInvertibleError, ShortWindowError

#: factorize() is deterministic trial division; inputs beyond this are out of contract.
TRIAL_DIVISION_BOUND = 10**12


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs with primes increasing."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out: list[tuple[int, int]] = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # 6k +- 1 wheel
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (same contract as factorize)."""
    if n < 2:
        return False
    f = factorize(n)
    return len(f) == 1 and f[0][1] == 1


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted increasingly."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def divisor_table(limit: int) -> list[list[int]]:
    """divisor_table(N)[n] lists the divisors of n, for 0 <= n <= N (entry 0 empty)."""
    table: list[list[int]] = [[] for _ in range(limit + 1)]
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            table[m].append(d)
    return table


def mobius(n: int) -> int:
    """Classical Mobius function."""
    if n < 1:
        raise ValueError("mobius requires n >= 1")
    result = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        result = -result
    return result


def mobius_window(limit: int) -> list[int]:
    """Mobius values at 1..limit via a smallest-prime-factor sieve."""
    spf = list(range(limit + 1))
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    mu = [0] * (limit + 1)
    if limit >= 1:
        mu[1] = 1
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        mu[n] = 0 if m % p == 0 else -mu[m]
    return mu[1:]


def euler_phi(n: int) -> int:
    """Euler totient."""
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def euler_phi_window(limit: int) -> list[int]:
    """Totient values at 1..limit by sieving."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return phi[1:]


def divisor_sigma(k: int, n: int) -> int:
    """Sum of k-th powers of the divisors of n."""
    if k < 0:
        raise ValueError("divisor_sigma requires k >= 0")
    if n < 1:
        raise ValueError("divisor_sigma requires n >= 1")
    result = 1
    for p, e in factorize(n):
        if k == 0:
            result *= e + 1
        else:
            result *= (p ** (k * (e + 1)) - 1) // (p**k - 1)
    return result


def big_omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    if n < 1:
        raise ValueError("big_omega requires n >= 1")
    return sum(e for _, e in factorize(n))


def _prefix(values: Sequence, length: int, name: str) -> list[Fraction]:
    if length < 1:
        raise ValueError("prefix length must be >= 1")
    if len(values) < length:
        raise ShortWindowError(f"{name} covers only 1..{len(values)}, need 1..{length}")
    return [Fraction(v) for v in values[:length]]


def dirichlet_convolve(f: Sequence, g: Sequence, length: int) -> list[Fraction]:
    """Dirichlet convolution (f*g)(n) for 1 <= n <= length."""
    fv = _prefix(f, length, "f")
    gv = _prefix(g, length, "g")
    out = [Fraction(0)] * length
    for d in range(1, length + 1):
        fd = fv[d - 1]
        if fd == 0:
            continue
        for m in range(d, length + 1, d):
            out[m - 1] += fd * gv[m // d - 1]
    return out


def dirichlet_inverse(f: Sequence, length: int) -> list[Fraction]:
    """Convolution inverse of f on 1..length; requires f(1) != 0."""
    fv = _prefix(f, length, "f")
    if fv[0] == 0:
        raise NonInvertibleError("f(1) = 0 has no Dirichlet inverse")
    table = divisor_table(length)
    g = [Fraction(0)] * length
    g[0] = 1 / fv[0]
    for n in range(2, length + 1):
        acc = Fraction(0)
        for d in table[n]:
            if d > 1:
                acc += fv[d - 1] * g[n // d - 1]
        g[n - 1] = -acc / fv[0]
    return g
