"""Sequence windows: divisibility tests, transforms, and periodic expansions.

A window is a finite 1-indexed view (a_1 .. a_N) of an integer sequence,
passed around as a plain Python sequence (entry ``i`` holds a_{i+1}).

The two bijective transforms:

    B:  b_n = (1/n) * sum over d | n of mu(n/d) a_d       (orbit counts)
    C:  c_n = (1/n) * (a_n - c_1 a_{n-1} - ... - c_{n-1} a_1)

with inverses a_n = sum over d | n of d b_d and
a_n = c_1 a_{n-1} + ... + c_{n-1} a_1 + n c_n.

An integer window is "Dold" on 1..N when every b_n is an integer, and
realizable when every b_n is a non-negative integer (then b_n counts closed
orbits of length n for some map).  Both are decided by a single ascending
scan, so verdicts always report the least failing index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .arith import divisor_table, euler_phi_window, factorize, mobius_window
from .errors import (
    InvalidPsiError,
    NotDoldError,
    NotPeriodicError,
    ShortWindowError,
)

MOBIUS = "mobius"
PHI = "phi"
PRIME_POWER = "prime-power"
PSI = "psi"

CRITERIA = (MOBIUS, PHI, PRIME_POWER, PSI)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a windowed test: holds through ``index`` or first failure."""

    ok: bool
    index: int
    witness: object = None

    @classmethod
    def holds(cls, n: int) -> "Verdict":
        return cls(True, n)

    @classmethod
    def fails(cls, n: int, witness) -> "Verdict":
        return cls(False, n, witness)

    def __bool__(self) -> bool:
        return self.ok


def _int_window(a) -> list[int]:
    vals = list(a)
    if not vals:
        raise ShortWindowError("empty window")
    for v in vals:
        if not isinstance(v, int):
            raise TypeError(f"integer window required, got {v!r}")
    return vals


def _rat_window(a) -> list[Fraction]:
    vals = [Fraction(v) for v in a]
    if not vals:
        raise ShortWindowError("empty window")
    return vals


def transform_B(a) -> list[Fraction]:
    """Divisor Mobius average b_n = (1/n) sum_{d|n} mu(n/d) a_d.

    Output is rational even for integer input; integrality is a verdict,
    not a type guarantee.
    """
    vals = _rat_window(a)
    n_max = len(vals)
    mu = mobius_window(n_max)
    table = divisor_table(n_max)
    out = []
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for d in table[n]:
            m = mu[n // d - 1]
            if m:
                acc += m * vals[d - 1]
        out.append(acc / n)
    return out


def inverse_B(b) -> list[Fraction]:
    """a_n = sum_{d|n} d * b_d, the inverse of transform_B."""
    vals = _rat_window(b)
    out = []
    for n in range(1, len(vals) + 1):
        acc = Fraction(0)
        for d in range(1, n + 1):
            if n % d == 0:
                acc += d * vals[d - 1]
        out.append(acc)
    return out


def transform_C(a) -> list[Fraction]:
    """Generating sequence c_n = (1/n)(a_n - c_1 a_{n-1} - ... - c_{n-1} a_1)."""
    vals = _rat_window(a)
    c: list[Fraction] = []
    for n in range(1, len(vals) + 1):
        acc = vals[n - 1]
        for k in range(1, n):
            acc -= c[k - 1] * vals[n - k - 1]
        c.append(acc / n)
    return c


def inverse_C(c) -> list[Fraction]:
    """a_n = c_1 a_{n-1} + ... + c_{n-1} a_1 + n c_n, the inverse of transform_C."""
    vals = _rat_window(c)
    a: list[Fraction] = []
    for n in range(1, len(vals) + 1):
        acc = n * vals[n - 1]
        for k in range(1, n):
            acc += vals[k - 1] * a[n - k - 1]
        a.append(acc)
    return a


def validate_psi(psi, length: int) -> None:
    """Check psi(1) = +-1 and sum_{k|n} psi(k) = 0 mod n on 1..length."""
    vals = _int_window(psi)
    if len(vals) < length:
        raise ShortWindowError(f"psi window covers 1..{len(vals)}, need 1..{length}")
    if vals[0] not in (1, -1):
        raise InvalidPsiError(1)
    table = divisor_table(length)
    for n in range(1, length + 1):
        if sum(vals[k - 1] for k in table[n]) % n != 0:
            raise InvalidPsiError(n)


def _weighted_test(vals: list[int], weights: list[int]) -> Verdict:
    table = divisor_table(len(vals))
    for n in range(1, len(vals) + 1):
        acc = 0
        for d in table[n]:
            w = weights[n // d - 1]
            if w:
                acc += w * vals[d - 1]
        if acc % n != 0:
            return Verdict.fails(n, acc)
    return Verdict.holds(len(vals))


def _prime_power_test(vals: list[int]) -> Verdict:
    for m in range(2, len(vals) + 1):
        for p, e in factorize(m):
            diff = vals[m - 1] - vals[m // p - 1]
            if diff % p**e != 0:
                return Verdict.fails(m, diff)
    return Verdict.holds(len(vals))


def congruence_test(a, criterion: str = MOBIUS, psi=None) -> Verdict:
    """Divisibility test of an integer window under the chosen criterion.

    criterion:
      - "mobius":      sum_{d|n} mu(n/d) a_d  = 0 mod n
      - "phi":         sum_{d|n} phi(n/d) a_d = 0 mod n
      - "prime-power": a_{np^l} = a_{np^(l-1)} mod p^l for all decompositions
      - "psi":         user weight window, validated on the same window first

    All four agree on Holds/Fails and on the least failing index; the witness
    is the offending (non-divisible) sum, which differs per criterion.
    """
    vals = _int_window(a)
    if criterion == MOBIUS:
        return _weighted_test(vals, mobius_window(len(vals)))
    if criterion == PHI:
        return _weighted_test(vals, euler_phi_window(len(vals)))
    if criterion == PRIME_POWER:
        return _prime_power_test(vals)
    if criterion == PSI:
        if psi is None:
            raise ValueError("criterion 'psi' needs a weight window")
        validate_psi(psi, len(vals))
        return _weighted_test(vals, _int_window(psi)[: len(vals)])
    raise ValueError(f"unknown criterion {criterion!r}")


def is_realizable(a) -> Verdict:
    """Holds iff every b_n = (1/n) sum mu(n/d) a_d is a non-negative integer.

    On failure the witness is the exact offending b_n (non-integer or
    negative) at the least failing index.
    """
    vals = _int_window(a)
    mu = mobius_window(len(vals))
    table = divisor_table(len(vals))
    for n in range(1, len(vals) + 1):
        acc = 0
        for d in table[n]:
            m = mu[n // d - 1]
            if m:
                acc += m * vals[d - 1]
        if acc % n != 0 or acc < 0:
            return Verdict.fails(n, Fraction(acc, n))
    return Verdict.holds(len(vals))


def dold_split(a) -> tuple[list[int], list[int]]:
    """Split a Dold window as a difference of two realizable windows.

    Uses b_n = b_n^+ - b_n^- with b_n^{+-} = max(0, +-b_n); both halves are
    realizable and subtract back to the input entrywise.
    """
    vals = _int_window(a)
    verdict = congruence_test(vals, MOBIUS)
    if not verdict:
        raise NotDoldError(verdict.index, verdict.witness)
    b = [int(x) for x in transform_B(vals)]
    plus: list[int] = []
    minus: list[int] = []
    for n in range(1, len(vals) + 1):
        acc_p = acc_m = 0
        for d in range(1, n + 1):
            if n % d == 0:
                if b[d - 1] > 0:
                    acc_p += d * b[d - 1]
                elif b[d - 1] < 0:
                    acc_m -= d * b[d - 1]
        plus.append(acc_p)
        minus.append(acc_m)
    return plus, minus


@dataclass(frozen=True, init=False)
class PeriodicCombination:
    """Finite integer combination of the elementary periodic windows reg_d.

    reg_d(n) = d when d | n and 0 otherwise; the combination evaluates to
    sum over d of coeffs[d] * reg_d(n).  Zero coefficients are never stored.
    """

    coeffs: dict[int, int]

    def __init__(self, coeffs: Mapping[int, int] | Sequence[tuple[int, int]] = ()):
        cleaned = {}
        for d, c in dict(coeffs).items():
            if d < 1:
                raise ValueError("periods must be >= 1")
            if c != 0:
                cleaned[int(d)] = int(c)
        object.__setattr__(self, "coeffs", cleaned)

    def __add__(self, other: "PeriodicCombination") -> "PeriodicCombination":
        merged = dict(self.coeffs)
        for d, c in other.coeffs.items():
            merged[d] = merged.get(d, 0) + c
        return PeriodicCombination(merged)

    def __sub__(self, other: "PeriodicCombination") -> "PeriodicCombination":
        return self + PeriodicCombination({d: -c for d, c in other.coeffs.items()})

    def __mul__(self, other: "PeriodicCombination") -> "PeriodicCombination":
        # reg_k * reg_l = gcd(k, l) reg_lcm(k, l), extended bilinearly.
        merged: dict[int, int] = {}
        for k, bk in self.coeffs.items():
            for l, cl in other.coeffs.items():
                d = lcm(k, l)
                merged[d] = merged.get(d, 0) + bk * cl * gcd(k, l)
        return PeriodicCombination(merged)

    def evaluate(self, length: int) -> list[int]:
        out = [0] * length
        for d, c in self.coeffs.items():
            for n in range(d, length + 1, d):
                out[n - 1] += c * d
        return out

    def support_max(self) -> int:
        return max(self.coeffs, default=0)


def reg(d: int, length: int) -> list[int]:
    """Elementary periodic window: d at multiples of d, else 0."""
    if d < 1:
        raise ValueError("reg requires d >= 1")
    return PeriodicCombination({d: 1}).evaluate(length)


def combo_add(x: PeriodicCombination, y: PeriodicCombination) -> PeriodicCombination:
    return x + y


def combo_mul(x: PeriodicCombination, y: PeriodicCombination) -> PeriodicCombination:
    return x * y


def combo_eval(x: PeriodicCombination, length: int) -> list[int]:
    return x.evaluate(length)


def periodic_expansion(a, support_bound: int) -> PeriodicCombination:
    """Expand a window as an integer combination of reg_d with d <= support_bound.

    The window must be at least twice the bound; a finite window can only
    certify periodicity relative to an explicit bound.  Raises
    NotPeriodicError at the first index whose coefficient is non-integral or
    non-zero beyond the bound.
    """
    vals = _int_window(a)
    if support_bound < 1:
        raise ValueError("support_bound must be >= 1")
    if len(vals) < 2 * support_bound:
        raise ShortWindowError(
            f"window of length {len(vals)} cannot certify support bound {support_bound}"
        )
    mu = mobius_window(len(vals))
    table = divisor_table(len(vals))
    coeffs: dict[int, int] = {}
    for n in range(1, len(vals) + 1):
        acc = 0
        for d in table[n]:
            m = mu[n // d - 1]
            if m:
                acc += m * vals[d - 1]
        if acc % n != 0:
            raise NotPeriodicError(n)
        b = acc // n
        if n > support_bound:
            if b != 0:
                raise NotPeriodicError(n)
        elif b != 0:
            coeffs[n] = b
    return PeriodicCombination(coeffs)


@dataclass(frozen=True, init=False)
class IntPoly:
    """Polynomial in one variable with integer coefficients, ascending order."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def q_power(cls, k: int) -> "IntPoly":
        return cls([0] * k + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([other * c for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def substitute_power(self, d: int) -> "IntPoly":
        """Replace the variable q by q**d."""
        if d < 1:
            raise ValueError("power must be >= 1")
        out = [0] * (d * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[d * i] = c
        return IntPoly(out)

    def __mod__(self, den: "IntPoly") -> "IntPoly":
        """Remainder on division by a polynomial with leading coefficient +-1."""
        if not den:
            raise ZeroDivisionError("polynomial modulus is zero")
        lead = den.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("modulus must have leading coefficient +-1")
        rem = list(self.coeffs)
        dd = den.degree
        for i in range(len(rem) - 1 - dd, -1, -1):
            f = rem[i + dd] * lead
            if f:
                for j, c in enumerate(den.coeffs):
                    rem[i + j] -= f * c
        return IntPoly(rem[:dd])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "q" if i == 1 else f"q^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def q_bracket(n: int) -> IntPoly:
    """q-analogue of n: 1 + q + ... + q^(n-1)."""
    if n < 1:
        raise ValueError("q_bracket requires n >= 1")
    return IntPoly([1] * n)


def q_dold_check(polys: Sequence[IntPoly]) -> Verdict:
    """Polynomial divisibility test: sum_{d|n} mu(d) a_{n/d}(q^d) = 0 mod [n]_q.

    The modulus has leading coefficient 1, so division stays in integer
    coefficients; the witness on failure is the nonzero remainder.
    """
    ps = list(polys)
    if not ps:
        raise ShortWindowError("empty window")
    mu = mobius_window(len(ps))
    table = divisor_table(len(ps))
    for n in range(1, len(ps) + 1):
        acc = IntPoly()
        for d in table[n]:
            m = mu[d - 1]
            if m:
                acc = acc + m * ps[n // d - 1].substitute_power(d)
        rem = acc % q_bracket(n)
        if rem:
            return Verdict.fails(n, rem)
    return Verdict.holds(len(ps))
