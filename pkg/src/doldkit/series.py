"""Truncated exact-rational power series and counting zeta functions.

A PowerSeries carries its truncation order explicitly (coefficients c_0..c_N,
exact Fractions); arithmetic on mixed orders truncates to the smaller one, so
precision loss is always visible in the type, never silent.

For a fixed-point count window (F(n)) the counting zeta function is

    Z(z) = exp( sum_{n>=1} F(n) z^n / n ) = prod_d (1 - z^d)^(-O(d))

with O = the orbit-count transform of F, and the Dirichlet-series identity
reads coefficientwise as sum_{d|n} O(d) d/n = F(n)/n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import seqkit
from ._linalg import solve_exact
from .arith import is_prime, mobius_window
from .errors import NonIntegralError, RealizabilityError, ShortWindowError


@dataclass(frozen=True, init=False)
class PowerSeries:
    """Exact rational power series truncated at an explicit order."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ShortWindowError(f"series known only to order {self.order}")
        return PowerSeries(self.coeffs[: order + 1])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([self[k] + other[k] for k in range(n + 1)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([self[k] - other[k] for k in range(n + 1)])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_mul(self, other)


def ps_from_polynomial(coeffs: Sequence, order: int) -> PowerSeries:
    """Series with the given low-order coefficients, zero-padded to order."""
    cs = [Fraction(c) for c in coeffs[: order + 1]]
    return PowerSeries(cs + [Fraction(0)] * (order + 1 - len(cs)))


def ps_one(order: int) -> PowerSeries:
    return ps_from_polynomial([1], order)


def ps_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    n = min(f.order, g.order)
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        fi = f[i]
        if fi:
            for j in range(n + 1 - i):
                if g[j]:
                    out[i + j] += fi * g[j]
    return PowerSeries(out)


def ps_inv(f: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; requires a nonzero constant term."""
    if f[0] == 0:
        raise ValueError("series with zero constant term has no inverse")
    n = f.order
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / f[0]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if f[i]:
                acc += f[i] * out[k - i]
        out[k] = -acc / f[0]
    return PowerSeries(out)


def ps_exp(f: PowerSeries) -> PowerSeries:
    """exp of a series with zero constant term."""
    if f[0] != 0:
        raise ValueError("exp requires a zero constant term")
    n = f.order
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1)
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if f[i]:
                acc += i * f[i] * out[k - i]
        out[k] = acc / k
    return PowerSeries(out)


def ps_log(f: PowerSeries) -> PowerSeries:
    """log of a series with constant term 1."""
    if f[0] != 1:
        raise ValueError("log requires constant term 1")
    n = f.order
    out = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        acc = k * f[k]
        for i in range(1, k):
            if f[k - i]:
                acc -= i * out[i] * f[k - i]
        out[k] = acc / k
    return PowerSeries(out)


def ps_pow_rational(base: PowerSeries, alpha) -> PowerSeries:
    """base**alpha for rational alpha; base must have constant term 1."""
    if base[0] != 1:
        raise ValueError("rational powers require constant term 1")
    a = Fraction(alpha)
    n = base.order
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1)
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if base[i]:
                acc += (a * i - (k - i)) * base[i] * out[k - i]
        out[k] = acc / k
    return PowerSeries(out)


def ps_stretch(f: PowerSeries, k: int, order: int) -> PowerSeries:
    """Substitute z -> z**k, giving coefficients up to the requested order."""
    if k < 1:
        raise ValueError("stretch factor must be >= 1")
    if f.order < order // k:
        raise ShortWindowError("not enough coefficients for the requested order")
    out = [Fraction(0)] * (order + 1)
    for j in range(0, order + 1, k):
        out[j] = f[j // k]
    return PowerSeries(out)


def zeta_from_fix(a) -> PowerSeries:
    """exp( sum F(n) z^n / n ) truncated at the window length."""
    vals = [Fraction(v) for v in a]
    if not vals:
        raise ShortWindowError("empty window")
    n = len(vals)
    exponent = PowerSeries([Fraction(0)] + [vals[k - 1] / k for k in range(1, n + 1)])
    return ps_exp(exponent)


def fix_from_zeta(Z: PowerSeries) -> list[int]:
    """Recover the count window from a zeta series via its logarithm.

    F(n) = n * [z^n] log Z; raises NonIntegralError at the first non-integer.
    """
    if Z[0] != 1:
        raise ValueError("a counting zeta function has constant term 1")
    logs = ps_log(Z)
    out = []
    for n in range(1, Z.order + 1):
        f = n * logs[n]
        if f.denominator != 1:
            raise NonIntegralError(n)
        out.append(int(f))
    return out


def zeta_product_from_orbits(spec: Mapping[int, int], order: int) -> PowerSeries:
    """prod over d of (1 - z^d)^(-count) truncated at the given order."""
    result = ps_one(order)
    for d in sorted(spec):
        count = spec[d]
        if d < 1 or count < 0:
            raise ValueError("orbit spec needs lengths >= 1 and counts >= 0")
        if count == 0 or d > order:
            continue
        factor = ps_from_polynomial([1] + [0] * (d - 1) + [-1], order)
        result = ps_mul(result, ps_pow_rational(factor, -count))
    return result


def feigenbaum_spec(horizon: int) -> dict[int, int]:
    """Orbit census with one closed orbit of each length 2^k up to the horizon."""
    spec = {}
    d = 1
    while d <= horizon:
        spec[d] = 1
        d *= 2
    return spec


@dataclass(frozen=True)
class RationalFn:
    """Reduced fraction of polynomials with denominator constant term 1."""

    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return max(len(self.numerator) - 1, len(self.denominator) - 1)

    def expand(self, order: int) -> PowerSeries:
        num = ps_from_polynomial(self.numerator or (0,), order)
        den = ps_from_polynomial(self.denominator, order)
        return ps_mul(num, ps_inv(den))

    def __str__(self) -> str:
        return f"({_poly_str(self.numerator)}) / ({_poly_str(self.denominator)})"


def _poly_str(coeffs: Sequence[Fraction]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "z" if i == 1 else f"z^{i}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _poly_trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    rem = list(a)
    den = list(b)
    out = [Fraction(0)] * max(0, len(rem) - len(den) + 1)
    while len(rem) >= len(den):
        f = rem[-1] / den[-1]
        shift = len(rem) - len(den)
        out[shift] = f
        for i, c in enumerate(den):
            rem[shift + i] -= f * c
        rem = _poly_trim(rem)
        if not rem:
            break
    return _poly_trim(out), rem


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    x, y = _poly_trim(list(a)), _poly_trim(list(b))
    while y:
        _, r = _poly_divmod(x, y)
        x, y = y, r
    if x:
        lead = x[-1]
        x = [c / lead for c in x]
    return x


def rational_fit(Z: PowerSeries, dmax: int) -> RationalFn | None:
    """Fit P/Q with deg P, deg Q <= dmax reproducing every known coefficient.

    Solves the linear system for the lowest-order coefficient recurrence by
    exact elimination and cross-validates against the whole series; returns
    None when no recurrence of order <= dmax matches.
    """
    if dmax < 0:
        raise ValueError("dmax must be >= 0")
    if Z.order < 2 * dmax + 2:
        raise ShortWindowError(
            f"need truncation order >= {2 * dmax + 2}, have {Z.order}"
        )
    c = Z.coeffs
    for q in range(dmax + 1):
        # Q = 1 + x_1 z + .. + x_q z^q must kill all coefficients above dmax.
        rows = []
        rhs = []
        for n in range(dmax + 1, Z.order + 1):
            rows.append([c[n - j] if n - j >= 0 else Fraction(0) for j in range(1, q + 1)])
            rhs.append(-c[n])
        if q == 0:
            consistent = all(v == 0 for v in rhs)
            solution = []
        else:
            solved = solve_exact(rows, rhs)
            if solved is None:
                continue
            solution, _ = solved
            consistent = True
        if not consistent:
            continue
        den = [Fraction(1)] + list(solution)
        num = _poly_mul(den, list(c))[: dmax + 1]
        num = _poly_trim(num)
        g = _poly_gcd(num, den)
        if len(g) > 1:
            num, _ = _poly_divmod(num, g)
            den, _ = _poly_divmod(den, g)
        scale = den[0]
        num = [x / scale for x in num]
        den = [x / scale for x in den]
        return RationalFn(tuple(num), tuple(den))
    return None


def dirichlet_identity_check(F) -> bool:
    """Coefficientwise check of the orbit Dirichlet-series identity.

    With O the orbit-count transform of a realizable window F, verifies
    sum_{d|n} O(d) d/n = F(n)/n for every n in the window.
    """
    verdict = seqkit.is_realizable(F)
    if not verdict:
        raise RealizabilityError(verdict.index, verdict.witness)
    counts = seqkit.transform_B(F)
    vals = [Fraction(v) for v in F]
    for n in range(1, len(vals) + 1):
        acc = Fraction(0)
        for d in range(1, n + 1):
            if n % d == 0:
                acc += counts[d - 1] * Fraction(d, n)
        if acc != vals[n - 1] / n:
            return False
    return True


def artin_hasse(p: int, order: int) -> PowerSeries:
    """exp( x + x^p/p + x^(p^2)/p^2 + ... ) truncated at the given order."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    exponent = [Fraction(0)] * (order + 1)
    power = 1
    while power <= order:
        exponent[power] = Fraction(1, power)
        power *= p
    return ps_exp(PowerSeries(exponent))


def p_integral(f: PowerSeries, p: int) -> bool:
    """True when no coefficient denominator is divisible by p."""
    return all(c.denominator % p != 0 for c in f.coeffs)


def mobius_exp_check(order: int) -> bool:
    """Verify exp(x) = prod (1 - x^n)^(-mu(n)/n) up to the given order."""
    lhs = ps_exp(ps_from_polynomial([0, 1], order))
    rhs = ps_one(order)
    mu = mobius_window(order) if order >= 1 else []
    for n in range(1, order + 1):
        if mu[n - 1] == 0:
            continue
        factor = ps_from_polynomial([1] + [0] * (n - 1) + [-1], order)
        rhs = ps_mul(rhs, ps_pow_rational(factor, Fraction(-mu[n - 1], n)))
    return lhs == rhs
