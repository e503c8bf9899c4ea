"""Exception types shared across the toolkit."""

from __future__ import annotations


class DoldkitError(Exception):
    """Base class for all doldkit errors."""


class ShortWindowError(DoldkitError, ValueError):
    """A sequence window is too short for the requested computation."""


class NonInvertibleError(DoldkitError, ValueError):
    """Dirichlet inversion requires a nonzero value at index 1."""


class InvalidPsiError(DoldkitError, ValueError):
    """Replacement weight window fails its admissibility congruences."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"weight window fails admissibility at n={index}")


class NotDoldError(DoldkitError, ValueError):
    """Operation requires a window that passes the divisibility congruences."""

    def __init__(self, index: int, witness):
        self.index = index
        self.witness = witness
        super().__init__(f"divisibility congruence fails at n={index} (witness {witness})")


class NotPeriodicError(DoldkitError, ValueError):
    """Window has no periodic expansion within the requested support bound."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"no periodic expansion: first violation at n={index}")


class RealizabilityError(DoldkitError, ValueError):
    """Window cannot be the fixed-point count sequence of any map."""

    def __init__(self, index: int, witness):
        self.index = index
        self.witness = witness
        super().__init__(f"not realizable at n={index} (witness {witness})")


class NonIntegralError(DoldkitError, ValueError):
    """Logarithmic coefficients of the series are not all integers."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"non-integer count at n={index}")


class HorizonExceededError(DoldkitError, ValueError):
    """A sequence source was asked for a value beyond its declared horizon."""


class NotPermutationError(DoldkitError, ValueError):
    """Input window is not a bijection of 1..N."""


class BFileError(DoldkitError, ValueError):
    """Problem parsing an OEIS-style b-file."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class MalformedLineError(BFileError):
    """A b-file line is not '<index> <value>'."""


class NonMonotoneIndexError(BFileError):
    """b-file indices must be strictly increasing."""
