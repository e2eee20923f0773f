"""Residue arithmetic modulo a prime q and modulo q**r.

Residues are plain Python ints kept in canonical range ``[0, m)``; the
containers that hold them (characteristic polynomials, register states,
polynomial coefficients) validate the range when they are built.
"""
from __future__ import annotations

from dataclasses import dataclass

# All ring arithmetic must stay inside a signed machine word.
WORD_LIMIT = 2**63


class ParameterError(ValueError):
    """Base class for invalid generator parameters."""


class TooSmall(ParameterError):
    pass


class CompositeModulus(ParameterError):
    pass


class ModulusTooLarge(ParameterError):
    pass


class DimensionMismatch(ParameterError):
    pass


class ZeroSeed(ParameterError):
    pass


class NotInvertible(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise TypeError(f"modulus must be an int, got {self.q!r}")
        if self.q < 2:
            raise TooSmall(f"q must be >= 2, got {self.q}")
        if not is_prime(self.q):
            raise CompositeModulus(f"q = {self.q} is not prime")

    def __int__(self):
        return self.q


def check_prime(q: int) -> PrimeModulus:
    """Validate ``q`` as a prime modulus (trial division)."""
    return PrimeModulus(q)


@dataclass(frozen=True)
class RingModulus:
    """The residue ring Z/q^r that packs r q-ary digits into one integer."""

    q: int
    r: int

    def __post_init__(self):
        check_prime(self.q)
        if not isinstance(self.r, int) or self.r < 1:
            raise ParameterError(f"r must be a positive integer, got {self.r!r}")
        if self.q**self.r >= WORD_LIMIT:
            raise ModulusTooLarge(f"{self.q}^{self.r} does not fit in 63 bits")

    @property
    def modulus(self) -> int:
        return self.q**self.r


def check_residue(value: int, m: int) -> int:
    if not 0 <= value < m:
        raise ValueError(f"{value} is not a canonical residue mod {m}")
    return value


def inv_mod(a: int, m: int) -> int:
    """Return b with a*b = 1 (mod m)."""
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible mod {m}") from None


def pow_mod(a: int, e: int, m: int) -> int:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return pow(a, e, m)
