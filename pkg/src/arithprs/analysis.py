"""Structural properties of generated sequences, measured rather than assumed.

The textbook m-sequence properties (period q^r - 1, near-uniform symbol
counts, shift-and-add closure, two-valued autocorrelation) hold only for
primitive characteristic polynomials, so everything here is computed from
the actual orbit.
"""
from __future__ import annotations

import cmath
import itertools
from array import array
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .field import ParameterError, ZeroSeed
from .lfsr import CharPoly, LfsrState, check_dims

# Exhaustive orbit walks are only done up to this many states.
MAX_STATES = 10**6


class TooManyStates(ParameterError):
    pass


def period(p: CharPoly, seed: LfsrState) -> int:
    """Smallest t >= 1 with the window after t steps equal to the seed."""
    check_dims(seed, p)
    if seed.is_zero():
        raise ZeroSeed("the zero state is a fixed point; period is undefined")
    if p.q**p.r > MAX_STATES:
        raise TooManyStates(f"{p.q}^{p.r} states exceed the exhaustive limit {MAX_STATES}")
    q, coeffs = p.q, p.coeffs
    start = seed.window
    w = list(start)
    for t in range(1, q**p.r):
        w.append(sum(c * s for c, s in zip(coeffs, w)) % q)
        del w[0]
        if tuple(w) == start:
            return t
    raise AssertionError("orbit did not close; companion matrix should be invertible")


def one_period(p: CharPoly, seed: LfsrState) -> list[int]:
    """The sequence ``s_0, s_1, ...`` (seed included) over exactly one period."""
    L = period(p, seed)
    seq = list(seed.window)
    q, coeffs, r = p.q, p.coeffs, p.r
    while len(seq) < L:
        seq.append(sum(c * s for c, s in zip(coeffs, seq[-r:])) % q)
    return seq[:L]


def balance(seq: Sequence[int]) -> dict[int, int]:
    return dict(sorted(Counter(seq).items()))


def _encode(seq: Sequence[int]) -> bytes:
    return array("Q", seq).tobytes()


def is_rotation(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    hay, needle = _encode(list(a) * 2), _encode(b)
    width = 8
    pos = hay.find(needle)
    while pos != -1:
        if pos % width == 0:
            return True
        pos = hay.find(needle, pos + 1)
    return False


def shifted_sum(seq: Sequence[int], shift: int, q: int) -> list[int]:
    L = len(seq)
    return [(seq[t] + seq[(t + shift) % L]) % q for t in range(L)]


def shift_add_check(seq: Sequence[int], shift: int, q: int) -> bool:
    """True iff ``s_t + s_{t+shift}`` is a cyclic shift of ``s``."""
    L = len(seq)
    if L == 0 or shift % L == 0:
        raise ValueError("shift must be nonzero modulo the period")
    return is_rotation(seq, shifted_sum(seq, shift, q))


def difference_histogram(seq: Sequence[int], shift: int, q: int) -> list[int]:
    """Counts of ``(s_{t+shift} - s_t) mod q`` for each residue."""
    L = len(seq)
    counts = [0] * q
    for t in range(L):
        counts[(seq[(t + shift) % L] - seq[t]) % q] += 1
    return counts


def autocorrelation(seq: Sequence[int], shift: int, q: int) -> complex:
    """``(1/L) sum_t w**(s_{t+shift} - s_t)`` with ``w = exp(2 pi i / q)``."""
    L = len(seq)
    if L == 0:
        raise ValueError("empty sequence")
    roots = [cmath.exp(2j * cmath.pi * k / q) for k in range(q)]
    total = sum(roots[(seq[(t + shift) % L] - seq[t]) % q] for t in range(L))
    return total / L


def autocorrelation_from_counts(counts: Sequence[int]) -> complex:
    q = len(counts)
    L = sum(counts)
    return sum(c * cmath.exp(2j * cmath.pi * k / q) for k, c in enumerate(counts)) / L


def autocorrelation_exact(seq: Sequence[int], shift: int, q: int) -> Fraction | None:
    """Exact rational value of the autocorrelation, or None when it is not rational.

    For prime q the roots ``w**1 .. w**(q-1)`` sum to -1 and are otherwise
    independent over Q, so the value is rational exactly when every nonzero
    difference occurs equally often; it then equals ``(d_0 - d_1) / L``.
    """
    counts = difference_histogram(seq, shift, q)
    if len(set(counts[1:])) > 1:
        return None
    nonzero = counts[1] if q > 1 else 0
    return Fraction(counts[0] - nonzero, len(seq))


@dataclass
class AnalysisReport:
    q: int
    r: int
    period: int
    symbol_counts: dict[int, int]
    is_primitive: bool
    shift_add_ok: bool
    shift_add_failures: list[int]
    autocorrelation: dict[int, complex] = field(default_factory=dict)
    autocorrelation_exact: dict[int, Fraction | None] = field(default_factory=dict)

    def to_document(self) -> dict:
        def exact(v):
            return None if v is None else str(v)

        return {
            "q": self.q,
            "r": self.r,
            "period": self.period,
            "is_primitive": self.is_primitive,
            "symbol_counts": {str(k): v for k, v in self.symbol_counts.items()},
            "shift_add_ok": self.shift_add_ok,
            "shift_add_failures": self.shift_add_failures,
            "autocorrelation": [
                {
                    "shift": tau,
                    "re": round(v.real, 12),
                    "im": round(v.imag, 12),
                    "exact": exact(self.autocorrelation_exact.get(tau)),
                }
                for tau, v in sorted(self.autocorrelation.items())
            ],
        }


def analyze(p: CharPoly, seed: LfsrState, max_shifts: int | None = None) -> AnalysisReport:
    """Period, balance, shift-and-add and autocorrelation over one period.

    Shifts ``1..min(L-1, max_shifts)`` are examined; all of them by default.
    """
    seq = one_period(p, seed)
    L, q = len(seq), p.q
    last = L - 1 if max_shifts is None else min(L - 1, max_shifts)
    shifts = range(1, last + 1)
    failures = [tau for tau in shifts if not shift_add_check(seq, tau, q)]
    ac = {0: complex(1.0)}
    ac_exact: dict[int, Fraction | None] = {0: Fraction(1)}
    for tau in shifts:
        ac[tau] = autocorrelation(seq, tau, q)
        ac_exact[tau] = autocorrelation_exact(seq, tau, q)
    return AnalysisReport(
        q=q,
        r=p.r,
        period=L,
        symbol_counts=balance(seq),
        is_primitive=L == q**p.r - 1,
        shift_add_ok=not failures,
        shift_add_failures=failures,
        autocorrelation=ac,
        autocorrelation_exact=ac_exact,
    )


def find_primitive(q: int, r: int) -> CharPoly:
    """First polynomial, in lexicographic order of ``(p_0, ..., p_{r-1})``, of maximal period."""
    seed = LfsrState(q, (0,) * (r - 1) + (1,))
    for coeffs in itertools.product(range(q), repeat=r):
        if coeffs[0] == 0:
            continue
        p = CharPoly(q, coeffs)
        if period(p, seed) == q**r - 1:
            return p
    raise LookupError(f"no primitive polynomial of degree {r} over GF({q})")
