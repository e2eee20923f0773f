"""Sequential q-ary LFSR and its companion-matrix form.

Coefficient vectors are always ascending, ``(p_0, p_1, ..., p_{r-1})``, for

    s[n+r] = p_{r-1} s[n+r-1] + ... + p_1 s[n+1] + p_0 s[n]   (mod q)

and ``CharPoly`` prints as ``z^r + p_{r-1} z^{r-1} + ... + p_0``, the usual
shorthand for this register.  The characteristic polynomial of the
recurrence proper is ``z^r - p_{r-1} z^{r-1} - ... - p_0``; the two agree
only for q = 2, and irreducibility or primitivity refer to the latter.
Register windows are stored oldest element first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .field import DimensionMismatch, ParameterError, check_prime


@dataclass(frozen=True)
class CharPoly:
    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.q)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ParameterError("characteristic polynomial needs degree >= 1")
        for c in self.coeffs:
            if not 0 <= c < self.q:
                raise ParameterError(f"coefficient {c} not in [0, {self.q})")
        if self.coeffs[0] == 0:
            raise ParameterError("p_0 must be nonzero")

    @property
    def r(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_descending(cls, q: int, coeffs: Sequence[int]) -> "CharPoly":
        """Build from ``(p_{r-1}, ..., p_0)``, the order polynomials are usually printed in.

        The leading 1 of the monic term is not part of the input.
        """
        return cls(q, tuple(reversed(coeffs)))

    def recurrence_polynomial(self) -> tuple[int, ...]:
        """Ascending coefficients of ``z^r - sum(p_j z^j)`` mod q, leading 1 included."""
        return tuple((-c) % self.q for c in self.coeffs) + (1,)

    def __str__(self):
        terms = [f"z^{self.r}"]
        for j in range(self.r - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            terms.append(f"{c if c != 1 or j == 0 else ''}{mono}")
        return " + ".join(terms)


@dataclass(frozen=True)
class LfsrState:
    q: int
    window: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(int(s) for s in self.window))
        for s in self.window:
            if not 0 <= s < self.q:
                raise ParameterError(f"state entry {s} not in [0, {self.q})")

    @property
    def r(self) -> int:
        return len(self.window)

    def is_zero(self) -> bool:
        return not any(self.window)

    def __iter__(self):
        return iter(self.window)

    def __len__(self):
        return len(self.window)


def check_dims(state: LfsrState, p: CharPoly):
    if state.q != p.q or state.r != p.r:
        raise DimensionMismatch(
            f"state (q={state.q}, r={state.r}) does not match polynomial (q={p.q}, r={p.r})"
        )


def lfsr_next(state: LfsrState, p: CharPoly) -> tuple[int, LfsrState]:
    check_dims(state, p)
    w = state.window
    element = sum(c * s for c, s in zip(p.coeffs, w)) % p.q
    return element, LfsrState(p.q, w[1:] + (element,))


def iterate(state: LfsrState, p: CharPoly) -> Iterator[int]:
    """Endless stream of new elements after the window of ``state``."""
    check_dims(state, p)
    q, coeffs = p.q, p.coeffs
    w = list(state.window)
    while True:
        e = sum(c * s for c, s in zip(coeffs, w)) % q
        del w[0]
        w.append(e)
        yield e


# Dense matrices mod q as tuples of row tuples.

def mat_mul(a, b, q):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % q for col in bt) for row in a)


def mat_identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_pow(m, e, q):
    result = mat_identity(len(m))
    base = m
    while e:
        if e & 1:
            result = mat_mul(result, base, q)
        e >>= 1
        if e:
            base = mat_mul(base, base, q)
    return result


@dataclass(frozen=True)
class CompanionMatrix:
    """One-step transition matrix in row-vector form.

    With ``v = (s[n+r-1], ..., s[n])`` (newest first) the next window is
    ``v @ C = (s[n+r], ..., s[n+1])``.  Column 0 carries
    ``(p_{r-1}, ..., p_0)``; ``C[i][i+1] = 1`` shifts everything else.
    """

    q: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def recurrence_column(self) -> tuple[int, ...]:
        return tuple(row[0] for row in self.rows)

    def __matmul__(self, other: "CompanionMatrix") -> "CompanionMatrix":
        return CompanionMatrix(self.q, mat_mul(self.rows, other.rows, self.q))

    def power(self, n: int) -> "CompanionMatrix":
        return CompanionMatrix(self.q, mat_pow(self.rows, n, self.q))

    def apply(self, state: LfsrState) -> LfsrState:
        if state.r != self.r or state.q != self.q:
            raise DimensionMismatch("state and matrix dimensions differ")
        v = state.window[::-1]
        out = tuple(
            sum(v[i] * self.rows[i][j] for i in range(self.r)) % self.q for j in range(self.r)
        )
        return LfsrState(self.q, out[::-1])


def companion(p: CharPoly) -> CompanionMatrix:
    r = p.r
    rows = []
    for i in range(r):
        row = [0] * r
        row[0] = p.coeffs[r - 1 - i]
        if i + 1 < r:
            row[i + 1] = 1
        rows.append(tuple(row))
    return CompanionMatrix(p.q, tuple(rows))


def jump(state: LfsrState, p: CharPoly, n: int) -> LfsrState:
    """State after ``n`` steps, by square-and-multiply on the companion matrix."""
    if n < 0:
        raise ValueError("jump distance must be non-negative")
    check_dims(state, p)
    if n == 0:
        return state
    return companion(p).power(n).apply(state)
