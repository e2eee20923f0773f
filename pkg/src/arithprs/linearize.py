"""The r next outputs written as r linear forms of the current window.

Row ``l`` (1-based) of the block matrix holds the coefficients of
``s[n+r+l-1]`` on ``(s[n], ..., s[n+r-1])``.  Applying every row to a
window therefore advances it by exactly r positions.
"""
from __future__ import annotations

from dataclasses import dataclass

from .field import DimensionMismatch
from .lfsr import CharPoly, LfsrState


@dataclass(frozen=True)
class BlockCoeffMatrix:
    q: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.rows)

    def row(self, l: int) -> tuple[int, ...]:
        """Coefficients of the output at lookahead distance ``l`` (1..r)."""
        if not 1 <= l <= self.r:
            raise IndexError(f"lookahead {l} outside 1..{self.r}")
        return self.rows[l - 1]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


def block_coeffs(p: CharPoly) -> BlockCoeffMatrix:
    q, r, base = p.q, p.r, p.coeffs
    rows = [base]
    for _ in range(r - 1):
        prev = rows[-1]
        # Shift onto (s[n+1], ..., s[n+r]) and substitute s[n+r] by the recurrence.
        top = prev[-1]
        nxt = [top * base[0] % q]
        nxt.extend((prev[j - 1] + top * base[j]) % q for j in range(1, r))
        rows.append(tuple(nxt))
    return BlockCoeffMatrix(q, tuple(rows))


def block_step(state: LfsrState, m: BlockCoeffMatrix) -> LfsrState:
    if state.r != m.r or state.q != m.q:
        raise DimensionMismatch(
            f"state (q={state.q}, r={state.r}) does not match matrix (q={m.q}, r={m.r})"
        )
    w, q = state.window, m.q
    return LfsrState(q, tuple(sum(c * s for c, s in zip(row, w)) % q for row in m.rows))
