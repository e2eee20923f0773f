"""Arithmetic polynomials over Z/q^r that pack r q-valued functions into one.

A monomial is indexed by ``i = sum(i_u * q**(r-u-1))``; digit ``i_u`` (most
significant first) is the exponent of ``s[n+u]``, so ``i_0`` belongs to the
oldest window element.  Exponents run over ``0..q-1`` with true powers.

For a register polynomial the truth table is the packed value
``F(S) = sum(q**(l-1) * f_l(S))``: digit t of ``F`` is the output
``s[n+r+t]``.  Interpolating ``F`` directly mod q^r gives the same
coefficients as weighting and adding per-output polynomials, since
interpolation is linear.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .field import DimensionMismatch, RingModulus, inv_mod
from .lfsr import CharPoly, LfsrState
from .linearize import block_coeffs


class LengthMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def index_digits(i: int, q: int, r: int) -> tuple[int, ...]:
    """q-ary digits of ``i``, most significant first, padded to length r."""
    digits = []
    for _ in range(r):
        i, d = divmod(i, q)
        digits.append(d)
    if i:
        raise IndexOutOfRange(f"index does not fit in {r} base-{q} digits")
    return tuple(reversed(digits))


def digits_index(digits: Sequence[int], q: int) -> int:
    i = 0
    for d in digits:
        i = i * q + d
    return i


def mask(v: int, t: int, q: int, r: int) -> int:
    """The t-th q-ary digit of ``v`` (0 = least significant)."""
    if not 0 <= t < r:
        raise IndexOutOfRange(f"digit {t} outside 0..{r - 1}")
    if not 0 <= v < q**r:
        raise ValueError(f"{v} is not a residue mod {q}^{r}")
    return v // q**t % q


def digits_of(v: int, q: int, r: int) -> tuple[int, ...]:
    """All r masked digits of ``v``, least significant first."""
    out = []
    for _ in range(r):
        v, d = divmod(v, q)
        out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class TruthTable:
    q: int
    r: int
    values: tuple[int, ...]

    def __post_init__(self):
        ring = RingModulus(self.q, self.r)
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != ring.modulus:
            raise LengthMismatch(
                f"expected {ring.modulus} values for q={self.q}, r={self.r}, got {len(self.values)}"
            )
        for v in self.values:
            if not 0 <= v < ring.modulus:
                raise ValueError(f"table value {v} outside [0, {ring.modulus})")

    @classmethod
    def from_function(cls, q: int, r: int, fn: Callable[[tuple[int, ...]], int]) -> "TruthTable":
        m = q**r
        return cls(q, r, tuple(fn(index_digits(i, q, r)) % m for i in range(m)))


@dataclass(frozen=True)
class ModularPoly:
    """Sparse polynomial ``M(S) = sum(c_i * prod(s_u ** i_u)) mod q^r``."""

    q: int
    r: int
    terms: tuple[tuple[int, int], ...]  # (index, coeff), sorted, coeff != 0
    _compiled: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        m = RingModulus(self.q, self.r).modulus
        seen = set()
        terms = []
        for i, c in sorted(self.terms):
            if not 0 <= i < m:
                raise IndexOutOfRange(f"monomial index {i} outside [0, {m})")
            if i in seen:
                raise ValueError(f"duplicate monomial index {i}")
            if not 1 <= c < m:
                raise ValueError(f"coefficient {c} at index {i} not in [1, {m})")
            seen.add(i)
            terms.append((i, c))
        object.__setattr__(self, "terms", tuple(terms))
        compiled = tuple(
            (c, tuple((u, e) for u, e in enumerate(index_digits(i, self.q, self.r)) if e))
            for i, c in terms
        )
        object.__setattr__(self, "_compiled", compiled)

    @classmethod
    def from_mapping(cls, q: int, r: int, coeffs: Mapping[int, int]) -> "ModularPoly":
        m = q**r
        return cls(q, r, tuple((i, c % m) for i, c in coeffs.items() if c % m))

    @property
    def modulus(self) -> int:
        return self.q**self.r

    def __len__(self):
        return len(self.terms)

    def coeff(self, index: int) -> int:
        return dict(self.terms).get(index, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def exponents(self, index: int) -> tuple[int, ...]:
        return index_digits(index, self.q, self.r)

    def __str__(self):
        parts = []
        for i, c in self.terms:
            mono = "".join(
                f"s{u}" if e == 1 else f"s{u}^{e}"
                for u, e in enumerate(self.exponents(i))
                if e
            )
            parts.append(f"{c}{mono}" if mono else str(c))
        return (" + ".join(parts) or "0") + f" (mod {self.modulus})"

    def to_document(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "modulus": self.modulus,
            "terms": [
                {"index": i, "exponents": list(self.exponents(i)), "coeff": c}
                for i, c in self.terms
            ],
        }

    @classmethod
    def from_document(cls, doc: Mapping) -> "ModularPoly":
        q, r = int(doc["q"]), int(doc["r"])
        if "modulus" in doc and int(doc["modulus"]) != q**r:
            raise ValueError("document modulus disagrees with q^r")
        terms = []
        for t in doc["terms"]:
            i = int(t["index"])
            if "exponents" in t and tuple(t["exponents"]) != index_digits(i, q, r):
                raise ValueError(f"exponents of term {i} disagree with its index")
            terms.append((i, int(t["coeff"])))
        return cls(q, r, tuple(terms))


def evaluate(poly: ModularPoly, state: LfsrState | Sequence[int]) -> int:
    s = state.window if isinstance(state, LfsrState) else tuple(state)
    if len(s) != poly.r:
        raise DimensionMismatch(f"expected {poly.r} variables, got {len(s)}")
    m = poly.modulus
    powers = []
    for x in s:
        row = [1] * poly.q
        for e in range(1, poly.q):
            row[e] = row[e - 1] * x % m
        powers.append(row)
    total = 0
    for c, factors in poly._compiled:
        for u, e in factors:
            c = c * powers[u][e] % m
        total += c
    return total % m


@lru_cache(maxsize=None)
def inverse_vandermonde(q: int, m: int) -> tuple[tuple[int, ...], ...]:
    """``W`` with ``W[e][x]`` the coefficient of ``s**e`` in the Lagrange basis poly of node x.

    Nodes are 0..q-1; every denominator is a product of differences in
    ``[1, q-1]``, hence a unit mod any power of the prime q.
    """
    cols = []
    for x in range(q):
        poly = [1]
        denom = 1
        for k in range(q):
            if k == x:
                continue
            # poly *= (s - k)
            poly = [(a - k * b) % m for a, b in zip([0] + poly, poly + [0])]
            denom = denom * (x - k) % m
        d_inv = inv_mod(denom, m)
        cols.append([a * d_inv % m for a in poly])
    return tuple(tuple(cols[x][e] for x in range(q)) for e in range(q))


def _work_dtype(q: int, m: int):
    # tensordot accumulates q products of two residues before reduction.
    return np.int64 if q * (m - 1) ** 2 < 2**63 else object


def interpolate(table: TruthTable) -> ModularPoly:
    q, r = table.q, table.r
    m = q**r
    dtype = _work_dtype(q, m)
    w = np.array(inverse_vandermonde(q, m), dtype=dtype)
    coeffs = np.array(table.values, dtype=dtype).reshape((q,) * r)
    for axis in range(r):
        coeffs = np.moveaxis(np.tensordot(w, coeffs, axes=([1], [axis])), 0, axis) % m
    flat = coeffs.reshape(-1)
    poly = ModularPoly(q, r, tuple((i, int(c)) for i, c in enumerate(flat) if c))
    assert len(poly.terms) <= m
    return poly


def packed_table(p: CharPoly) -> TruthTable:
    """``F(S) = sum(q**(l-1) f_l(S))`` over the whole state grid."""
    q, r = p.q, p.r
    RingModulus(q, r)
    rows = block_coeffs(p).rows
    weights = [q**l for l in range(r)]
    values = []
    for i in range(q**r):
        s = index_digits(i, q, r)
        values.append(sum(w * (sum(c * x for c, x in zip(row, s)) % q) for w, row in zip(weights, rows)))
    return TruthTable(q, r, tuple(values))


@lru_cache(maxsize=128)
def build_modular_form(p: CharPoly) -> ModularPoly:
    return interpolate(packed_table(p))


def add_tables(a: TruthTable, b: TruthTable, alpha: int = 1) -> TruthTable:
    if (a.q, a.r) != (b.q, b.r):
        raise DimensionMismatch("tables over different grids")
    m = a.q**a.r
    return TruthTable(a.q, a.r, tuple((alpha * x + y) % m for x, y in zip(a.values, b.values)))


def grid(q: int, r: int) -> Iterable[tuple[int, ...]]:
    """All states in index order."""
    for i in range(q**r):
        yield index_digits(i, q, r)
