"""Block generation: r sequence elements per evaluation of the packed polynomial.

Three interchangeable backends produce the same stream:

``sequential``
    one recurrence step per element.
``matrix``
    one application of the r x r block matrix per r elements.
``polynomial``
    one evaluation of ``M(S) mod q^r`` per r elements, digits read off by
    masking.
"""
from __future__ import annotations

import hashlib
import time
from array import array
from dataclasses import dataclass, field, replace
from itertools import islice
from typing import Iterable, Iterator, Sequence

from .arithpoly import ModularPoly, build_modular_form, digits_of, evaluate, interpolate, packed_table
from .field import DimensionMismatch, ParameterError, ZeroSeed
from .lfsr import CharPoly, LfsrState, check_dims, iterate, jump
from .linearize import block_coeffs

BACKENDS = ("sequential", "matrix", "polynomial")


@dataclass(frozen=True)
class Block:
    q: int
    m_value: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if digits_of(self.m_value, self.q, len(self.digits)) != self.digits:
            raise ValueError(f"digits {self.digits} are not the base-{self.q} digits of {self.m_value}")


@dataclass(frozen=True)
class GeneratorConfig:
    p: CharPoly
    seed: LfsrState
    backend: str = "polynomial"
    allow_zero_seed: bool = False

    def __post_init__(self):
        check_dims(self.seed, self.p)
        if self.backend not in BACKENDS:
            raise ParameterError(f"unknown backend {self.backend!r}; choose from {', '.join(BACKENDS)}")
        if self.seed.is_zero() and not self.allow_zero_seed:
            raise ZeroSeed("all-zero seed gives the constant zero sequence")


def next_block(state: LfsrState, poly: ModularPoly) -> tuple[Block, LfsrState]:
    if state.r != poly.r or state.q != poly.q:
        raise DimensionMismatch("state and polynomial dimensions differ")
    v = evaluate(poly, state)
    digits = digits_of(v, poly.q, poly.r)
    return Block(poly.q, v, digits), LfsrState(poly.q, digits)


def _matrix_stream(p: CharPoly, seed: LfsrState) -> Iterator[int]:
    q, rows = p.q, block_coeffs(p).rows
    w = seed.window
    while True:
        w = tuple(sum(c * s for c, s in zip(row, w)) % q for row in rows)
        yield from w


def _polynomial_stream(poly: ModularPoly, seed: LfsrState) -> Iterator[int]:
    q, r, m = poly.q, poly.r, poly.modulus
    terms = poly._compiled
    exps = range(1, q)
    w = seed.window
    while True:
        powers = []
        for x in w:
            row = [1] * q
            for e in exps:
                row[e] = row[e - 1] * x % m
            powers.append(row)
        v = 0
        for c, factors in terms:
            for u, e in factors:
                c = c * powers[u][e]
            v += c
        v %= m
        out = []
        for _ in range(r):
            v, d = divmod(v, q)
            out.append(d)
        w = tuple(out)
        yield from w


def stream(cfg: GeneratorConfig, poly: ModularPoly | None = None) -> Iterator[int]:
    """Endless element stream after the seed window."""
    if cfg.backend == "sequential":
        return iterate(cfg.seed, cfg.p)
    if cfg.backend == "matrix":
        return _matrix_stream(cfg.p, cfg.seed)
    if poly is None:
        poly = build_modular_form(cfg.p)
    return _polynomial_stream(poly, cfg.seed)


def generate(cfg: GeneratorConfig, n: int, poly: ModularPoly | None = None) -> list[int]:
    if n < 0:
        raise ValueError("count must be non-negative")
    if n == 0:
        return []
    return list(islice(stream(cfg, poly), n))


class BlockGenerator:
    """Stateful wrapper over a config.

    ``take`` always advances the register by whole blocks of r, whatever the
    backend, so a trailing partial block is dropped from the output but not
    from the state.
    """

    def __init__(self, cfg: GeneratorConfig, poly: ModularPoly | None = None):
        self.cfg = cfg
        self.state = cfg.seed
        self.poly = poly if poly is not None or cfg.backend != "polynomial" else build_modular_form(cfg.p)

    def next_block(self) -> tuple[int, ...]:
        return tuple(self.take(self.cfg.p.r))

    def take(self, n: int) -> list[int]:
        r = self.cfg.p.r
        blocks = -(-n // r)
        out = generate(replace(self.cfg, seed=self.state, allow_zero_seed=True), blocks * r, self.poly)
        if blocks:
            self.state = LfsrState(self.cfg.p.q, out[-r:])
        return out[:n]


def split_streams(cfg: GeneratorConfig, k: int, stride: int) -> list[GeneratorConfig]:
    """``k`` configs whose first ``stride`` outputs tile the base sequence."""
    if k < 1 or stride < 1:
        raise ValueError("k and stride must be >= 1")
    return [replace(cfg, seed=jump(cfg.seed, cfg.p, j * stride)) for j in range(k)]


def join_streams(cfgs: Sequence[GeneratorConfig], stride: int) -> list[int]:
    poly = build_modular_form(cfgs[0].p) if any(c.backend == "polynomial" for c in cfgs) else None
    out: list[int] = []
    for c in cfgs:
        out.extend(generate(c, stride, poly))
    return out


def checksum(seq: Iterable[int]) -> str:
    return hashlib.sha256(array("Q", seq).tobytes()).hexdigest()


@dataclass
class BenchRow:
    backend: str
    elements: int
    seconds: float
    checksum: str

    @property
    def rate(self) -> float:
        return self.elements / self.seconds if self.seconds > 0 else float("inf")


@dataclass
class BenchReport:
    q: int
    r: int
    synthesis_seconds: float
    poly_terms: int
    zero_seed: bool
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def checksums_agree(self) -> bool:
        return len({row.checksum for row in self.rows}) <= 1

    def to_document(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "synthesis_seconds": self.synthesis_seconds,
            "poly_terms": self.poly_terms,
            "zero_seed": self.zero_seed,
            "checksums_agree": self.checksums_agree,
            "backends": [
                {
                    "backend": row.backend,
                    "elements": row.elements,
                    "seconds": row.seconds,
                    "elements_per_second": row.rate,
                    "checksum": row.checksum,
                }
                for row in self.rows
            ],
        }


class BackendMismatch(AssertionError):
    pass


def bench(cfg: GeneratorConfig, n: int, backends: Sequence[str] = BACKENDS, prefix: int = 4096) -> BenchReport:
    """Time ``n`` elements on each backend after checking they agree on a prefix."""
    t0 = time.perf_counter()
    poly = interpolate(packed_table(cfg.p))
    synth = time.perf_counter() - t0

    cfgs = [replace(cfg, backend=b) for b in backends]
    reference = None
    for c in cfgs:
        head = generate(c, min(prefix, n), poly)
        if reference is None:
            reference = head
        elif head != reference:
            raise BackendMismatch(f"backend {c.backend} disagrees on the first {len(head)} elements")

    report = BenchReport(cfg.p.q, cfg.p.r, synth, len(poly), cfg.seed.is_zero())
    for c in cfgs:
        t0 = time.perf_counter()
        out = generate(c, n, poly)
        dt = time.perf_counter() - t0
        report.rows.append(BenchRow(c.backend, n, dt, checksum(out)))
    return report
