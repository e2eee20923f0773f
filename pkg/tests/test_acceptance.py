"""Exit criteria for the generator, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".  Run on its own with

    pytest tests/test_acceptance.py
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from arithprs.analysis import (
    autocorrelation, autocorrelation_exact, balance, find_primitive, one_period, period, shift_add_check,
)
from arithprs.arithpoly import build_modular_form, mask
from arithprs.blockgen import BACKENDS, GeneratorConfig, bench, generate, join_streams, next_block, split_streams
from arithprs.cli import format_stream
from arithprs.lfsr import CharPoly, LfsrState, iterate
from arithprs.linearize import block_coeffs, block_step

from conftest import ACCEPTANCE_LINES
from oracles import all_states, valid_polys

PAPER = CharPoly(3, (1, 0, 2))
SEED = LfsrState(3, (0, 1, 2))


@contextmanager
def criterion(label):
    try:
        yield
    except BaseException as exc:
        detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        ACCEPTANCE_LINES.append(f"FAIL  {label}: {detail}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {label}")


def test_c1_block_matrix():
    with criterion("1 block coefficients of the worked example"):
        assert block_coeffs(PAPER).rows == ((1, 0, 2), (2, 1, 1), (1, 2, 0))


def test_c2_modular_form():
    expected = {
        (1, 0, 0): 7, (2, 0, 0): 9, (0, 1, 0): 21, (1, 1, 0): 18, (2, 1, 0): 9, (1, 2, 0): 18,
        (0, 0, 1): 20, (1, 0, 1): 15, (2, 0, 1): 6, (0, 1, 1): 9, (1, 1, 1): 9, (0, 2, 1): 9,
        (0, 0, 2): 12, (1, 0, 2): 3, (2, 0, 2): 18, (0, 1, 2): 9,
    }
    with criterion("2 modular polynomial mod 27 (16 terms, exact)"):
        t0 = time.perf_counter()
        build_modular_form.cache_clear()
        poly = build_modular_form(PAPER)
        elapsed = time.perf_counter() - t0
        got = {poly.exponents(i): c for i, c in poly.terms}
        assert got == expected, f"coefficient table differs: {got}"
        for i in range(27):
            if poly.exponents(i) not in expected:
                assert poly.coeff(i) == 0
        assert elapsed < 1.0, f"synthesis took {elapsed:.3f} s"


def test_c3_generated_stream():
    m_values = [19, 14, 10, 9, 5, 17, 4]
    digit_blocks = [(1, 0, 2), (2, 1, 1), (1, 0, 1), (0, 0, 1), (2, 1, 0), (2, 2, 1), (1, 1, 0)]
    with criterion("3 worked-example blocks 1-8 (block 8: digits 1,0,0 with M = 1)"):
        poly = build_modular_form(PAPER)
        state = SEED
        for k in range(7):
            block, state = next_block(state, poly)
            assert (block.m_value, block.digits) == (m_values[k], digit_blocks[k]), f"block {k + 1}"
        block, state = next_block(state, poly)
        # The worked example prints M = 19 for this step, whose digits are (1, 0, 2).
        assert block.digits == (1, 0, 0)
        assert block.m_value == 1
        oracle = iterate(SEED, PAPER)
        stream = [next(oracle) for _ in range(24)]
        assert stream[21:24] == [1, 0, 0]


MATRIX = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2)]


def test_c4_three_way_equivalence():
    with criterion("4 sequential = matrix = polynomial on all states, 8 (q, r) pairs"):
        rng = random.Random(20240)
        t0 = time.perf_counter()
        checked = 0
        for q, r in MATRIX:
            candidates = valid_polys(q, r)
            # every valid polynomial when fewer than 20 exist
            sample = candidates if len(candidates) <= 20 else rng.sample(candidates, 20)
            for coeffs in sample:
                p = CharPoly(q, coeffs)
                bm = block_coeffs(p)
                poly = build_modular_form(p)
                for s in all_states(q, r):
                    st = LfsrState(q, s)
                    it = iterate(st, p)
                    seq = tuple(next(it) for _ in range(r))
                    mat = block_step(st, bm).window
                    block, _ = next_block(st, poly)
                    assert seq == mat == block.digits, f"q={q} p={coeffs} state={s}"
                    checked += 1
        elapsed = time.perf_counter() - t0
        assert checked > 0
        assert elapsed < 30, f"took {elapsed:.1f} s"


def test_c5_digit_identity():
    with criterion("5 digit reconstruction for every v < q^r"):
        for q, r in MATRIX:
            for v in range(q**r):
                assert sum(mask(v, t, q, r) * q**t for t in range(r)) == v


@pytest.fixture(scope="module")
def primitive_cubic():
    t0 = time.perf_counter()
    p = find_primitive(3, 3)
    seq = one_period(p, LfsrState(3, (0, 0, 1)))
    return p, seq, time.perf_counter() - t0


def test_c6a_paper_period():
    with criterion("6a worked-example polynomial has period 13 from every nonzero seed"):
        periods = {period(PAPER, LfsrState(3, s)) for s in all_states(3, 3) if any(s)}
        assert periods == {13}


def test_c6b_primitive_period(primitive_cubic):
    p, seq, elapsed = primitive_cubic
    with criterion("6b searched primitive cubic over GF(3) has period 26"):
        assert len(seq) == 26
        assert elapsed < 5


def test_c6c_balance(primitive_cubic):
    _, seq, _ = primitive_cubic
    with criterion("6c balance {1: 9, 2: 9, 0: 8}"):
        assert balance(seq) == {0: 8, 1: 9, 2: 9}


def test_c6d_shift_and_add(primitive_cubic):
    _, seq, _ = primitive_cubic
    with criterion("6d shift-and-add holds for every shift 1..25"):
        failures = [tau for tau in range(1, 26) if not shift_add_check(seq, tau, 3)]
        assert not failures, f"sum is not a cyclic shift for tau in {failures}"


def test_c6e_autocorrelation(primitive_cubic):
    _, seq, _ = primitive_cubic
    with criterion("6e autocorrelation -1/26 exactly (counts), complex sum within 1e-9"):
        t0 = time.perf_counter()
        assert autocorrelation_exact(seq, 0, 3) == 1
        for tau in range(1, 26):
            assert autocorrelation_exact(seq, tau, 3) == Fraction(-1, 26), f"tau={tau}"
            assert abs(autocorrelation(seq, tau, 3) - (-1 / 26)) <= 1e-9, f"tau={tau}"
        assert time.perf_counter() - t0 < 5


def test_c7_stream_splitting():
    with criterion("7 three streams of stride 100 rebuild the 300-element stream"):
        cfg = GeneratorConfig(PAPER, SEED)
        streams = split_streams(cfg, 3, 100)
        joined = format_stream(join_streams(streams, 100), "bytes", 3, 3)
        single = format_stream(generate(cfg, 300), "bytes", 3, 3)
        assert len(single) == 300
        assert joined == single


@pytest.mark.slow
def test_c8_bench_sanity():
    with criterion("8 bench on 10^6 elements per backend, equal checksums, separate synthesis time"):
        report = bench(GeneratorConfig(PAPER, SEED), 10**6)
        assert [row.backend for row in report.rows] == list(BACKENDS)
        assert all(row.elements == 10**6 for row in report.rows)
        assert report.checksums_agree
        assert isinstance(report.synthesis_seconds, float) and report.synthesis_seconds >= 0
        assert "synthesis_seconds" in report.to_document()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
