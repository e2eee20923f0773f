"""Command line interface.

Polynomial coefficients are given ascending, ``--poly p_0,p_1,...,p_{r-1}``
for ``s[n+r] = p_{r-1} s[n+r-1] + ... + p_0 s[n] (mod q)``; the register
``z^3 + 2z^2 + 1`` over GF(3) is ``--q 3 --poly 1,0,2``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .analysis import TooManyStates, analyze
from .arithpoly import ModularPoly, build_modular_form, grid, mask
from .blockgen import BACKENDS, GeneratorConfig, bench, generate, next_block
from .field import ParameterError, ZeroSeed
from .lfsr import CharPoly, LfsrState, iterate
from .linearize import block_coeffs, block_step

EXHAUSTIVE_LIMIT = 10**6

EXAMPLE_Q = 3
EXAMPLE_POLY = (1, 0, 2)
EXAMPLE_SEED = (0, 1, 2)
EXAMPLE_STEPS = 8
# Values printed for the last worked step; the register actually gives M = 1 there.
EXAMPLE_PRINTED_STEP8 = 19


class UsageError(Exception):
    pass


def parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def make_poly(args) -> CharPoly:
    coeffs = parse_ints(args.poly, "--poly")
    if not coeffs:
        raise UsageError("--poly needs at least one coefficient")
    return CharPoly(args.q, coeffs)


def make_seed(args, p: CharPoly) -> LfsrState:
    if args.seed is None:
        return LfsrState(p.q, (0,) * (p.r - 1) + (1,))
    seed = parse_ints(args.seed, "--seed")
    if len(seed) != p.r:
        raise UsageError(f"--seed has {len(seed)} entries but the polynomial has degree {p.r}")
    return LfsrState(p.q, seed)


def make_config(args, backend="polynomial") -> GeneratorConfig:
    p = make_poly(args)
    seed = make_seed(args, p)
    if seed.is_zero():
        if not args.allow_zero_seed:
            raise ZeroSeed("all-zero seed gives the constant zero sequence; pass --allow-zero-seed to permit it")
        print("warning: all-zero seed, output is constant zero", file=sys.stderr)
    return GeneratorConfig(p, seed, backend, allow_zero_seed=args.allow_zero_seed)


def emit(doc, out):
    json.dump(doc, out, indent=2)
    out.write("\n")


def derive_document(p: CharPoly) -> dict:
    poly = build_modular_form(p)
    doc = poly.to_document()
    return {
        "q": p.q,
        "r": p.r,
        "modulus": poly.modulus,
        "poly": list(p.coeffs),
        "block_matrix": block_coeffs(p).as_lists(),
        "modular_poly": doc["terms"],
    }


def load_poly_document(path: str) -> ModularPoly:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    terms = doc["modular_poly"] if "modular_poly" in doc else doc["terms"]
    return ModularPoly.from_document({"q": doc["q"], "r": doc["r"], "modulus": doc.get("modulus", doc["q"] ** doc["r"]), "terms": terms})


def verify_exhaustive(p: CharPoly, poly: ModularPoly | None = None) -> dict:
    """Compare sequential, matrix and polynomial look-ahead on every state."""
    q, r = p.q, p.r
    if q**r > EXHAUSTIVE_LIMIT:
        raise TooManyStates(f"{q}^{r} states exceed the exhaustive limit {EXHAUSTIVE_LIMIT}")
    if poly is None:
        poly = build_modular_form(p)
    if (poly.q, poly.r) != (q, r):
        raise ParameterError(f"polynomial document is for q={poly.q}, r={poly.r}, not q={q}, r={r}")
    bm = block_coeffs(p)
    checked = 0
    for s in grid(q, r):
        state = LfsrState(q, s)
        it = iterate(state, p)
        seq = tuple(next(it) for _ in range(r))
        mat = block_step(state, bm).window
        block, _ = next_block(state, poly)
        checked += 1
        if not seq == mat == block.digits:
            return {
                "q": q, "r": r, "states_checked": checked, "ok": False,
                "mismatch": {"state": list(s), "sequential": list(seq), "matrix": list(mat),
                             "polynomial": list(block.digits), "m_value": block.m_value},
            }
    return {"q": q, "r": r, "states_checked": checked, "ok": True}


def format_stream(seq: Sequence[int], fmt: str, q: int, r: int) -> bytes:
    if fmt == "bytes":
        if q > 256:
            raise UsageError("format 'bytes' needs q <= 256")
        return bytes(seq)
    if not seq:
        return b""
    if fmt == "csv":
        return (",".join(map(str, seq)) + "\n").encode()
    lines = [" ".join(map(str, seq[i:i + r])) for i in range(0, len(seq), r)]
    return ("\n".join(lines) + "\n").encode()


def example_replay() -> dict:
    p = CharPoly(EXAMPLE_Q, EXAMPLE_POLY)
    poly = build_modular_form(p)
    q, r = p.q, p.r
    state = LfsrState(q, EXAMPLE_SEED)
    steps = []
    first = r
    for k in range(1, EXAMPLE_STEPS + 1):
        block, state = next_block(state, poly)
        step = {
            "step": k,
            "indices": list(range(first, first + r)),
            "m_value": block.m_value,
            "digits": list(block.digits),
        }
        if k == EXAMPLE_STEPS:
            printed = EXAMPLE_PRINTED_STEP8
            step["erratum"] = (
                f"the worked example prints M = {printed} here with digits (1, 0, 0); "
                f"the digits of {printed} are {tuple(mask(printed, t, q, r) for t in range(r))}, "
                f"and the register gives M = {block.m_value}"
            )
        steps.append(step)
        first += r
    return {"derive": derive_document(p), "seed": list(EXAMPLE_SEED), "steps": steps, "modular_poly_text": str(poly)}


def print_example(doc: dict, out):
    d = doc["derive"]
    q, r = d["q"], d["r"]
    p = CharPoly(q, tuple(d["poly"]))
    print(f"q = {q}, r = {r}, P(z) = {p}, seed = {tuple(doc['seed'])}", file=out)
    print("look-ahead system (coefficients on s0, s1, s2):", file=out)
    for l, row in enumerate(d["block_matrix"], 1):
        terms = " + ".join(f"{c}*s{u}" for u, c in enumerate(row) if c) or "0"
        print(f"  s{r + l - 1} = {terms} (mod {q})", file=out)
    print(f"M(S) = {doc['modular_poly_text']}", file=out)
    for step in doc["steps"]:
        digits = ", ".join(f"s{i} = {dg}" for i, dg in zip(step["indices"], step["digits"]))
        print(f"step {step['step']}: M = {step['m_value']:>2} -> {digits}", file=out)
        if "erratum" in step:
            print(f"  note: {step['erratum']}", file=out)


def cmd_derive(args, out):
    emit(derive_document(make_poly(args)), out)
    return 0


def cmd_gen(args, out):
    cfg = make_config(args, args.backend)
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    if args.format == "bytes" and cfg.p.q > 256:
        raise UsageError("format 'bytes' needs q <= 256")
    data = format_stream(generate(cfg, args.count), args.format, cfg.p.q, cfg.p.r)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
        return 0
    buf = getattr(out, "buffer", None)
    if buf is not None:
        out.flush()
        buf.write(data)
        buf.flush()
    else:
        out.write(data.decode("latin-1"))
    return 0


def cmd_verify(args, out):
    p = make_poly(args)
    poly = load_poly_document(args.check_file) if args.check_file else None
    result = verify_exhaustive(p, poly)
    emit(result, out)
    if not result["ok"]:
        print(f"mismatch at state {result['mismatch']['state']}", file=sys.stderr)
        return 1
    return 0


def cmd_analyze(args, out):
    p = make_poly(args)
    seed = make_seed(args, p)
    if seed.is_zero():
        raise ZeroSeed("period is undefined for the all-zero seed")
    emit(analyze(p, seed, args.max_shifts).to_document(), out)
    return 0


def cmd_bench(args, out):
    cfg = make_config(args)
    backends = tuple(args.backends.split(",")) if args.backends else BACKENDS
    for b in backends:
        if b not in BACKENDS:
            raise UsageError(f"unknown backend {b!r}")
    report = bench(cfg, args.count, backends)
    if args.format == "json":
        emit(report.to_document(), out)
    else:
        print(f"q={report.q} r={report.r} synthesis of M: {report.synthesis_seconds * 1e3:.3f} ms "
              f"({report.poly_terms} terms)", file=out)
        print(f"{'backend':<12}{'elements':>10}{'seconds':>10}{'elem/s':>14}  checksum", file=out)
        for row in report.rows:
            print(f"{row.backend:<12}{row.elements:>10}{row.seconds:>10.3f}{row.rate:>14.0f}  {row.checksum[:16]}",
                  file=out)
        print(f"checksums agree: {report.checksums_agree}", file=out)
    return 0 if report.checksums_agree else 1


def cmd_example(args, out):
    doc = example_replay()
    if args.format == "json":
        emit(doc, out)
    else:
        print_example(doc, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arithprs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def register(name, help_, func, seed=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--q", type=int, required=True, help="prime modulus")
        sp.add_argument("--poly", required=True, help="coefficients p_0,...,p_{r-1} (ascending)")
        if seed:
            sp.add_argument("--seed", help="initial window s_0,...,s_{r-1} (default 0,...,0,1)")
            sp.add_argument("--allow-zero-seed", action="store_true")
        sp.set_defaults(func=func)
        return sp

    register("derive", "emit block matrix and modular polynomial", cmd_derive)

    sp = register("gen", "generate a sequence", cmd_gen, seed=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--backend", choices=BACKENDS, default="polynomial")
    sp.add_argument("--format", choices=("digits", "csv", "bytes"), default="digits")
    sp.add_argument("--output", "-o", help="write to file instead of stdout")

    sp = register("verify", "exhaustive three-way backend equivalence", cmd_verify)
    sp.add_argument("--check-file", help="use the modular polynomial from a derive document")

    sp = register("analyze", "period, balance, shift-and-add, autocorrelation", cmd_analyze, seed=True)
    sp.add_argument("--max-shifts", type=int, default=None)

    sp = register("bench", "throughput per backend", cmd_bench, seed=True)
    sp.add_argument("--count", type=int, default=10**6)
    sp.add_argument("--backends", help="comma-separated subset of " + ",".join(BACKENDS))
    sp.add_argument("--format", choices=("table", "json"), default="table")

    sp = sub.add_parser("example", help="replay the q=3, z^3+2z^2+1 worked example")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_example)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, ParameterError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
