"""Parallel generation of q-valued LFSR sequences through modular arithmetic polynomials."""

from .analysis import AnalysisReport, analyze, autocorrelation, balance, find_primitive, period, shift_add_check
from .arithpoly import ModularPoly, TruthTable, build_modular_form, evaluate, interpolate, mask
from .blockgen import BACKENDS, Block, BlockGenerator, GeneratorConfig, bench, generate, next_block, split_streams
from .field import check_prime, inv_mod, pow_mod
from .lfsr import CharPoly, LfsrState, companion, jump, lfsr_next
from .linearize import BlockCoeffMatrix, block_coeffs, block_step

__version__ = "0.1.0"
