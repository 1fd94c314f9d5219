"""Generalized cyclotomic binary sequences of period p^r and their linear complexity."""

from .numtheory import AssumptionError, ParameterError, Params, check_assumptions
from .seqgen import BitSequence, SupportSpec, generate_sequence, xiao_support
from .lincomp import (
    LCReport,
    berlekamp_massey,
    conjecture_lc,
    fiber_lc,
    gcd_lc,
    run_engine,
    theorem_lc,
)

__all__ = [
    "AssumptionError",
    "BitSequence",
    "LCReport",
    "ParameterError",
    "Params",
    "SupportSpec",
    "berlekamp_massey",
    "check_assumptions",
    "conjecture_lc",
    "fiber_lc",
    "gcd_lc",
    "generate_sequence",
    "run_engine",
    "theorem_lc",
    "xiao_support",
]
