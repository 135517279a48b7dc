"""Jumping numbers of multiplier ideals on surfaces with rational singularities.

Everything is computed from the combinatorics of a fixed log resolution:
the dual graph, self-intersections, and the divisors F (the pulled-back
ideal) and K (the relative canonical divisor).  Arithmetic is exact.
"""

from .errors import DomainError, SurfjumpError, ValidationError
from .resolution_graph import Divisor, PrimeDivisor, ResolutionGraph, build_graph
from .numerics import (
    antinef_closure,
    arithmetic_genus,
    dual_basis,
    fundamental_cycle,
    is_antinef,
    multiplicity_data,
    relative_canonical,
)
from .jumping import (
    Chain,
    Contributor,
    JumpingReport,
    PairData,
    candidate_numbers,
    chain_candidates,
    check_contribution,
    jumping_numbers,
    log_canonical_threshold,
    make_pair,
    rees_divisors,
)
from .oracle import crosscheck, multiplier_divisor, oracle_jumping_numbers

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "Contributor",
    "Divisor",
    "DomainError",
    "JumpingReport",
    "PairData",
    "PrimeDivisor",
    "ResolutionGraph",
    "SurfjumpError",
    "ValidationError",
    "antinef_closure",
    "arithmetic_genus",
    "build_graph",
    "candidate_numbers",
    "chain_candidates",
    "check_contribution",
    "crosscheck",
    "dual_basis",
    "fundamental_cycle",
    "is_antinef",
    "jumping_numbers",
    "log_canonical_threshold",
    "make_pair",
    "multiplicity_data",
    "multiplier_divisor",
    "oracle_jumping_numbers",
    "rees_divisors",
    "relative_canonical",
]
