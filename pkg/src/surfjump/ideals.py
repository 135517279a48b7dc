"""Complete ideals on a smooth surface via their antinef divisors.

On a resolution obtained by point blow-ups the exceptional lattice is
unimodular, the dual basis Ê_1..Ê_n is integral, and every antinef
exceptional divisor D is uniquely sum d_i Ê_i with d_i = -D.E_i >= 0.
The ideal of Ê_i is simple, so the exponents give the factorization of
the ideal of D into simple ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import errors
from .jumping import jumping_numbers, make_pair
from .numerics import dual_basis, lattice
from .resolution_graph import Divisor, ResolutionGraph


@dataclass(frozen=True)
class Factorization:
    exponents: Mapping

    def nonzero(self) -> dict:
        return {e: d for e, d in self.exponents.items() if d}

    def reconstruct(self, graph: ResolutionGraph) -> Divisor:
        basis = dict(zip(graph.exceptional_ids, dual_basis(graph)))
        out = Divisor()
        for e, d in self.exponents.items():
            if d:
                out = out + d * basis[e]
        return out

    def to_json(self) -> dict:
        return dict(self.exponents)


def _check(graph: ResolutionGraph, d: Divisor):
    graph.check_divisor(d)
    if not graph.exceptional_ids:
        raise errors.EmptyExceptionalSet("the resolution has no exceptional divisors")
    if not lattice(graph).is_unimodular():
        raise errors.NotUnimodular("det(-M) != 1; the dual basis is not integral")
    off = sorted(k for k in d if not graph.is_exceptional(k))
    if off:
        raise errors.NonExceptionalSupport(f"divisor is supported on non-exceptional {off}")
    if not d.is_integral():
        raise errors.NotIntegral("divisor has non-integral coefficients")
    neg = [e for e in graph.exceptional_ids if graph.dot(d, e) > 0]
    if neg:
        raise errors.NotAntinef(f"D.E > 0 for {neg}")


def factor(graph: ResolutionGraph, d: Divisor) -> Factorization:
    _check(graph, d)
    exps = {e: int(-graph.dot(d, e)) for e in graph.exceptional_ids}
    fac = Factorization(exps)
    if fac.reconstruct(graph) != d:
        raise RuntimeError("dual-basis reconstruction failed")
    return fac


def is_simple(graph: ResolutionGraph, d: Divisor) -> bool:
    exps = factor(graph, d).nonzero()
    return len(exps) == 1 and next(iter(exps.values())) == 1


def simplicity_via_jn(graph: ResolutionGraph, d: Divisor) -> bool:
    """Simple exactly when 1 is not a jumping number of the ideal."""
    _check(graph, d)
    if not d:
        raise errors.NotAntinef("the zero divisor is the unit ideal")
    report = jumping_numbers(make_pair(graph, d))
    return 1 not in report
