"""Exact computations on the exceptional lattice of a resolution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import errors
from ._linalg import det_int, inverse, solve
from .resolution_graph import Divisor, ResolutionGraph


@dataclass(frozen=True)
class ExceptionalLattice:
    """Intersection matrix restricted to the exceptional divisors."""

    ids: tuple
    matrix: tuple

    @property
    def rank(self) -> int:
        return len(self.ids)

    def det(self) -> int:
        return det_int([list(r) for r in self.matrix])

    def is_unimodular(self) -> bool:
        """True when det(-M) = 1, i.e. the dual basis is integral."""
        n = self.rank
        return (-1) ** n * self.det() == 1


@lru_cache(maxsize=512)
def lattice(graph: ResolutionGraph) -> ExceptionalLattice:
    return ExceptionalLattice(graph.exceptional_ids,
                              tuple(tuple(r) for r in graph.exceptional_matrix()))


def _require_exceptional(graph):
    if not graph.exceptional_ids:
        raise errors.EmptyExceptionalSet("the resolution has no exceptional divisors")


@lru_cache(maxsize=512)
def relative_canonical(graph: ResolutionGraph) -> Divisor:
    """K with K.E = -2 - E.E for every exceptional E (adjunction on P^1)."""
    ids = graph.exceptional_ids
    if not ids:
        return Divisor()
    m = graph.exceptional_matrix()
    rhs = [-2 - m[i][i] for i in range(len(ids))]
    if not any(rhs):
        return Divisor()
    return Divisor(dict(zip(ids, solve(m, rhs))))


def is_antinef(graph: ResolutionGraph, d: Divisor) -> bool:
    graph.check_divisor(d)
    return all(graph.dot(d, e) <= 0 for e in graph.exceptional_ids)


def _unload(graph: ResolutionGraph, coeffs: dict) -> dict:
    """Add one copy of E while D.E > 0 until D is antinef.

    ``coeffs`` maps every divisor id (exceptional and not) to its
    coefficient; only exceptional entries are changed.
    """
    exc = graph.exceptional_ids
    si = {e: graph.self_intersection(e) for e in exc}
    exc_nbrs = {e: [v for v in graph.neighbors(e) if graph.is_exceptional(v)] for e in exc}
    dots = {}
    for e in exc:
        t = coeffs.get(e, 0) * si[e]
        for v in graph.neighbors(e):
            t += coeffs.get(v, 0)
        dots[e] = t
    pending = [e for e in exc if dots[e] > 0]
    while pending:
        e = pending.pop()
        while dots[e] > 0:
            coeffs[e] = coeffs.get(e, 0) + 1
            dots[e] += si[e]
            for v in exc_nbrs[e]:
                dots[v] += 1
                if 0 < dots[v] <= 1:
                    pending.append(v)
    return coeffs


def antinef_closure(graph: ResolutionGraph, d: Divisor) -> Divisor:
    """Least D' >= D with D'.E <= 0 for all exceptional E (Laufer unloading).

    Only exceptional coefficients move; they must be integers.
    """
    graph.check_divisor(d)
    bad = [e for e in graph.exceptional_ids if d[e].denominator != 1]
    if bad:
        raise errors.NonIntegralExceptionalPart(
            f"exceptional coefficients of {bad} are not integers"
        )
    coeffs = {k: v for k, v in d.items()}
    return Divisor(_unload(graph, coeffs))


@lru_cache(maxsize=512)
def fundamental_cycle(graph: ResolutionGraph) -> Divisor:
    """Smallest nonzero exceptional antinef divisor, by Laufer's procedure."""
    _require_exceptional(graph)
    coeffs = {e: 1 for e in graph.exceptional_ids}
    return Divisor(_unload(graph, coeffs))


@lru_cache(maxsize=256)
def _neg_inverse(graph: ResolutionGraph):
    m = graph.exceptional_matrix()
    return [[-v for v in row] for row in inverse(m)]


def dual_basis(graph: ResolutionGraph) -> list:
    """Divisors Ê_i with Ê_i.E_j = -delta_ij, in exceptional order."""
    _require_exceptional(graph)
    ids = graph.exceptional_ids
    n_inv = _neg_inverse(graph)
    return [Divisor({ids[r]: n_inv[r][c] for r in range(len(ids))}) for c in range(len(ids))]


def _require_exceptional_integral(graph, d):
    graph.check_divisor(d)
    off = sorted(k for k in d if not graph.is_exceptional(k))
    if off:
        raise errors.NonExceptionalSupport(f"divisor is supported on non-exceptional {off}")
    if not d.is_integral():
        raise errors.NonIntegral("divisor has non-integral coefficients")


def arithmetic_genus(graph: ResolutionGraph, d: Divisor) -> Fraction:
    """p_a(D) = 1 + (D.D + D.K)/2 for an integral exceptional divisor."""
    _require_exceptional_integral(graph, d)
    k = relative_canonical(graph)
    return 1 + (graph.intersect(d, d) + graph.intersect(d, k)) / 2


def multiplicity_data(graph: ResolutionGraph) -> tuple:
    """(multiplicity, embedding dimension) = (-Z.Z, -Z.Z + 1)."""
    z = fundamental_cycle(graph)
    mult = -graph.intersect(z, z)
    return int(mult), int(mult) + 1


def adjunction_defect(graph: ResolutionGraph, k: Divisor) -> dict:
    """Exceptional E where K.E differs from -2 - E.E, with the two values."""
    out = {}
    for e in graph.exceptional_ids:
        lhs = graph.dot(k, e)
        rhs = -2 - graph.self_intersection(e)
        if lhs != rhs:
            out[e] = (lhs, rhs)
    return out
