"""Jumping numbers from resolution numerics.

For every candidate value lambda in (0, 2] the engine either finds a
non-exceptional component of F that has lambda as a candidate (such a
component always contributes), or searches the exceptional chains that may
critically contribute lambda and tests each with the intersection-number
criterion.  Values above 2 follow from periodicity: lambda > 2 jumps
exactly when lambda - 1 does.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import errors
from .numerics import adjunction_defect, is_antinef, relative_canonical
from .resolution_graph import Divisor, ResolutionGraph, as_rational, build_graph, format_rational

log = logging.getLogger(__name__)

CANDIDATE_BOUND = Fraction(2)
PERIODICITY_NOTE = "λ>2 jumping iff λ−1 jumping"


@dataclass(frozen=True)
class PairData:
    """A resolution together with F (the pulled-back ideal) and K."""

    graph: ResolutionGraph
    F: Divisor
    K: Divisor
    forced: bool = False

    def a(self, divisor_id: str) -> Fraction:
        return self.F[divisor_id]

    def b(self, divisor_id: str) -> Fraction:
        return self.K[divisor_id]

    def rounded_up(self, lam: Fraction) -> Divisor:
        """The divisor ceil(K - lam*F)."""
        return (self.K - lam * self.F).ceil()

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["F"] = self.F.to_json(self.graph.ids)
        out["K"] = self.K.to_json(self.graph.ids)
        return out

    @classmethod
    def from_json(cls, obj: Mapping, *, force: bool = False) -> "PairData":
        graph = build_graph(obj)
        if "F" not in obj:
            raise errors.InvalidPair("instance has no 'F'")
        F = Divisor(obj["F"])
        K = Divisor(obj["K"]) if obj.get("K") is not None else None
        return make_pair(graph, F, K, force=force)


def make_pair(graph: ResolutionGraph, F: Divisor, K: Optional[Divisor] = None, *,
              force: bool = False) -> PairData:
    """Validate F (and K when given) against ``graph``.

    F must be a nonzero effective integral divisor, antinef unless
    ``force`` is set.  A missing K is computed by adjunction.
    """
    graph.check_divisor(F)
    if not F:
        raise errors.InvalidPair("F is zero")
    if not F.is_effective():
        raise errors.InvalidPair("F has negative coefficients")
    if not F.is_integral():
        raise errors.InvalidPair("F has non-integral coefficients")
    if not is_antinef(graph, F):
        bad = [e for e in graph.exceptional_ids if graph.dot(F, e) > 0]
        if not force:
            raise errors.InvalidPair(f"F is not antinef: F.E > 0 for {bad}")
        log.warning("F is not antinef (F.E > 0 for %s); continuing because forced", bad)
    if K is None:
        K = relative_canonical(graph)
    else:
        graph.check_divisor(K)
        off = sorted(k for k in K if not graph.is_exceptional(k))
        if off:
            raise errors.InvalidPair(f"K is supported on non-exceptional {off}")
        defect = adjunction_defect(graph, K)
        if defect:
            e, (lhs, rhs) = sorted(defect.items())[0]
            raise errors.InvalidPair(f"K fails adjunction at {e}: K.E = {lhs}, expected {rhs}")
    return PairData(graph, F, K, force)


def _integral_at(pair: PairData, lam: Fraction, divisor_id: str) -> bool:
    """ord(lam*F - K) is an integer along ``divisor_id`` (of any sign)."""
    return (lam * pair.a(divisor_id) - pair.b(divisor_id)).denominator == 1


def is_candidate(pair: PairData, lam: Fraction, divisor_id: str) -> bool:
    """lam*a - b is a positive integer (and a > 0)."""
    a = pair.a(divisor_id)
    if a <= 0:
        return False
    t = lam * a - pair.b(divisor_id)
    return t.denominator == 1 and t > 0


@dataclass(frozen=True)
class CandidateTable:
    """Sorted candidate values, each with the divisors it is a candidate for."""

    entries: tuple

    def values(self) -> list:
        return [lam for lam, _ in self.entries]

    def divisors_for(self, lam: Fraction) -> frozenset:
        for value, ids in self.entries:
            if value == lam:
                return ids
        return frozenset()

    def __contains__(self, lam) -> bool:
        return any(value == lam for value, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def candidate_numbers(pair: PairData, bound=CANDIDATE_BOUND) -> CandidateTable:
    """All lambda in (0, bound] that are candidates for some divisor of F."""
    bound = as_rational(bound)
    table = {}
    for i in pair.graph.ids:
        a, b = pair.a(i), pair.b(i)
        if a <= 0:
            continue
        top = math.floor(bound * a - b)
        for m in range(1, top + 1):
            lam = (b + m) / a
            if lam > 0:
                table.setdefault(lam, set()).add(i)
    return CandidateTable(tuple((lam, frozenset(ids)) for lam, ids in sorted(table.items())))


def rees_divisors(pair: PairData) -> frozenset:
    """Non-exceptional components of F and exceptional E with F.E < 0."""
    g = pair.graph
    out = {c for c in g.curve_ids if pair.F[c] > 0}
    out.update(e for e in g.exceptional_ids if g.dot(pair.F, e) < 0)
    return frozenset(out)


@dataclass(frozen=True, order=True)
class Chain:
    """A path of exceptional divisors, oriented so ids[0] <= ids[-1]."""

    ids: tuple

    def __post_init__(self):
        ids = tuple(self.ids)
        if not ids:
            raise ValueError("a chain needs at least one divisor")
        if ids[-1] < ids[0]:
            ids = ids[::-1]
        object.__setattr__(self, "ids", ids)

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        return iter(self.ids)

    @property
    def ends(self) -> tuple:
        return (self.ids[0],) if len(self.ids) == 1 else (self.ids[0], self.ids[-1])

    @property
    def interior(self) -> tuple:
        return self.ids[1:-1]

    def divisor(self) -> Divisor:
        return Divisor.reduced(self.ids)

    def is_path_in(self, graph: ResolutionGraph) -> bool:
        if len(set(self.ids)) != len(self.ids):
            return False
        if not all(graph.is_exceptional(i) for i in self.ids):
            return False
        members = set(self.ids)
        for k, i in enumerate(self.ids):
            inside = [v for v in graph.neighbors(i) if v in members]
            want = {self.ids[j] for j in (k - 1, k + 1) if 0 <= j < len(self.ids)}
            if set(inside) != want:
                return False
        return True


def _end_ok(pair, e, rees, relevant) -> bool:
    if e in rees:
        return True
    return sum(1 for v in pair.graph.neighbors(e) if v in relevant) >= 3


def chain_candidates(pair: PairData, lam, table: Optional[CandidateTable] = None) -> list:
    """Exceptional chains that pass the geometric filter for ``lam``.

    Every vertex must have ``lam`` as a candidate; each end must be a Rees
    divisor or meet at least three divisors of supp(F) + supp(K); interior
    vertices must be non-Rees, and every component of F they meet must have
    lam*a - b integral.  That last test deliberately admits lam*a - b <= 0:
    a neighbor with integral but non-positive value still has zero
    fractional part, which is all an interior vertex needs.
    """
    lam = as_rational(lam)
    g = pair.graph
    if table is None:
        table = candidate_numbers(pair, max(lam, CANDIDATE_BOUND))
    s_lam = table.divisors_for(lam)
    exc = sorted(i for i in s_lam if g.is_exceptional(i))
    rees = rees_divisors(pair)
    relevant = pair.F.support() | pair.K.support()
    ends = [e for e in exc if _end_ok(pair, e, rees, relevant)]

    def interior_ok(v):
        if v in rees:
            return False
        return all(_integral_at(pair, lam, w) for w in g.neighbors(v) if pair.F[w] > 0)

    chains = []
    for x, u in enumerate(ends):
        for v in ends[x:]:
            path = g.path(u, v)
            if all(p in s_lam for p in path) and all(interior_ok(p) for p in path[1:-1]):
                chains.append(Chain(path))
    return sorted(set(chains), key=lambda c: (c.ids[0], c.ids[-1], c.ids))


def check_contribution(pair: PairData, lam, chain) -> tuple:
    """(contributes, critical) for an exceptional chain, by intersection numbers.

    A single divisor E contributes iff ceil(K - lam F).E >= -E.E, and such a
    contribution is critical.  A longer chain G critically contributes iff
    ceil(K - lam F).E = -G.E for every E in G.
    """
    lam = as_rational(lam)
    chain = chain if isinstance(chain, Chain) else Chain(tuple(chain))
    g = pair.graph
    for e in chain:
        if not g.is_exceptional(e):
            raise ValueError(f"chain member {e!r} is not exceptional")
        if not is_candidate(pair, lam, e):
            raise errors.NotCandidate(f"{lam} is not a candidate jumping number for {e}")
    d = pair.rounded_up(lam)
    return _criterion(g, d, chain)


def _criterion(g, d, chain) -> tuple:
    if len(chain) == 1:
        e = chain.ids[0]
        ok = g.dot(d, e) >= -g.self_intersection(e)
        return ok, ok
    gvec = chain.divisor()
    ok = all(g.dot(d, e) == -g.dot(gvec, e) for e in chain)
    return ok, ok


@dataclass(frozen=True)
class Contributor:
    ids: tuple
    exceptional: bool = True
    critical: bool = True

    def to_json(self) -> dict:
        if self.exceptional:
            return {"chain": list(self.ids), "critical": self.critical}
        return {"divisor": self.ids[0], "critical": self.critical}

    def label(self) -> str:
        body = " + ".join(self.ids)
        return f"{body} (critical)" if self.critical else body


@dataclass(frozen=True)
class JumpingReport:
    """Jumping numbers in (0, 2] with contributors; the rest is periodic."""

    jumping_numbers: tuple
    contributors: Mapping = field(default_factory=dict)
    lct: Optional[Fraction] = None
    periodicity_base: tuple = ()

    def __contains__(self, lam) -> bool:
        lam = as_rational(lam)
        if lam <= CANDIDATE_BOUND:
            return lam in self.contributors
        return self.periodic_source(lam) is not None

    def periodic_source(self, lam) -> Optional[Fraction]:
        """The number in (1, 2] that ``lam`` > 2 is a translate of, if any."""
        lam = as_rational(lam)
        shift = math.ceil(lam - CANDIDATE_BOUND)
        base = lam - shift
        return base if base in self.periodicity_base else None

    def up_to(self, bound) -> list:
        """All jumping numbers in (0, bound], using periodicity above 2."""
        bound = as_rational(bound)
        out = [x for x in self.jumping_numbers if x <= bound]
        shift = 1
        while self.periodicity_base and self.periodicity_base[0] + shift <= bound:
            out.extend(x + shift for x in self.periodicity_base if x + shift <= bound)
            shift += 1
        return sorted(out)

    def to_json(self, bound=None) -> dict:
        items = []
        for lam in self.jumping_numbers:
            if bound is not None and lam > as_rational(bound):
                continue
            items.append({"value": format_rational(lam),
                          "contributors": [c.to_json() for c in self.contributors[lam]]})
        if bound is not None:
            for lam in self.up_to(bound):
                if lam > CANDIDATE_BOUND:
                    items.append({"value": format_rational(lam),
                                  "periodic_from": format_rational(self.periodic_source(lam))})
        return {
            "lct": None if self.lct is None else format_rational(self.lct),
            "jumping_numbers": items,
            "periodicity_base": [format_rational(x) for x in self.periodicity_base],
            "note": PERIODICITY_NOTE,
        }


def contributors_at(pair: PairData, lam, table: CandidateTable) -> list:
    """Every prime or chain contributor of ``lam`` found by the algorithm."""
    g = pair.graph
    s_lam = table.divisors_for(lam)
    found = [Contributor((c,), exceptional=False, critical=True)
             for c in sorted(s_lam) if not g.is_exceptional(c)]
    chains = chain_candidates(pair, lam, table)
    if chains:
        d = pair.rounded_up(lam)
        for chain in chains:
            _, critical = _criterion(g, d, chain)
            if critical:
                found.append(Contributor(chain.ids, exceptional=True, critical=True))
    return sorted(found, key=lambda c: c.ids)


def _audit(pair, lam, contributors, rees, relevant):
    for c in contributors:
        if not c.exceptional:
            continue
        chain = Chain(c.ids)
        if not chain.is_path_in(pair.graph):
            raise RuntimeError(f"reported contributor {c.ids} of {lam} is not a path")
        for e in chain.ends:
            if not _end_ok(pair, e, rees, relevant):
                raise RuntimeError(f"end {e} of reported chain {c.ids} fails the end condition")


def jumping_numbers(pair: PairData) -> JumpingReport:
    table = candidate_numbers(pair, CANDIDATE_BOUND)
    rees = rees_divisors(pair)
    relevant = pair.F.support() | pair.K.support()
    numbers, contributors = [], {}
    for lam, _ in table:
        found = contributors_at(pair, lam, table)
        if found:
            _audit(pair, lam, found, rees, relevant)
            numbers.append(lam)
            contributors[lam] = tuple(found)
    return JumpingReport(
        jumping_numbers=tuple(numbers),
        contributors=contributors,
        lct=numbers[0] if numbers else None,
        periodicity_base=tuple(x for x in numbers if x > 1),
    )


def log_canonical_threshold(pair: PairData) -> Optional[Fraction]:
    return jumping_numbers(pair).lct
