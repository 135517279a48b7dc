"""Brute-force jumping numbers straight from the definition.

The multiplier ideal at lambda is pi_* O(-floor(lambda F - K)).  Its
complete-ideal divisor is the antinef closure of floor(lambda F - K), and
complete ideals correspond one-to-one with antinef divisors, so two
multiplier ideals agree exactly when their closures agree.  A candidate c
is a jump when the closure at c differs from the closure just below c;
"just below" is the midpoint to the previous candidate, since the floor is
constant between consecutive candidates.

Nothing here looks at chains or at the contribution criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .jumping import CANDIDATE_BOUND, PairData, candidate_numbers, chain_candidates, \
    check_contribution, jumping_numbers
from .numerics import antinef_closure
from .resolution_graph import Divisor, as_rational, format_rational


def multiplier_divisor(pair: PairData, lam) -> Divisor:
    """Antinef divisor of the multiplier ideal of ``pair`` at ``lam``."""
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    return antinef_closure(pair.graph, (lam * pair.F - pair.K).floor())


def _probe_points(pair, bound):
    values = candidate_numbers(pair, bound).values()
    prev = Fraction(0)
    for c in values:
        yield c, (prev + c) / 2
        prev = c


def oracle_jumping_numbers(pair: PairData, bound=CANDIDATE_BOUND) -> list:
    bound = as_rational(bound)
    out = []
    for c, below in _probe_points(pair, bound):
        if multiplier_divisor(pair, c) != multiplier_divisor(pair, below):
            out.append(c)
    return out


def periodicity_holds(pair: PairData, oracle_set=None) -> bool:
    """Oracle set on (2, 3] equals the (1, 2] part shifted by one."""
    js = oracle_set if oracle_set is not None else oracle_jumping_numbers(pair, 3)
    upper = [x for x in js if 2 < x <= 3]
    shifted = [x + 1 for x in js if 1 < x <= 2]
    return upper == shifted


@dataclass
class CrosscheckReport:
    agree: bool
    engine: list
    oracle: list
    mismatches: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "AGREE" if self.agree else "DISAGREE"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "engine": [format_rational(x) for x in self.engine],
            "oracle": [format_rational(x) for x in self.oracle],
            "mismatches": self.mismatches,
        }


def crosscheck(pair: PairData) -> CrosscheckReport:
    """Compare the chain-based engine with the oracle on (0, 2]."""
    engine = list(jumping_numbers(pair).jumping_numbers)
    oracle = oracle_jumping_numbers(pair, CANDIDATE_BOUND)
    mismatches = []
    if engine != oracle:
        table = candidate_numbers(pair, CANDIDATE_BOUND)
        below = dict((c, b) for c, b in _probe_points(pair, CANDIDATE_BOUND))
        for lam in sorted(set(engine) ^ set(oracle)):
            chains = chain_candidates(pair, lam, table)
            mismatches.append({
                "lambda": format_rational(lam),
                "engine": lam in engine,
                "oracle": lam in oracle,
                "divisor_at": multiplier_divisor(pair, lam).to_json(pair.graph.ids),
                "divisor_below": multiplier_divisor(pair, below[lam]).to_json(pair.graph.ids),
                "candidate_for": sorted(table.divisors_for(lam)),
                "chains": [
                    {"chain": list(ch.ids), "critical": check_contribution(pair, lam, ch)[1]}
                    for ch in chains
                ],
            })
    return CrosscheckReport(engine == oracle, engine, oracle, mismatches)
