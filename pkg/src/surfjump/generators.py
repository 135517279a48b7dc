"""Instance factories.

* Du Val (ADE) graphs with F the fundamental cycle.
* Cyclic quotient chains from the Hirzebruch-Jung expansion of n/k, and the
  closed-form jumping numbers of their maximal ideal.
* A point blow-up builder for curves and ideals on a smooth surface.
* Seeded random instances for cross-checking.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import errors
from .jumping import PairData, make_pair
from .numerics import antinef_closure, dual_basis, fundamental_cycle
from .resolution_graph import Divisor, PrimeDivisor, ResolutionGraph, as_rational


# Du Val

def _dynkin(kind: str, n: Optional[int]):
    kind = kind.upper()
    if kind in ("E6", "E7", "E8"):
        rank = int(kind[1])
        if n is not None and n != rank:
            raise errors.BadRank(f"{kind} has rank {rank}, not {n}")
        kind, n = "E", rank
    if n is None:
        raise errors.BadRank(f"type {kind} needs a rank")
    if kind == "A":
        if n < 1:
            raise errors.BadRank("A_n needs n >= 1")
        edges = [(i, i + 1) for i in range(1, n)]
    elif kind == "D":
        if n < 4:
            raise errors.BadRank("D_n needs n >= 4")
        # E1 - E2 - ... - E(n-2), with E(n-1) and En both on E(n-2)
        edges = [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    elif kind == "E":
        if n not in (6, 7, 8):
            raise errors.BadRank(f"E_n needs n in 6, 7, 8, got {n}")
        # a chain E1..E(n-1) with En hanging off E3
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
    else:
        raise errors.BadRank(f"unknown Dynkin type {kind!r}")
    return n, edges


def duval_graph(kind: str, n: Optional[int] = None) -> ResolutionGraph:
    n, edges = _dynkin(kind, n)
    divs = [PrimeDivisor(f"E{i}", True, -2) for i in range(1, n + 1)]
    return ResolutionGraph(divs, [(f"E{u}", f"E{v}") for u, v in edges])


def duval(kind: str, n: Optional[int] = None) -> PairData:
    """Maximal ideal of a Du Val singularity: all -2 curves, F = Z, K = 0."""
    g = duval_graph(kind, n)
    return make_pair(g, fundamental_cycle(g))


# cyclic quotients

@dataclass(frozen=True)
class HJExpansion:
    n: int
    k: int
    entries: tuple

    def value(self) -> Fraction:
        """Evaluate a_1 - 1/(a_2 - 1/(... - 1/a_m)) exactly."""
        acc = Fraction(self.entries[-1])
        for a in reversed(self.entries[:-1]):
            acc = a - 1 / acc
        return acc


def _check_nk(n, k):
    if not (isinstance(n, int) and isinstance(k, int)) or not 0 < k < n:
        raise errors.BadRange(f"need 0 < k < n, got n={n}, k={k}")
    if math.gcd(n, k) != 1:
        raise errors.NotCoprime(f"gcd({n}, {k}) = {math.gcd(n, k)}")


def hj_expansion(n: int, k: int) -> HJExpansion:
    _check_nk(n, k)
    entries = []
    p, q = n, k
    while q:
        a = -(-p // q)
        entries.append(a)
        p, q = q, a * q - p
    return HJExpansion(n, k, tuple(entries))


def cyclic_quotient(n: int, k: int) -> PairData:
    """Maximal ideal of the cyclic quotient singularity of type (n, k)."""
    entries = hj_expansion(n, k).entries
    m = len(entries)
    divs = [PrimeDivisor(f"E{i}", True, -a) for i, a in enumerate(entries, start=1)]
    g = ResolutionGraph(divs, [(f"E{i}", f"E{i + 1}") for i in range(1, m)])
    return make_pair(g, Divisor.reduced(g.exceptional_ids))


def j_sequence(n: int, k: int) -> list:
    """j_1..j_m from j_0 = 1, j_1 = (k+1)/n, j_{i+1} = a_i j_i - j_{i-1}."""
    a = hj_expansion(n, k).entries
    js = [Fraction(1), Fraction(k + 1, n)]
    for i in range(1, len(a)):
        js.append(a[i - 1] * js[i] - js[i - 1])
    return js[1:]


def cyclic_jn_closed_form(n: int, k: int, bound=2) -> list:
    """Closed-form jumping numbers of the maximal ideal, truncated to (0, bound]."""
    bound = as_rational(bound)
    a = hj_expansion(n, k).entries
    js = j_sequence(n, k)
    m = len(a)
    rees = {1, m} | {i for i in range(1, m + 1) if a[i - 1] >= 3}
    out = {min(js)}
    for i in rees:
        t = 1
        while js[i - 1] + t <= bound:
            out.add(js[i - 1] + t)
            t += 1
    return sorted(x for x in out if 0 < x <= bound)


# blow-ups

@dataclass(frozen=True)
class BlowupStep:
    center: tuple = ()
    curve_mult: int = 0
    id: Optional[str] = None


@dataclass(frozen=True)
class Branch:
    id: str
    last_step: int
    mult: int = 1


@dataclass(frozen=True)
class BlowupSequence:
    """Point blow-ups over a smooth surface point.

    Step k (1-based) creates E_k, or the step's own ``id``.  Its center is
    empty for the first blow-up, one divisor for a free point, or two
    currently adjacent divisors for a satellite point.  ``curve_mult`` is the
    multiplicity of the curve's strict transform at the center.  A branch
    meets the divisor created by its ``last_step`` and enters F with
    coefficient ``mult``.  ``ideal`` adds sum d_i Ê_i to F.
    """

    steps: tuple
    branches: tuple = ()
    ideal: Mapping = field(default_factory=dict)

    @classmethod
    def from_json(cls, obj: Mapping) -> "BlowupSequence":
        steps = tuple(
            BlowupStep(tuple(s.get("center", ())), int(s.get("curve_mult", 0)), s.get("id"))
            for s in obj["steps"]
        )
        branches = tuple(
            Branch(str(b["id"]), int(b["last_step"]), int(b.get("mult", 1)))
            for b in obj.get("branches", ())
        )
        return cls(steps, branches, dict(obj.get("ideal", {})))

    def to_json(self) -> dict:
        steps = []
        for s in self.steps:
            d = {"center": list(s.center), "curve_mult": s.curve_mult}
            if s.id is not None:
                d["id"] = s.id
            steps.append(d)
        out = {"steps": steps,
               "branches": [{"id": b.id, "last_step": b.last_step, "mult": b.mult}
                            for b in self.branches]}
        if self.ideal:
            out["ideal"] = dict(self.ideal)
        return out


def blowup_graph(seq: BlowupSequence):
    """Run the incidence bookkeeping; returns (graph, F from curve data, K)."""
    si, order, edges = {}, [], set()
    F, K = {}, {}
    for k, step in enumerate(seq.steps, start=1):
        name = step.id if step.id is not None else f"E{k}"
        center = tuple(step.center)
        if name in si:
            raise errors.DuplicateId(f"step {k} reuses divisor id {name!r}")
        if k == 1 and center:
            raise errors.InvalidCenter("the first blow-up is centered at the origin (empty center)")
        if k > 1 and len(center) not in (1, 2):
            raise errors.InvalidCenter(
                f"step {k}: center must name one or two earlier divisors, got {list(center)}"
            )
        for c in center:
            if c not in si:
                raise errors.InvalidCenter(f"step {k}: unknown center divisor {c!r}")
        if len(center) == 2:
            u, v = center
            if u == v or frozenset(center) not in edges:
                raise errors.InvalidCenter(f"step {k}: {u!r} and {v!r} do not meet")
            edges.discard(frozenset(center))
        if step.curve_mult < 0:
            raise errors.InvalidCenter(f"step {k}: negative curve multiplicity")
        for c in center:
            si[c] -= 1
            edges.add(frozenset((name, c)))
        si[name] = -1
        order.append(name)
        K[name] = 1 + sum(K[c] for c in center)
        F[name] = step.curve_mult + sum(F[c] for c in center)

    divs = [PrimeDivisor(e, True, si[e]) for e in order]
    for b in seq.branches:
        if not 1 <= b.last_step <= len(order):
            raise errors.InvalidCenter(f"branch {b.id!r}: no step {b.last_step}")
        if b.mult < 1:
            raise errors.InvalidCenter(f"branch {b.id!r}: multiplicity must be positive")
        divs.append(PrimeDivisor(b.id, False))
        edges.add(frozenset((b.id, order[b.last_step - 1])))
        F[b.id] = b.mult
    pos = {d.id: i for i, d in enumerate(divs)}
    edge_list = sorted((tuple(sorted(e, key=lambda x: pos.get(x, -1))) for e in edges),
                       key=lambda e: (pos.get(e[0], -1), pos.get(e[1], -1)))
    graph = ResolutionGraph(divs, edge_list)
    F = Divisor(F)
    if seq.ideal:
        F = F + ideal_divisor(graph, seq.ideal)
    return graph, F, Divisor(K)


def ideal_divisor(graph: ResolutionGraph, exponents: Mapping) -> Divisor:
    """sum d_i Ê_i for nonnegative integer exponents d_i."""
    basis = dict(zip(graph.exceptional_ids, dual_basis(graph)))
    out = Divisor()
    for e, d in exponents.items():
        if e not in basis:
            raise errors.BadDivisor(f"{e!r} is not an exceptional divisor")
        d = int(d)
        if d < 0:
            raise errors.BadDivisor(f"exponent of {e!r} is negative")
        out = out + d * basis[e]
    return out


def blowup_build(seq: BlowupSequence, *, force: bool = False) -> PairData:
    graph, F, K = blowup_graph(seq)
    return make_pair(graph, F, K, force=force)


def curve_sequences() -> dict:
    """Blow-up sequences for four plane curve germs, keyed by equation."""
    S = BlowupStep
    return {
        "x^13-y^5": BlowupSequence(
            (S((), 5), S(("E1",), 5), S(("E2",), 3), S(("E2", "E3"), 2),
             S(("E3", "E4"), 1), S(("E4", "E5"), 1)),
            (Branch("C", 6, 1),),
        ),
        "(x^3-y^2)(x^2-y^3)": BlowupSequence(
            (S((), 4, "E0"), S(("E0",), 1, "E1"), S(("E0", "E1"), 1, "E2"),
             S(("E0",), 1, "E1'"), S(("E0", "E1'"), 1, "E2'")),
            (Branch("C1", 3, 1), Branch("C2", 5, 1)),
        ),
        "(y-x^2)(y^2-x^5)": BlowupSequence(
            (S((), 3), S(("E1",), 3), S(("E2",), 1), S(("E2", "E3"), 1)),
            (Branch("C1", 2, 1), Branch("C2", 4, 1)),
        ),
        "(y^2-x^5)(y^2-x^3)": BlowupSequence(
            (S((), 4), S(("E1",), 3), S(("E1", "E2"), 1), S(("E2",), 1),
             S(("E2", "E4"), 1)),
            (Branch("C1", 3, 1), Branch("C2", 5, 1)),
        ),
    }


# random instances

DEFAULT_PARAMS = {
    "max_steps": 6,
    "max_exponent": 2,
    "curves": True,
    "kinds": ("blowup", "blowup", "blowup", "duval", "cyclic"),
    "max_cyclic_n": 20,
}


def random_blowups(rng: random.Random, n_steps: int) -> BlowupSequence:
    steps = [BlowupStep(())]
    names = ["E1"]
    edges = set()
    for k in range(2, n_steps + 1):
        if edges and rng.random() < 0.5:
            center = tuple(sorted(rng.choice(sorted(edges))))
            edges.discard(frozenset(center))
        else:
            center = (rng.choice(names),)
        name = f"E{k}"
        for c in center:
            edges.add(frozenset((name, c)))
        steps.append(BlowupStep(center))
        names.append(name)
    return BlowupSequence(tuple(steps))


def _random_closure(rng, graph, max_coeff):
    while True:
        raw = Divisor({e: rng.randint(0, max_coeff) for e in graph.exceptional_ids})
        if raw:
            return antinef_closure(graph, raw)


def random_instance(seed, params: Optional[Mapping] = None) -> PairData:
    """A valid pair, fully determined by ``seed``."""
    p = dict(DEFAULT_PARAMS)
    p.update(params or {})
    rng = random.Random(seed)
    kind = rng.choice(tuple(p["kinds"]))

    if kind == "duval":
        t = rng.choice(["A", "D", "E6", "E7", "E8"])
        n = rng.randint(1, 6) if t == "A" else rng.randint(4, 8) if t == "D" else None
        g = duval_graph(t, n)
        F = fundamental_cycle(g) if rng.random() < 0.4 else _random_closure(rng, g, 2)
        return make_pair(g, F)

    if kind == "cyclic":
        while True:
            n = rng.randint(2, p["max_cyclic_n"])
            k = rng.randint(1, n - 1)
            if math.gcd(n, k) == 1:
                break
        g = cyclic_quotient(n, k).graph
        F = Divisor.reduced(g.exceptional_ids) if rng.random() < 0.4 \
            else _random_closure(rng, g, 2)
        return make_pair(g, F)

    n_steps = rng.randint(1, p["max_steps"])
    seq = random_blowups(rng, n_steps)
    ids = [f"E{k}" for k in range(1, n_steps + 1)]
    exps = {}
    while not exps:
        exps = {e: rng.randint(1, p["max_exponent"]) for e in ids if rng.random() < 0.4}
    branches = []
    if p["curves"] and rng.random() < 0.4:
        for j in range(rng.randint(1, 2)):
            branches.append(Branch(f"C{j + 1}", rng.randint(1, n_steps), rng.randint(1, 2)))
    seq = BlowupSequence(seq.steps, tuple(branches))
    graph, _, K = blowup_graph(seq)
    F = ideal_divisor(graph, exps)
    for b in branches:
        # total transform of a curvette meeting E_j transversally: C + Ê_j
        F = F + b.mult * (Divisor.prime(b.id) + ideal_divisor(graph, {ids[b.last_step - 1]: 1}))
    return make_pair(graph, F, K)
