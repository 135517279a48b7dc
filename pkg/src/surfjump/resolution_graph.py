"""Dual graph of a log resolution and exact divisor arithmetic.

A resolution is described by its prime divisors (exceptional curves with a
self-intersection, plus strict transforms that carry none) and the pairs of
divisors that meet.  Every meeting is transverse at a single point, so the
intersection number of two distinct adjacent divisors is always 1.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import errors
from ._linalg import leading_minors


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise errors.BadDivisor(f"not a rational: {value!r}") from exc
    raise TypeError(f"expected int, Fraction or str, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class Divisor:
    """A Q-divisor: finitely many prime divisor ids with rational coefficients.

    Missing ids have coefficient 0, and zero coefficients are never stored,
    so equality and hashing only depend on the divisor itself.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Optional[Mapping[str, object]] = None):
        stored = {}
        for key, value in (coeffs or {}).items():
            q = as_rational(value)
            if q:
                stored[str(key)] = q
        self._coeffs = stored
        self._hash = None

    @classmethod
    def prime(cls, divisor_id: str, coeff=1) -> "Divisor":
        return cls({divisor_id: coeff})

    @classmethod
    def reduced(cls, ids: Iterable[str]) -> "Divisor":
        return cls({i: 1 for i in ids})

    def __getitem__(self, key: str) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def support(self) -> frozenset:
        return frozenset(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __add__(self, other: "Divisor") -> "Divisor":
        if not isinstance(other, Divisor):
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return Divisor(out)

    def __neg__(self) -> "Divisor":
        return Divisor({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        if not isinstance(other, Divisor):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "Divisor":
        if isinstance(scalar, (Divisor, float)):
            return NotImplemented
        s = as_rational(scalar)
        return Divisor({k: s * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def floor(self) -> "Divisor":
        return Divisor({k: math.floor(v) for k, v in self._coeffs.items()})

    def ceil(self) -> "Divisor":
        return Divisor({k: math.ceil(v) for k, v in self._coeffs.items()})

    def frac(self) -> "Divisor":
        return Divisor({k: v - math.floor(v) for k, v in self._coeffs.items()})

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._coeffs.values())

    def is_effective(self) -> bool:
        return all(v > 0 for v in self._coeffs.values())

    def restrict(self, ids: Iterable[str]) -> "Divisor":
        keep = set(ids)
        return Divisor({k: v for k, v in self._coeffs.items() if k in keep})

    def __le__(self, other: "Divisor") -> bool:
        """Componentwise comparison (a partial order)."""
        keys = set(self._coeffs) | set(other._coeffs)
        return all(self[k] <= other[k] for k in keys)

    def __ge__(self, other: "Divisor") -> bool:
        return other <= self

    def to_json(self, order: Optional[Iterable[str]] = None) -> dict:
        keys = list(order) if order is not None else sorted(self._coeffs)
        return {k: format_rational(self[k]) for k in keys if self[k]}

    def __repr__(self):
        if not self._coeffs:
            return "Divisor(0)"
        terms = " + ".join(
            (k if v == 1 else f"{v}*{k}") for k, v in sorted(self._coeffs.items())
        )
        return f"Divisor({terms})"


@dataclass(frozen=True)
class PrimeDivisor:
    id: str
    exceptional: bool
    self_intersection: Optional[int] = None


class ResolutionGraph:
    """Validated, immutable dual graph of a log resolution.

    Construction checks every structural invariant and raises the matching
    :class:`~surfjump.errors.ValidationError` subclass.
    """

    def __init__(self, divisors: Iterable[PrimeDivisor], edges: Iterable[Iterable[str]]):
        divisors = tuple(divisors)
        ids = [d.id for d in divisors]
        seen = set()
        for i in ids:
            if i in seen:
                raise errors.DuplicateId(f"divisor id {i!r} appears more than once")
            seen.add(i)
        for d in divisors:
            if d.exceptional:
                si = d.self_intersection
                if si is None:
                    raise errors.MissingSelfIntersection(
                        f"exceptional divisor {d.id!r} has no self-intersection"
                    )
                if isinstance(si, bool) or not isinstance(si, int):
                    raise errors.MissingSelfIntersection(
                        f"self-intersection of {d.id!r} must be an integer, got {si!r}"
                    )
        # strict transforms carry no self-intersection
        divisors = tuple(
            d if d.exceptional else PrimeDivisor(d.id, False, None) for d in divisors
        )

        edge_set = set()
        for e in edges:
            pair = tuple(e)
            if len(pair) == 3:
                if pair[2] != 1:
                    raise errors.BadEdge(
                        f"edge {pair[0]!r}-{pair[1]!r} has weight {pair[2]!r}; only 1 is allowed"
                    )
                pair = pair[:2]
            if len(pair) != 2:
                raise errors.BadEdge(f"edge {e!r} must name exactly two divisors")
            u, v = pair
            for x in (u, v):
                if x not in seen:
                    raise errors.BadEdge(f"edge {u!r}-{v!r} names unknown divisor {x!r}")
            if u == v:
                raise errors.BadEdge(f"self-loop at {u!r}")
            key = frozenset((u, v))
            if key in edge_set:
                raise errors.BadEdge(f"edge {u!r}-{v!r} listed twice")
            edge_set.add(key)

        self.divisors = divisors
        self.edges = frozenset(edge_set)
        self._by_id = {d.id: d for d in divisors}
        self.ids = tuple(ids)
        self.exceptional_ids = tuple(d.id for d in divisors if d.exceptional)
        self.curve_ids = tuple(d.id for d in divisors if not d.exceptional)
        nbrs = {i: [] for i in ids}
        for key in sorted(tuple(sorted(e)) for e in edge_set):
            u, v = key
            nbrs[u].append(v)
            nbrs[v].append(u)
        self._nbrs = {i: tuple(n) for i, n in nbrs.items()}
        self._exc_set = frozenset(self.exceptional_ids)
        self._validate_exceptional_tree()
        self._validate_negative_definite()
        self._parent, self._depth = self._root_tree()

    # validation

    def _validate_exceptional_tree(self):
        exc = self._exc_set
        if not exc:
            return
        exc_edges = [e for e in self.edges if e <= exc]
        parent = {i: i for i in exc}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in sorted(tuple(sorted(e)) for e in exc_edges):
            ru, rv = find(e[0]), find(e[1])
            if ru == rv:
                raise errors.ExceptionalCycle(
                    f"exceptional divisors contain a cycle through {e[0]!r}-{e[1]!r}"
                )
            parent[ru] = rv
        roots = {find(i) for i in exc}
        if len(roots) > 1:
            raise errors.ExceptionalDisconnected(
                f"exceptional locus has {len(roots)} connected components"
            )

    def _validate_negative_definite(self):
        m = self.exceptional_matrix()
        neg = [[-v for v in row] for row in m]
        for k, minor in enumerate(leading_minors(neg), start=1):
            if minor <= 0:
                raise errors.NotNegativeDefinite(
                    f"leading principal minor {k} of -M is {minor}, not positive"
                )

    def _root_tree(self):
        parent, depth = {}, {}
        if not self.exceptional_ids:
            return parent, depth
        root = self.exceptional_ids[0]
        parent[root] = None
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self._nbrs[u]:
                if v in self._exc_set and v not in depth:
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
        return parent, depth

    # queries

    def __contains__(self, divisor_id) -> bool:
        return divisor_id in self._by_id

    def divisor(self, divisor_id: str) -> PrimeDivisor:
        return self._by_id[divisor_id]

    def is_exceptional(self, divisor_id: str) -> bool:
        return divisor_id in self._exc_set

    def self_intersection(self, divisor_id: str) -> int:
        d = self._by_id[divisor_id]
        if not d.exceptional:
            raise errors.UndefinedSelfIntersection(
                f"{divisor_id!r} is not exceptional and carries no self-intersection"
            )
        return d.self_intersection

    def neighbors(self, divisor_id: str) -> tuple:
        return self._nbrs[divisor_id]

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def exceptional_matrix(self) -> list:
        idx = {e: k for k, e in enumerate(self.exceptional_ids)}
        n = len(idx)
        m = [[0] * n for _ in range(n)]
        for e, k in idx.items():
            m[k][k] = self._by_id[e].self_intersection
            for v in self._nbrs[e]:
                if v in idx:
                    m[k][idx[v]] = 1
        return m

    def path(self, u: str, v: str) -> tuple:
        """The unique path from ``u`` to ``v`` in the exceptional tree."""
        if u not in self._depth or v not in self._depth:
            raise KeyError(f"{u!r} and {v!r} must both be exceptional")
        left, right = [u], [v]
        a, b = u, v
        while self._depth[a] > self._depth[b]:
            a = self._parent[a]
            left.append(a)
        while self._depth[b] > self._depth[a]:
            b = self._parent[b]
            right.append(b)
        while a != b:
            a = self._parent[a]
            b = self._parent[b]
            left.append(a)
            right.append(b)
        right.pop()
        return tuple(left + right[::-1])

    def check_divisor(self, d: Divisor) -> Divisor:
        unknown = sorted(k for k in d if k not in self._by_id)
        if unknown:
            raise errors.BadDivisor(f"divisor mentions unknown ids {unknown}")
        return d

    def dot(self, d: Divisor, divisor_id: str) -> Fraction:
        """Intersection number of ``d`` with the prime divisor ``divisor_id``."""
        total = Fraction(0)
        c = d[divisor_id]
        if c:
            total += c * self.self_intersection(divisor_id)
        for v in self._nbrs[divisor_id]:
            cv = d[v]
            if cv:
                total += cv
        return total

    def intersect(self, d1: Divisor, d2: Divisor) -> Fraction:
        """Bilinear intersection pairing; exact."""
        self.check_divisor(d1)
        self.check_divisor(d2)
        return sum((c * self.dot(d2, k) for k, c in d1.items()), Fraction(0))

    # identity: graphs are values

    def _key(self):
        return (self.divisors, self.edges)

    def __eq__(self, other):
        if not isinstance(other, ResolutionGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"ResolutionGraph({len(self.exceptional_ids)} exceptional, "
            f"{len(self.curve_ids)} non-exceptional, {len(self.edges)} edges)"
        )

    def to_json(self) -> dict:
        divs = []
        for d in self.divisors:
            if d.exceptional:
                divs.append({"id": d.id, "exceptional": True,
                             "self_intersection": d.self_intersection})
            else:
                divs.append({"id": d.id, "exceptional": False})
        pos = {i: k for k, i in enumerate(self.ids)}
        edges = sorted((sorted(e, key=pos.get) for e in self.edges),
                       key=lambda e: (pos[e[0]], pos[e[1]]))
        return {"divisors": divs, "edges": [list(e) for e in edges]}


def build_graph(data: Mapping) -> ResolutionGraph:
    """Build a validated graph from the ``divisors``/``edges`` JSON layout."""
    try:
        raw_divs = data["divisors"]
    except (KeyError, TypeError) as exc:
        raise errors.BadDivisor("instance has no 'divisors' list") from exc
    divs = []
    for raw in raw_divs:
        if not isinstance(raw, Mapping) or "id" not in raw:
            raise errors.BadDivisor(f"divisor entry {raw!r} needs an 'id'")
        if not isinstance(raw.get("exceptional"), bool):
            raise errors.BadDivisor(f"divisor {raw['id']!r} needs a boolean 'exceptional'")
        exceptional = raw["exceptional"]
        divs.append(PrimeDivisor(str(raw["id"]), exceptional, raw.get("self_intersection")))
    return ResolutionGraph(divs, data.get("edges", []))
