from fractions import Fraction

import pytest

from surfjump import errors
from surfjump.generators import cyclic_quotient, duval, duval_graph, random_instance
from surfjump.jumping import (Chain, Contributor, candidate_numbers, chain_candidates,
                              check_contribution, is_candidate, jumping_numbers,
                              log_canonical_threshold, make_pair, rees_divisors)
from surfjump.numerics import is_antinef
from surfjump.resolution_graph import Divisor, PrimeDivisor, ResolutionGraph

F = Fraction


def labels(report, lam):
    return [c.ids for c in report.contributors[F(lam)]]


class TestPair:
    def test_rejects_bad_f(self):
        g = duval_graph("A", 2)
        with pytest.raises(errors.InvalidPair):
            make_pair(g, Divisor())
        with pytest.raises(errors.InvalidPair):
            make_pair(g, Divisor({"E1": -1}))
        with pytest.raises(errors.InvalidPair):
            make_pair(g, Divisor({"E1": F(1, 2), "E2": 1}))
        with pytest.raises(errors.InvalidPair):
            make_pair(g, Divisor({"E1": 1}))

    def test_force_allows_non_antinef(self, caplog):
        g = duval_graph("A", 2)
        p = make_pair(g, Divisor({"E1": 1}), force=True)
        assert p.forced
        assert "antinef" in caplog.text
        assert rees_divisors(p) == {"E1"}

    def test_bad_k(self):
        g = duval_graph("A", 2)
        with pytest.raises(errors.InvalidPair):
            make_pair(g, Divisor.reduced(g.exceptional_ids), Divisor({"E1": 1}))


class TestCandidates:
    def test_thirteen_five_e1_e6(self, curves):
        p = curves["x13_y5"]
        t = candidate_numbers(p)
        assert [x for x in t.values() if "E1" in t.divisors_for(x)] == \
            [F(1 + m, 5) for m in range(1, 10)]
        assert [x for x in t.values() if "E6" in t.divisors_for(x)] == \
            [F(17 + m, 65) for m in range(1, 114)]

    def test_reduced_curve_component(self, curves):
        t = candidate_numbers(curves["two_cusps"])
        assert {"C1", "C2"} <= t.divisors_for(F(1)) and {"C1", "C2"} <= t.divisors_for(F(2))

    def test_rational_k(self):
        p = cyclic_quotient(5, 2)
        assert is_candidate(p, F(3, 5), "E1") and not is_candidate(p, F(4, 5), "E1")
        assert candidate_numbers(p).values() == [F(3, 5), F(4, 5), F(8, 5), F(9, 5)]


class TestRees:
    def test_curves(self, curves):
        for p in curves.values():
            assert rees_divisors(p) == set(p.graph.curve_ids)
            assert all(p.graph.dot(p.F, e) == 0 for e in p.graph.exceptional_ids)

    def test_duval(self):
        assert rees_divisors(duval("E6")) == {"E6"}
        for n in range(4, 9):
            assert rees_divisors(duval("D", n)) == {"E2"}


class TestChains:
    def test_no_long_chain_below_one(self, curves):
        p = curves["cusp_pair"]
        t = candidate_numbers(p)
        for lam in t.values():
            if lam < 1:
                assert all(len(c) == 1 for c in chain_candidates(p, lam, t))

    def test_parabola_cusp_half(self, curves):
        p = curves["parabola_cusp"]
        assert Chain(("E2", "E4")) in chain_candidates(p, F(1, 2))
        assert check_contribution(p, F(1, 2), ("E2", "E4")) == (True, True)

    def test_two_cusps(self, curves):
        p = curves["two_cusps"]
        chains = chain_candidates(p, F(9, 10))
        assert Chain(("E2",)) in chains and Chain(("E2'",)) in chains
        assert check_contribution(p, F(9, 10), ("E2",)) == (True, True)
        assert check_contribution(p, F(1, 2), ("E0", "E2", "E2'")) == (True, True)

    def test_orientation(self):
        assert Chain(("E3", "E2", "E1")).ids == ("E1", "E2", "E3")

    def test_not_candidate(self, curves):
        with pytest.raises(errors.NotCandidate):
            check_contribution(curves["two_cusps"], F(1, 3), ("E0",))


class TestReport:
    def test_thirteen_five(self, curves):
        r = jumping_numbers(curves["x13_y5"])
        expected = sorted({F(13 * (r_ + 1) + 5 * (s + 1), 65)
                           for r_ in range(5) for s in range(13)
                           if 13 * (r_ + 1) + 5 * (s + 1) < 65})
        assert [x for x in r.jumping_numbers if x < 1] == expected
        assert 1 in r and r.lct == F(18, 65)
        for lam in expected:
            assert labels(r, lam) == [("E6",)]

    def test_two_cusps(self, curves):
        r = jumping_numbers(curves["two_cusps"])
        assert r.lct == F(1, 2)
        assert labels(r, "1/2") == [("E2", "E0", "E2'")]
        assert labels(r, "9/10") == [("E2",), ("E2'",)]
        assert all(c.critical for c in r.contributors[F(9, 10)])

    def test_d4(self):
        r = jumping_numbers(duval("D", 4))
        assert list(r.jumping_numbers) == [F(1, 2), F(3, 2), F(2)]
        assert labels(r, "1/2") == [("E2",)]

    def test_cyclic_five_two(self):
        r = jumping_numbers(cyclic_quotient(5, 2))
        assert list(r.jumping_numbers) == [F(3, 5), F(8, 5), F(9, 5)]
        assert log_canonical_threshold(cyclic_quotient(5, 2)) == F(3, 5)

    def test_lct_values(self, curves):
        assert log_canonical_threshold(curves["x13_y5"]) == F(18, 65)
        assert log_canonical_threshold(duval("E8")) == F(1, 6)

    def test_periodicity_view(self):
        r = jumping_numbers(duval("E8"))
        assert r.periodicity_base == (F(7, 6), F(3, 2), F(2))
        assert F(13, 6) in r and F(19, 6) in r
        assert F(7, 3) not in r
        assert r.up_to(3) == [F(1, 6), F(7, 6), F(3, 2), F(2), F(13, 6), F(5, 2), F(3)]

    def test_json_shape(self, curves):
        js = jumping_numbers(curves["x13_y5"]).to_json(1)
        assert js["lct"] == "18/65"
        assert js["jumping_numbers"][0] == {"value": "18/65",
                                            "contributors": [{"chain": ["E6"], "critical": True}]}
        assert js["note"] == "λ>2 jumping iff λ−1 jumping"
        assert js["jumping_numbers"][-1]["contributors"] == [{"divisor": "C", "critical": True}]

    @pytest.mark.parametrize("seed", range(40))
    def test_report_invariants(self, seed):
        p = random_instance(seed)
        r = jumping_numbers(p)
        t = candidate_numbers(p)
        assert r.lct == min(r.jumping_numbers)
        for lam in r.jumping_numbers:
            assert lam in t and r.contributors[lam]
            for c in r.contributors[lam]:
                assert Chain(c.ids).is_path_in(p.graph) or not c.exceptional
        if p.graph.curve_ids:
            assert 1 in r and 2 in r

    def test_contributor_label(self):
        assert Contributor(("E2", "E4")).label() == "E2 + E4 (critical)"
        assert Contributor(("C",), exceptional=False).to_json() == {"divisor": "C",
                                                                     "critical": True}


def test_smooth_point_maximal_ideal():
    g = ResolutionGraph([PrimeDivisor("E1", True, -1)], [])
    r = jumping_numbers(make_pair(g, Divisor.prime("E1")))
    assert list(r.jumping_numbers) == [F(2)]
    assert is_antinef(g, Divisor.prime("E1"))
