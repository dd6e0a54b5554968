from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import graph, naive_opt
from kecss.bicriteria import run_algorithm1
from kecss.instances import generate
from kecss.state import InfeasibleInstance, Ledger
from kecss.verify import (InstanceTooLarge, brute_force_opt, certify, lp_by_enumeration,
                          parse_certificate, sandwich_check)

K4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def test_brute_force_examples():
    assert brute_force_opt(graph(2, [(1, 2)] * 3), 2)[1] == 2
    assert brute_force_opt(graph(4, K4), 2)[1] == 4
    assert brute_force_opt(graph(4, [(1, 2), (2, 3), (3, 4)]), 2) is None


def test_brute_force_guard():
    with pytest.raises(InstanceTooLarge):
        brute_force_opt(graph(2, [(1, 2)] * 21), 2)


@st.composite
def tiny(draw):
    n = draw(st.integers(2, 5))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=9))
    costs = draw(st.lists(st.integers(0, 7), min_size=len(edges), max_size=len(edges)))
    return graph(n, edges, costs), draw(st.integers(1, 4))


@settings(max_examples=150, deadline=None)
@given(tiny())
def test_brute_force_matches_plain_enumeration(data):
    g, k = data
    got = brute_force_opt(g, k)
    want = naive_opt(g, k)
    assert (got is None) == (want is None)
    if got is not None:
        assert got[1] == want
        assert sum(g.cost(e) for e in got[0]) == want


@settings(max_examples=60, deadline=None)
@given(tiny())
def test_brute_force_monotone_in_k(data):
    g, k = data
    hi = brute_force_opt(g, k + 1)
    if hi is not None:
        assert brute_force_opt(g, k)[1] <= hi[1]


def test_lp_enumeration_examples():
    assert lp_by_enumeration(graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)]), 2) == 4
    assert lp_by_enumeration(graph(2, [(1, 2)] * 5), 3) == 3
    with pytest.raises(InfeasibleInstance):
        lp_by_enumeration(graph(3, [(1, 2)]), 1)
    with pytest.raises(InfeasibleInstance):
        lp_by_enumeration(graph(2, [(1, 2)]), 2)
    with pytest.raises(InstanceTooLarge):
        lp_by_enumeration(graph(13, [(i, i + 1) for i in range(1, 13)]), 1)


def test_certify_valid_run():
    g = graph(4, K4 + [(1, 2)], [1, 2, 3, 4, 5, 6, 1])
    sol, cert = run_algorithm1(g, 3)
    fresh = certify(sol.edges, g, 3, "bicriteria1", sol.lp0)
    assert fresh.valid and fresh.cost == cert.cost and fresh.mincut == cert.mincut


def test_certify_catches_removed_edge():
    g = graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    cert = certify([1, 2, 3, 4], g, 2, "ecsm", 4)
    assert cert.valid
    broken = certify([1, 2, 3], g, 2, "ecsm", 4)
    assert broken.mincut == 1 and not broken.connectivity_ok and not broken.valid


def test_certify_empty_solution_k_zero():
    cert = certify([], graph(3, [(1, 2), (2, 3)]), 0, "bicriteria1", 0)
    assert cert.valid and cert.mincut == 0


def test_certify_records_ledger_failures():
    led = Ledger()
    led.check("something", 1, False, "detail")
    cert = certify([1], graph(2, [(1, 2)]), 1, "bicriteria1", 1, ledger=led)
    assert cert.cost_ok and cert.connectivity_ok and not cert.valid
    text = cert.dumps()
    assert "status=INVALID" in text and "  something 1 FAIL detail" in text


def test_certify_rejects_foreign_edge():
    with pytest.raises(ValueError):
        certify([9], graph(2, [(1, 2)]), 1, "bicriteria1", 1)


def test_certificate_round_trip():
    g = graph(2, [(1, 2)] * 3)
    _, cert = run_algorithm1(g, 2)
    head = parse_certificate(cert.dumps())
    assert head["status"] == "VALID"
    assert head["lp0"] == "2" and head["mincut"] == "2"
    assert head["instance_digest"].startswith("sha256:")


def test_sandwich_examples():
    g = graph(2, [(1, 2)] * 8)
    rep = sandwich_check(g, 6, 6)
    assert rep == {"feasible": True, "ok": True, "lower": 2, "upper": 6}
    assert sandwich_check(graph(4, K4), 5, 0)["feasible"] is False
    rep = sandwich_check(graph(4, K4), 3, 6)
    assert rep["lower"] is None and rep["ok"]


def test_sandwich_on_generated():
    inst = generate("multi-cycle", 1, n=4, k=5, dup=3, c_max=20)
    g = inst.graph()
    sol, _ = run_algorithm1(g, 5)
    rep = sandwich_check(g, 5, sol.cost)
    assert rep["ok"] and rep["lower"] <= sol.cost <= rep["upper"]
    assert Fraction(rep["lower"]) == naive_opt(g, 1)
