from fractions import Fraction
from itertools import product

import pytest

from helpers import all_sides, crossing, graph
from kecss.cutting_plane import cutting_plane_extreme_point
from kecss.ecsm import replicate, solve_ecsm
from kecss.state import InfeasibleInstance, SolverState
from kecss.verify import InstanceTooLarge, brute_force_ecsm


def multiset_mincut(g, mult):
    return min(sum(mult.get(e, 0) for e in crossing(g, s)) for s in all_sides(g.nodes))


def test_single_edge_meets_bound_with_equality():
    g = graph(2, [(1, 2)])
    sol, cert = solve_ecsm(g, 2)
    assert sol.multiplicity == {1: 6}
    assert sol.cost == 6
    opt = brute_force_ecsm(g, 2)[1]
    assert opt == 2
    assert sol.cost == (1 + Fraction(4, 2)) * opt
    assert cert.valid and cert.mincut == 6


def test_triangle():
    g = graph(3, [(1, 2), (2, 3), (1, 3)])
    sol, cert = solve_ecsm(g, 2)
    assert multiset_mincut(g, sol.multiplicity) >= 2
    assert brute_force_ecsm(g, 2)[1] == 3
    assert sol.cost <= 3 * 3
    assert cert.valid


def test_single_node_is_empty():
    sol, cert = solve_ecsm(graph(1, []), 3)
    assert sol.multiplicity == {} and sol.cost == 0 and cert.valid


def test_disconnected_is_infeasible():
    with pytest.raises(InfeasibleInstance):
        solve_ecsm(graph(3, [(1, 2)]), 1)


def test_brute_force_examples():
    assert brute_force_ecsm(graph(2, [(1, 2)]), 3) == ({1: 3}, 3)
    path = graph(3, [(1, 2), (2, 3)], costs=[2, 5])
    assert brute_force_ecsm(path, 2) == ({1: 2, 2: 2}, 14)


def test_brute_force_guard():
    with pytest.raises(InstanceTooLarge):
        brute_force_ecsm(graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)]), 2)


def tiny_instances():
    shapes = [
        (2, [(1, 2)]), (2, [(1, 2), (1, 2)]), (3, [(1, 2), (2, 3)]),
        (3, [(1, 2), (2, 3), (1, 3)]), (4, [(1, 2), (2, 3), (3, 4)]),
        (4, [(1, 2), (2, 3), (3, 4), (4, 1)]), (4, [(1, 2), (1, 3), (1, 4), (2, 3)]),
    ]
    out = []
    for n, edges in shapes:
        for costs in product([1, 3], repeat=len(edges)):
            if len(set(costs)) > 1 or costs[0] == 1:
                out.append((n, edges, list(costs)))
    return out


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("n,edges,costs", tiny_instances())
def test_ratio_on_tiny_instances(n, edges, costs, k):
    g = graph(n, edges, costs)
    sol, cert = solve_ecsm(g, k)
    opt = brute_force_ecsm(g, k)[1]
    assert sol.cost <= (1 + Fraction(4, k)) * opt
    assert multiset_mincut(g, sol.multiplicity) >= k
    assert cert.connectivity_ok and cert.cost_ok


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lp_scaling_soundness(k):
    g0 = graph(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)], costs=[1, 2, 3, 1, 2])
    g, _ = replicate(g0, k + 4)
    lp_big = cutting_plane_extreme_point(SolverState.initial(g, k + 4)).objective
    lp_small = cutting_plane_extreme_point(SolverState.initial(g, k)).objective
    assert lp_big <= Fraction(k + 4, k) * lp_small
