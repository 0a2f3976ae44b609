import itertools
import random

import networkx as nx
import pytest

from named_graphs import complete, cube, cycle, k2, k33, r8

from cyclex.decomposition import petersen_graph
from cyclex.families import gen_prism, gen_wheel
from cyclex.graph import Graph
from cyclex.matching import (
    PreconditionError,
    brute_force_cycle_extendable,
    conformal_cycle_through,
    count_nonconformal_even_cycles,
    degree_two_paths,
    delete_ears,
    enumerate_cycles,
    enumerate_perfect_matchings,
    find_perfect_matching,
    is_conformal_subgraph,
    is_matching_covered,
    is_near_bipartite,
    nonconformal_even_cycles,
    removable_double_ears,
    removable_doubletons,
    removable_edges,
    removable_single_ears,
)


# independent slow references -------------------------------------------------

def slow_pms(g):
    out = []
    for es in itertools.combinations(g.edge_ids(), g.n // 2):
        ends = [v for e in es for v in g.endpoints(e)]
        if len(set(ends)) == g.n:
            out.append(frozenset(es))
    return sorted(out, key=sorted) if g.n % 2 == 0 else []


def slow_matchable(g, drop):
    return bool(slow_pms(g.delete_vertices(drop))) or g.n == len(set(drop))


def slow_ce(g):
    h = nx.Graph()
    h.add_edges_from(uv for _, uv in g.edges())
    for c in nx.simple_cycles(h):
        if len(c) % 2 == 0 and not slow_matchable(g, c):
            return False
    return True


def random_mcg(rng, n):
    while True:
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.45]
        g = Graph.from_edges(n, pairs)
        if g.is_connected() and is_matching_covered(g):
            return g


# perfect matchings ----------------------------------------------------------------

@pytest.mark.parametrize("g,count", [(k2(), 1), (cycle(4), 2), (complete(4), 3), (cube(), 9),
                                     (petersen_graph(), 6), (k33(), 6)])
def test_pm_counts(g, count):
    pms = enumerate_perfect_matchings(g)
    assert len(pms) == count
    assert list(pms) == slow_pms(g)
    pms.check(g)


def test_pm_parallel_edges_are_distinct():
    g = Graph.from_edges(2, [(0, 1), (0, 1)])
    assert len(enumerate_perfect_matchings(g)) == 2


def test_random_pm_agreement():
    rng = random.Random(4)
    for _ in range(30):
        g = Graph.from_edges(8, [(a, b) for a in range(8) for b in range(a + 1, 8) if rng.random() < 0.4])
        assert list(enumerate_perfect_matchings(g)) == slow_pms(g)
        pm = find_perfect_matching(g)
        assert (pm is not None) == bool(slow_pms(g))


# matching covered and conformal ----------------------------------------------

def test_matching_covered_examples():
    assert is_matching_covered(k2())
    assert is_matching_covered(cube())
    assert not is_matching_covered(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))  # middle edge unmatched
    assert not is_matching_covered(Graph.from_edges(1, []))
    assert not is_matching_covered(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_conformal():
    g = cube()
    assert is_conformal_subgraph(g, [0, 1, 2, 3])
    assert is_conformal_subgraph(g, [0, 1])
    assert not is_conformal_subgraph(g, [0, 1, 2, 6, 7, 4])  # leaves 3 and 5, not adjacent


# oracle ------------------------------------------------------------------------

@pytest.mark.parametrize("g,ce", [(k2(), True), (cycle(4), True), (complete(4), True), (gen_wheel(5), True),
                                  (gen_prism(3), True), (cube(), False), (petersen_graph(), False),
                                  (k33(), True), (r8(), False)])
def test_oracle_examples(g, ce):
    v = brute_force_cycle_extendable(g)
    assert v.ce is ce
    assert v.ce == slow_ce(g)
    if not ce:
        v.witness.validate(g)
        assert v.witness.is_even
        assert not is_conformal_subgraph(g, v.witness.vertices)


def test_oracle_matches_slow_reference_on_random_graphs():
    rng = random.Random(8)
    for _ in range(40):
        g = random_mcg(rng, rng.choice([4, 6, 8]))
        assert brute_force_cycle_extendable(g).ce == slow_ce(g)


def test_oracle_requires_matching_covered():
    with pytest.raises(PreconditionError):
        brute_force_cycle_extendable(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))


def test_two_cycles_are_conformal():
    # every edge of a matching covered graph is in a perfect matching, so a parallel pair never obstructs
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 2)])
    two = [c for c in enumerate_cycles(g, "even") if c.length == 2]
    assert len(two) == 1
    assert is_conformal_subgraph(g, two[0].vertices)
    assert count_nonconformal_even_cycles(g) == len(nonconformal_even_cycles(g)) == 0


def test_cube_census():
    bad = nonconformal_even_cycles(cube())
    assert [c.length for c in bad] == [6, 6, 6, 6]
    assert count_nonconformal_even_cycles(cube()) == 4


def test_enumerate_cycles_counts():
    assert len(enumerate_cycles(complete(4))) == 7
    assert len(enumerate_cycles(complete(4), "even")) == 3
    g = Graph.from_edges(3, [(0, 1), (0, 1), (1, 2), (2, 0)])
    assert len(enumerate_cycles(g)) == 3  # one 2-cycle and two triangles


def test_conformal_cycle_through_two_edges():
    g = cube()
    for e, f in itertools.combinations(g.edge_ids(), 2):
        c = conformal_cycle_through(g, e, f)
        c.validate(g)
        assert {e, f} <= c.edge_set
        assert is_conformal_subgraph(g, c.vertices)


# removable edges and ears -------------------------------------------------------

def test_removable_edges():
    assert removable_edges(cube()) == cube().edge_ids()
    assert removable_edges(petersen_graph()) == petersen_graph().edge_ids()
    assert removable_edges(complete(4)) == []
    assert len(removable_edges(r8())) == 1


def test_k4_doubletons():
    # in K4 every pair of disjoint edges is a removable doubleton
    assert len(removable_doubletons(complete(4))) == 3


def test_ears_of_the_prism():
    g = gen_prism(3)
    assert removable_single_ears(g) == []
    double = removable_double_ears(g)
    assert double
    for p1, p2 in double:
        h = delete_ears(g, (p1, p2))
        assert is_matching_covered(h)
    ok, r = is_near_bipartite(g)
    assert ok and delete_ears(g, r).is_bipartite()


def test_degree_two_paths_on_a_subdivided_edge():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 2)])
    lengths = sorted(p.length for p in degree_two_paths(g))
    assert 3 in lengths  # the path 0-4-5-2
