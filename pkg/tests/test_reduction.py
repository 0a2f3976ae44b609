import random

import pytest

from named_graphs import complete, cube, cycle, k2, r8, r10

from cyclex.corpus import bisubdivide
from cyclex.decomposition import is_brick, petersen_graph
from cyclex.families import gen_wheel
from cyclex.graph import Graph
from cyclex.iso import is_isomorphic
from cyclex.matching import PreconditionError, is_matching_covered
from cyclex.reduction import (
    ReductionStep,
    _find_series_path,
    bicontract,
    bisplit,
    edge_classification,
    is_irreducible,
    parallel_reduce_once,
    retract,
    series_reduce_once,
    strictly_thin_edges,
    thin_edges,
    to_irreducible,
)


def random_reduction(g, rng):
    """Reduce in a random order: any parallel copy or any series path."""
    h = g
    while True:
        moves = []
        for e, (a, b) in h.edges():
            if h.multiplicity(a, b) > 1:
                moves.append(("p", e))
        for x in h.vertices:
            if h.degree(x) != 2:
                continue
            for exy in h.incident(x):
                y = h.other(exy, x)
                if h.degree(y) != 2:
                    continue
                (exw,) = [e for e in h.incident(x) if e != exy] or [None]
                (eyz,) = [e for e in h.incident(y) if e != exy] or [None]
                if exw is None or eyz is None:
                    continue
                w, z = h.other(exw, x), h.other(eyz, y)
                if len({w, x, y, z}) == 4:
                    moves.append(("s", (w, x, y, z)))
        if not moves:
            return h
        kind, arg = rng.choice(moves)
        h = parallel_reduce_once(h, arg) if kind == "p" else series_reduce_once(h, arg)


def test_c6_reduces_to_k2():
    h, trace = to_irreducible(cycle(6))
    assert trace.k2_degenerate
    assert (h.n, h.m) == (2, 1)
    # C6 -> C4 -> a digon -> K2
    assert [s.kind for s in trace.steps] == ["series", "series", "parallel"]


def test_trace_replays():
    g = bisubdivide(bisubdivide(cube(), 0), 5)
    h, trace = to_irreducible(g)
    assert trace.replay() == h
    assert [ReductionStep.from_json(s.to_json()) for s in trace.steps] == trace.steps
    assert is_irreducible(h)
    assert is_isomorphic(h, cube())


def test_irreducible_examples():
    assert is_irreducible(cube())
    assert is_irreducible(k2())
    assert not is_irreducible(cycle(4))
    assert not is_irreducible(Graph.from_edges(2, [(0, 1), (0, 1)]))


def test_confluence_up_to_isomorphism():
    rng = random.Random(12)
    bases = [cube(), complete(4), gen_wheel(5), r8(), cycle(4)]
    for _ in range(30):
        g = rng.choice(bases)
        for _ in range(rng.randint(1, 3)):
            g = bisubdivide(g, rng.choice(g.edge_ids()), rng.choice([2, 4]))
        g, _ = g.add_edge(*g.endpoints(rng.choice(g.edge_ids())))
        assert is_matching_covered(g)
        h, _ = to_irreducible(g)
        for _ in range(3):
            assert is_isomorphic(random_reduction(g, rng), h)


def test_series_preconditions():
    g = cube()
    with pytest.raises(PreconditionError):
        series_reduce_once(g, (0, 1, 2, 3))
    with pytest.raises(PreconditionError):
        parallel_reduce_once(g, 0)
    assert _find_series_path(g) is None


def test_bicontract_and_bisplit_are_inverse():
    g = gen_wheel(5)
    hub = 5
    inc = sorted(g.incident(hub))
    h = bisplit(g, hub, inc[:2], inc[2:])
    assert h.n == g.n + 2
    v0 = max(h.vertices)
    assert h.degree(v0) == 2
    back = bicontract(h, v0)
    assert is_isomorphic(back, g)
    with pytest.raises(PreconditionError):
        bicontract(g, hub)
    with pytest.raises(PreconditionError):
        bisplit(g, 0, [0], [1, 2])


def test_bicontract_refuses_adjacent_neighbours():
    with pytest.raises(PreconditionError):
        bicontract(Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)]), 1)


def test_petersen_edges():
    p = petersen_graph()
    assert thin_edges(p) == []
    for r in edge_classification(p):
        assert not r["thin"]
        assert not is_brick(r["retract"])


def test_r8_and_r10():
    (c,) = edge_classification(r8())
    assert c["thin"] and not c["strictly_thin"]
    assert is_isomorphic(c["retract"].underlying_simple(), complete(4))
    assert (c["retract"].n, c["retract"].m) == (4, 7)
    st = strictly_thin_edges(r10())
    assert len(st) == 3
    for e in st:
        assert is_isomorphic(retract(r10().delete_edges([e])), gen_wheel(5))


def test_edge_classification_needs_a_simple_brick():
    with pytest.raises(PreconditionError):
        edge_classification(cube())
