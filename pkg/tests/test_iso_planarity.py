import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from named_graphs import complete, cube, k33

from cyclex.decomposition import petersen_graph
from cyclex.graph import Graph, GraphError
from cyclex.iso import canonical_code, canonical_relabel, find_isomorphism, is_isomorphic
from cyclex.planarity import (
    NotPlanar,
    check_embedding,
    compute_embedding,
    is_planar,
    kuratowski_witness,
)


def to_nx(g):
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(uv for _, uv in g.edges())
    return h


def random_multigraph(rng, n, p, extra=0):
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    for _ in range(extra):
        if pairs:
            pairs.append(rng.choice(pairs))
    return Graph.from_edges(n, pairs)


def relabel(g, perm):
    return Graph.from_edges(g.n, [(perm[a], perm[b]) for _, (a, b) in g.edges()])


# isomorphism -----------------------------------------------------------------

def test_iso_agrees_with_networkx():
    rng = random.Random(5)
    for _ in range(150):
        g = random_multigraph(rng, 7, 0.45, extra=rng.randint(0, 2))
        h = random_multigraph(rng, 7, 0.45, extra=rng.randint(0, 2))
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_iso_mapping_is_an_isomorphism():
    rng = random.Random(9)
    for _ in range(40):
        g = random_multigraph(rng, 9, 0.4, extra=2)
        perm = list(range(9))
        rng.shuffle(perm)
        h = relabel(g, perm)
        f = find_isomorphism(g, h)
        assert f is not None
        for _, (a, b) in g.edges():
            assert g.multiplicity(a, b) == h.multiplicity(f[a], f[b])


def test_parallel_edges_matter():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    h = Graph.from_edges(3, [(0, 1), (1, 2), (1, 2)])
    assert not is_isomorphic(g, h)
    assert canonical_code(g) == canonical_code(h)  # codes ignore multiplicity


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_canonical_code_is_invariant(seed):
    rng = random.Random(seed)
    g = random_multigraph(rng, 8, 0.5)
    perm = list(range(8))
    rng.shuffle(perm)
    h = relabel(g, perm)
    assert canonical_code(g) == canonical_code(h)
    assert canonical_relabel(g).edges() == canonical_relabel(h).edges()


def test_petersen_is_not_the_moebius_ladder():
    # same degree sequence and order, different graphs
    assert not is_isomorphic(petersen_graph(), Graph.from_edges(10, [(i, (i + 1) % 10) for i in range(10)]
                                                                 + [(i, i + 5) for i in range(5)]))


# planarity -------------------------------------------------------------------

def test_planarity_agrees_with_networkx():
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randint(1, 10)
        g = random_multigraph(rng, n, rng.uniform(0.2, 0.8), extra=rng.randint(0, 2))
        want, _ = nx.check_planarity(nx.Graph(to_nx(g)))
        assert is_planar(g) == want


def test_embeddings_are_genus_zero():
    rng = random.Random(2)
    done = 0
    while done < 60:
        g = random_multigraph(rng, rng.randint(2, 10), 0.4, extra=rng.randint(0, 2))
        if not g.is_connected() or not is_planar(g):
            continue
        emb = compute_embedding(g)
        check_embedding(g, emb)
        done += 1


def test_cube_faces():
    emb = compute_embedding(cube())
    assert sorted(emb.face_lengths()) == [4] * 6
    assert emb.f_odd == 0


@pytest.mark.parametrize("g,kind", [(complete(5), "K5"), (k33(), "K3,3"), (petersen_graph(), None)])
def test_kuratowski_witness(g, kind):
    assert not is_planar(g)
    w = kuratowski_witness(g)
    if kind is not None:
        assert w.kind == kind
    sub = Graph(g.vertices, [(e, g.endpoints(e)) for e in w.edges])
    assert not is_planar(sub)
    for e in w.edges:  # edge-minimal
        assert is_planar(sub.delete_edges([e]))
    with pytest.raises(NotPlanar) as exc:
        compute_embedding(g)
    assert exc.value.witness.kind in ("K5", "K3,3")


def test_embedding_needs_connected_graph():
    with pytest.raises(GraphError):
        compute_embedding(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(GraphError):
        kuratowski_witness(cube())
