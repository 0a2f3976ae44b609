"""Perfect matchings, conformality, the brute-force cycle-extendability oracle,
and removable edges, doubletons and ears."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import kernels
from .graph import CapExceeded, Graph, GraphError, check_cap

DEFAULT_CYCLE_CAP = 10**6


class PreconditionError(GraphError):
    """The input does not satisfy the operation's stated precondition."""


# witnesses ---------------------------------------------------------------

@dataclass(frozen=True)
class CycleWitness:
    """A cycle as a closed vertex sequence; ``edges[i]`` joins ``vertices[i]`` and the next vertex."""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_even(self) -> bool:
        return self.length % 2 == 0

    @property
    def parity(self) -> str:
        return "even" if self.is_even else "odd"

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)

    def validate(self, g: Graph) -> None:
        L = len(self.vertices)
        if L < 2 or len(self.edges) != L:
            raise GraphError("cycle must have at least two vertices and one edge per vertex")
        if len(set(self.vertices)) != L or len(set(self.edges)) != L:
            raise GraphError("cycle repeats a vertex or an edge")
        for i, e in enumerate(self.edges):
            a, b = self.vertices[i], self.vertices[(i + 1) % L]
            if set(g.endpoints(e)) != {a, b}:
                raise GraphError(f"edge {e} does not join {a} and {b}")

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges), "parity": self.parity}

    @classmethod
    def from_json(cls, obj: dict) -> "CycleWitness":
        return cls(tuple(obj["vertices"]), tuple(obj["edges"]))


@dataclass(frozen=True)
class PerfectMatchingSet:
    matchings: Tuple[FrozenSet[int], ...]
    fingerprint: str

    def __len__(self) -> int:
        return len(self.matchings)

    def __iter__(self) -> Iterator[FrozenSet[int]]:
        return iter(self.matchings)

    def check(self, g: Graph) -> None:
        if g.fingerprint() != self.fingerprint:
            raise GraphError("perfect matching set was computed for a different graph")


@dataclass(frozen=True)
class OracleVerdict:
    ce: bool
    witness: Optional[CycleWitness] = None

    @property
    def verdict(self) -> str:
        return "CE" if self.ce else "NotCE"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness.to_json() if self.witness else None}


# perfect matchings -------------------------------------------------------

def _pair_edges(g: Graph, pairs: Iterable[Tuple[int, int]]) -> List[List[int]]:
    verts = g.vertices
    return [sorted(g.edges_between(verts[a], verts[b])) for a, b in pairs]


def enumerate_perfect_matchings(g: Graph) -> PerfectMatchingSet:
    """Every perfect matching, as edge-id sets (parallel edges give distinct matchings)."""
    check_cap(g, "perfect matching enumeration")
    out = []
    for pm in kernels.perfect_matchings(g.adjacency_masks(), g.full_mask()):
        for choice in itertools.product(*_pair_edges(g, pm)):
            out.append(frozenset(choice))
    out.sort(key=sorted)
    return PerfectMatchingSet(tuple(out), g.fingerprint())


def find_perfect_matching(g: Graph, avoid: Iterable[int] = ()) -> Optional[FrozenSet[int]]:
    """Some perfect matching of ``g - avoid`` (avoid = vertices), as edge ids."""
    mask = g.full_mask() & ~g.mask_of(avoid)
    pm = kernels.find_perfect_matching(g.adjacency_masks(), mask)
    if pm is None:
        return None
    return frozenset(es[0] for es in _pair_edges(g, pm))


def is_matchable(g: Graph) -> bool:
    return kernels.has_perfect_matching(g.adjacency_masks(), g.full_mask())


def is_matching_covered(g: Graph) -> bool:
    """Connected, at least two vertices, every edge in some perfect matching."""
    if g.n < 2:
        return False
    check_cap(g, "matching covered test", cap=64)
    return kernels.matching_covered(g.adjacency_masks(), g.full_mask())


def is_conformal_subgraph(g: Graph, h: Iterable[int]) -> bool:
    """True iff ``g - h`` is matchable (``h`` is a vertex set)."""
    hs = set(h)
    for v in hs:
        if not g.has_vertex(v):
            raise GraphError(f"no vertex {v}")
    return kernels.has_perfect_matching(g.adjacency_masks(), g.full_mask() & ~g.mask_of(hs))


def require_matching_covered(g: Graph) -> None:
    if not is_matching_covered(g):
        raise PreconditionError("input graph is not matching covered")


# cycles ------------------------------------------------------------------

def simple_cycle_tuples(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> List[Tuple[int, ...]]:
    """Cycles (length >= 3) of the underlying simple graph as rotation-minimal vertex tuples."""
    check_cap(g, "cycle enumeration", cap=64)
    raw = kernels.simple_cycles(g.adjacency_masks(), cap)
    if raw is None:
        raise CapExceeded(f"more than {cap} cycles")
    verts = g.vertices
    return [tuple(verts[i] for i in c) for c in raw]


def _cycle_key(vs: Tuple[int, ...], es: Tuple[int, ...]):
    return (tuple(sorted(vs)), vs, es)


def _two_cycles(g: Graph) -> List[CycleWitness]:
    out = []
    seen = set()
    for _, (a, b) in g.edges():
        if (a, b) in seen:
            continue
        seen.add((a, b))
        par = sorted(g.edges_between(a, b))
        for e1, e2 in itertools.combinations(par, 2):
            out.append(CycleWitness((a, b), (e1, e2)))
    return out


def _expand(g: Graph, vs: Tuple[int, ...]) -> Iterator[CycleWitness]:
    L = len(vs)
    choices = [sorted(g.edges_between(vs[i], vs[(i + 1) % L])) for i in range(L)]
    for es in itertools.product(*choices):
        yield CycleWitness(vs, es)


def enumerate_cycles(g: Graph, parity: Optional[str] = None, cap: int = DEFAULT_CYCLE_CAP) -> List[CycleWitness]:
    """All cycles (2-cycles from parallel edges included), in deterministic order.

    Order: sorted vertex tuple, then the rotation-minimal vertex sequence,
    then edge ids.  ``parity`` may be "even" or "odd".
    """
    if parity not in (None, "even", "odd"):
        raise ValueError("parity must be 'even', 'odd' or None")
    out: List[CycleWitness] = []
    if parity != "odd":
        out.extend(_two_cycles(g))
    for vs in simple_cycle_tuples(g, cap):
        if parity == "even" and len(vs) % 2:
            continue
        if parity == "odd" and len(vs) % 2 == 0:
            continue
        for c in _expand(g, vs):
            out.append(c)
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} cycles")
    out.sort(key=lambda c: _cycle_key(c.vertices, c.edges))
    return out


def enumerate_even_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> List[CycleWitness]:
    return enumerate_cycles(g, "even", cap)


def _nonconformal_simple(g: Graph, cap: int) -> Tuple[List[Tuple[int, ...]], int]:
    """Non-conformal even cycles of the underlying simple graph and the total even count."""
    adj = g.adjacency_masks()
    full = g.full_mask()
    _, pos = g.index()
    memo: Dict[int, bool] = {}
    bad = []
    total = 0
    for vs in simple_cycle_tuples(g, cap):
        if len(vs) % 2:
            continue
        total += 1
        m = 0
        for v in vs:
            m |= 1 << pos[v]
        ok = memo.get(m)
        if ok is None:
            ok = kernels.has_perfect_matching(adj, full & ~m)
            memo[m] = ok
        if not ok:
            bad.append(vs)
    return bad, total


def brute_force_cycle_extendable(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> OracleVerdict:
    """CE iff every even cycle is conformal; otherwise the first non-conformal one."""
    check_cap(g, "oracle")
    require_matching_covered(g)
    bad: List[CycleWitness] = []
    for c in _two_cycles(g):
        if not is_conformal_subgraph(g, c.vertices):
            bad.append(c)
    simple_bad, _ = _nonconformal_simple(g, cap)
    for vs in simple_bad:
        L = len(vs)
        es = tuple(min(g.edges_between(vs[i], vs[(i + 1) % L])) for i in range(L))
        bad.append(CycleWitness(vs, es))
    if not bad:
        return OracleVerdict(True)
    return OracleVerdict(False, min(bad, key=lambda c: _cycle_key(c.vertices, c.edges)))


def nonconformal_even_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> List[CycleWitness]:
    """Every non-conformal even cycle, parallel edges giving distinct cycles."""
    check_cap(g, "oracle")
    require_matching_covered(g)
    out = [c for c in _two_cycles(g) if not is_conformal_subgraph(g, c.vertices)]
    simple_bad, _ = _nonconformal_simple(g, cap)
    for vs in simple_bad:
        out.extend(_expand(g, vs))
    out.sort(key=lambda c: _cycle_key(c.vertices, c.edges))
    return out


def count_nonconformal_even_cycles(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> int:
    check_cap(g, "oracle")
    require_matching_covered(g)
    count = sum(1 for c in _two_cycles(g) if not is_conformal_subgraph(g, c.vertices))
    simple_bad, _ = _nonconformal_simple(g, cap)
    for vs in simple_bad:
        L = len(vs)
        k = 1
        for i in range(L):
            k *= g.multiplicity(vs[i], vs[(i + 1) % L])
        count += k
    return count


def conformal_cycle_through(g: Graph, e: int, f: int, cap: int = DEFAULT_CYCLE_CAP) -> CycleWitness:
    """A conformal cycle containing edges ``e`` and ``f`` (first in cycle order)."""
    if e == f:
        raise PreconditionError("the two edges must be distinct")
    require_matching_covered(g)
    ue, uf = g.endpoints(e), g.endpoints(f)
    if ue == uf:
        a, b = ue
        return CycleWitness((a, b), tuple(sorted((e, f))))
    for c in enumerate_even_cycles(g, cap):
        if c.length < 3 or not is_conformal_subgraph(g, c.vertices):
            continue
        L = c.length
        pairs = [frozenset((c.vertices[i], c.vertices[(i + 1) % L])) for i in range(L)]
        if frozenset(ue) in pairs and frozenset(uf) in pairs:
            es = list(c.edges)
            es[pairs.index(frozenset(ue))] = e
            es[pairs.index(frozenset(uf))] = f
            return CycleWitness(c.vertices, tuple(es))
    raise GraphError("internal: no conformal cycle through two edges of a matching covered graph")


# removable edges, doubletons and ears ------------------------------------

def _adj_without(g: Graph, eids: Iterable[int]) -> List[int]:
    """Simple adjacency masks after deleting the given edge ids."""
    adj = g.adjacency_masks()
    _, pos = g.index()
    drop: Dict[Tuple[int, int], int] = {}
    for e in eids:
        uv = g.endpoints(e)
        drop[uv] = drop.get(uv, 0) + 1
    for (a, b), k in drop.items():
        if g.multiplicity(a, b) <= k:
            i, j = pos[a], pos[b]
            adj[i] &= ~(1 << j)
            adj[j] &= ~(1 << i)
    return adj


def _mc_after(g: Graph, eids: Iterable[int] = (), drop_vertices: Iterable[int] = ()) -> bool:
    adj = _adj_without(g, eids)
    mask = g.full_mask() & ~g.mask_of(drop_vertices)
    return kernels.matching_covered(adj, mask)


def removable_edges(g: Graph) -> List[int]:
    """Edges ``e`` with ``g - e`` matching covered."""
    require_matching_covered(g)
    return [e for e in g.edge_ids() if _mc_after(g, [e])]


def removable_doubletons(g: Graph) -> List[Tuple[int, int]]:
    """Pairs of non-removable edges whose joint deletion keeps ``g`` matching covered."""
    require_matching_covered(g)
    rem = set(removable_edges(g))
    cand = [e for e in g.edge_ids() if e not in rem]
    return [(a, b) for a, b in itertools.combinations(cand, 2) if _mc_after(g, [a, b])]


@dataclass(frozen=True)
class Ear:
    """A path ``vertices[0] .. vertices[-1]``; ``edges[i]`` joins positions i and i+1."""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def ends(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


def degree_two_paths(g: Graph, odd_only: bool = True) -> List[Ear]:
    """Every path whose internal vertices have degree two in ``g``."""
    seen = set()
    out = []
    for s in g.vertices:
        for e0 in g.incident(s):
            verts = [s]
            edges: List[int] = []
            e = e0
            while True:
                v = g.other(e, verts[-1])
                if v in verts:
                    break
                verts.append(v)
                edges.append(e)
                if not odd_only or len(edges) % 2:
                    key = frozenset(edges)
                    if key not in seen:
                        seen.add(key)
                        if verts[0] > verts[-1]:
                            out.append(Ear(tuple(reversed(verts)), tuple(reversed(edges))))
                        else:
                            out.append(Ear(tuple(verts), tuple(edges)))
                if g.degree(v) != 2:
                    break
                nxt = [x for x in g.incident(v) if x != e]
                e = nxt[0]
    out.sort(key=lambda p: (p.length, p.vertices, p.edges))
    return out


def _remove_ears(g: Graph, ears: Sequence[Ear]) -> Tuple[List[int], int]:
    eids = [e for p in ears for e in p.edges]
    inner = [v for p in ears for v in p.interior]
    return _adj_without(g, eids), g.full_mask() & ~g.mask_of(inner)


def delete_ears(g: Graph, ears: Sequence[Ear]) -> Graph:
    """``G - P1 - ...``: delete the ears' edges and internal vertices."""
    h = g.delete_edges(e for p in ears for e in p.edges)
    return h.delete_vertices(v for p in ears for v in p.interior)


def removable_single_ears(g: Graph) -> List[Ear]:
    require_matching_covered(g)
    out = []
    for p in degree_two_paths(g):
        adj, mask = _remove_ears(g, [p])
        if kernels.matching_covered(adj, mask):
            out.append(p)
    return out


def removable_double_ears(g: Graph) -> List[Tuple[Ear, Ear]]:
    """Vertex-disjoint odd ear pairs, neither removable alone, whose joint removal keeps ``g`` matching covered."""
    require_matching_covered(g)
    cand = []
    for p in degree_two_paths(g):
        adj, mask = _remove_ears(g, [p])
        if not kernels.matching_covered(adj, mask):
            cand.append(p)
    out = []
    for p1, p2 in itertools.combinations(cand, 2):
        if set(p1.vertices) & set(p2.vertices):
            continue
        adj, mask = _remove_ears(g, [p1, p2])
        if kernels.matching_covered(adj, mask):
            out.append((p1, p2))
    return out


def is_near_bipartite(g: Graph) -> Tuple[bool, Optional[Tuple[Ear, Ear]]]:
    """Whether some removable double ear leaves a bipartite graph, with that ear."""
    if g.is_bipartite():
        return False, None
    for r in removable_double_ears(g):
        if delete_ears(g, r).is_bipartite():
            return True, r
    return False, None
