"""K2,3 bisubdivisions, mixed and osculating bicycles, and v-isolating cycles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .graph import Graph, GraphError, check_cap
from .matching import DEFAULT_CYCLE_CAP, CycleWitness, PreconditionError, enumerate_cycles, simple_cycle_tuples
from .reduction import bicontract


@dataclass(frozen=True)
class K23Witness:
    u: int
    v: int
    paths: Tuple[Tuple[int, ...], ...]  # three u..v vertex lists

    def validate(self, g: Graph) -> None:
        if len(self.paths) != 3:
            raise GraphError("need three paths")
        inner = set()
        for p in self.paths:
            if p[0] != self.u or p[-1] != self.v:
                raise GraphError("path does not join the branch vertices")
            if (len(p) - 1) % 2 or len(p) < 3:
                raise GraphError("paths must have even length at least two")
            if len(set(p)) != len(p):
                raise GraphError("path repeats a vertex")
            for a, b in zip(p, p[1:]):
                if not g.multiplicity(a, b):
                    raise GraphError(f"{a} and {b} are not adjacent")
            mid = set(p[1:-1])
            if mid & inner:
                raise GraphError("paths are not internally disjoint")
            inner |= mid

    def edges(self, g: Graph) -> List[int]:
        return [min(g.edges_between(a, b)) for p in self.paths for a, b in zip(p, p[1:])]

    def to_json(self) -> dict:
        return {"u": self.u, "v": self.v, "paths": [list(p) for p in self.paths]}


@dataclass(frozen=True)
class BicycleWitness:
    first: CycleWitness
    second: CycleWitness
    kind: str  # "mixed", "odd-osculating" or "even-osculating"

    def validate(self, g: Graph) -> None:
        self.first.validate(g)
        self.second.validate(g)
        common = self.first.vertex_set & self.second.vertex_set
        if self.kind == "mixed":
            if common:
                raise GraphError("mixed bicycle cycles must be vertex-disjoint")
            if self.first.is_even or not self.second.is_even or self.second.length < 4:
                raise GraphError("mixed bicycle needs an odd cycle and an even cycle of length four or more")
        else:
            if len(common) != 1:
                raise GraphError("osculating cycles must share exactly one vertex")
            want = self.kind.split("-")[0]
            if self.first.parity != want or self.second.parity != want:
                raise GraphError("osculating cycles have the wrong parity")

    def to_json(self) -> dict:
        return {"kind": self.kind, "cycles": [self.first.to_json(), self.second.to_json()]}


def _witness_from_tuple(g: Graph, vs: Sequence[int]) -> CycleWitness:
    L = len(vs)
    return CycleWitness(tuple(vs), tuple(min(g.edges_between(vs[i], vs[(i + 1) % L])) for i in range(L)))


def cycle_from_edges(g: Graph, eids: Iterable[int]) -> CycleWitness:
    """Normalise an edge set that forms one cycle (start at the smallest vertex, smaller neighbour next)."""
    es = list(eids)
    inc = {}
    for e in es:
        for v in g.endpoints(e):
            inc.setdefault(v, []).append(e)
    if any(len(x) != 2 for x in inc.values()):
        raise GraphError("edge set is not a cycle")
    s = min(inc)
    e0, e1 = sorted(inc[s], key=lambda e: (g.other(e, s), e))
    verts = [s]
    edges = [e0]
    cur, prev = g.other(e0, s), e0
    while cur != s:
        verts.append(cur)
        nxt = inc[cur][0] if inc[cur][1] == prev else inc[cur][1]
        edges.append(nxt)
        prev = nxt
        cur = g.other(nxt, cur)
    if len(edges) != len(es):
        raise GraphError("edge set is not a single cycle")
    return CycleWitness(tuple(verts), tuple(edges))


# K2,3 ---------------------------------------------------------------------

def find_k23_bisubdivision(g: Graph) -> Optional[K23Witness]:
    """Branch vertices ``u < v`` and three internally disjoint even ``u-v`` paths, if any."""
    check_cap(g, "K2,3 search")
    verts, pos = g.index()
    adj = g.adjacency_masks()
    n = len(verts)
    for u, v in itertools.combinations(range(n), 2):
        if (adj[u] & ~(1 << v)).bit_count() < 3 or (adj[v] & ~(1 << u)).bit_count() < 3:
            continue
        found = _three_even_paths(adj, u, v)
        if found is not None:
            return K23Witness(verts[u], verts[v], tuple(tuple(verts[i] for i in p) for p in found))
    return None


def _three_even_paths(adj: List[int], u: int, v: int) -> Optional[List[List[int]]]:
    chosen: List[List[int]] = []

    def paths_from(blocked: int, min_second: int):
        # even u..v paths of length >= 2 with interior outside ``blocked``
        path = [u]

        def rec(x: int, used: int):
            nb = adj[x] & ~used
            while nb:
                low = nb & -nb
                nb ^= low
                w = low.bit_length() - 1
                if len(path) == 1 and w <= min_second:
                    continue
                if w == v:
                    if len(path) >= 2 and len(path) % 2 == 0:
                        yield path + [v]
                    continue
                path.append(w)
                yield from rec(w, used | low)
                path.pop()

        yield from rec(u, blocked | (1 << u))

    def search(blocked: int, min_second: int) -> bool:
        if len(chosen) == 3:
            return True
        for p in paths_from(blocked, min_second):
            inner = 0
            for x in p[1:-1]:
                inner |= 1 << x
            chosen.append(p)
            if search(blocked | inner, p[1]):
                return True
            chosen.pop()
        return False

    return [list(p) for p in chosen] if search(0, -1) else None


def is_k23_based(g: Graph) -> bool:
    return find_k23_bisubdivision(g) is not None


# mixed bicycles ------------------------------------------------------------

def find_mixed_bicycle(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> Optional[BicycleWitness]:
    """A vertex-disjoint odd cycle and even cycle of length >= 4, if any."""
    check_cap(g, "mixed bicycle search")
    cycles = sorted(simple_cycle_tuples(g, cap), key=lambda c: (tuple(sorted(c)), c))
    odd, even = {}, {}
    for c in cycles:
        m = g.mask_of(c)
        (odd if len(c) % 2 else even).setdefault(m, c)
    for mo, co in sorted(odd.items(), key=lambda t: (tuple(sorted(t[1])), t[1])):
        best = None
        for me, ce in even.items():
            if mo & me == 0 and (best is None or (tuple(sorted(ce)), ce) < (tuple(sorted(best)), best)):
                best = ce
        if best is not None:
            return BicycleWitness(_witness_from_tuple(g, co), _witness_from_tuple(g, best), "mixed")
    return None


# osculating bicycles -------------------------------------------------------

def find_osculating_bicycle(
    g: Graph,
    at: int,
    parity: str,
    required_first: Iterable[int] = (),
    required_second: Iterable[int] = (),
    cap: int = DEFAULT_CYCLE_CAP,
) -> Optional[BicycleWitness]:
    """Two cycles of the given parity meeting exactly at ``at``, each containing its required edges."""
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    if not g.has_vertex(at):
        raise GraphError(f"no vertex {at}")
    check_cap(g, "osculating bicycle search")
    r1, r2 = set(required_first), set(required_second)
    through = [c for c in enumerate_cycles(g, parity, cap) if at in c.vertex_set]
    first = [c for c in through if r1 <= c.edge_set]
    second = [c for c in through if r2 <= c.edge_set]
    by_mask = {}
    for c in second:
        by_mask.setdefault(g.mask_of(c.vertices), c)
    atm = g.mask_of([at])
    for c1 in first:
        m1 = g.mask_of(c1.vertices)
        for m2, c2 in by_mask.items():
            if m1 & m2 == atm:
                return BicycleWitness(c1, c2, f"{parity}-osculating")
    return None


def is_v_isolating(g: Graph, c: CycleWitness, v: int) -> bool:
    """All neighbours of ``v`` lie on ``c`` (``v`` itself must be off the cycle)."""
    if v in c.vertex_set:
        raise PreconditionError("the vertex lies on the cycle")
    return set(g.neighbors(v)) <= c.vertex_set


def check_osculating_transfer(g: Graph, x0: int, cap: int = DEFAULT_CYCLE_CAP) -> Optional[CycleWitness]:
    """Lift an osculating bicycle of ``G/x0`` whose cycles both cross ``x0``'s two sides.

    Returns the ``x0``-isolating even cycle ``Q ∪ Q'`` of ``G``, or None.
    """
    if g.degree(x0) != 2:
        raise PreconditionError(f"vertex {x0} does not have degree two")
    e1, e2 = g.incident(x0)
    x1, x2 = g.other(e1, x0), g.other(e2, x0)
    if x1 == x2:
        raise PreconditionError("the two neighbours of the vertex coincide")
    jp = bicontract(g, x0)
    x = min(x1, x2)
    side1 = set(g.incident(x1)) - {e1}
    side2 = set(g.incident(x2)) - {e2}
    split = []
    for c in enumerate_cycles(jp, None, cap):
        if x not in c.vertex_set:
            continue
        at_x = [e for e in c.edges if x in jp.endpoints(e)]
        if len(at_x) == 2 and len(side1 & set(at_x)) == 1 and len(side2 & set(at_x)) == 1:
            split.append(c)
    xm = jp.mask_of([x])
    for i, q in enumerate(split):
        mq = jp.mask_of(q.vertices)
        for q2 in split[i + 1:]:
            if q.parity == q2.parity and mq & jp.mask_of(q2.vertices) == xm:
                cyc = cycle_from_edges(g, q.edges + q2.edges)
                if not cyc.is_even or not is_v_isolating(g, cyc, x0):
                    raise GraphError("internal: lifted osculating bicycle is not an x0-isolating even cycle")
                return cyc
    return None
