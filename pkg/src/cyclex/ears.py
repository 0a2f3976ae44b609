"""Ear decompositions of matching covered graphs.

The decomposition is defined by search order: at every step the single ears
of the current subgraph are tried by increasing length (then by vertex and
edge ids), and a double ear is used only when no single ear yields a
matching covered subgraph that is conformal in the whole graph.  Double ears
are tried by increasing total length.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from . import kernels
from .graph import Graph, GraphError, check_cap
from .matching import (
    CycleWitness,
    Ear,
    PreconditionError,
    is_conformal_subgraph,
    is_matching_covered,
    require_matching_covered,
)


@dataclass(frozen=True)
class EarStep:
    kind: str  # "single" or "double"
    ears: Tuple[Ear, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "ears": [p.to_json() for p in self.ears]}


@dataclass(frozen=True)
class EarDecomposition:
    start: CycleWitness
    steps: Tuple[EarStep, ...]

    def edge_sets(self) -> List[frozenset]:
        """Edge sets of ``G_0, G_1, ..., G_r``."""
        cur = set(self.start.edges)
        out = [frozenset(cur)]
        for st in self.steps:
            for p in st.ears:
                cur.update(p.edges)
            out.append(frozenset(cur))
        return out

    def subgraphs(self, g: Graph) -> List[Graph]:
        out = []
        for es in self.edge_sets():
            verts = {v for e in es for v in g.endpoints(e)}
            out.append(Graph(verts, ((e, g.endpoints(e)) for e in sorted(es)), g.next_eid))
        return out

    def to_json(self) -> dict:
        return {"start": self.start.to_json(), "steps": [s.to_json() for s in self.steps]}


class _State:
    """Bitmask view of ``g`` used by the search (vertex positions, edge indices)."""

    def __init__(self, g: Graph):
        self.g = g
        self.verts, self.pos = g.index()
        self.eids = g.edge_ids()
        self.eidx = {e: i for i, e in enumerate(self.eids)}
        self.ends = [(self.pos[a], self.pos[b]) for _, (a, b) in g.edges()]
        self.inc: List[List[Tuple[int, int]]] = [[] for _ in self.verts]
        for i, (a, b) in enumerate(self.ends):
            self.inc[a].append((i, b))
            self.inc[b].append((i, a))
        for lst in self.inc:
            lst.sort(key=lambda t: (t[1], t[0]))
        self.adj = g.adjacency_masks()
        self.full = g.full_mask()
        self.m = len(self.eids)

    def paths(self, vmask: int, emask: int, length: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Ears of the subgraph (vmask, emask) with exactly ``length`` edges."""
        n = len(self.verts)
        for a in range(n):
            if not (vmask >> a) & 1:
                continue
            path = [a]
            edges: List[int] = []
            used = 1 << a

            def rec(v: int):
                depth = len(edges)
                for i, w in self.inc[v]:
                    if (emask >> i) & 1 or (used >> w) & 1:
                        continue
                    inside = (vmask >> w) & 1
                    if inside:
                        if depth + 1 == length and w > a:
                            yield tuple(path) + (w,), tuple(edges) + (i,)
                        continue
                    if depth + 1 >= length:
                        continue
                    yield from _descend(i, w)

            def _descend(i: int, w: int):
                nonlocal used
                path.append(w)
                edges.append(i)
                used |= 1 << w
                yield from rec(w)
                used &= ~(1 << w)
                path.pop()
                edges.pop()

            yield from rec(a)

    def try_add(self, vmask: int, hadj: List[int], ears) -> Optional[Tuple[int, List[int]]]:
        nv = vmask
        nadj = list(hadj)
        for verts, edges in ears:
            for v in verts:
                nv |= 1 << v
            for i in edges:
                a, b = self.ends[i]
                nadj[a] |= 1 << b
                nadj[b] |= 1 << a
        if not kernels.has_perfect_matching(self.adj, self.full & ~nv):
            return None
        if not kernels.matching_covered(nadj, nv):
            return None
        return nv, nadj

    def to_ear(self, verts, edges) -> Ear:
        return Ear(tuple(self.verts[v] for v in verts), tuple(self.eids[i] for i in edges))


class EarDecomposer:
    """Ear decompositions of one graph from many starting cycles.

    The search result from a given subgraph depends only on its edge set, so
    finished suffixes are memoised and shared between starting cycles.
    """

    def __init__(self, g: Graph):
        check_cap(g, "ear decomposition")
        require_matching_covered(g)
        self.g = g
        self.st = _State(g)
        self.memo: dict = {}
        self.max_len = len(self.st.verts) + 1
        self.target = (1 << self.st.m) - 1
        need = 4 * self.st.m + 100
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)

    def _candidates(self, vm: int, em: int):
        for length in range(1, self.max_len + 1, 2):
            yield from self.st.paths(vm, em, length)

    def _search(self, vm: int, em: int, adj: List[int]) -> Optional[Tuple[EarStep, ...]]:
        if em == self.target:
            return ()
        if em in self.memo:
            return self.memo[em]
        st = self.st
        out = None
        for p in self._candidates(vm, em):
            res = st.try_add(vm, adj, [p])
            if res is None:
                continue
            nem = em
            for i in p[1]:
                nem |= 1 << i
            rest = self._search(res[0], nem, res[1])
            if rest is not None:
                out = (EarStep("single", (st.to_ear(*p),)),) + rest
                break
        if out is None:
            singles = list(self._candidates(vm, em))
            pairs = []
            for x in range(len(singles)):
                vx = set(singles[x][0])
                for y in range(x + 1, len(singles)):
                    if vx.isdisjoint(singles[y][0]):
                        pairs.append((len(singles[x][1]) + len(singles[y][1]), x, y))
            pairs.sort()
            for _, x, y in pairs:
                p, q = singles[x], singles[y]
                res = st.try_add(vm, adj, [p, q])
                if res is None:
                    continue
                nem = em
                for i in p[1] + q[1]:
                    nem |= 1 << i
                rest = self._search(res[0], nem, res[1])
                if rest is not None:
                    out = (EarStep("double", (st.to_ear(*p), st.to_ear(*q))),) + rest
                    break
        self.memo[em] = out
        return out

    def extend(self, c: CycleWitness) -> EarDecomposition:
        g, st = self.g, self.st
        c.validate(g)
        if not c.is_even:
            raise PreconditionError("the starting cycle must be even")
        if not is_conformal_subgraph(g, c.vertices):
            raise PreconditionError("the starting cycle must be conformal")
        vmask = 0
        emask = 0
        hadj = [0] * len(st.verts)
        for v in c.vertices:
            vmask |= 1 << st.pos[v]
        for e in c.edges:
            i = st.eidx[e]
            emask |= 1 << i
            a, b = st.ends[i]
            hadj[a] |= 1 << b
            hadj[b] |= 1 << a
        steps = self._search(vmask, emask, hadj)
        if steps is None:
            raise GraphError("internal: ear decomposition search failed")
        return EarDecomposition(c, steps)


def extend_ear_decomposition(g: Graph, c: CycleWitness) -> EarDecomposition:
    """Extend the conformal even cycle ``c`` to an ear decomposition of ``g``."""
    return EarDecomposer(g).extend(c)


def validate_ear_decomposition(g: Graph, d: EarDecomposition, checked: Optional[set] = None) -> None:
    """Raise unless every prefix is matching covered and conformal and the last is ``g``.

    ``checked`` (a set of prefix edge sets already verified for ``g``) skips repeated work.
    """
    d.start.validate(g)
    if not d.start.is_even:
        raise GraphError("decomposition does not start at an even cycle")
    seen_v = set(d.start.vertices)
    seen_e = set(d.start.edges)
    for st in d.steps:
        if st.kind not in ("single", "double") or len(st.ears) != (1 if st.kind == "single" else 2):
            raise GraphError("malformed ear step")
        if st.kind == "double" and set(st.ears[0].vertices) & set(st.ears[1].vertices):
            raise GraphError("double ear paths are not disjoint")
        for p in st.ears:
            if p.length % 2 == 0:
                raise GraphError("ear of even length")
            if p.vertices[0] not in seen_v or p.vertices[-1] not in seen_v:
                raise GraphError("ear ends are not in the current subgraph")
            if set(p.interior) & seen_v or set(p.edges) & seen_e:
                raise GraphError("ear overlaps the current subgraph")
            for k, e in enumerate(p.edges):
                if set(g.endpoints(e)) != {p.vertices[k], p.vertices[k + 1]}:
                    raise GraphError("ear edge does not match its vertices")
        for p in st.ears:
            seen_v.update(p.vertices)
            seen_e.update(p.edges)
    if seen_e != set(g.edge_ids()):
        raise GraphError("decomposition does not end at the whole graph")
    for es in d.edge_sets():
        if checked is not None and es in checked:
            continue
        h = Graph({v for e in es for v in g.endpoints(e)}, ((e, g.endpoints(e)) for e in sorted(es)), g.next_eid)
        if not is_matching_covered(h):
            raise GraphError("a prefix is not matching covered")
        if not is_conformal_subgraph(g, h.vertices):
            raise GraphError("a prefix is not conformal")
        if checked is not None:
            checked.add(es)
