"""Loopless undirected multigraph with stable vertex and edge identities."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

DEFAULT_DESK_CAP = 24


class GraphError(ValueError):
    """Malformed graph or violated operation precondition."""


class CapExceeded(RuntimeError):
    """An exhaustive search would exceed a configured size cap."""


def desk_cap() -> int:
    """Vertex cap for exhaustive searches (``CYCLEX_DESK_CAP`` overrides)."""
    raw = os.environ.get("CYCLEX_DESK_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise GraphError(f"CYCLEX_DESK_CAP is not an integer: {raw!r}") from None
    return DEFAULT_DESK_CAP


def check_cap(g: "Graph", what: str = "search", cap: Optional[int] = None) -> None:
    limit = desk_cap() if cap is None else cap
    if g.n > limit:
        raise CapExceeded(f"{what}: {g.n} vertices exceeds the cap of {limit}")


class Graph:
    """Immutable loopless multigraph.

    Vertex ids are non-negative integers and need not be contiguous: deleting
    a vertex keeps every other id.  Edge ids are never reused; new edges get
    ids above every id the graph (or its ancestors) has issued.
    """

    __slots__ = ("_verts", "_vset", "_edges", "_next_eid", "_cache")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Optional[Iterable[Tuple[int, Tuple[int, int]]]] = None,
        next_eid: Optional[int] = None,
    ):
        verts = sorted(set(int(v) for v in vertices))
        vset = frozenset(verts)
        emap: Dict[int, Tuple[int, int]] = {}
        for eid, (u, v) in edges or ():
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid} has an endpoint outside the vertex set")
            if eid in emap:
                raise GraphError(f"duplicate edge id {eid}")
            emap[int(eid)] = (u, v) if u < v else (v, u)
        emap = dict(sorted(emap.items()))
        top = (max(emap) + 1) if emap else 0
        self._verts: Tuple[int, ...] = tuple(verts)
        self._vset: FrozenSet[int] = vset
        self._edges: Dict[int, Tuple[int, int]] = emap
        self._next_eid = max(top, next_eid or 0)
        self._cache: dict = {}

    # construction -------------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Graph":
        """Vertices ``0..n-1``; edge ids follow the order of ``pairs``."""
        return cls(range(n), enumerate((p[0], p[1]) for p in pairs))

    @classmethod
    def from_named(cls, pairs: Iterable[Tuple[object, object]]) -> Tuple["Graph", dict]:
        """Build from edges between hashable names; returns the graph and name -> id."""
        ids: dict = {}
        out = []
        for a, b in pairs:
            for x in (a, b):
                if x not in ids:
                    ids[x] = len(ids)
            out.append((ids[a], ids[b]))
        return cls.from_edges(len(ids), out), ids

    # basic queries ------------------------------------------------------
    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._verts

    @property
    def n(self) -> int:
        return len(self._verts)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def next_eid(self) -> int:
        return self._next_eid

    def edges(self) -> List[Tuple[int, Tuple[int, int]]]:
        """``(eid, (u, v))`` with ``u < v``, sorted by id."""
        return list(self._edges.items())

    def edge_ids(self) -> List[int]:
        return list(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._vset

    def has_edge_id(self, e: int) -> bool:
        return e in self._edges

    def endpoints(self, e: int) -> Tuple[int, int]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"no edge with id {e}") from None

    def other(self, e: int, v: int) -> int:
        a, b = self.endpoints(e)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {e}")

    def _inc(self) -> Dict[int, List[int]]:
        inc = self._cache.get("inc")
        if inc is None:
            inc = {v: [] for v in self._verts}
            for e, (a, b) in self._edges.items():
                inc[a].append(e)
                inc[b].append(e)
            self._cache["inc"] = inc
        return inc

    def incident(self, v: int) -> List[int]:
        if v not in self._vset:
            raise GraphError(f"no vertex {v}")
        return list(self._inc()[v])

    def degree(self, v: int) -> int:
        if v not in self._vset:
            raise GraphError(f"no vertex {v}")
        return len(self._inc()[v])

    def neighbors(self, v: int) -> List[int]:
        return sorted({self.other(e, v) for e in self.incident(v)})

    def edges_between(self, u: int, v: int) -> List[int]:
        key = (u, v) if u < v else (v, u)
        return [e for e in self._inc().get(u, ()) if self._edges[e] == key]

    def multiplicity(self, u: int, v: int) -> int:
        return len(self.edges_between(u, v))

    def min_degree(self) -> int:
        return min((self.degree(v) for v in self._verts), default=0)

    def is_simple(self) -> bool:
        return len(set(self._edges.values())) == len(self._edges)

    # derived graphs -----------------------------------------------------
    def delete_edges(self, eids: Iterable[int]) -> "Graph":
        drop = set(eids)
        for e in drop:
            if e not in self._edges:
                raise GraphError(f"no edge with id {e}")
        return Graph(
            self._verts,
            ((e, uv) for e, uv in self._edges.items() if e not in drop),
            self._next_eid,
        )

    def delete_vertices(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        for v in drop:
            if v not in self._vset:
                raise GraphError(f"no vertex {v}")
        return Graph(
            (v for v in self._verts if v not in drop),
            ((e, (a, b)) for e, (a, b) in self._edges.items() if a not in drop and b not in drop),
            self._next_eid,
        )

    def induced(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        return self.delete_vertices(v for v in self._verts if v not in keep)

    def add_vertex(self) -> Tuple["Graph", int]:
        v = (self._verts[-1] + 1) if self._verts else 0
        return Graph(self._verts + (v,), self._edges.items(), self._next_eid), v

    def add_edge(self, u: int, v: int) -> Tuple["Graph", int]:
        e = self._next_eid
        g = Graph(self._verts, list(self._edges.items()) + [(e, (u, v))], e + 1)
        return g, e

    def with_edges(self, extra: Iterable[Tuple[int, int]]) -> Tuple["Graph", List[int]]:
        """Add several edges at once; returns the graph and the new ids."""
        items = list(self._edges.items())
        ids = []
        e = self._next_eid
        for u, v in extra:
            items.append((e, (u, v)))
            ids.append(e)
            e += 1
        return Graph(self._verts, items, e), ids

    def underlying_simple(self) -> "Graph":
        """Keep the lowest-id edge of each parallel class."""
        seen = set()
        keep = []
        for e, uv in self._edges.items():
            if uv not in seen:
                seen.add(uv)
                keep.append((e, uv))
        return Graph(self._verts, keep, self._next_eid)

    def compact(self) -> Tuple["Graph", Dict[int, int]]:
        """Relabel vertices to ``0..n-1`` and edges to ``0..m-1`` (in id order).

        Returns the new graph and the old -> new vertex map.
        """
        vmap = {v: i for i, v in enumerate(self._verts)}
        g = Graph.from_edges(self.n, [(vmap[a], vmap[b]) for a, b in self._edges.values()])
        return g, vmap

    # structure ----------------------------------------------------------
    def components(self) -> List[List[int]]:
        seen = set()
        out = []
        inc = self._inc()
        for s in self._verts:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                v = stack.pop()
                for e in inc[v]:
                    w = self.other(e, v)
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def bipartition(self) -> Optional[Tuple[List[int], List[int]]]:
        """Colour classes of a proper 2-colouring, or None if an odd cycle exists."""
        col: Dict[int, int] = {}
        inc = self._inc()
        for s in self._verts:
            if s in col:
                continue
            col[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for e in inc[v]:
                    w = self.other(e, v)
                    if w not in col:
                        col[w] = 1 - col[v]
                        stack.append(w)
                    elif col[w] == col[v]:
                        return None
        return (
            [v for v in self._verts if col[v] == 0],
            [v for v in self._verts if col[v] == 1],
        )

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    # kernel support -----------------------------------------------------
    def index(self) -> Tuple[Tuple[int, ...], Dict[int, int]]:
        """Vertex order used for bitmasks and the id -> bit position map."""
        pos = self._cache.get("pos")
        if pos is None:
            pos = {v: i for i, v in enumerate(self._verts)}
            self._cache["pos"] = pos
        return self._verts, pos

    def adjacency_masks(self) -> List[int]:
        """Adjacency bitmasks of the underlying simple graph (bit = index position)."""
        adj = self._cache.get("adj")
        if adj is None:
            _, pos = self.index()
            adj = [0] * self.n
            for a, b in self._edges.values():
                i, j = pos[a], pos[b]
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            self._cache["adj"] = adj
        return list(adj)

    def mask_of(self, vs: Iterable[int]) -> int:
        _, pos = self.index()
        m = 0
        for v in vs:
            m |= 1 << pos[v]
        return m

    def vertices_of(self, mask: int) -> List[int]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self._verts[i])
            mask >>= 1
            i += 1
        return out

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def fingerprint(self) -> str:
        """Digest of the exact labelled structure (vertex ids and edge ids)."""
        fp = self._cache.get("fp")
        if fp is None:
            h = hashlib.sha256()
            h.update(repr(self._verts).encode())
            h.update(repr(sorted(self._edges.items())).encode())
            fp = h.hexdigest()[:16]
            self._cache["fp"] = fp
        return fp

    # dunder -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._verts == other._verts and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._verts, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Cut:
    """A shore ``X`` and the edge set ``∂(X)``."""

    shore: FrozenSet[int]
    edge_set: FrozenSet[int]

    @classmethod
    def of(cls, g: Graph, shore: Iterable[int]) -> "Cut":
        x = frozenset(shore)
        if not x or len(x) >= g.n:
            raise GraphError("a cut shore must be nonempty and proper")
        for v in x:
            if not g.has_vertex(v):
                raise GraphError(f"no vertex {v}")
        edges = frozenset(e for e, (a, b) in g.edges() if (a in x) != (b in x))
        return cls(x, edges)

    def complement(self, g: Graph) -> "Cut":
        return Cut(frozenset(v for v in g.vertices if v not in self.shore), self.edge_set)

    def is_trivial(self, g: Graph) -> bool:
        return len(self.shore) == 1 or len(self.shore) == g.n - 1


def contract_shore(g: Graph, shore: Iterable[int], label: Optional[int] = None) -> Graph:
    """``G/X``: shrink the shore to one vertex; edges of ``∂(X)`` keep their ids.

    The contraction vertex is ``label`` if given, else the smallest vertex of X.
    """
    x = set(shore)
    if not x or len(x) >= g.n:
        raise GraphError("a cut shore must be nonempty and proper")
    for v in x:
        if not g.has_vertex(v):
            raise GraphError(f"no vertex {v}")
    c = min(x) if label is None else label
    rest = [v for v in g.vertices if v not in x]
    if c in rest:
        raise GraphError(f"contraction label {c} collides with a vertex outside the shore")
    edges = []
    for e, (a, b) in g.edges():
        ia, ib = a in x, b in x
        if ia and ib:
            continue
        edges.append((e, (c if ia else a, c if ib else b)))
    return Graph(rest + [c], edges, g.next_eid)
