"""Planarity testing, combinatorial embeddings and Kuratowski witnesses.

Each biconnected block of the underlying simple graph is embedded by the
Demoucron-Malgrange-Pertuiset face-insertion procedure.  Block rotations are
concatenated at cut vertices and parallel edges are laid side by side, which
yields a rotation system for the original multigraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .graph import Graph, GraphError, check_cap


class NotPlanar(GraphError):
    """Raised by :func:`compute_embedding` on a nonplanar graph."""

    def __init__(self, witness: "KuratowskiWitness"):
        super().__init__(f"graph is not planar ({witness.kind} subdivision found)")
        self.witness = witness


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "K5" or "K3,3"
    branch_vertices: Tuple[int, ...]
    edges: Tuple[int, ...]  # edge ids of the subdivision in the input graph

    def to_json(self) -> dict:
        return {"kind": self.kind, "branch_vertices": list(self.branch_vertices), "edges": list(self.edges)}


@dataclass
class PlanarEmbedding:
    """Rotation system plus the faces it induces.

    ``rotation[v]`` is the cyclic order of edge ids at ``v``.  A face is a
    closed walk stored as a tuple of darts ``(edge id, tail vertex)``; the dart
    after ``(e, u)`` leaves the head ``v`` of ``e`` along the successor of
    ``e`` in ``rotation[v]``.
    """

    rotation: Dict[int, Tuple[int, ...]]
    faces: List[Tuple[Tuple[int, int], ...]] = field(default_factory=list)

    @property
    def f_odd(self) -> int:
        return sum(1 for f in self.faces if len(f) % 2)

    def face_lengths(self) -> List[int]:
        return [len(f) for f in self.faces]

    def face_vertices(self) -> List[List[int]]:
        return [[u for _, u in f] for f in self.faces]

    def to_json(self) -> dict:
        return {
            "rotation": {str(v): list(r) for v, r in self.rotation.items()},
            "faces": [[[e, u] for e, u in f] for f in self.faces],
            "f_odd": self.f_odd,
        }


# blocks ------------------------------------------------------------------

def _simple_adj(g: Graph) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {v: set() for v in g.vertices}
    for _, (a, b) in g.edges():
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _blocks(adj: Dict[int, Set[int]]) -> List[Set[Tuple[int, int]]]:
    """Biconnected components as sets of edges ``(min, max)``."""
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    out: List[Set[Tuple[int, int]]] = []
    counter = [0]
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        stack_e: List[Tuple[int, int]] = []
        it = [(root, -1, iter(sorted(adj[root])))]
        while it:
            v, parent, nbrs = it[-1]
            advanced = False
            for w in nbrs:
                if w == parent:
                    continue
                if w not in disc:
                    stack_e.append((v, w))
                    disc[w] = low[w] = counter[0]
                    counter[0] += 1
                    it.append((w, v, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    stack_e.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            it.pop()
            if it:
                p = it[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    comp = set()
                    while True:
                        a, b = stack_e.pop()
                        comp.add((min(a, b), max(a, b)))
                        if (a, b) == (p, v):
                            break
                    out.append(comp)
    return out


# DMP on one block --------------------------------------------------------

def _find_cycle(adj: Dict[int, Set[int]]) -> List[int]:
    start = min(adj)
    parent = {start: None}
    depth = {start: 0}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append(w)
            elif w != parent[v]:
                # tree path v..lca..w closes a cycle
                a, b = v, w
                pa, pb = [a], [b]
                while a != b:
                    if depth[a] >= depth[b]:
                        a = parent[a]
                        pa.append(a)
                    else:
                        b = parent[b]
                        pb.append(b)
                return pa + pb[-2::-1]
    raise GraphError("block has no cycle")


def _embed_block(adj: Dict[int, Set[int]]) -> Optional[List[List[int]]]:
    """Faces of a planar embedding of a 2-connected simple graph, or None."""
    cyc = _find_cycle(adj)
    faces: List[List[int]] = [list(cyc), list(reversed(cyc))]
    hv: Set[int] = set(cyc)
    he: Set[Tuple[int, int]] = set()
    for i in range(len(cyc)):
        a, b = cyc[i], cyc[(i + 1) % len(cyc)]
        he.add((min(a, b), max(a, b)))
    total = sum(len(s) for s in adj.values()) // 2
    while len(he) < total:
        frags = _fragments(adj, hv, he)
        face_sets = [set(f) for f in faces]
        choice = None
        for frag_vertices, attach in frags:
            ok = [i for i, fs in enumerate(face_sets) if attach <= fs]
            if not ok:
                return None
            if choice is None or len(ok) < len(choice[2]):
                choice = (frag_vertices, attach, ok)
                if len(ok) == 1:
                    break
        frag_vertices, attach, ok = choice
        path = _fragment_path(adj, hv, frag_vertices, attach)
        fi = ok[0]
        f = faces[fi]
        a, b = path[0], path[-1]
        i = f.index(a)
        f = f[i:] + f[:i]
        j = f.index(b)
        inner = path[1:-1]
        f1 = f[: j + 1] + inner[::-1]
        f2 = f[j:] + [a] + inner
        faces[fi] = f1
        faces.append(f2)
        hv.update(inner)
        for k in range(len(path) - 1):
            x, y = path[k], path[k + 1]
            he.add((min(x, y), max(x, y)))
    return faces


def _fragments(adj, hv, he):
    frags = []
    for v in sorted(hv):
        for w in sorted(adj[v]):
            if w in hv and v < w and (v, w) not in he:
                frags.append((frozenset(), frozenset((v, w))))
    seen: Set[int] = set()
    for s in sorted(adj):
        if s in hv or s in seen:
            continue
        comp = {s}
        attach = set()
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in hv:
                    attach.add(w)
                elif w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        frags.append((frozenset(comp), frozenset(attach)))
    return frags


def _fragment_path(adj, hv, frag_vertices, attach) -> List[int]:
    if not frag_vertices:
        a, b = sorted(attach)
        return [a, b]
    a = min(attach)
    # BFS from a through fragment interior until another attachment is reached
    prev = {a: None}
    queue = [a]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in sorted(adj[v]):
            if w in prev:
                continue
            if v != a and w in attach and w != a:
                path = [w, v]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            if w in frag_vertices:
                prev[w] = v
                queue.append(w)
    raise GraphError("fragment with fewer than two attachments in a 2-connected block")


# public API --------------------------------------------------------------

def _planar_faces(g: Graph):
    """Per-block face lists for the underlying simple graph, or None if nonplanar."""
    adj = _simple_adj(g)
    m = sum(len(s) for s in adj.values()) // 2
    if g.n >= 3 and m > 3 * g.n - 6:
        return None
    out = []
    for block in _blocks(adj):
        if len(block) == 1:
            out.append((block, None))
            continue
        badj: Dict[int, Set[int]] = {}
        for a, b in block:
            badj.setdefault(a, set()).add(b)
            badj.setdefault(b, set()).add(a)
        if len(block) > 3 * len(badj) - 6:
            return None
        faces = _embed_block(badj)
        if faces is None:
            return None
        out.append((block, faces))
    return out


def is_planar(g: Graph) -> bool:
    check_cap(g, "planarity")
    return _planar_faces(g) is not None


def compute_embedding(g: Graph) -> PlanarEmbedding:
    """Rotation system and faces of a connected planar multigraph.

    Raises :class:`NotPlanar` carrying a Kuratowski witness otherwise.
    """
    check_cap(g, "embedding")
    if not g.is_connected():
        raise GraphError("embedding requires a connected graph")
    blocks = _planar_faces(g)
    if blocks is None:
        raise NotPlanar(kuratowski_witness(g))
    # rotation over simple neighbours, per vertex, block by block
    nbr_rot: Dict[int, List[int]] = {v: [] for v in g.vertices}
    for block, faces in blocks:
        if faces is None:
            (a, b), = block
            nbr_rot[a].append(b)
            nbr_rot[b].append(a)
            continue
        succ: Dict[int, Dict[int, int]] = {}
        for f in faces:
            L = len(f)
            for i in range(L):
                u, v, w = f[i - 1], f[i], f[(i + 1) % L]
                succ.setdefault(v, {})[u] = w
        for v, s in succ.items():
            start = min(s)
            cyc = [start]
            x = s[start]
            while x != start:
                cyc.append(x)
                x = s[x]
            if len(cyc) != len(s):
                raise GraphError("internal: block rotation is not a single cycle")
            nbr_rot[v].extend(cyc)
    rotation: Dict[int, Tuple[int, ...]] = {}
    for v in g.vertices:
        seq: List[int] = []
        for w in nbr_rot[v]:
            par = sorted(g.edges_between(v, w))
            seq.extend(par if v < w else par[::-1])
        rotation[v] = tuple(seq)
    return PlanarEmbedding(rotation, trace_faces(g, rotation))


def trace_faces(g: Graph, rotation: Dict[int, Tuple[int, ...]]) -> List[Tuple[Tuple[int, int], ...]]:
    pos = {v: {e: i for i, e in enumerate(r)} for v, r in rotation.items()}
    seen: Set[Tuple[int, int]] = set()
    faces = []
    for e, (a, b) in g.edges():
        for tail in (a, b):
            if (e, tail) in seen:
                continue
            face = []
            d = (e, tail)
            while d not in seen:
                seen.add(d)
                face.append(d)
                ee, u = d
                v = g.other(ee, u)
                r = rotation[v]
                nxt = r[(pos[v][ee] + 1) % len(r)]
                d = (nxt, v)
            faces.append(tuple(face))
    if g.m == 0:
        faces.append(())
    return faces


def count_odd_faces(emb: PlanarEmbedding) -> int:
    return emb.f_odd


def check_embedding(g: Graph, emb: PlanarEmbedding) -> None:
    """Raise unless ``emb`` is a genus-0 rotation system of connected ``g``."""
    for v in g.vertices:
        if sorted(emb.rotation.get(v, ())) != sorted(g.incident(v)):
            raise GraphError(f"rotation at {v} does not list its incident edges")
    darts = [d for f in emb.faces for d in f]
    if len(darts) != 2 * g.m or len(set(darts)) != 2 * g.m:
        raise GraphError("faces do not partition the darts")
    if len(emb.faces) != g.m - g.n + 2:
        raise GraphError("Euler's formula fails: embedding is not planar")


def kuratowski_witness(g: Graph) -> KuratowskiWitness:
    """Edge-minimal nonplanar subgraph, classified as a K5 or K3,3 subdivision."""
    h = g.underlying_simple()
    if _planar_faces(h) is not None:
        raise GraphError("graph is planar")
    for e in h.edge_ids():
        trial = h.delete_edges([e])
        if _planar_faces(trial) is None:
            h = trial
    deg = {v: h.degree(v) for v in h.vertices if h.degree(v) > 0}
    branch = tuple(sorted(v for v, d in deg.items() if d >= 3))
    if len(branch) == 5 and all(deg[v] == 4 for v in branch):
        kind = "K5"
    elif len(branch) == 6 and all(deg[v] == 3 for v in branch):
        kind = "K3,3"
    else:  # pragma: no cover - impossible by Kuratowski's theorem
        raise GraphError("internal: minimal nonplanar subgraph is not a Kuratowski subdivision")
    return KuratowskiWitness(kind, branch, tuple(h.edge_ids()))
