"""Tight cuts, the tight cut decomposition, bricks and braces, b(G), p(G),
and GF(2) ranks of the cycle, even-cycle and alternating spaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import kernels
from .graph import Cut, Graph, GraphError, check_cap, contract_shore
from .iso import canonical_code, is_isomorphic
from .matching import (
    DEFAULT_CYCLE_CAP,
    PerfectMatchingSet,
    enumerate_cycles,
    is_conformal_subgraph,
    require_matching_covered,
)

POLICIES = ("smallest", "largest")


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


_PETERSEN_CODE = None


def _girth(g: Graph) -> int:
    best = 10**9
    for s in g.vertices:
        dist = {s: 0}
        parent = {s: None}
        queue = [s]
        for v in queue:
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def is_petersen(g: Graph) -> bool:
    """Underlying simple graph is the Petersen graph (parallel edges ignored)."""
    global _PETERSEN_CODE
    h = g.underlying_simple()
    if h.n != 10 or h.m != 15 or any(h.degree(v) != 3 for v in h.vertices):
        return False
    if _girth(h) != 5:
        return False
    if _PETERSEN_CODE is None:
        _PETERSEN_CODE = canonical_code(petersen_graph())
    return canonical_code(h) == _PETERSEN_CODE and is_isomorphic(h, petersen_graph())


# tight cuts ----------------------------------------------------------------

def is_tight(g: Graph, pms: PerfectMatchingSet, c: Cut) -> bool:
    """Every perfect matching meets ``c`` in exactly one edge."""
    pms.check(g)
    return all(len(m & c.edge_set) == 1 for m in pms)


class _TightCutFinder:
    def __init__(self, g: Graph):
        self.g = g
        self.verts, self.pos = g.index()
        simple = sorted({uv for _, uv in g.edges()})
        self.pairs = [(self.pos[a], self.pos[b]) for a, b in simple]
        pidx = {p: i for i, p in enumerate(self.pairs)}
        self.pm_masks = []
        for pm in kernels.perfect_matchings(g.adjacency_masks(), g.full_mask()):
            m = 0
            for a, b in pm:
                m |= 1 << pidx[(min(a, b), max(a, b))]
            self.pm_masks.append(m)
        # most constraining matchings first is not knowable; keep enumeration order

    def cut_mask(self, xmask: int) -> int:
        m = 0
        for i, (a, b) in enumerate(self.pairs):
            if ((xmask >> a) ^ (xmask >> b)) & 1:
                m |= 1 << i
        return m

    def tight(self, xmask: int) -> bool:
        cm = self.cut_mask(xmask)
        for pm in self.pm_masks:
            if (pm & cm).bit_count() != 1:
                return False
        return True


def _two_vertex_cut_shore(g: Graph) -> Optional[List[int]]:
    if g.n < 6:
        return None
    for u, v in itertools.combinations(g.vertices, 2):
        comps = g.delete_vertices([u, v]).components()
        if len(comps) < 2:
            continue
        for comp in comps:
            if len(comp) % 2 and len(comp) > 1:
                return comp
            if len(comp) % 2 == 0:
                return sorted(comp + [u])
    return None


def _shores(g: Graph, policy: str) -> Iterator[Tuple[int, ...]]:
    n = g.n
    sizes = [k for k in range(3, n // 2 + 1) if k % 2]
    if policy == "largest":
        sizes = sizes[::-1]
    verts = g.vertices
    for k in sizes:
        combos = itertools.combinations(verts, k)
        if policy == "largest":
            combos = reversed(list(combos))
        for x in combos:
            if 2 * k == n:
                comp = tuple(v for v in verts if v not in x)
                if comp < x:
                    continue
            yield x


def find_nontrivial_tight_cut(g: Graph, policy: str = "smallest", shortcut: bool = True) -> Optional[Cut]:
    """Some nontrivial tight cut, or None when ``g`` is a brick or brace.

    With ``shortcut`` a 2-vertex cut (on six or more vertices) is used first.
    Otherwise shores are scanned by size, smallest first ("smallest") or
    largest first ("largest"), then lexicographically.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    check_cap(g, "tight cut search")
    require_matching_covered(g)
    if g.n < 6:
        return None
    if shortcut:
        x = _two_vertex_cut_shore(g)
        if x is not None:
            return Cut.of(g, x)
    finder = _TightCutFinder(g)
    for x in _shores(g, policy):
        if finder.tight(g.mask_of(x)):
            return Cut.of(g, x)
    return None


def is_brick(g: Graph) -> bool:
    require_matching_covered(g)
    return not g.is_bipartite() and find_nontrivial_tight_cut(g) is None


def is_brace(g: Graph) -> bool:
    require_matching_covered(g)
    return g.is_bipartite() and find_nontrivial_tight_cut(g) is None


# decomposition -------------------------------------------------------------

@dataclass
class DecompositionSummary:
    pieces: List[Graph]
    b: int
    p: int
    tree: dict
    kinds: List[str] = field(default_factory=list)  # "brick" / "brace" per piece

    def piece_classes(self) -> List[Tuple[int, int]]:
        """Sorted canonical codes of the pieces' underlying simple graphs."""
        return sorted(canonical_code(pc.underlying_simple()) for pc in self.pieces)

    def to_json(self) -> dict:
        from .io import to_edgelist, to_graph6

        pieces = []
        for pc, kind in zip(self.pieces, self.kinds):
            entry = {"kind": kind, "petersen": is_petersen(pc), "n": pc.n, "m": pc.m,
                     "vertices": list(pc.vertices),
                     "edges": [[e, a, b] for e, (a, b) in pc.edges()],
                     "edgelist": to_edgelist(pc)}
            if pc.is_simple():
                entry["graph6"] = to_graph6(pc)
            pieces.append(entry)
        return {"b": self.b, "p": self.p, "pieces": pieces, "tree": self.tree}


def tight_cut_decomposition(g: Graph, policy: str = "smallest", shortcut: bool = True) -> DecompositionSummary:
    """Recursively split along nontrivial tight cuts until only bricks and braces remain."""
    require_matching_covered(g)
    pieces: List[Graph] = []

    def rec(h: Graph) -> dict:
        c = find_nontrivial_tight_cut(h, policy, shortcut)
        if c is None:
            pieces.append(h)
            return {"piece": len(pieces) - 1}
        shore = sorted(c.shore)
        other = sorted(c.complement(h).shore)
        left = contract_shore(h, other)  # h / X-bar keeps X
        right = contract_shore(h, shore)  # h / X keeps X-bar
        return {
            "shore": shore,
            "cut": sorted(c.edge_set),
            "children": [rec(left), rec(right)],
        }

    tree = rec(g)
    kinds = ["brace" if pc.is_bipartite() else "brick" for pc in pieces]
    b = kinds.count("brick")
    p = sum(1 for pc, k in zip(pieces, kinds) if k == "brick" and is_petersen(pc))
    return DecompositionSummary(pieces, b, p, tree, kinds)


def brick_count(g: Graph) -> int:
    return tight_cut_decomposition(g).b


def is_near_brick(g: Graph) -> bool:
    return brick_count(g) == 1


# cycle spaces --------------------------------------------------------------

@dataclass(frozen=True)
class SpaceRanks:
    dim_cycle: int
    dim_even: int
    dim_alt: int

    def to_json(self) -> dict:
        return {"dim_cycle": self.dim_cycle, "dim_even": self.dim_even, "dim_alt": self.dim_alt}


class _XorBasis:
    def __init__(self):
        self.rows: Dict[int, int] = {}

    def add(self, x: int) -> bool:
        rows = self.rows
        while x:
            h = x.bit_length() - 1
            r = rows.get(h)
            if r is None:
                rows[h] = x
                return True
            x ^= r
        return False

    def __len__(self) -> int:
        return len(self.rows)


def space_ranks(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> SpaceRanks:
    """GF(2) ranks of the spaces spanned by all cycles, even cycles and conformal cycles."""
    check_cap(g, "cycle space ranks")
    eidx = {e: i for i, e in enumerate(g.edge_ids())}
    dim_cycle = g.m - g.n + len(g.components())
    even_max = dim_cycle - (0 if g.is_bipartite() else 1)
    even = _XorBasis()
    alt = _XorBasis()
    conf_memo: Dict[frozenset, bool] = {}
    cycles = enumerate_cycles(g, "even", cap)
    for c in cycles:
        if len(even) >= even_max:
            break
        v = 0
        for e in c.edges:
            v |= 1 << eidx[e]
        even.add(v)
    dim_even = len(even)
    for c in cycles:
        if len(alt) >= dim_even:
            break
        key = c.vertex_set
        ok = conf_memo.get(key)
        if ok is None:
            ok = is_conformal_subgraph(g, key)
            conf_memo[key] = ok
        if ok:
            v = 0
            for e in c.edges:
                v |= 1 << eidx[e]
            alt.add(v)
    return SpaceRanks(dim_cycle, dim_even, len(alt))


def alternating_rank_via_matchings(g: Graph) -> int:
    """Rank of ``{M0 xor M}`` over all perfect matchings (an independent route to dim_alt)."""
    from .matching import enumerate_perfect_matchings

    eidx = {e: i for i, e in enumerate(g.edge_ids())}
    pms = enumerate_perfect_matchings(g).matchings
    if not pms:
        return 0
    vecs = []
    for m in pms:
        v = 0
        for e in m:
            v |= 1 << eidx[e]
        vecs.append(v)
    basis = _XorBasis()
    for v in vecs[1:]:
        basis.add(v ^ vecs[0])
    return len(basis)


def verify_carvalho_little(g: Graph) -> bool:
    """``dim_alt < dim_even`` exactly when ``b + p > 1``."""
    require_matching_covered(g)
    r = space_ranks(g)
    d = tight_cut_decomposition(g)
    return (r.dim_alt < r.dim_even) == (d.b + d.p > 1)
