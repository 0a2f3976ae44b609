"""Isomorphism of small multigraphs and canonical codes of simple graphs."""

from __future__ import annotations

from collections import Counter
from typing import Dict, List, Optional, Tuple

from . import kernels
from .graph import CapExceeded, Graph

ISO_CAP = 64


def _mult_table(g: Graph) -> Dict[int, Counter]:
    t: Dict[int, Counter] = {v: Counter() for v in g.vertices}
    for _, (a, b) in g.edges():
        t[a][b] += 1
        t[b][a] += 1
    return t


def _joint_colors(tables: List[Dict[int, Counter]]) -> List[Dict[int, int]]:
    """Colour refinement run on the disjoint union, so colours are comparable."""
    cols = [{v: sum(t[v].values()) for v in t} for t in tables]
    ncol = len({c for col in cols for c in col.values()})
    while True:
        sigs = []
        for t, col in zip(tables, cols):
            s = {}
            for v, nb in t.items():
                s[v] = (col[v], tuple(sorted((col[w], k) for w, k in nb.items())))
            sigs.append(s)
        ranks = {k: i for i, k in enumerate(sorted({x for s in sigs for x in s.values()}))}
        cols = [{v: ranks[x] for v, x in s.items()} for s in sigs]
        if len(ranks) == ncol:
            return cols
        ncol = len(ranks)


def find_isomorphism(g: Graph, h: Graph) -> Optional[Dict[int, int]]:
    """A multiplicity-preserving bijection ``V(g) -> V(h)``, or None."""
    if g.n > ISO_CAP or h.n > ISO_CAP:
        raise CapExceeded(f"isomorphism is limited to {ISO_CAP} vertices")
    if g.n != h.n or g.m != h.m:
        return None
    tg, th = _mult_table(g), _mult_table(h)
    cg, ch = _joint_colors([tg, th])
    if Counter(cg.values()) != Counter(ch.values()):
        return None
    by_color: Dict[int, List[int]] = {}
    for v in h.vertices:
        by_color.setdefault(ch[v], []).append(v)

    # order g's vertices so each one (after the first per component) touches an earlier one
    order: List[int] = []
    placed = set()
    remaining = sorted(g.vertices, key=lambda v: (len(by_color[cg[v]]), v))
    while remaining:
        best = None
        best_key = None
        for v in remaining:
            key = (-sum(1 for w in tg[v] if w in placed), len(by_color[cg[v]]), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
        remaining.remove(best)

    mapping: Dict[int, int] = {}
    used = set()

    def ok(v: int, x: int) -> bool:
        for w, k in tg[v].items():
            if w in mapping and th[x].get(mapping[w], 0) != k:
                return False
        # every mapped neighbour of x must come from a neighbour of v
        nbx = sum(1 for y in th[x] if y in used)
        nbv = sum(1 for w in tg[v] if w in mapping)
        return nbx == nbv

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        anchor = next((w for w in tg[v] if w in mapping), None)
        if anchor is not None:
            cands = [y for y in th[mapping[anchor]] if y not in used and ch[y] == cg[v]]
            cands.sort()
        else:
            cands = [y for y in by_color[cg[v]] if y not in used]
        for x in cands:
            if ok(v, x):
                mapping[v] = x
                used.add(x)
                if rec(i + 1):
                    return True
                del mapping[v]
                used.discard(x)
        return False

    return dict(mapping) if rec(0) else None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def canonical_code(g: Graph) -> Tuple[int, int]:
    """``(n, code)`` equal for two simple graphs iff they are isomorphic.

    Parallel edges are ignored (the underlying simple graph is coded).
    """
    if g.n > ISO_CAP:
        raise CapExceeded(f"canonical form is limited to {ISO_CAP} vertices")
    code, _ = kernels.canonical_form(g.adjacency_masks())
    return g.n, code


def canonical_relabel(g: Graph) -> Graph:
    """The simple graph on ``0..n-1`` in canonical vertex order."""
    _, lab = kernels.canonical_form(g.adjacency_masks())
    verts, pos = g.index()
    pairs = sorted(
        tuple(sorted((lab[pos[a]], lab[pos[b]]))) for _, (a, b) in g.underlying_simple().edges()
    )
    return Graph.from_edges(g.n, pairs)
