"""Series and parallel reductions, bicontraction, bisplitting, retracts, and
thin / strictly thin edges."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .decomposition import is_brick
from .graph import Graph, GraphError, contract_shore
from .matching import PreconditionError, removable_edges, require_matching_covered


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "parallel" or "series"
    removed: Tuple[int, ...]  # edge ids deleted by the step
    path: Tuple[int, ...] = ()  # w, x, y, z for a series step
    inserted: Optional[int] = None  # id of the new edge wz

    def to_json(self) -> dict:
        out = {"kind": self.kind, "removed": list(self.removed)}
        if self.kind == "series":
            out["path"] = list(self.path)
            out["inserted"] = self.inserted
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ReductionStep":
        return cls(obj["kind"], tuple(obj["removed"]), tuple(obj.get("path", ())), obj.get("inserted"))


@dataclass
class ReductionTrace:
    start: Graph
    end: Graph
    steps: List[ReductionStep] = field(default_factory=list)
    k2_degenerate: bool = False

    @property
    def start_fingerprint(self) -> str:
        return self.start.fingerprint()

    @property
    def end_fingerprint(self) -> str:
        return self.end.fingerprint()

    def replay(self, g: Optional[Graph] = None) -> Graph:
        h = self.start if g is None else g
        for st in self.steps:
            h = apply_step(h, st)
        return h

    def to_json(self) -> dict:
        return {
            "start_fingerprint": self.start_fingerprint,
            "end_fingerprint": self.end_fingerprint,
            "k2_degenerate": self.k2_degenerate,
            "steps": [s.to_json() for s in self.steps],
        }


def apply_step(g: Graph, st: ReductionStep) -> Graph:
    if st.kind == "parallel":
        (e,) = st.removed
        return parallel_reduce_once(g, e)
    if st.kind == "series":
        h = series_reduce_once(g, st.path)
        if h.next_eid - 1 != st.inserted:
            raise GraphError("replay produced a different inserted edge id")
        return h
    raise GraphError(f"unknown step kind {st.kind!r}")


def parallel_reduce_once(g: Graph, e: int) -> Graph:
    """Delete ``e``, which must have a parallel partner."""
    a, b = g.endpoints(e)
    if g.multiplicity(a, b) < 2:
        raise PreconditionError(f"edge {e} has no parallel partner")
    return g.delete_edges([e])


def _series_edges(g: Graph, path: Sequence[int]) -> Tuple[int, int, int]:
    if len(path) != 4:
        raise PreconditionError("a series reduction needs a path w, x, y, z")
    w, x, y, z = path
    for v in path:
        if not g.has_vertex(v):
            raise PreconditionError(f"no vertex {v}")
    if g.degree(x) != 2 or g.degree(y) != 2:
        raise PreconditionError("internal vertices of a series path must have degree two")
    if w == z:
        raise PreconditionError("series reduction would create a loop")
    ex = g.incident(x)
    ey = g.incident(y)
    e1 = [e for e in ex if g.other(e, x) == w]
    e2 = [e for e in ex if g.other(e, x) == y]
    e3 = [e for e in ey if g.other(e, y) == z]
    if len(e1) != 1 or len(e2) != 1 or len(e3) != 1 or len({w, x, y, z}) != 4:
        raise PreconditionError("w, x, y, z is not a path with degree-two interior")
    return e1[0], e2[0], e3[0]


def series_reduce_once(g: Graph, path: Sequence[int]) -> Graph:
    """Replace the path ``w x y z`` (``x``, ``y`` of degree two) by a new edge ``wz``.

    The new edge gets id ``g.next_eid``.
    """
    _series_edges(g, path)
    w, x, y, z = path
    h, _ = g.delete_vertices([x, y]).add_edge(w, z)
    return h


def is_irreducible(g: Graph) -> bool:
    """Simple, and the degree-two vertices form a stable set."""
    if not g.is_simple():
        return False
    for _, (a, b) in g.edges():
        if g.degree(a) == 2 and g.degree(b) == 2:
            return False
    return True


def _find_series_path(g: Graph) -> Optional[Tuple[int, int, int, int]]:
    for x in g.vertices:
        if g.degree(x) != 2:
            continue
        inc = sorted(g.incident(x))
        for i, exy in enumerate(inc):
            y = g.other(exy, x)
            if g.degree(y) != 2 or y == x:
                continue
            w = g.other(inc[1 - i], x)
            ey = [e for e in g.incident(y) if e != exy]
            z = g.other(ey[0], y)
            if w == y or z == x or w == z:
                continue
            return (w, x, y, z)
    return None


def to_irreducible(g: Graph) -> Tuple[Graph, ReductionTrace]:
    """Exhaust parallel reductions, then one series reduction, and repeat.

    Parallel classes keep their lowest edge id; series paths are found by
    scanning vertices in id order.
    """
    require_matching_covered(g)
    h = g
    steps: List[ReductionStep] = []
    while True:
        seen = set()
        drop = []
        for e, uv in h.edges():
            if uv in seen:
                drop.append(e)
            else:
                seen.add(uv)
        if drop:
            steps.extend(ReductionStep("parallel", (e,)) for e in drop)
            h = h.delete_edges(drop)
        path = _find_series_path(h)
        if path is None:
            break
        e1, e2, e3 = _series_edges(h, path)
        new_id = h.next_eid
        h = series_reduce_once(h, path)
        steps.append(ReductionStep("series", (e1, e2, e3), path, new_id))
    trace = ReductionTrace(g, h, steps, k2_degenerate=(h.n == 2 and h.m == 1))
    return h, trace


# bicontraction and friends ------------------------------------------------

def bicontract(g: Graph, v0: int) -> Graph:
    """Contract both edges at the degree-two vertex ``v0``; the new vertex is min(v1, v2)."""
    if g.degree(v0) != 2:
        raise PreconditionError(f"vertex {v0} does not have degree two")
    e1, e2 = g.incident(v0)
    v1, v2 = g.other(e1, v0), g.other(e2, v0)
    if v1 == v2:
        raise PreconditionError("the two neighbours of the vertex coincide")
    if g.multiplicity(v1, v2):
        raise PreconditionError("bicontraction would create a loop (the neighbours are adjacent)")
    return contract_shore(g, [v0, v1, v2], label=min(v1, v2))


def bisplit(g: Graph, v: int, part1: Sequence[int], part2: Sequence[int]) -> Graph:
    """Split ``v`` into ``v1 = v`` (keeping ``part1``) and a new ``v2`` (taking ``part2``),
    joined through a new degree-two vertex ``v0``.

    New ids: ``v2 = max + 1`` and ``v0 = max + 2``; the edges ``v0v1`` and
    ``v0v2`` get the next two edge ids.
    """
    inc = set(g.incident(v))
    p1, p2 = set(part1), set(part2)
    if len(inc) < 4:
        raise PreconditionError(f"vertex {v} has degree below four")
    if p1 & p2 or (p1 | p2) != inc or len(p1) < 2 or len(p2) < 2:
        raise PreconditionError("parts must partition the edges at v, each with at least two edges")
    top = max(g.vertices)
    v2, v0 = top + 1, top + 2
    edges = []
    for e, (a, b) in g.edges():
        if e in p2:
            a, b = (v2, b) if a == v else (a, v2)
        edges.append((e, (a, b)))
    h = Graph(list(g.vertices) + [v2, v0], edges, g.next_eid)
    h, _ = h.with_edges([(v0, v), (v0, v2)])
    return h


def retract(h: Graph) -> Graph:
    """Bicontract degree-two vertices (smallest id first) until none remain."""
    cur = h
    while True:
        twos = [v for v in cur.vertices if cur.degree(v) == 2]
        if not twos:
            return cur
        cur = bicontract(cur, twos[0])


def _check_simple_brick(g: Graph) -> None:
    if not g.is_simple() or not is_brick(g):
        raise PreconditionError("input must be a simple brick")


def edge_classification(g: Graph) -> List[dict]:
    """For each removable edge of a simple brick: its retract and thin / strictly thin flags."""
    _check_simple_brick(g)
    out = []
    for e in removable_edges(g):
        j = retract(g.delete_edges([e]))
        thin = is_brick(j)
        out.append({"edge": e, "retract": j, "thin": thin, "strictly_thin": thin and j.is_simple()})
    return out


def thin_edges(g: Graph) -> List[int]:
    return [r["edge"] for r in edge_classification(g) if r["thin"]]


def strictly_thin_edges(g: Graph) -> List[int]:
    return [r["edge"] for r in edge_classification(g) if r["strictly_thin"]]
