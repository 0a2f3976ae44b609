"""Deciding cycle-extendability of planar matching covered graphs.

Fast mode reduces to an irreducible graph ``H`` by series and parallel
reductions.  ``H`` is CE exactly when it is K2 or belongs to one of the
families G0..G3.  NotCE witnesses come from the brute-force oracle run on
``H`` and are lifted back through the reduction trace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .families import FamilyCertificate, recognize_family
from .graph import Graph, GraphError
from .io import graph_to_json
from .matching import (
    CycleWitness,
    brute_force_cycle_extendable,
    is_conformal_subgraph,
    is_matching_covered,
)
from .patterns import cycle_from_edges
from .planarity import is_planar
from .reduction import ReductionTrace, to_irreducible

MODES = ("fast", "oracle", "both")

EXIT_CE = 0
EXIT_NOT_CE = 1
EXIT_NOT_APPLICABLE = 2
EXIT_INTERNAL = 3
EXIT_PARSE = 4


class InternalError(GraphError):
    """A self-check failed; ``report`` carries the graph and both outputs."""

    def __init__(self, message: str, report: Optional[dict] = None):
        super().__init__(message)
        self.report = report or {}


@dataclass
class Decision:
    verdict: str  # "CE", "NotCE" or "NotApplicable"
    mode: str
    reason: str = ""
    trace: Optional[ReductionTrace] = None
    terminal: str = "none"  # "K2", "bipartite", "family" or "none"
    certificate: Optional[FamilyCertificate] = None
    witness: Optional[CycleWitness] = None

    @property
    def exit_code(self) -> int:
        return {"CE": EXIT_CE, "NotCE": EXIT_NOT_CE}.get(self.verdict, EXIT_NOT_APPLICABLE)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "mode": self.mode}
        if self.reason:
            out["reason"] = self.reason
        if self.verdict == "NotApplicable":
            return out
        chain = {"terminal": self.terminal}
        if self.trace is not None:
            chain["reduction"] = self.trace.to_json()
            chain["irreducible"] = graph_to_json(self.trace.end)
        if self.certificate is not None:
            chain["family"] = self.certificate.to_json()
        out["certificate_chain"] = chain
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def applicability(g: Graph, allow_nonplanar: bool = False) -> Optional[str]:
    """Why ``g`` is not a connected planar matching covered graph, or None."""
    if g.n < 2 or not g.is_connected():
        return "graph is not connected or has fewer than two vertices"
    if not is_matching_covered(g):
        return "graph is not matching covered"
    if not allow_nonplanar and not is_planar(g):
        return "graph is not planar"
    return None


def lift_witness(trace: ReductionTrace, c: CycleWitness) -> CycleWitness:
    """Carry a non-conformal even cycle of ``trace.end`` back to ``trace.start``.

    A series step replaced ``w x y z`` by one edge; a cycle through that edge
    gets the path back.  Parallel steps only delete edges and need nothing.
    """
    verts = list(c.vertices)
    edges = list(c.edges)
    for st in reversed(trace.steps):
        if st.kind != "series" or st.inserted not in edges:
            continue
        w, x, y, z = st.path
        e1, e2, e3 = st.removed
        i = edges.index(st.inserted)
        if verts[i] == w:
            verts[i + 1:i + 1] = [x, y]
            edges[i:i + 1] = [e1, e2, e3]
        else:
            verts[i + 1:i + 1] = [y, x]
            edges[i:i + 1] = [e3, e2, e1]
    g = trace.start
    out = cycle_from_edges(g, edges)
    out.validate(g)
    if not out.is_even or is_conformal_subgraph(g, out.vertices):
        raise InternalError("lifted witness is not a non-conformal even cycle")
    return out


def _oracle_decision(g: Graph) -> Decision:
    v = brute_force_cycle_extendable(g)
    return Decision(v.verdict, "oracle", witness=v.witness)


def _fast_decision(g: Graph, with_witness: bool) -> Decision:
    h, trace = to_irreducible(g)
    if trace.k2_degenerate:
        return Decision("CE", "fast", trace=trace, terminal="K2")
    if h.is_bipartite():
        d = Decision("NotCE", "fast", trace=trace, terminal="bipartite")
    else:
        cert = recognize_family(h)
        if cert is not None:
            return Decision("CE", "fast", trace=trace, terminal="family", certificate=cert)
        d = Decision("NotCE", "fast", trace=trace, terminal="none")
    if with_witness:
        v = brute_force_cycle_extendable(h)
        if v.ce:
            raise InternalError(
                "structural recognizer says NotCE but the oracle finds the irreducible graph CE",
                {"graph": graph_to_json(g), "irreducible": graph_to_json(h)},
            )
        d.witness = lift_witness(trace, v.witness)
    return d


def decide(g: Graph, mode: str = "fast", allow_nonplanar: bool = False, with_witness: bool = True) -> Decision:
    """Decide whether ``g`` is cycle-extendable.

    ``both`` runs the fast pipeline and the oracle and raises
    :class:`InternalError` (with a bug report) if they disagree.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    why = applicability(g, allow_nonplanar=allow_nonplanar and mode == "oracle")
    if why is not None:
        return Decision("NotApplicable", mode, reason=why)
    if mode == "oracle":
        return _oracle_decision(g)
    fast = _fast_decision(g, with_witness)
    if mode == "fast":
        return fast
    orc = _oracle_decision(g)
    if orc.verdict != fast.verdict:
        raise InternalError(
            f"fast mode says {fast.verdict} but the oracle says {orc.verdict}",
            {"graph": graph_to_json(g), "fast": fast.to_json(), "oracle": orc.to_json()},
        )
    fast.mode = "both"
    if fast.witness is None:
        fast.witness = orc.witness
    return fast


def bug_report(err: InternalError) -> str:
    return json.dumps({"error": str(err), **err.report}, indent=2, sort_keys=True)
