"""Edge-list, graph6, DOT and JSON serialization."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Optional, Union

from .graph import Graph, GraphError


class ParseError(GraphError):
    """Input text is not a valid graph encoding."""


# edge list ---------------------------------------------------------------

def parse_edgelist(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment.

    Edge ids are line indices (0-based, in file order).
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty edge list")
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParseError(f"line {lineno}: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"line {lineno}: 'n m' must be integers") from None
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative size")
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    pairs = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"line {lineno}: endpoints must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise ParseError(f"line {lineno}: loop at vertex {u}")
        pairs.append((u, v))
    return Graph.from_edges(n, pairs)


def to_edgelist(g: Graph) -> str:
    """Emit edge-list text; vertices are renumbered ``0..n-1`` in id order."""
    h, vmap = g.compact()
    lines = [f"{h.n} {h.m}"]
    lines += [f"{a} {b}" for _, (a, b) in h.edges()]
    return "\n".join(lines) + "\n"


# graph6 ------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError("graph6 output is limited to fewer than 258048 vertices")


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (simple graphs only)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    for ch in s:
        if not (63 <= ord(ch) <= 126):
            raise ParseError(f"invalid graph6 character {ch!r}")
    data = [ord(ch) - 63 for ch in s]
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise ParseError("graph6 sizes above 258047 are not supported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise ParseError(f"graph6 length mismatch: {n} vertices need {need} data bytes, got {len(body)}")
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, off = divmod(k, 6)
            if (body[byte] >> (5 - off)) & 1:
                pairs.append((i, j))
            k += 1
    tail = need * 6 - nbits
    if tail and body and body[-1] & ((1 << tail) - 1):
        raise ParseError("graph6 padding bits must be zero")
    return Graph.from_edges(n, pairs)


def to_graph6(g: Graph) -> str:
    """Encode a simple graph; vertices are taken in id order."""
    if not g.is_simple():
        raise GraphError("graph6 cannot represent parallel edges")
    h, _ = g.compact()
    n = h.n
    adj = set((a, b) for _, (a, b) in h.edges())
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in adj else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [_encode_n(n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


# auto-detect -------------------------------------------------------------

def parse_graph_text(text: str, fmt: Optional[str] = None) -> Graph:
    """Parse edge-list, graph6 or JSON text; ``fmt`` forces a format."""
    if fmt is None:
        stripped = text.strip()
        if stripped.startswith("{"):
            fmt = "json"
        elif stripped.startswith(">>graph6<<"):
            fmt = "graph6"
        else:
            first = next((ln.split("#", 1)[0].strip() for ln in stripped.splitlines()
                          if ln.split("#", 1)[0].strip()), "")
            fmt = "edgelist" if first[:1].isdigit() and len(first.split()) == 2 else "graph6"
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        lines = [ln for ln in text.split() if ln]
        if len(lines) != 1:
            raise ParseError("expected exactly one graph6 string")
        return parse_graph6(lines[0])
    if fmt == "json":
        try:
            return graph_from_json(json.loads(text))
        except (KeyError, TypeError, ValueError) as exc:  # includes JSONDecodeError and GraphError
            raise ParseError(f"bad graph JSON: {exc}") from None
    raise ParseError(f"unknown format {fmt!r}")


def read_graph(path: Union[str, Path], fmt: Optional[str] = None) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {p}: {exc}") from None
    if fmt is None:
        suffix = p.suffix.lower()
        fmt = {".g6": "graph6", ".el": "edgelist", ".json": "json"}.get(suffix)
    return parse_graph_text(text, fmt)


# JSON --------------------------------------------------------------------

def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[e, a, b] for e, (a, b) in g.edges()],
    }


def graph_from_json(obj: dict) -> Graph:
    return Graph(obj["vertices"], ((int(e), (a, b)) for e, a, b in obj["edges"]))


# DOT ---------------------------------------------------------------------

def to_dot(
    g: Graph,
    highlight_edges: Iterable[int] = (),
    highlight_vertices: Iterable[int] = (),
    name: str = "G",
) -> str:
    """Undirected DOT text; highlighted edges are bold red, vertices filled."""
    he = set(highlight_edges)
    hv = set(highlight_vertices)
    out = [f"graph {name} {{"]
    for v in g.vertices:
        style = ' [style=filled, fillcolor="#ffcc66"]' if v in hv else ""
        out.append(f"  {v}{style};")
    for e, (a, b) in g.edges():
        attrs = [f'label="{e}"']
        if e in he:
            attrs += ["color=red", "penwidth=3"]
        out.append(f"  {a} -- {b} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"
