"""Exhaustive small-graph corpus, a seeded larger sample, and labelled manifests.

Connected simple graphs on ``n`` vertices are generated by canonical
augmentation: level ``m + 1`` is every one-edge extension of level ``m``,
deduplicated by canonical code.  Each class is stored as the graph decoded
from its canonical code, so payloads do not depend on discovery order.
"""

from __future__ import annotations

import json
import os
import random
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import kernels
from .decomposition import tight_cut_decomposition
from .families import TAGS, family_specs, generate
from .graph import Graph
from .io import graph_to_json, to_graph6
from .iso import canonical_code
from .matching import brute_force_cycle_extendable, find_perfect_matching, is_matching_covered
from .planarity import is_planar

MANIFEST = "manifest.json"


def decode_code(n: int, code: int) -> Graph:
    pairs = []
    for j in range(1, n):
        base = j * (j - 1) // 2
        for i in range(j):
            if (code >> (base + i)) & 1:
                pairs.append((i, j))
    return Graph.from_edges(n, pairs)


def graphs_on(n: int, connected: bool = True) -> List[Graph]:
    """All simple graphs on ``n`` vertices up to isomorphism, by edge count then code."""
    if n < 1 or n > 12:
        raise ValueError("exhaustive generation is limited to 1 <= n <= 12")
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    empty = [0] * n
    level = {kernels.canonical_form(empty)[0]: empty}
    codes = [(0, c) for c in level]
    for m in range(1, len(pairs) + 1):
        nxt: Dict[int, List[int]] = {}
        for adj in level.values():
            for a, b in pairs:
                if (adj[a] >> b) & 1:
                    continue
                x = list(adj)
                x[a] |= 1 << b
                x[b] |= 1 << a
                c = kernels.canonical_form(x)[0]
                if c not in nxt:
                    nxt[c] = x
        level = nxt
        codes.extend((m, c) for c in sorted(nxt))
    out = [decode_code(n, c) for _, c in codes]
    return [g for g in out if g.is_connected()] if connected else out


def corpus_graphs(n_max: int) -> List[Graph]:
    """Connected simple graphs on even ``n`` with ``2 <= n <= n_max``."""
    out: List[Graph] = []
    for n in range(2, n_max + 1, 2):
        out.extend(graphs_on(n))
    return out


# labels --------------------------------------------------------------------

def label_graph(g: Graph) -> dict:
    """Labels recorded in the manifest; CE comes from the brute-force oracle."""
    from .recognizer import decide

    mcg = g.n >= 2 and g.is_connected() and is_matching_covered(g)
    planar = is_planar(g)
    rec = {"n": g.n, "m": g.m, "mcg": mcg, "planar": planar, "ce": None, "b": None, "p": None, "family": None}
    if not mcg:
        return rec
    rec["ce"] = brute_force_cycle_extendable(g).ce
    d = tight_cut_decomposition(g)
    rec["b"], rec["p"] = d.b, d.p
    if planar:
        fast = decide(g, "fast", with_witness=False)
        if fast.terminal == "K2":
            rec["family"] = "K2"
        elif fast.certificate is not None:
            rec["family"] = fast.certificate.tag
    return rec


@dataclass
class CorpusRecord:
    name: str
    payload: str
    labels: dict
    fmt: str = "graph6"

    def graph(self) -> Graph:
        from .io import graph_from_json, parse_graph6

        if self.fmt == "graph6":
            return parse_graph6(self.payload)
        return graph_from_json(json.loads(self.payload))

    def to_json(self) -> dict:
        return {"name": self.name, "format": self.fmt, "payload": self.payload, "labels": self.labels}

    @classmethod
    def from_json(cls, obj: dict) -> "CorpusRecord":
        return cls(obj["name"], obj["payload"], obj["labels"], obj.get("format", "graph6"))


@dataclass
class CorpusManifest:
    params: dict
    records: List[CorpusRecord] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"params": self.params, "records": [r.to_json() for r in self.records]}

    @classmethod
    def from_json(cls, obj: dict) -> "CorpusManifest":
        return cls(obj["params"], [CorpusRecord.from_json(r) for r in obj["records"]])


def _payload(g: Graph):
    if g.is_simple() and list(g.vertices) == list(range(g.n)):
        return "graph6", to_graph6(g)
    return "json", json.dumps(graph_to_json(g), sort_keys=True)


def _record(name: str, g: Graph, labels: Optional[dict] = None) -> CorpusRecord:
    fmt, payload = _payload(g)
    return CorpusRecord(name, payload, labels if labels is not None else label_graph(g), fmt)


def _label_many(graphs: Sequence[Graph], workers: int) -> List[dict]:
    if workers <= 1 or len(graphs) < 2:
        return [label_graph(g) for g in graphs]
    from multiprocessing import Pool

    with Pool(workers) as pool:
        return pool.map(label_graph, graphs, chunksize=16)


def build_corpus(n_max: int = 8, sample_seed: Optional[int] = None, sample_size: int = 0,
                 mcg_only: bool = False, workers: int = 1) -> CorpusManifest:
    """Exhaustive records for even ``n <= n_max``, plus an optional seeded sample at n = 10, 12."""
    if n_max > 10:
        raise ValueError("exhaustive generation is limited to n_max <= 10; use the sample for larger graphs")
    graphs = corpus_graphs(n_max)
    names = [f"n{g.n}-{i}" for i, g in enumerate(graphs)]
    if mcg_only:
        keep = [i for i, g in enumerate(graphs) if is_matching_covered(g)]
        graphs = [graphs[i] for i in keep]
        names = [names[i] for i in keep]
    params = {"n_max": n_max, "even_n_only": True, "connected": True, "mcg_only": mcg_only}
    if sample_size:
        seed = 0 if sample_seed is None else sample_seed
        sample = sample_graphs(seed, sample_size)
        graphs = graphs + [g for _, g in sample]
        names = names + [nm for nm, _ in sample]
        params.update({"sample_seed": seed, "sample_size": len(sample)})
    labels = _label_many(graphs, workers)
    return CorpusManifest(params, [_record(nm, g, lab) for nm, g, lab in zip(names, graphs, labels)])


def write_corpus(man: CorpusManifest, out_dir) -> Path:
    """Write ``manifest.json`` and ``graphs.g6`` atomically into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _atomic_write(out / MANIFEST, json.dumps(man.to_json(), indent=1, sort_keys=True) + "\n")
    g6 = "".join(r.payload + "\n" for r in man.records if r.fmt == "graph6")
    _atomic_write(out / "graphs.g6", g6)
    return out / MANIFEST


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_corpus(path) -> CorpusManifest:
    p = Path(path)
    if p.is_dir():
        p = p / MANIFEST
    return CorpusManifest.from_json(json.loads(p.read_text()))


def relabel_check(man: CorpusManifest) -> List[str]:
    """Names of records whose labels no longer reproduce from their payloads."""
    return [r.name for r in man.records if label_graph(r.graph()) != r.labels]


# sampling ------------------------------------------------------------------

def prune_to_allowed(g: Graph) -> Graph:
    """Delete every edge that lies in no perfect matching."""
    keep = []
    for e, (a, b) in g.edges():
        if find_perfect_matching(g.delete_vertices([a, b])) is not None or g.n == 2:
            keep.append(e)
    return Graph(g.vertices, ((e, g.endpoints(e)) for e in keep), g.next_eid)


def random_planar_mcg(rng: random.Random, n: int, tries: int = 200) -> Optional[Graph]:
    """Random planar graph pruned to its allowed edges; None if every try is disconnected."""
    for _ in range(tries):
        perm = list(range(n))
        rng.shuffle(perm)
        pairs = {tuple(sorted((perm[i], perm[i + 1]))) for i in range(0, n, 2)}
        target = rng.randint(n + 2, 2 * n + 2)
        cand = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in pairs]
        rng.shuffle(cand)
        g = Graph.from_edges(n, sorted(pairs))
        for a, b in cand:
            if g.m >= target:
                break
            h, _ = g.add_edge(a, b)
            if is_planar(h):
                g = h
        g = prune_to_allowed(g)
        if g.is_connected() and is_matching_covered(g):
            return Graph.from_edges(n, [uv for _, uv in g.edges()])
    return None


def bisubdivide(g: Graph, e: int, extra: int = 2) -> Graph:
    """Replace edge ``e`` by a path with ``extra`` (even) new internal vertices."""
    if extra % 2:
        raise ValueError("bisubdivision inserts an even number of vertices")
    a, b = g.endpoints(e)
    h = g.delete_edges([e])
    top = max(g.vertices) + 1
    new = list(range(top, top + extra))
    h = Graph(list(h.vertices) + new, h.edges(), h.next_eid)
    chain = [a] + new + [b]
    h, _ = h.with_edges(list(zip(chain, chain[1:])))
    return h


def family_members(max_order: int) -> List[Graph]:
    """One representative per isomorphism class of G0..G3 members up to ``max_order`` vertices."""
    seen = set()
    out = []
    for tag in TAGS:
        for spec in family_specs(tag, max_order):
            g, _ = generate(spec)
            c = canonical_code(g)
            if c not in seen:
                seen.add(c)
                out.append(g)
    return out


def sample_graphs(seed: int, size: int = 500, family_max: int = 14) -> List[tuple]:
    """Seeded sample of planar matching covered graphs, ``size`` of them on 10 or 12 vertices.

    Contents: every family member with at most ``family_max`` vertices,
    bisubdivisions of family members and of n = 8 planar corpus graphs (n = 10),
    copies with one doubled edge, and pruned random planar graphs at n = 10, 12.
    """
    rng = random.Random(seed)
    out: List[tuple] = []
    seen = set()

    def add(name: str, g: Graph) -> None:
        key = (g.n, tuple(sorted(uv for _, uv in g.edges())))
        if key not in seen:
            seen.add(key)
            out.append((name, g))

    fam = family_members(family_max)
    for i, g in enumerate(fam):
        add(f"family-{i}", g)
    small = [g for g in fam if g.n in (8, 10)]
    for i in range(60):
        g = rng.choice(small)
        add(f"family-bisub-{i}", bisubdivide(g, rng.choice(g.edge_ids())))
    eight = [g for g in graphs_on(8) if is_matching_covered(g) and is_planar(g)]
    ce8 = [g for g in eight if brute_force_cycle_extendable(g).ce]
    rest8 = [g for g in eight if g not in ce8]
    for i in range(40):
        g = rng.choice(ce8)
        add(f"ce8-bisub-{i}", bisubdivide(g, rng.choice(g.edge_ids())))
    for i in range(40):
        g = rng.choice(rest8)
        add(f"n8-bisub-{i}", bisubdivide(g, rng.choice(g.edge_ids())))
    for i in range(30):
        g = rng.choice(eight)
        g = bisubdivide(g, rng.choice(g.edge_ids()))
        h, _ = g.add_edge(*g.endpoints(rng.choice(g.edge_ids())))
        add(f"n10-parallel-{i}", h)
    i = 0
    while sum(1 for _, g in out if g.n in (10, 12)) < size:
        n = 10 if i % 2 == 0 else 12
        g = random_planar_mcg(rng, n)
        if g is not None:
            add(f"random{n}-{i}", g)
        i += 1
    return out
