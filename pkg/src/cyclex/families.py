"""Half biwheels, wheels, prisms and the four families G0 (generalized prisms),
G1 (generalized wheels), G2 (double half biwheels) and G3 (hexagon half
biwheels), with certificates that are checked by replaying the construction.

Vertex numbering of a generated half biwheel with path ``p0 .. p(2m)``:
path vertices first, hub last.  Corners are ``u = p0`` and ``v = p(2m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graph import Graph, GraphError
from .iso import find_isomorphism
from .matching import CycleWitness, enumerate_cycles, is_matching_covered, removable_doubletons

TAGS = ("g0", "g1", "g2", "g3")


class SpecError(GraphError):
    pass


@dataclass(frozen=True)
class HalfBiwheelSpec:
    path_length: int
    hub_side: str = "A"  # only meaningful inside G0

    def __post_init__(self):
        if not isinstance(self.path_length, int) or self.path_length < 0 or self.path_length % 2:
            raise SpecError(f"path_length must be a non-negative even integer, got {self.path_length!r}")
        if self.hub_side not in ("A", "B"):
            raise SpecError(f"hub_side must be 'A' or 'B', got {self.hub_side!r}")

    @property
    def order(self) -> int:
        return self.path_length + 2

    def to_json(self) -> dict:
        return {"path_length": self.path_length, "hub_side": self.hub_side}


def _part(obj) -> HalfBiwheelSpec:
    if isinstance(obj, HalfBiwheelSpec):
        return obj
    if isinstance(obj, int) and not isinstance(obj, bool):
        return HalfBiwheelSpec(obj)
    if isinstance(obj, dict):
        return HalfBiwheelSpec(obj.get("path_length", 0), obj.get("hub_side", "A"))
    raise SpecError(f"cannot read a half biwheel spec from {obj!r}")


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    parts: Tuple[HalfBiwheelSpec, ...]

    def __post_init__(self):
        if self.tag not in TAGS:
            raise SpecError(f"unknown family {self.tag!r}")
        k = len(self.parts)
        if self.tag in ("g0", "g1") and (k < 3 or k % 2 == 0):
            raise SpecError(f"{self.tag} needs an odd number (at least three) of half biwheels, got {k}")
        if self.tag == "g2":
            if k != 2:
                raise SpecError("g2 needs exactly two half biwheels")
            if any(p.path_length < 2 for p in self.parts):
                raise SpecError("g2 half biwheels must not be K2 (path_length >= 2)")
        if self.tag == "g3" and k != 1:
            raise SpecError("g3 needs exactly one half biwheel")
        if self.tag != "g0" and any(p.hub_side != "A" for p in self.parts):
            raise SpecError("hub_side is only used by g0")

    @property
    def order(self) -> int:
        base = sum(p.order for p in self.parts)
        return {"g0": base, "g1": base - len(self.parts) + 1, "g2": base, "g3": base + 6}[self.tag]

    def to_json(self) -> dict:
        if self.tag == "g0":
            parts = [p.to_json() for p in self.parts]
        else:
            parts = [p.path_length for p in self.parts]
        return {"family": self.tag, "parts": parts}

    @classmethod
    def from_json(cls, obj: dict, tag: Optional[str] = None) -> "FamilySpec":
        """Accepts ``{"family", "parts"}``, ``{"k"}`` (k copies of K2) or ``{"path_length"}`` (g3)."""
        if not isinstance(obj, dict):
            raise SpecError("spec must be a JSON object")
        t = (tag or obj.get("family") or "").lower()
        if t in ("g0", "g1", "g2", "g3") and "parts" in obj:
            parts = obj["parts"]
            if not isinstance(parts, list):
                raise SpecError("parts must be a list")
            return cls(t, tuple(_part(p) for p in parts))
        if t in ("g0", "g1") and "k" in obj:
            return cls(t, tuple(HalfBiwheelSpec(0) for _ in range(int(obj["k"]))))
        if t == "g3" and "path_length" in obj:
            return cls(t, (HalfBiwheelSpec(obj["path_length"]),))
        raise SpecError(f"cannot read a {t or 'family'} spec from {obj!r}")


@dataclass
class FamilyCertificate:
    """Spec plus the isomorphism ``vertex_map`` from the generated graph onto the input.

    ``roles`` and ``connectors`` name the construction's vertices and edges
    (hubs, corners, alpha/beta edges, E3 edges, hexagon vertices) in input ids.
    """

    spec: FamilySpec
    vertex_map: Dict[int, int]
    roles: Dict[str, int] = field(default_factory=dict)
    connectors: Dict[str, int] = field(default_factory=dict)

    @property
    def tag(self) -> str:
        return self.spec.tag

    def replay(self) -> Graph:
        """The defining construction, relabelled through ``vertex_map``."""
        h, _ = generate(self.spec)
        vm = self.vertex_map
        if sorted(vm) != list(h.vertices) or len(set(vm.values())) != len(vm):
            raise GraphError("certificate vertex map is not a bijection on the construction")
        return Graph(vm.values(), [(e, (vm[a], vm[b])) for e, (a, b) in h.edges()], h.next_eid)

    def validate(self, g: Graph) -> None:
        r = self.replay()
        if set(r.vertices) != set(g.vertices):
            raise GraphError("certificate does not cover the vertex set")
        want = sorted(uv for _, uv in g.edges())
        got = sorted(uv for _, uv in r.edges())
        if want != got:
            raise GraphError("certificate replay does not reproduce the graph")

    def to_json(self) -> dict:
        return {
            "family": self.tag,
            "spec": self.spec.to_json(),
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "roles": dict(sorted(self.roles.items())),
            "connectors": dict(sorted(self.connectors.items())),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FamilyCertificate":
        spec = FamilySpec.from_json(obj["spec"], obj.get("family"))
        return cls(spec, {int(k): v for k, v in obj["vertex_map"].items()},
                   dict(obj.get("roles", {})), dict(obj.get("connectors", {})))


# generators ----------------------------------------------------------------

class _Builder:
    def __init__(self):
        self.n = 0
        self.pairs: List[Tuple[int, int]] = []
        self.roles: Dict[str, int] = {}
        self.connectors: Dict[str, int] = {}

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, a: int, b: int, name: Optional[str] = None) -> int:
        self.pairs.append((a, b))
        if name:
            self.connectors[name] = len(self.pairs) - 1
        return len(self.pairs) - 1

    def half_biwheel(self, spec: HalfBiwheelSpec, hub: Optional[int] = None) -> Tuple[int, int, int]:
        """Add a half biwheel; returns ``(hub, u, v)``.  ``hub`` may be shared (G1)."""
        path = [self.vertex() for _ in range(spec.path_length + 1)]
        for a, b in zip(path, path[1:]):
            self.edge(a, b)
        if hub is None:
            hub = self.vertex()
        for p in path[::2]:
            self.edge(hub, p)
        return hub, path[0], path[-1]

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.pairs)


def gen_half_biwheel(spec) -> Graph:
    """Even path plus a hub joined to the path's even positions (``path_length`` 0 gives K2)."""
    b = _Builder()
    b.half_biwheel(_part(spec))
    return b.graph()


def half_biwheel_roles(spec) -> Dict[str, int]:
    s = _part(spec)
    return {"h": s.path_length + 1, "u": 0, "v": s.path_length}


def gen_wheel(k: int) -> Graph:
    """Odd rim ``0 .. k-1`` and hub ``k``."""
    if k < 3 or k % 2 == 0:
        raise SpecError(f"wheel rim length must be odd and at least three, got {k}")
    return Graph.from_edges(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(k, i) for i in range(k)])


def gen_prism(k: int) -> Graph:
    """Odd cycles ``w_i = i`` and ``z_i = k + i`` with rungs ``w_i z_i``."""
    if k < 3 or k % 2 == 0:
        raise SpecError(f"prism cycle length must be odd and at least three, got {k}")
    return Graph.from_edges(
        2 * k,
        [(i, (i + 1) % k) for i in range(k)] + [(k + i, k + (i + 1) % k) for i in range(k)] + [(i, k + i) for i in range(k)],
    )


def _finish(b: _Builder, spec: FamilySpec) -> Tuple[Graph, FamilyCertificate]:
    g = b.graph()
    return g, FamilyCertificate(spec, {v: v for v in g.vertices}, dict(b.roles), dict(b.connectors))


def gen_G0(spec: FamilySpec) -> Tuple[Graph, FamilyCertificate]:
    if spec.tag != "g0":
        raise SpecError("not a g0 spec")
    b = _Builder()
    lab = []
    for i, p in enumerate(spec.parts):
        h, u, v = b.half_biwheel(p)
        if p.hub_side == "A":
            w = x = h
            y, z = u, v
        else:
            y = z = h
            w, x = u, v
        lab.append((w, x, y, z))
        b.roles.update({f"h{i}": h, f"w{i}": w, f"x{i}": x, f"y{i}": y, f"z{i}": z})
    k = len(lab)
    for i in range(k):
        j = (i + 1) % k
        b.edge(lab[i][1], lab[j][0], f"alpha{i}")
        b.edge(lab[i][2], lab[j][3], f"beta{i}")
    return _finish(b, spec)


def gen_G1(spec: FamilySpec) -> Tuple[Graph, FamilyCertificate]:
    if spec.tag != "g1":
        raise SpecError("not a g1 spec")
    b = _Builder()
    h = b.vertex()
    b.roles["h"] = h
    ends = []
    for i, p in enumerate(spec.parts):
        _, u, v = b.half_biwheel(p, hub=h)
        ends.append((u, v))
        b.roles.update({f"u{i}": u, f"v{i}": v})
    k = len(ends)
    for i in range(k):
        b.edge(ends[i][1], ends[(i + 1) % k][0], f"e3_{i}")
    return _finish(b, spec)


def gen_G2(spec: FamilySpec) -> Tuple[Graph, FamilyCertificate]:
    if spec.tag != "g2":
        raise SpecError("not a g2 spec")
    b = _Builder()
    h0, u0, v0 = b.half_biwheel(spec.parts[0])
    h1, u1, v1 = b.half_biwheel(spec.parts[1])
    b.roles.update({"h0": h0, "u0": u0, "v0": v0, "h1": h1, "u1": u1, "v1": v1})
    b.edge(h1, h0, "alpha0")
    b.edge(v1, v0, "beta0")
    b.edge(u0, h1, "alpha1")
    b.edge(h0, u1, "beta1")
    return _finish(b, spec)


def gen_G3(spec: FamilySpec) -> Tuple[Graph, FamilyCertificate]:
    if spec.tag != "g3":
        raise SpecError("not a g3 spec")
    b = _Builder()
    a = [b.vertex() for _ in range(6)]
    for i in range(6):
        b.edge(a[i], a[(i + 1) % 6])
        b.roles[f"a{i}"] = a[i]
    h1, u1, v1 = b.half_biwheel(spec.parts[0])
    b.roles.update({"h1": h1, "u1": u1, "v1": v1})
    b.edge(h1, a[4], "alpha0")
    b.edge(v1, a[1], "beta0")
    b.edge(a[3], h1, "alpha1")
    b.edge(a[0], u1, "beta1")
    return _finish(b, spec)


_GEN = {"g0": gen_G0, "g1": gen_G1, "g2": gen_G2, "g3": gen_G3}


def generate(spec: FamilySpec) -> Tuple[Graph, FamilyCertificate]:
    return _GEN[spec.tag](spec)


def _even_lengths(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(0, total + 1, 2):
        for rest in _even_lengths(total - first, parts - 1):
            yield (first,) + rest


def family_specs(tag: str, max_order: int) -> List[FamilySpec]:
    """Every spec of the family with at most ``max_order`` vertices (isomorphic duplicates included)."""
    out = []
    if tag in ("g0", "g1"):
        for k in range(3, max_order + 1, 2):
            budget = max_order - (2 * k if tag == "g0" else k + 1)
            for total in range(0, budget + 1, 2):
                for lens in _even_lengths(total, k):
                    if tag == "g0":
                        sides_list = _side_choices(lens)
                        for sides in sides_list:
                            s = FamilySpec("g0", tuple(HalfBiwheelSpec(L, sd) for L, sd in zip(lens, sides)))
                            if s.order <= max_order:
                                out.append(s)
                    else:
                        s = FamilySpec("g1", tuple(HalfBiwheelSpec(L) for L in lens))
                        if s.order <= max_order:
                            out.append(s)
    elif tag == "g2":
        for a in range(2, max_order + 1, 2):
            for c in range(a, max_order + 1, 2):
                s = FamilySpec("g2", (HalfBiwheelSpec(a), HalfBiwheelSpec(c)))
                if s.order <= max_order:
                    out.append(s)
    elif tag == "g3":
        for L in range(0, max_order + 1, 2):
            s = FamilySpec("g3", (HalfBiwheelSpec(L),))
            if s.order <= max_order:
                out.append(s)
    else:
        raise SpecError(f"unknown family {tag!r}")
    return out


def _side_choices(lens: Sequence[int]) -> List[Tuple[str, ...]]:
    # hub side is irrelevant for K2 parts (either vertex may be the hub)
    out: List[Tuple[str, ...]] = [()]
    for L in lens:
        opts = ("A",) if L == 0 else ("A", "B")
        out = [t + (s,) for t in out for s in opts]
    return out


# recognition ---------------------------------------------------------------

def _half_biwheel_length(g: Graph, comp: Sequence[int]) -> Optional[int]:
    h = g.induced(comp)
    L = h.n - 2
    if L < 0 or L % 2:
        return None
    ref = gen_half_biwheel(L)
    if h.m != ref.m:
        return None
    return L if find_isomorphism(ref, h.compact()[0]) is not None else None


def _attach(spec: FamilySpec, g: Graph) -> Optional[FamilyCertificate]:
    gen, cert = generate(spec)
    if gen.n != g.n or gen.m != g.m:
        return None
    iso = find_isomorphism(gen, g)
    if iso is None:
        return None
    roles = {name: iso[v] for name, v in cert.roles.items()}
    conns = {}
    for name, e in cert.connectors.items():
        a, b = gen.endpoints(e)
        conns[name] = min(g.edges_between(iso[a], iso[b]))
    out = FamilyCertificate(spec, dict(iso), roles, conns)
    out.validate(g)
    return out


def _doubleton_structure(g: Graph):
    dts = removable_doubletons(g)
    if not dts:
        return None
    drop = {e for d in dts for e in d}
    rest = g.delete_edges(drop)
    comps = rest.components()
    where = {v: i for i, c in enumerate(comps) for v in c}
    return dts, comps, where


def _recognize_g0(g: Graph) -> Optional[FamilyCertificate]:
    st = _doubleton_structure(g)
    if st is None:
        return None
    dts, comps, where = st
    k = len(comps)
    if k < 3 or k % 2 == 0 or len(dts) != k:
        return None
    lens = [_half_biwheel_length(g, c) for c in comps]
    if any(L is None for L in lens):
        return None
    # components joined in a cycle by the doubletons
    link: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(k)}
    for d in dts:
        cs = {where[v] for e in d for v in g.endpoints(e)}
        if len(cs) != 2:
            return None
        a, c = sorted(cs)
        link[a].append((c, d))
        link[c].append((a, d))
    if any(len(x) != 2 for x in link.values()):
        return None
    order = [0]
    prev = None
    while True:
        nxt = [c for c, _ in link[order[-1]] if c != prev and c != order[-1]]
        if not nxt:
            return None
        if nxt[0] == 0:
            break
        prev = order[-1]
        order.append(nxt[0])
        if len(order) > k:
            return None
    if len(order) != k:
        return None
    # hub sides are not determined by the component shapes; the replay decides
    nonk2 = [t for t in range(k) if lens[order[t]]]
    for mask in range(1 << len(nonk2)):
        if nonk2 and (mask >> (len(nonk2) - 1)) & 1:
            break  # flipping every side gives an isomorphic member
        sides = ["A"] * k
        for j, t in enumerate(nonk2):
            if (mask >> j) & 1:
                sides[t] = "B"
        spec = FamilySpec("g0", tuple(HalfBiwheelSpec(lens[c], sides[t]) for t, c in enumerate(order)))
        cert = _attach(spec, g)
        if cert is not None:
            return cert
    return None


def _recognize_g1(g: Graph) -> Optional[FamilyCertificate]:
    for h in sorted(g.vertices, key=lambda v: (-g.degree(v), v)):
        rim = g.delete_vertices([h])
        if rim.n % 2 == 0 or rim.n < 3 or any(rim.degree(v) != 2 for v in rim.vertices) or not rim.is_connected():
            continue
        if rim.m != rim.n:
            continue
        hub_adj = set(g.neighbors(h))
        if set(rim.vertices) - hub_adj and any(
            all(w not in hub_adj for w in rim.neighbors(v)) for v in rim.vertices if v not in hub_adj
        ):
            continue
        # walk the rim from a hub neighbour
        start = min(hub_adj)
        seq = [start]
        prev = None
        cur = start
        while True:
            nb = [w for w in rim.neighbors(cur) if w != prev]
            nxt = min(nb) if prev is None else nb[0]
            if nxt == start:
                break
            seq.append(nxt)
            prev, cur = cur, nxt
        if len(seq) != rim.n:
            continue
        # boundaries are rim edges joining two hub neighbours
        L = len(seq)
        cuts = [i for i in range(L) if seq[i] in hub_adj and seq[(i + 1) % L] in hub_adj]
        if len(cuts) < 3 or len(cuts) % 2 == 0:
            continue
        lens = []
        for j, c in enumerate(cuts):
            nxt = cuts[(j + 1) % len(cuts)]
            seg = (nxt - c) % L
            lens.append(seg - 1)
        if any(x % 2 for x in lens):
            continue
        spec = FamilySpec("g1", tuple(HalfBiwheelSpec(x) for x in lens))
        cert = _attach(spec, g)
        if cert is not None:
            return cert
    return None


def _recognize_two_doubletons(g: Graph) -> Tuple[Optional[FamilyCertificate], Optional[FamilyCertificate]]:
    st = _doubleton_structure(g)
    if st is None:
        return None, None
    dts, comps, _ = st
    if len(dts) != 2 or len(comps) != 2:
        return None, None
    lens = [_half_biwheel_length(g, c) for c in comps]
    g2 = g3 = None
    if all(L is not None and L >= 2 for L in lens):
        a, c = sorted(lens)
        g2 = _attach(FamilySpec("g2", (HalfBiwheelSpec(a), HalfBiwheelSpec(c))), g)
    for i in range(2):
        other = comps[1 - i]
        hexa = g.induced(other)
        if lens[i] is not None and hexa.n == 6 and hexa.m == 6 and all(hexa.degree(v) == 2 for v in hexa.vertices):
            g3 = _attach(FamilySpec("g3", (HalfBiwheelSpec(lens[i]),)), g)
            if g3 is not None:
                break
    return g2, g3


def recognize_all(g: Graph) -> List[FamilyCertificate]:
    """Certificates for every family that ``g`` belongs to (at most one when families are disjoint)."""
    if g.n < 4 or not g.is_simple() or g.is_bipartite() or not g.is_connected():
        return []
    if not is_matching_covered(g):
        return []
    out = []
    for c in (_recognize_g0(g), _recognize_g1(g), *_recognize_two_doubletons(g)):
        if c is not None:
            out.append(c)
    return out


def recognize_family(g: Graph) -> Optional[FamilyCertificate]:
    """A validated certificate for the unique family containing ``g``, or None."""
    certs = recognize_all(g)
    if len(certs) > 1:
        raise GraphError("graph recognised in two families: " + ", ".join(c.tag for c in certs))
    return certs[0] if certs else None


# even-cycle probe ------------------------------------------------------------

def family_even_cycle_probe(g: Graph, cert: FamilyCertificate, x: int, w: int) -> Optional[CycleWitness]:
    """An even cycle of ``g - w`` through the cubic vertex ``x`` (``w`` a neighbour of ``x``), or None."""
    cert.validate(g)
    if g.degree(x) != 3:
        raise GraphError(f"vertex {x} is not cubic")
    if not g.multiplicity(x, w):
        raise GraphError(f"{w} is not a neighbour of {x}")
    h = g.delete_vertices([w])
    for c in enumerate_cycles(h, "even"):
        if x in c.vertex_set:
            return c
    return None


def probe_excluded(g: Graph, cert: FamilyCertificate, x: int, w: int) -> bool:
    """True when the family structure does not guarantee an even cycle for ``(x, w)``.

    G0, G2, G3: ``w`` lies in the same half biwheel as ``x`` and has degree three or more
    (for G3 a cubic vertex on the hexagon is always covered).  G1 (other than K4):
    ``w`` is the hub, or there are exactly three E3 edges and both ``x`` and ``w``
    are isolated in ``J - E3 - h``.
    """
    tag = cert.tag
    if tag == "g1":
        if g.n == 4:
            return True
        h = cert.roles["h"]
        if w == h:
            return True
        e3 = [e for k, e in cert.connectors.items() if k.startswith("e3_")]
        if len(e3) != 3:
            return False
        rest = g.delete_edges(e3).delete_vertices([h])
        return rest.degree(x) == 0 and rest.degree(w) == 0
    conns = list(cert.connectors.values())
    rest = g.delete_edges(conns)
    comp = next(c for c in rest.components() if x in c)
    if tag == "g3":
        hexagon = {cert.roles[f"a{i}"] for i in range(6)}
        if x in hexagon:
            return False
    return w in comp and g.degree(w) >= 3
