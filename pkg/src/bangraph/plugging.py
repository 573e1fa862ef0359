"""Plugging: gluing two e-graphs along a shared two-sided interface graph.

The interface is an all-exterior graph whose vertices are partitioned into a
front set (anchored in the left graph's exterior) and a back set (anchored in
the right graph's exterior).  The plug is the pushout: the disjoint union
quotiented by identifying the two anchor images of every interface element.

Tensor product is the special case of an empty interface; sequential
composition arises from wire-shaped interfaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .egraph import EGraph, EMatch
from .graphs import DirectedGraph, GraphMorphism, fresh_id, is_homomorphism


@dataclass(frozen=True)
class TwoSidedGraph:
    """A graph whose vertices are split into a front and a back set."""

    graph: DirectedGraph
    front: frozenset[str]
    back: frozenset[str]

    def __post_init__(self) -> None:
        if self.front | self.back != self.graph.vertices or self.front & self.back:
            raise ValueError("front and back must partition the vertex set")

    def as_egraph(self) -> EGraph:
        return EGraph(self.graph, self.graph.vertices)

    def swapped(self) -> "TwoSidedGraph":
        return TwoSidedGraph(self.graph, self.back, self.front)


EMPTY_INTERFACE = TwoSidedGraph(DirectedGraph(frozenset(), frozenset(), {}, {}), frozenset(), frozenset())


class PlugError(ValueError):
    pass


@dataclass(frozen=True)
class PlugSpec:
    """Interface graph plus the anchor morphisms into both sides.

    The anchors are the vertex/edge images induced by matching the interface
    into each side; since interface vertices are all exterior, a matching
    with given anchors exists exactly when the anchors form a graph
    homomorphism, so the anchors carry the whole content of the embeddings.
    """

    interface: TwoSidedGraph
    left: GraphMorphism
    right: GraphMorphism

    @staticmethod
    def from_ematches(interface: TwoSidedGraph, left: EMatch, right: EMatch) -> "PlugSpec":
        return PlugSpec(
            interface,
            _anchor_morphism(interface, left),
            _anchor_morphism(interface, right),
        )

    def swapped(self) -> "PlugSpec":
        return PlugSpec(self.interface.swapped(), self.right, self.left)


def _anchor_morphism(interface: TwoSidedGraph, em: EMatch) -> GraphMorphism:
    vmap = dict(em.anchors)
    missing = interface.graph.vertices - set(vmap)
    if missing:
        raise PlugError(f"ematch provides no anchors for degree-0 interface vertices {sorted(missing)}")
    emap = {}
    for e in interface.graph.edges:
        piece = em.matching.embedding.edge_map[e]
        emap[e] = em.matching.canonical.edge_map[piece]
    return GraphMorphism(vmap, emap)


def _validate(spec: PlugSpec, g: EGraph, h: EGraph) -> None:
    pi = spec.interface
    if not is_homomorphism(spec.left, pi.graph, g.graph):
        raise PlugError("plug interface violation: left anchors are not a morphism")
    if not is_homomorphism(spec.right, pi.graph, h.graph):
        raise PlugError("plug interface violation: right anchors are not a morphism")
    for v in pi.front:
        if spec.left.vertex_map[v] not in g.exterior:
            raise PlugError(f"plug interface violation: front vertex {v!r} not anchored on left exterior")
    for v in pi.back:
        if spec.right.vertex_map[v] not in h.exterior:
            raise PlugError(f"plug interface violation: back vertex {v!r} not anchored on right exterior")


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return out


def plug(spec: PlugSpec, g: EGraph, h: EGraph) -> EGraph:
    """Pushout of ``g`` and ``h`` along the interface anchors.

    Identified vertices keep the left id; they remain exterior only when
    every identified preimage is exterior on its own side, so interfaces
    crossed by wires are consumed while mere meeting points stay open.
    """
    _validate(spec, g, h)

    taken = set(g.vertices) | set(g.edges)
    h_v: dict[str, str] = {}
    for v in sorted(h.vertices):
        h_v[v] = fresh_id(v, taken)
        taken.add(h_v[v])
    h_e: dict[str, str] = {}
    for e in sorted(h.edges):
        h_e[e] = fresh_id(e, taken)
        taken.add(h_e[e])

    uf_v = _UnionFind()
    for v in sorted(g.vertices):
        uf_v.find(v)
    for v in sorted(h.vertices):
        uf_v.find(h_v[v])
    uf_e = _UnionFind()
    for e in sorted(g.edges):
        uf_e.find(e)
    for e in sorted(h.edges):
        uf_e.find(h_e[e])

    for z in sorted(spec.interface.graph.vertices):
        uf_v.union(spec.left.vertex_map[z], h_v[spec.right.vertex_map[z]])
    for z in sorted(spec.interface.graph.edges):
        uf_e.union(spec.left.edge_map[z], h_e[spec.right.edge_map[z]])

    def rep(cls: set[str], left_ids: set[str]) -> str:
        in_left = sorted(cls & left_ids)
        return in_left[0] if in_left else sorted(cls)[0]

    vclasses = uf_v.classes()
    vrep = {}
    for cls in vclasses.values():
        r = rep(cls, set(g.vertices))
        for m in cls:
            vrep[m] = r
    eclasses = uf_e.classes()
    erep = {}
    for cls in eclasses.values():
        r = rep(cls, set(g.edges))
        for m in cls:
            erep[m] = r

    source: dict[str, str] = {}
    target: dict[str, str] = {}

    def put(re: str, s: str, t: str) -> None:
        if re in source and (source[re] != s or target[re] != t):
            raise PlugError("plug interface violation: identified edges disagree on endpoints")
        source[re] = s
        target[re] = t

    for e in g.edges:
        put(erep[e], vrep[g.graph.source[e]], vrep[g.graph.target[e]])
    for e in h.edges:
        put(erep[h_e[e]], vrep[h_v[h.graph.source[e]]], vrep[h_v[h.graph.target[e]]])

    labels: dict[str, object] = {}
    conflicts: dict[str, set] = {}
    for v, l in g.graph.labels.items():
        conflicts.setdefault(vrep[v], set()).add(l)
    for v, l in h.graph.labels.items():
        conflicts.setdefault(vrep[h_v[v]], set()).add(l)
    for r, ls in conflicts.items():
        ls.discard(None)
        if len(ls) > 1:
            raise PlugError(f"plug label conflict at {r!r}")
        if ls:
            labels[r] = next(iter(ls))

    def member_exterior(member: str) -> bool:
        if member in g.vertices:
            return member in g.exterior
        orig = next(v for v, f in h_v.items() if f == member)
        return orig in h.exterior

    exterior = set()
    for cls in vclasses.values():
        if all(member_exterior(m) for m in cls):
            exterior.add(vrep[next(iter(cls))])

    graph = DirectedGraph(
        frozenset(vrep[v] for v in vrep),
        frozenset(erep[e] for e in erep),
        source,
        target,
        labels,
    )
    return EGraph(graph, frozenset(exterior))


def tensor(g: EGraph, h: EGraph) -> EGraph:
    """Disjoint union (with id freshening): plugging along the empty graph."""
    return plug(PlugSpec(EMPTY_INTERFACE, GraphMorphism({}, {}), GraphMorphism({}, {})), g, h)


def plug_vertices(g: EGraph, h: EGraph, pairs: Mapping[str, str], side: str = "front") -> EGraph:
    """Glue at shared points: a discrete interface, one vertex per pair.

    ``pairs`` maps g-vertices to h-vertices.  With ``side="front"`` the
    g-anchors must be exterior in ``g``; with ``side="back"`` the h-anchors
    must be exterior in ``h`` and the g-side is unconstrained.
    """
    vs = [f"p{i}" for i in range(len(pairs))]
    front, back = (frozenset(vs), frozenset()) if side == "front" else (frozenset(), frozenset(vs))
    iface = TwoSidedGraph(DirectedGraph.build(vs), front, back)
    items = sorted(pairs.items())
    left = GraphMorphism({p: a for p, (a, _) in zip(vs, items)}, {})
    right = GraphMorphism({p: b for p, (_, b) in zip(vs, items)}, {})
    return plug(PlugSpec(iface, left, right), g, h)
