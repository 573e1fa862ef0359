"""Extended open graphs: exterior nodes of arbitrary degree and their matching.

An exterior node marks a point outside the graph where any number of edges
meet.  Relaxation splits every exterior node into degree-1 boundary stubs,
giving the most permissive open graph that matches it; the heart relation
remembers which stubs came from the same exterior node, and matches must
map hearts consistently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .graphs import DirectedGraph, GraphMorphism, OpenGraph, fresh_id
from .match import LabelPredicate, Matching, find_matchings, graph_isomorphisms


@dataclass(frozen=True)
class EGraph:
    """A directed graph with a distinguished set of exterior vertices."""

    graph: DirectedGraph
    exterior: frozenset[str]

    def __post_init__(self) -> None:
        if not self.exterior <= self.graph.vertices:
            raise ValueError("exterior must be a subset of the vertex set")

    @property
    def interior(self) -> frozenset[str]:
        return self.graph.vertices - self.exterior

    @property
    def vertices(self) -> frozenset[str]:
        return self.graph.vertices

    @property
    def edges(self) -> frozenset[str]:
        return self.graph.edges

    @staticmethod
    def from_open(g: OpenGraph) -> "EGraph":
        return EGraph(g.graph, g.boundary)


EMPTY_EGRAPH = EGraph(DirectedGraph(frozenset(), frozenset(), {}, {}), frozenset())


@dataclass(frozen=True)
class HeartPartition:
    """Stubs of a relaxed graph, grouped by the exterior node they came from."""

    classes: Mapping[str, frozenset[str]]

    def owner_map(self) -> dict[str, str]:
        return {s: x for x, stubs in self.classes.items() for s in stubs}


def split_vertex(g: EGraph, x: str) -> tuple[EGraph, GraphMorphism]:
    """Replace ``x`` by one fresh degree-1 vertex per incident edge end.

    The canonical map back into ``g`` is the identity on edges and collapses
    the fresh vertices onto ``x``.
    """
    gr = g.graph
    if x not in gr.vertices:
        raise KeyError(f"no such vertex: {x!r}")
    taken = set(gr.vertices) | set(gr.edges)
    source = dict(gr.source)
    target = dict(gr.target)
    new_vertices: list[str] = []
    for e in gr.out_edges(x):
        v = fresh_id(f"{e}:s", taken)
        taken.add(v)
        new_vertices.append(v)
        source[e] = v
    for e in gr.in_edges(x):
        v = fresh_id(f"{e}:t", taken)
        taken.add(v)
        new_vertices.append(v)
        target[e] = v
    graph = DirectedGraph(
        (gr.vertices - {x}) | frozenset(new_vertices),
        gr.edges,
        source,
        target,
        {v: l for v, l in gr.labels.items() if v != x},
    )
    vmap = {v: v for v in gr.vertices if v != x}
    vmap.update({v: x for v in new_vertices})
    emap = {e: e for e in gr.edges}
    return (
        EGraph(graph, (g.exterior - {x}) | frozenset(new_vertices)),
        GraphMorphism(vmap, emap),
    )


def relax(g: EGraph) -> tuple[OpenGraph, HeartPartition, GraphMorphism]:
    """Split every exterior vertex; all resulting stubs become the boundary.

    Returns the relaxed open graph, the heart partition of its stubs keyed
    by originating exterior vertex, and the collapsing map back into ``g``.
    """
    current = g
    collapse = GraphMorphism.identity(g.graph)
    classes: dict[str, frozenset[str]] = {}
    for x in sorted(g.exterior):
        before = current.vertices
        current, step = split_vertex(current, x)
        collapse = collapse.compose(step)
        classes[x] = frozenset(current.vertices - before)
    boundary = frozenset(v for stubs in classes.values() for v in stubs)
    return OpenGraph(current.graph, boundary), HeartPartition(classes), collapse


@dataclass(frozen=True)
class EMatch:
    """A matching of relaxed graphs together with its heart witness.

    ``anchors`` maps each needle exterior node (with at least one incident
    edge) to the haystack vertex all its stubs collapse onto.
    """

    matching: Matching
    anchors: Mapping[str, str]
    needle_relaxed: OpenGraph = field(repr=False, default=None)  # type: ignore[assignment]
    needle_hearts: HeartPartition = field(repr=False, default=None)  # type: ignore[assignment]

    def key(self) -> tuple:
        return self.matching.key() + (tuple(sorted(self.anchors.items())),)


def e_match(
    needle: EGraph,
    haystack: EGraph,
    vertex_ok: LabelPredicate | None = None,
    directed: bool = True,
) -> Iterator[EMatch]:
    """Enumerate witnesses of the configuration-respecting matching relation."""
    rn, hearts_n, _ = relax(needle)
    rh, hearts_h, collapse_h = relax(haystack)
    owner_h = hearts_h.owner_map()

    for m in find_matchings(rn, rh, vertex_ok, directed):
        anchors: dict[str, str] = {}
        ok = True
        for x in sorted(hearts_n.classes):
            stubs = hearts_n.classes[x]
            if not stubs:
                continue
            vals = set()
            for s in stubs:
                v_sub = m.embedding.vertex_map[s]
                v_rel = m.canonical.vertex_map[v_sub]
                vals.add(owner_h.get(v_rel, v_rel))
            if len(vals) != 1:
                ok = False
                break
            anchors[x] = vals.pop()
        if ok:
            yield EMatch(m, anchors, rn, hearts_n)


def e_matches(
    needle: EGraph,
    haystack: EGraph,
    vertex_ok: LabelPredicate | None = None,
    directed: bool = True,
) -> bool:
    return next(e_match(needle, haystack, vertex_ok, directed), None) is not None


def egraph_isomorphisms(
    g: EGraph,
    h: EGraph,
    vertex_ok: LabelPredicate | None = None,
) -> Iterator[GraphMorphism]:
    cg = {v: ("x" if v in g.exterior else "i") for v in g.vertices}
    ch = {v: ("x" if v in h.exterior else "i") for v in h.vertices}
    yield from graph_isomorphisms(g.graph, h.graph, cg, ch, vertex_ok)


def egraph_isomorphic(g: EGraph, h: EGraph, vertex_ok: LabelPredicate | None = None) -> bool:
    return next(egraph_isomorphisms(g, h, vertex_ok), None) is not None
