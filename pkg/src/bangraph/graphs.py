"""Finite directed graphs, open graphs with degree-1 boundaries, and graph morphisms.

All values are immutable after construction and safe to share between
threads.  Vertices and edges are opaque string identifiers; parallel edges
and self-loops are permitted.  Vertex payloads (``labels``) are opaque to
this module and only threaded through the structural operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping


def fresh_id(base: str, taken: set[str]) -> str:
    """Return ``base`` if unused, else the first unused ``base:k``."""
    if base not in taken:
        return base
    k = 1
    while f"{base}:{k}" in taken:
        k += 1
    return f"{base}:{k}"


@dataclass(frozen=True)
class DirectedGraph:
    """A 4-tuple (V, E, s, t) plus an optional vertex label map."""

    vertices: frozenset[str]
    edges: frozenset[str]
    source: Mapping[str, str]
    target: Mapping[str, str]
    labels: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if set(self.source) != set(self.edges) or set(self.target) != set(self.edges):
            raise ValueError("source/target must be defined on exactly the edge set")
        for e in self.edges:
            if self.source[e] not in self.vertices or self.target[e] not in self.vertices:
                raise ValueError(f"edge {e!r} has a dangling endpoint")
        for v in self.labels:
            if v not in self.vertices:
                raise ValueError(f"label on unknown vertex {v!r}")
        ins: dict[str, list[str]] = {v: [] for v in self.vertices}
        outs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            outs[self.source[e]].append(e)
            ins[self.target[e]].append(e)
        object.__setattr__(self, "_in", {v: tuple(es) for v, es in ins.items()})
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in outs.items()})

    @staticmethod
    def build(
        vertices: Iterator[str] | list[str] | set[str],
        edges: Mapping[str, tuple[str, str]] | list[tuple[str, str, str]] = (),
        labels: Mapping[str, object] | None = None,
    ) -> "DirectedGraph":
        """Convenience constructor; ``edges`` maps id -> (source, target)."""
        if isinstance(edges, Mapping):
            items = [(e, s, t) for e, (s, t) in edges.items()]
        else:
            items = list(edges)
        return DirectedGraph(
            vertices=frozenset(vertices),
            edges=frozenset(e for e, _, _ in items),
            source={e: s for e, s, _ in items},
            target={e: t for e, _, t in items},
            labels=dict(labels or {}),
        )

    def in_edges(self, v: str) -> tuple[str, ...]:
        return self._in[v]  # type: ignore[attr-defined]

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._out[v]  # type: ignore[attr-defined]

    def degree(self, v: str) -> int:
        return len(self.in_edges(v)) + len(self.out_edges(v))

    def label(self, v: str) -> object:
        return self.labels.get(v)

    def neighbours(self, v: str) -> set[str]:
        out = {self.target[e] for e in self.out_edges(v)}
        out.update(self.source[e] for e in self.in_edges(v))
        return out

    def component_of(self, v: str) -> frozenset[str]:
        """Equivalence class of ``v`` under the connectedness relation."""
        if v not in self.vertices:
            raise KeyError(f"no such vertex: {v!r}")
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in self.neighbours(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def components(self) -> list[frozenset[str]]:
        remaining = set(self.vertices)
        out = []
        while remaining:
            c = self.component_of(min(remaining))
            out.append(c)
            remaining -= c
        return sorted(out, key=min)

    def edges_within(self, vs: frozenset[str] | set[str]) -> frozenset[str]:
        return frozenset(e for e in self.edges if self.source[e] in vs or self.target[e] in vs)

    def relabel(self, labels: Mapping[str, object]) -> "DirectedGraph":
        return DirectedGraph(self.vertices, self.edges, self.source, self.target, dict(labels))


EMPTY_GRAPH = DirectedGraph(frozenset(), frozenset(), {}, {})


@dataclass(frozen=True)
class OpenGraph:
    """A directed graph with a set of degree-1 boundary vertices."""

    graph: DirectedGraph
    boundary: frozenset[str]

    def __post_init__(self) -> None:
        if not self.boundary <= self.graph.vertices:
            raise ValueError("boundary must be a subset of the vertex set")
        for v in self.boundary:
            if self.graph.degree(v) != 1:
                raise ValueError(f"boundary vertex {v!r} has degree {self.graph.degree(v)}, not 1")

    @property
    def interior(self) -> frozenset[str]:
        return self.graph.vertices - self.boundary

    @property
    def vertices(self) -> frozenset[str]:
        return self.graph.vertices

    @property
    def edges(self) -> frozenset[str]:
        return self.graph.edges


EMPTY_OPEN = OpenGraph(EMPTY_GRAPH, frozenset())


@dataclass(frozen=True)
class GraphMorphism:
    """Vertex and edge maps between two graphs."""

    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]

    def __call__(self, v: str) -> str:
        return self.vertex_map[v]

    def compose(self, other: "GraphMorphism") -> "GraphMorphism":
        """self after other: (self . other)(x) = self(other(x))."""
        return GraphMorphism(
            {v: self.vertex_map[w] for v, w in other.vertex_map.items()},
            {e: self.edge_map[f] for e, f in other.edge_map.items()},
        )

    @staticmethod
    def identity(g: DirectedGraph) -> "GraphMorphism":
        return GraphMorphism({v: v for v in g.vertices}, {e: e for e in g.edges})


def is_homomorphism(f: GraphMorphism, g: DirectedGraph, h: DirectedGraph) -> bool:
    """Check the structure-preservation square: s_h . f_E = f_V . s_g and likewise for t."""
    if set(f.vertex_map) != set(g.vertices) or set(f.edge_map) != set(g.edges):
        return False
    if not set(f.vertex_map.values()) <= h.vertices or not set(f.edge_map.values()) <= h.edges:
        return False
    for e in g.edges:
        if h.source[f.edge_map[e]] != f.vertex_map[g.source[e]]:
            return False
        if h.target[f.edge_map[e]] != f.vertex_map[g.target[e]]:
            return False
    return True


def is_open_morphism(f: GraphMorphism, g: OpenGraph, h: OpenGraph) -> bool:
    """Homomorphism that never maps interior vertices onto the boundary."""
    if not is_homomorphism(f, g.graph, h.graph):
        return False
    return all(v in g.boundary for v in g.vertices if f.vertex_map[v] in h.boundary)


def is_strict(f: GraphMorphism, g: OpenGraph, h: OpenGraph) -> bool:
    """No edge of ``h`` touches the image of the interior without being hit by ``f``."""
    interior_image = {f.vertex_map[v] for v in g.interior}
    hit = set(f.edge_map.values())
    for e in h.edges:
        if (h.graph.source[e] in interior_image or h.graph.target[e] in interior_image) and e not in hit:
            return False
    return True


def is_exact_embedding(f: GraphMorphism, g: OpenGraph, h: OpenGraph) -> bool:
    """Strict, injective on vertices and edges, and boundary-reflecting both ways."""
    if not is_open_morphism(f, g, h):
        return False
    if len(set(f.vertex_map.values())) != len(f.vertex_map):
        return False
    if len(set(f.edge_map.values())) != len(f.edge_map):
        return False
    if not is_strict(f, g, h):
        return False
    for v in g.vertices:
        if (f.vertex_map[v] in h.boundary) != (v in g.boundary):
            return False
    return True
