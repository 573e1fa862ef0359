"""Open-subgraph operations: edge splitting, component removal, and their specs.

An open subgraph of a host graph is obtained by splitting a number of edges
(introducing fresh degree-1 boundary stubs) and then removing whole connected
components.  Splittings are standardised to come first; each operation
returns the canonical morphism embedding the result back into its input.

Splitting the same edge repeatedly cuts it into a chain of pieces.  The
spec for a subgraph therefore records a split *count* per edge; a count of
1 is the single split of the basic definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .graphs import DirectedGraph, GraphMorphism, OpenGraph, fresh_id


@dataclass(frozen=True)
class SubgraphSpec:
    """Which edges to split (with multiplicity) and which components to drop.

    ``removed_components`` holds one representative vertex per component to
    remove; components are taken in the graph *after* splitting.
    """

    split_edges: Mapping[str, int] = field(default_factory=dict)
    removed_components: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        for e, n in self.split_edges.items():
            if n < 1:
                raise ValueError(f"split count for {e!r} must be >= 1")

    @staticmethod
    def from_sets(split: set[str] | frozenset[str], removed: set[str] | frozenset[str] = frozenset()) -> "SubgraphSpec":
        return SubgraphSpec({e: 1 for e in split}, frozenset(removed))

    @property
    def is_empty(self) -> bool:
        return not self.split_edges and not self.removed_components


def _split_edge(g: OpenGraph, e: str) -> tuple[OpenGraph, GraphMorphism, str, str]:
    gr = g.graph
    if e not in gr.edges:
        raise KeyError(f"no such edge: {e!r}")
    e1 = fresh_id(f"{e}:1", set(gr.vertices) | set(gr.edges))
    e2 = fresh_id(f"{e}:2", set(gr.vertices) | set(gr.edges) | {e1})

    source = {x: s for x, s in gr.source.items() if x != e}
    target = {x: t for x, t in gr.target.items() if x != e}
    source[e1] = gr.source[e]
    target[e1] = e1
    source[e2] = e2
    target[e2] = gr.target[e]
    split = DirectedGraph(
        gr.vertices | {e1, e2},
        (gr.edges - {e}) | {e1, e2},
        source,
        target,
        dict(gr.labels),
    )
    vmap = {v: v for v in gr.vertices}
    vmap[e1] = gr.target[e]
    vmap[e2] = gr.source[e]
    emap = {x: x for x in gr.edges if x != e}
    emap[e1] = e
    emap[e2] = e
    return OpenGraph(split, g.boundary | {e1, e2}), GraphMorphism(vmap, emap), e1, e2


def split_edge(g: OpenGraph, e: str) -> tuple[OpenGraph, GraphMorphism]:
    """Split ``e`` into two half-edges ending at fresh boundary vertices.

    The returned morphism embeds the split graph back into ``g``: it is the
    identity everywhere except that both half-edges map to ``e`` and the two
    fresh vertices map to the old endpoints of ``e``.
    """
    split, morph, _, _ = _split_edge(g, e)
    return split, morph


def remove_component(g: OpenGraph, v: str) -> tuple[OpenGraph, GraphMorphism]:
    """Remove the connected component of ``v``; returns the coproduct injection."""
    if v not in g.graph.vertices:
        raise KeyError(f"no such vertex: {v!r}")
    cls = g.graph.component_of(v)
    keep_v = g.graph.vertices - cls
    keep_e = frozenset(e for e in g.graph.edges if g.graph.source[e] not in cls)
    sub = DirectedGraph(
        keep_v,
        keep_e,
        {e: g.graph.source[e] for e in keep_e},
        {e: g.graph.target[e] for e in keep_e},
        {u: l for u, l in g.graph.labels.items() if u in keep_v},
    )
    morph = GraphMorphism({u: u for u in keep_v}, {e: e for e in keep_e})
    return OpenGraph(sub, g.boundary - cls), morph


@dataclass(frozen=True)
class EdgeChain:
    """How one host edge was carved up: its pieces in source-to-target order.

    ``pieces`` are edge ids of the subgraph; ``stubs[i]`` is the pair of
    fresh boundary vertices (left, right) flanking cut ``i`` (the cut between
    ``pieces[i]`` and ``pieces[i+1]``).
    """

    pieces: tuple[str, ...]
    stubs: tuple[tuple[str, str], ...]


def open_subgraph(g: OpenGraph, spec: SubgraphSpec) -> tuple[OpenGraph, GraphMorphism, dict[str, EdgeChain]]:
    """Apply all splittings, then all removals; return the canonical embedding.

    Also returns, for every split host edge, the chain of pieces it became.
    """
    for e in spec.split_edges:
        if e not in g.graph.edges:
            raise KeyError(f"no such edge: {e!r}")
    for v in spec.removed_components:
        if v not in g.graph.vertices:
            raise KeyError(f"no such vertex: {v!r}")

    current = g
    morph = GraphMorphism.identity(g.graph)
    chains: dict[str, EdgeChain] = {}
    for e in sorted(spec.split_edges):
        pieces: list[str] = []
        stubs: list[tuple[str, str]] = []
        tail = e
        for _ in range(spec.split_edges[e]):
            current, step, head, tail = _split_edge(current, tail)
            morph = morph.compose(step)
            pieces.append(head)
            stubs.append((head, tail))  # stub vertices share the half-edge ids
        pieces.append(tail)
        chains[e] = EdgeChain(tuple(pieces), tuple(stubs))

    for v in sorted(spec.removed_components):
        if v not in current.graph.vertices:
            # representative vanished with an earlier removal
            continue
        current, step = remove_component(current, v)
        morph = morph.compose(step)
    chains = {e: c for e, c in chains.items() if all(p in current.graph.edges for p in c.pieces)}
    return current, morph, chains
