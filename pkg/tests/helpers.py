"""Shared test utilities: graph builders, random generators, brute-force oracles.

The oracles here re-derive expected answers by exhaustive enumeration so the
production search paths are checked against an independent route.
"""

from __future__ import annotations

import itertools
import random

from bangraph.graphs import DirectedGraph, GraphMorphism, OpenGraph, is_exact_embedding
from bangraph.subgraph import SubgraphSpec, open_subgraph


def og(vertices, edges, boundary=(), labels=None) -> OpenGraph:
    """Shorthand open-graph builder; edges as (id, src, tgt) triples."""
    return OpenGraph(
        DirectedGraph.build(list(vertices), [(e, s, t) for e, s, t in edges], labels),
        frozenset(boundary),
    )


def path_graph(n_edges: int, open_ends: bool = False) -> OpenGraph:
    """A directed path v0 -> v1 -> ... with optional boundary endpoints."""
    vs = [f"v{i}" for i in range(n_edges + 1)]
    es = [(f"e{i}", f"v{i}", f"v{i+1}") for i in range(n_edges)]
    boundary = {vs[0], vs[-1]} if open_ends else set()
    return og(vs, es, boundary)


def wire() -> OpenGraph:
    """A single edge between two boundary vertices."""
    return og(["b1", "b2"], [("w", "b1", "b2")], {"b1", "b2"})


def random_open_graph(rng: random.Random, max_v: int = 6, max_e: int = 7, labelled: bool = False) -> OpenGraph:
    """A random open graph: random digraph plus boundary stubs."""
    n = rng.randint(0, max_v)
    vs = [f"v{i}" for i in range(n)]
    es = []
    if n:
        for i in range(rng.randint(0, max_e)):
            es.append((f"e{i}", rng.choice(vs), rng.choice(vs)))
    # attach boundary stubs to random vertices
    for i in range(rng.randint(0, 3)):
        if not vs:
            break
        b = f"b{i}"
        anchor = rng.choice(vs)
        if rng.random() < 0.5:
            es.append((f"be{i}", anchor, b))
        else:
            es.append((f"be{i}", b, anchor))
    boundary = {s for s, *_ in []}
    bs = [f"b{i}" for i in range(len([e for e in es if e[0].startswith('be')]))]
    labels = None
    if labelled and vs:
        labels = {v: rng.choice(["p", "q"]) for v in vs}
    return og(vs + bs, es, set(bs), labels)


def brute_matchings(
    needle: OpenGraph,
    haystack: OpenGraph,
    vertex_ok=None,
    max_cuts: int = 2,
) -> set[tuple]:
    """Independent oracle: try every cut spec and every injective map.

    Returns the set of canonical witness keys (cuts, vertex map, edge map).
    Canonical means: every cut flanks at least one matched piece and the
    matched pieces of an edge form one contiguous run.
    """
    ok = vertex_ok or (lambda a, b: a == b)
    ng = needle.graph
    found: set[tuple] = set()
    host_edges = sorted(haystack.graph.edges)
    for counts in itertools.product(range(max_cuts + 1), repeat=len(host_edges)):
        cuts = {e: c for e, c in zip(host_edges, counts) if c}
        sub, canon, chains = open_subgraph(haystack, SubgraphSpec(cuts, frozenset()))
        hg = sub.graph
        nv = sorted(ng.vertices)
        hv = sorted(hg.vertices)
        if len(nv) > len(hv) or len(ng.edges) > len(hg.edges):
            continue
        for images in itertools.permutations(hv, len(nv)):
            vmap = dict(zip(nv, images))
            if any(
                (vmap[v] in sub.boundary) != (v in needle.boundary) for v in nv
            ):
                continue
            if any(
                v not in needle.boundary and not ok(ng.label(v), hg.label(vmap[v]))
                for v in nv
            ):
                continue
            # per-needle-edge candidate host edges
            pools = []
            for e in sorted(ng.edges):
                s, t = vmap[ng.source[e]], vmap[ng.target[e]]
                pool = [x for x in sorted(hg.edges) if hg.source[x] == s and hg.target[x] == t]
                pools.append((e, pool))
            if any(not pool for _, pool in pools):
                continue
            for combo in itertools.product(*(pool for _, pool in pools)):
                if len(set(combo)) != len(combo):
                    continue
                emap = {e: x for (e, _), x in zip(pools, combo)}
                f = GraphMorphism(vmap, emap)
                if not is_exact_embedding(f, needle, sub):
                    continue
                if not _canonical_cuts(chains, set(emap.values())):
                    continue
                found.add(
                    (
                        tuple(sorted(cuts.items())),
                        tuple(sorted(vmap.items())),
                        tuple(sorted(emap.items())),
                        (),
                    )
                )
    return found


def _canonical_cuts(chains, used_edges: set[str]) -> bool:
    for chain in chains.values():
        hits = [i for i, p in enumerate(chain.pieces) if p in used_edges]
        if not hits:
            return False
        if hits != list(range(hits[0], hits[-1] + 1)):
            return False
        # every cut must flank a matched piece
        for j in range(len(chain.pieces) - 1):
            if j not in hits and (j + 1) not in hits:
                return False
    return True


def transcribe_split(g: OpenGraph, e: str, v1: str, v2: str) -> OpenGraph:
    """Literal transcription of the edge-splitting definition, for oracle use."""
    gr = g.graph
    source = {x: s for x, s in gr.source.items() if x != e}
    target = {x: t for x, t in gr.target.items() if x != e}
    source[v1] = gr.source[e]
    target[v1] = v1
    source[v2] = v2
    target[v2] = gr.target[e]
    graph = DirectedGraph(
        gr.vertices | {v1, v2}, (gr.edges - {e}) | {v1, v2}, source, target
    )
    return OpenGraph(graph, g.boundary | {v1, v2})
