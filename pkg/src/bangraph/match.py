"""Matching of open graphs: exact embeddings into open subgraphs of a host.

A witness pairs a subgraph spec (which host edges get cut, how many times)
with an exact embedding of the needle into that subgraph.  Witnesses are
enumerated canonically:

* component removals are never used (they cannot enable an embedding);
* every cut is adjacent to at least one matched piece, and the matched
  pieces of any host edge form one contiguous run along it;
* enumeration order is deterministic: needle interior vertices are
  processed by (degree descending, id ascending), host candidates by id.

The ``directed`` flag controls whether edge direction must be preserved.
Theories whose wires carry no orientation match with ``directed=False``;
the embedding then records which needle edges lie reversed on the host.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .graphs import DirectedGraph, GraphMorphism, OpenGraph
from .subgraph import EdgeChain, SubgraphSpec, open_subgraph

LabelPredicate = Callable[[object, object], bool]


def _labels_equal(a: object, b: object) -> bool:
    return a == b


@dataclass(frozen=True)
class Matching:
    """One witness that the needle matches the haystack."""

    spec: SubgraphSpec
    embedding: GraphMorphism
    subgraph: OpenGraph
    canonical: GraphMorphism
    chains: Mapping[str, EdgeChain] = field(default_factory=dict)
    flipped: frozenset[str] = frozenset()

    def key(self) -> tuple:
        """Hashable identity of the witness, for set comparisons in tests."""
        return (
            tuple(sorted(self.spec.split_edges.items())),
            tuple(sorted(self.embedding.vertex_map.items())),
            tuple(sorted(self.embedding.edge_map.items())),
            tuple(sorted(self.flipped)),
        )


@dataclass(frozen=True)
class _Leg:
    """A needle edge with one boundary endpoint, claiming one host edge-end."""

    needle_edge: str
    boundary_vertex: str
    host_edge: str
    host_end: str  # 's' if the interior image sits at the host edge's source
    flip: bool


def find_matchings(
    needle: OpenGraph,
    haystack: OpenGraph,
    vertex_ok: LabelPredicate | None = None,
    directed: bool = True,
) -> Iterator[Matching]:
    """Enumerate all canonical witnesses of ``needle <= haystack``."""
    ok = vertex_ok or _labels_equal
    N, H = needle, haystack
    ng, hg = N.graph, H.graph

    n_interior = sorted(N.interior, key=lambda v: (-ng.degree(v), v))
    wires = sorted(e for e in ng.edges if ng.source[e] in N.boundary and ng.target[e] in N.boundary)
    core = sorted(e for e in ng.edges if ng.source[e] in N.interior and ng.target[e] in N.interior)
    legs_at: dict[str, list[tuple[str, str, str]]] = {v: [] for v in N.interior}
    for e in sorted(ng.edges):
        s, t = ng.source[e], ng.target[e]
        if s in N.interior and t in N.boundary:
            legs_at[s].append((e, "s", t))
        elif t in N.interior and s in N.boundary:
            legs_at[t].append((e, "t", s))

    if not n_interior and not wires:
        sub, canon, chains = open_subgraph(haystack, SubgraphSpec())
        yield Matching(SubgraphSpec(), GraphMorphism({}, {}), sub, canon, chains)
        return

    def compatible(v: str, w: str) -> bool:
        if not ok(ng.label(v), hg.label(w)):
            return False
        if directed:
            return len(ng.in_edges(v)) == len(hg.in_edges(w)) and len(ng.out_edges(v)) == len(hg.out_edges(w))
        return ng.degree(v) == hg.degree(w)

    def pair_feasible(v: str, w: str, vmap: dict[str, str]) -> bool:
        # the host must offer at least as many edges as the needle core demands
        for u, x in vmap.items():
            if directed:
                for (a, b), (c, d) in (((v, u), (w, x)), ((u, v), (x, w))):
                    need = sum(1 for e in core if ng.source[e] == a and ng.target[e] == b)
                    have = sum(1 for e in hg.edges if hg.source[e] == c and hg.target[e] == d)
                    if need > have:
                        return False
            else:
                need = sum(1 for e in core if {ng.source[e], ng.target[e]} == {v, u} and ng.source[e] != ng.target[e])
                have = sum(1 for e in hg.edges if {hg.source[e], hg.target[e]} == {w, x} and hg.source[e] != hg.target[e])
                if need > have:
                    return False
        loops_n = sum(1 for e in core if ng.source[e] == ng.target[e] == v)
        loops_h = sum(1 for e in hg.edges if hg.source[e] == hg.target[e] == w)
        return loops_n <= loops_h

    def assign(i: int, vmap: dict[str, str]) -> Iterator[dict[str, str]]:
        if i == len(n_interior):
            yield dict(vmap)
            return
        v = n_interior[i]
        used = set(vmap.values())
        for w in sorted(H.interior):
            if w in used or not compatible(v, w) or not pair_feasible(v, w, vmap):
                continue
            vmap[v] = w
            yield from assign(i + 1, vmap)
            del vmap[v]

    def core_groups(vmap: dict[str, str]) -> list[tuple[list[str], list[str]]] | None:
        groups: dict[tuple, list[str]] = {}
        for e in core:
            s, t = ng.source[e], ng.target[e]
            key = (s, t) if directed else (min(s, t), max(s, t))
            groups.setdefault(key, []).append(e)
        out = []
        for key, n_edges in sorted(groups.items()):
            if directed:
                s, t = key
                h_edges = sorted(e for e in hg.edges if hg.source[e] == vmap[s] and hg.target[e] == vmap[t])
            else:
                a, b = key
                wa, wb = vmap[a], vmap[b]
                if a == b:
                    h_edges = sorted(e for e in hg.edges if hg.source[e] == hg.target[e] == wa)
                else:
                    h_edges = sorted(
                        e for e in hg.edges
                        if {hg.source[e], hg.target[e]} == {wa, wb} and hg.source[e] != hg.target[e]
                    )
            if len(n_edges) > len(h_edges):
                return None
            out.append((n_edges, h_edges))
        return out

    def inject_core(
        vmap: dict[str, str],
        groups: list[tuple[list[str], list[str]]],
        gi: int,
        emap: dict[str, str],
        flips: set[str],
    ) -> Iterator[tuple[dict[str, str], set[str]]]:
        if gi == len(groups):
            yield dict(emap), set(flips)
            return
        n_edges, h_edges = groups[gi]
        for perm in itertools.permutations(h_edges, len(n_edges)):
            added: list[str] = []
            for ne, he in zip(n_edges, perm):
                emap[ne] = he
                if not directed and ng.source[ne] != ng.target[ne] and vmap[ng.source[ne]] != hg.source[he]:
                    flips.add(ne)
                    added.append(ne)
            yield from inject_core(vmap, groups, gi + 1, emap, flips)
            for ne in n_edges:
                del emap[ne]
            for ne in added:
                flips.discard(ne)

    def slot_bijections(vmap: dict[str, str], consumed: set[str]) -> Iterator[list[_Leg]]:
        images = sorted(vmap.items())

        def per_vertex(idx: int, acc: list[_Leg]) -> Iterator[list[_Leg]]:
            if idx == len(images):
                yield list(acc)
                return
            v, w = images[idx]
            hslots = [("s", e) for e in hg.out_edges(w) if e not in consumed]
            hslots += [("t", e) for e in hg.in_edges(w) if e not in consumed]
            hslots.sort(key=lambda s: (s[1], s[0]))
            nlegs = legs_at[v]
            if len(nlegs) != len(hslots):
                return
            if directed:
                n_src = [l for l in nlegs if l[1] == "s"]
                n_tgt = [l for l in nlegs if l[1] == "t"]
                h_src = [s for s in hslots if s[0] == "s"]
                h_tgt = [s for s in hslots if s[0] == "t"]
                if len(n_src) != len(h_src):
                    return
                for ps in itertools.permutations(h_src):
                    for pt in itertools.permutations(h_tgt):
                        legs = [
                            _Leg(ne, b, he, end, False)
                            for (ne, _, b), (end, he) in zip(n_src, ps)
                        ] + [
                            _Leg(ne, b, he, end, False)
                            for (ne, _, b), (end, he) in zip(n_tgt, pt)
                        ]
                        acc.extend(legs)
                        yield from per_vertex(idx + 1, acc)
                        del acc[len(acc) - len(legs):]
            else:
                for perm in itertools.permutations(hslots):
                    legs = [
                        _Leg(ne, b, he, end, npos != end)
                        for (ne, npos, b), (end, he) in zip(nlegs, perm)
                    ]
                    acc.extend(legs)
                    yield from per_vertex(idx + 1, acc)
                    del acc[len(acc) - len(legs):]

        yield from per_vertex(0, [])

    def place_wires(eligible: list[str]) -> Iterator[dict[str, list[tuple[str, bool]]]]:
        def rec(i: int, layout: dict[str, list[tuple[str, bool]]]) -> Iterator[dict[str, list[tuple[str, bool]]]]:
            if i == len(wires):
                yield {e: list(seq) for e, seq in layout.items()}
                return
            wedge = wires[i]
            orientations = (False,) if directed else (False, True)
            for e in eligible:
                seq = layout.setdefault(e, [])
                for pos in range(len(seq) + 1):
                    for flip in orientations:
                        seq.insert(pos, (wedge, flip))
                        yield from rec(i + 1, layout)
                        seq.pop(pos)
                if not seq:
                    del layout[e]

        yield from rec(0, {})

    for vmap in assign(0, {}):
        image_set = set(vmap.values())
        groups = core_groups(vmap)
        if groups is None:
            continue
        for emap_core, flips_core in inject_core(vmap, groups, 0, {}, set()):
            consumed = set(emap_core.values())
            for legs in slot_bijections(vmap, consumed):
                legs_by_edge: dict[str, dict[str, _Leg]] = {}
                clash = False
                for leg in legs:
                    ends = legs_by_edge.setdefault(leg.host_edge, {})
                    if leg.host_end in ends:
                        clash = True
                        break
                    ends[leg.host_end] = leg
                if clash:
                    continue
                eligible = sorted(e for e in hg.edges if e not in consumed)
                for layout in place_wires(eligible):
                    plan = _plan_edges(H, image_set, legs_by_edge, layout)
                    if plan is None:
                        continue
                    decision_space, fixed = plan
                    for decisions in itertools.product(*decision_space):
                        chosen = dict(fixed)
                        chosen.update({(e, side): o for e, side, o in decisions})
                        m = _assemble(N, H, vmap, emap_core, flips_core, legs_by_edge, layout, chosen)
                        if m is not None:
                            yield m


def _plan_edges(
    H: OpenGraph,
    image_set: set[str],
    legs_by_edge: dict[str, dict[str, _Leg]],
    layout: dict[str, list[tuple[str, bool]]],
) -> tuple[list[list[tuple[str, str, str]]], dict[tuple[str, str], str]] | None:
    """Work out the admissible chain terminations for every touched host edge."""
    hg = H.graph
    decision_space: list[list[tuple[str, str, str]]] = []
    fixed: dict[tuple[str, str], str] = {}
    for e in sorted(set(layout) | set(legs_by_edge)):
        ends = legs_by_edge.get(e, {})
        nwires = len(layout.get(e, []))
        if not ends and nwires == 0:
            continue
        for side in ("s", "t"):
            if side in ends:
                continue
            endpoint = hg.source[e] if side == "s" else hg.target[e]
            other_leg = ("t" if side == "s" else "s") in ends
            if nwires == 0 and other_leg:
                # lone leg from the far side: take the whole edge or cut early
                if endpoint in H.boundary:
                    decision_space.append([(e, side, "full"), (e, side, "cut")])
                elif endpoint in image_set:
                    return None
                else:
                    fixed[(e, side)] = "cut"
            elif nwires > 0:
                if endpoint in H.boundary:
                    decision_space.append([(e, side, "attach"), (e, side, "cut")])
                elif endpoint in image_set:
                    return None
                else:
                    fixed[(e, side)] = "cut"
    return decision_space, fixed


def _assemble(
    N: OpenGraph,
    H: OpenGraph,
    vmap: dict[str, str],
    emap_core: dict[str, str],
    flips_core: set[str],
    legs_by_edge: dict[str, dict[str, _Leg]],
    layout: dict[str, list[tuple[str, bool]]],
    chosen: dict[tuple[str, str], str],
) -> Matching | None:
    hg = H.graph
    cuts: dict[str, int] = {}
    plans: dict[str, dict] = {}
    for e in sorted(set(layout) | set(legs_by_edge)):
        ends = legs_by_edge.get(e, {})
        wire_seq = layout.get(e, [])
        if not ends and not wire_seq:
            continue
        head = "anchor" if "s" in ends else chosen[(e, "s")]
        tail = "anchor" if "t" in ends else chosen[(e, "t")]
        elems = (1 if "s" in ends else 0) + len(wire_seq) + (1 if "t" in ends else 0)
        ncuts = elems - 1
        if head == "cut":
            ncuts += 1
        if tail == "cut":
            ncuts += 1
        if ncuts > 0:
            cuts[e] = ncuts
        plans[e] = {"head": head, "tail": tail, "ends": ends, "wires": wire_seq, "ncuts": ncuts}

    spec = SubgraphSpec(cuts, frozenset())
    sub, canon, chains = open_subgraph(H, spec)

    vertex_map: dict[str, str] = dict(vmap)
    edge_map: dict[str, str] = dict(emap_core)
    flips = set(flips_core)
    taken = set(vertex_map.values())

    def claim(b: str, target: str) -> bool:
        if target in taken:
            return False
        vertex_map[b] = target
        taken.add(target)
        return True

    def piece_source(e: str, i: int, chain: EdgeChain) -> str:
        return hg.source[e] if i == 0 else chain.stubs[i - 1][1]

    def piece_target(e: str, i: int, chain: EdgeChain) -> str:
        return hg.target[e] if i == len(chain.pieces) - 1 else chain.stubs[i][0]

    for e, plan in sorted(plans.items()):
        chain = chains.get(e, EdgeChain((e,), ()))
        k = plan["ncuts"]
        assert len(chain.pieces) == k + 1
        i = 1 if plan["head"] == "cut" else 0
        if "s" in plan["ends"]:
            leg = plan["ends"]["s"]
            edge_map[leg.needle_edge] = chain.pieces[i]
            if leg.flip:
                flips.add(leg.needle_edge)
            if not claim(leg.boundary_vertex, piece_target(e, i, chain)):
                return None
            i += 1
        for wedge, wflip in plan["wires"]:
            edge_map[wedge] = chain.pieces[i]
            b1, b2 = N.graph.source[wedge], N.graph.target[wedge]
            if wflip:
                b1, b2 = b2, b1
                flips.add(wedge)
            if not claim(b1, piece_source(e, i, chain)):
                return None
            if not claim(b2, piece_target(e, i, chain)):
                return None
            i += 1
        if "t" in plan["ends"]:
            leg = plan["ends"]["t"]
            edge_map[leg.needle_edge] = chain.pieces[i]
            if leg.flip:
                flips.add(leg.needle_edge)
            if not claim(leg.boundary_vertex, piece_source(e, i, chain)):
                return None
            i += 1
        assert i == k + 1 - (1 if plan["tail"] == "cut" else 0), (e, plan)

    emb = GraphMorphism(vertex_map, edge_map)
    return Matching(spec, emb, sub, canon, chains, frozenset(flips))


def matches(
    needle: OpenGraph,
    haystack: OpenGraph,
    vertex_ok: LabelPredicate | None = None,
    directed: bool = True,
) -> bool:
    """Decision form of the matching relation."""
    return next(find_matchings(needle, haystack, vertex_ok, directed), None) is not None


def graph_isomorphisms(
    gg: DirectedGraph,
    hh: DirectedGraph,
    class_g: Mapping[str, object] | None = None,
    class_h: Mapping[str, object] | None = None,
    vertex_ok: LabelPredicate | None = None,
) -> Iterator[GraphMorphism]:
    """All isomorphisms between two directed graphs.

    ``class_g``/``class_h`` assign each vertex a hashable class tag that the
    bijection must preserve (used for boundary/exterior membership).
    """
    ok = vertex_ok or _labels_equal
    cg = class_g or {}
    ch = class_h or {}
    if len(gg.vertices) != len(hh.vertices) or len(gg.edges) != len(hh.edges):
        return
    if sorted(map(repr, (cg.get(v) for v in gg.vertices))) != sorted(map(repr, (ch.get(v) for v in hh.vertices))):
        return

    order = sorted(gg.vertices, key=lambda v: (-gg.degree(v), v))

    def loops(g: DirectedGraph, v: str) -> int:
        return sum(1 for e in g.out_edges(v) if g.target[e] == v)

    def extend(i: int, vmap: dict[str, str]) -> Iterator[GraphMorphism]:
        if i == len(order):
            emap: dict[str, str] = {}
            pools: dict[tuple[str, str], list[str]] = {}
            for e in sorted(gg.edges):
                key = (vmap[gg.source[e]], vmap[gg.target[e]])
                pool = pools.setdefault(
                    key,
                    sorted(x for x in hh.edges if hh.source[x] == key[0] and hh.target[x] == key[1]),
                )
                if not pool:
                    return
                emap[e] = pool.pop(0)
            yield GraphMorphism(dict(vmap), emap)
            return
        v = order[i]
        used = set(vmap.values())
        for w in sorted(hh.vertices):
            if w in used:
                continue
            if cg.get(v) != ch.get(w):
                continue
            if len(hh.in_edges(w)) != len(gg.in_edges(v)) or len(hh.out_edges(w)) != len(gg.out_edges(v)):
                continue
            if loops(gg, v) != loops(hh, w):
                continue
            if not ok(gg.label(v), hh.label(w)):
                continue
            feasible = True
            for u, x in vmap.items():
                for a, b, c, d in ((v, u, w, x), (u, v, x, w)):
                    need = sum(1 for e in gg.edges if gg.source[e] == a and gg.target[e] == b)
                    have = sum(1 for e in hh.edges if hh.source[e] == c and hh.target[e] == d)
                    if need != have:
                        feasible = False
                        break
                if not feasible:
                    break
            if not feasible:
                continue
            vmap[v] = w
            yield from extend(i + 1, vmap)
            del vmap[v]

    yield from extend(0, {})


def isomorphisms(
    g: OpenGraph,
    h: OpenGraph,
    vertex_ok: LabelPredicate | None = None,
) -> Iterator[GraphMorphism]:
    """All isomorphisms of open graphs (boundary-preserving, label-compatible)."""
    cg = {v: ("b" if v in g.boundary else "i") for v in g.vertices}
    ch = {v: ("b" if v in h.boundary else "i") for v in h.vertices}
    yield from graph_isomorphisms(g.graph, h.graph, cg, ch, vertex_ok)


def is_isomorphic(g: OpenGraph, h: OpenGraph, vertex_ok: LabelPredicate | None = None) -> bool:
    """True iff there is a bijective exact embedding both ways."""
    return next(isomorphisms(g, h, vertex_ok), None) is not None
