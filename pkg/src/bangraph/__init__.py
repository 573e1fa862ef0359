"""Graph-based equational reasoning for compact closed categories.

The layers build on each other: plain open graphs and their matching
relation; extended graphs with exterior nodes; plugging (pushout
composition); concrete graphs forming the free compact closed category;
!-box graphs for ellipsis families; graph patterns and the equational
kernel; and the red/green quantum theory instantiation.
"""

from .graphs import (
    DirectedGraph,
    EMPTY_GRAPH,
    EMPTY_OPEN,
    GraphMorphism,
    OpenGraph,
    is_exact_embedding,
)
from .subgraph import SubgraphSpec, open_subgraph, remove_component, split_edge
from .match import Matching, find_matchings, is_isomorphic, isomorphisms, matches

__all__ = [
    "DirectedGraph",
    "EMPTY_GRAPH",
    "EMPTY_OPEN",
    "GraphMorphism",
    "OpenGraph",
    "is_exact_embedding",
    "SubgraphSpec",
    "open_subgraph",
    "remove_component",
    "split_edge",
    "Matching",
    "find_matchings",
    "is_isomorphic",
    "isomorphisms",
    "matches",
]
