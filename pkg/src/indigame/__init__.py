"""Exact engine, recognizers and constructors for the indicated list-colouring game."""

from .graphs import (
    BlowupSpec,
    Graph,
    LabeledPair,
    ListAssignment,
    blow_up,
    canonical_key,
    connected_components,
    cut_vertices,
    find_adjacent_twins,
    find_degree2_triples,
    find_pseudo_twins,
    read_pair,
    write_pair,
)

__all__ = [
    "BlowupSpec",
    "Graph",
    "LabeledPair",
    "ListAssignment",
    "blow_up",
    "canonical_key",
    "connected_components",
    "cut_vertices",
    "find_adjacent_twins",
    "find_degree2_triples",
    "find_pseudo_twins",
    "read_pair",
    "write_pair",
]
