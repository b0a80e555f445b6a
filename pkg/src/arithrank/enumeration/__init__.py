"""Enumeration of hypergraph classes and the generic-set search."""

from .pipeline import (
    GenericSetResult,
    ScanResult,
    SearchShard,
    enumerate_hypergraphs,
    enumerate_masks,
    filter_property,
    filter_stream,
    generic_set,
    level_sets,
    maximal_set,
    poset_maximality_oracle,
    scan,
    uncovered,
)

__all__ = [
    "GenericSetResult",
    "ScanResult",
    "SearchShard",
    "enumerate_hypergraphs",
    "enumerate_masks",
    "filter_property",
    "filter_stream",
    "generic_set",
    "level_sets",
    "maximal_set",
    "poset_maximality_oracle",
    "scan",
    "uncovered",
]
