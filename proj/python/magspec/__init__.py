"""Magnetic Laplacians on periodic graphs."""

from ._core import (
    Error,
    Graph,
    band_table,
    bands,
    build_periodic,
    butterfly,
    decorated,
    fiber_matrix,
    five_vertex,
    hexagonal,
    invariants,
    kagome,
    landau_supercell,
    path,
    random_graph,
    supercell,
    verify,
    zd,
)

__all__ = [
    "Error",
    "Graph",
    "band_table",
    "bands",
    "build_periodic",
    "butterfly",
    "decorated",
    "fiber_matrix",
    "five_vertex",
    "hexagonal",
    "invariants",
    "kagome",
    "landau_supercell",
    "path",
    "random_graph",
    "supercell",
    "verify",
    "zd",
]
