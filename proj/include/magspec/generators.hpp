#pragma once

#include "magspec/graph.hpp"

namespace magspec {

/// Z^d: one vertex with d loops of index e_s.
FundamentalGraph make_zd(int dim);

/// Hexagonal (honeycomb) lattice: two vertices joined by three edges.
FundamentalGraph make_hexagonal();

/// Kagome lattice: three vertices v1, v2, v3, three inner edges of index 0 and
/// three outer edges with indices (-1,0), (0,1), (1,-1).
FundamentalGraph make_kagome();

/// Z^d with a finite connected decoration glued at the lattice vertex.
/// Decoration vertex 0 is identified with the lattice vertex; all decoration
/// edges get index 0. Indices and phases stored in `decoration` are ignored.
FundamentalGraph make_decorated(int dim, const FundamentalGraph& decoration);

/// Path graph on n vertices (a tree), handy as a decoration.
FundamentalGraph make_path(int n);

/// Five vertices, seven edges, Betti number 3; all indices 0, d = 1.
FundamentalGraph make_five_vertex_example();

/// Kagome embedding v1=(0,0), v2=(0,1/2), v3=(1/2,0).
PeriodicEmbedding kagome_embedding();

}  // namespace magspec
