#pragma once

#include <vector>

#include "magspec/forms.hpp"
#include "magspec/graph.hpp"
#include "magspec/spectral.hpp"

namespace magspec {

struct PeriodicGraph {
  FundamentalGraph graph;
  PeriodicEmbedding embedding;
};

/// Realizes a Z^d-periodic graph whose fundamental graph is `g`, whose index
/// form is `mu` and whose magnetic form is `phi`. Vertex j sits at
/// ((j+1)/(nu+1), 0, ..., 0). Throws FluxImageNotFullLattice or NotMinimal.
PeriodicGraph build_periodic(const FundamentalGraph& g, const OneForm& mu, const OneForm& phi,
                             std::size_t tree_cap = kDefaultTreeCap);

/// Diagonal supercell with multipliers q_s >= 1. Vertex (v, k) has id
/// v * prod(q) + linear(k) with the last axis fastest. Throws BadMultipliers.
FundamentalGraph supercell(const FundamentalGraph& g, const std::vector<int>& multipliers);

/// Supercell (q, 1, ..., 1) with Landau-gauge phases adding uniform flux
/// 2 pi p / q per unit cell in the (1, 2) plane. Requires dim >= 2.
FundamentalGraph landau_supercell(const FundamentalGraph& g, int p, int q);

struct ButterflyRow {
  int p = 0;
  int q = 1;
  double flux = 0.0;
  std::vector<Interval> bands;
};

/// For q = 1..max_q and every p in [0, q) coprime to q, the bands of the
/// Landau supercell. Row count is sum of Euler phi(q).
std::vector<ButterflyRow> butterfly(const FundamentalGraph& g, int max_q, const SweepOptions& opts = {});

}  // namespace magspec
