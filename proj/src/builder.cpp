#include "magspec/builder.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "magspec/error.hpp"

namespace magspec {

PeriodicGraph build_periodic(const FundamentalGraph& g, const OneForm& mu, const OneForm& phi,
                             std::size_t tree_cap) {
  if (mu.edge_count() != g.edge_count() || phi.edge_count() != g.edge_count() || phi.dim() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "forms do not match the graph");
  }
  const int d = mu.dim();
  const auto trees = enumerate_spanning_trees(g, tree_cap);

  IntMatrix fm(d, static_cast<int>(trees.front().cycles().size()));
  for (int j = 0; j < fm.cols; ++j) {
    auto phi_c = flux(g, mu, trees.front().cycles()[j].edges);
    for (int s = 0; s < d; ++s) {
      if (std::abs(phi_c[s] - std::round(phi_c[s])) > kZeroTol) {
        throw Error(ErrorCode::FluxImageNotFullLattice, "mu has non-integer fluxes");
      }
      fm(s, j) = std::llround(phi_c[s]);
    }
  }
  if (!lattice_image_check(fm)) {
    throw Error(ErrorCode::FluxImageNotFullLattice, "fluxes of mu do not generate Z^" + std::to_string(d));
  }
  if (minimal_form(g, mu, trees).beta_x * 2 != mu.support_size()) {
    throw Error(ErrorCode::NotMinimal, "mu does not have minimal support in its flux class");
  }
  if (minimal_form(g, phi, trees).beta_x * 2 != phi.support_size()) {
    throw Error(ErrorCode::NotMinimal, "phi does not have minimal support in its flux class");
  }

  std::vector<Edge> edges;
  for (int id = 0; id < g.edge_count(); ++id) {
    Edge e;
    e.tail = g.edge(id).tail;
    e.head = g.edge(id).head;
    for (int s = 0; s < d; ++s) e.index.push_back(static_cast<int>(std::llround(mu.at(id)[s])));
    e.alpha = phi.scalar(id);
    edges.push_back(std::move(e));
  }
  PeriodicGraph out{FundamentalGraph(d, g.vertex_names(), std::move(edges), g.potential()), {}};
  const int nu = g.vertex_count();
  for (int j = 0; j < nu; ++j) {
    std::vector<double> pos(d, 0.0);
    pos[0] = static_cast<double>(j + 1) / (nu + 1);
    out.embedding.positions.push_back(std::move(pos));
  }
  return out;
}

FundamentalGraph supercell(const FundamentalGraph& g, const std::vector<int>& q) {
  const int d = g.dim();
  if (static_cast<int>(q.size()) != d) throw Error(ErrorCode::BadMultipliers, "need one multiplier per axis");
  for (int x : q) {
    if (x < 1) throw Error(ErrorCode::BadMultipliers, "multipliers must be >= 1");
  }
  const int cells = std::accumulate(q.begin(), q.end(), 1, std::multiplies<>());

  auto unflatten = [&](int lin) {
    std::vector<int> k(d);
    for (int s = d - 1; s >= 0; --s) {
      k[s] = lin % q[s];
      lin /= q[s];
    }
    return k;
  };
  auto flatten = [&](const std::vector<int>& k) {
    int lin = 0;
    for (int s = 0; s < d; ++s) lin = lin * q[s] + k[s];
    return lin;
  };

  std::vector<std::string> names;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int c = 0; c < cells; ++c) {
      std::string name = g.vertex_names()[v] + "[";
      auto k = unflatten(c);
      for (int s = 0; s < d; ++s) name += (s ? "," : "") + std::to_string(k[s]);
      names.push_back(name + "]");
    }
  }
  std::vector<double> potential;
  for (int v = 0; v < g.vertex_count(); ++v) potential.insert(potential.end(), cells, g.potential()[v]);

  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (static_cast<int>(e.index.size()) != d) throw Error(ErrorCode::BadIndexLength, "edge index has wrong length");
    for (int c = 0; c < cells; ++c) {
      auto k = unflatten(c);
      std::vector<int> target(d);
      Edge ne;
      ne.index.resize(d);
      for (int s = 0; s < d; ++s) {
        int t = k[s] + e.index[s];
        // floor division and non-negative remainder
        int fl = (t >= 0) ? t / q[s] : -((-t + q[s] - 1) / q[s]);
        ne.index[s] = fl;
        target[s] = t - fl * q[s];
      }
      ne.tail = e.tail * cells + c;
      ne.head = e.head * cells + flatten(target);
      ne.alpha = e.alpha;
      edges.push_back(std::move(ne));
    }
  }
  return FundamentalGraph(d, std::move(names), std::move(edges), std::move(potential));
}

FundamentalGraph landau_supercell(const FundamentalGraph& g, int p, int q) {
  if (g.dim() < 2) throw Error(ErrorCode::BadParams, "uniform flux needs a lattice of rank >= 2");
  if (q < 1) throw Error(ErrorCode::BadMultipliers, "q must be >= 1");
  std::vector<int> mult(g.dim(), 1);
  mult[0] = q;
  FundamentalGraph s = supercell(g, mult);

  const double f = static_cast<double>(p) / q;
  std::vector<Edge> edges = s.edges();
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const Edge& orig = g.edge(static_cast<int>(j) / q);
    const int k1 = static_cast<int>(j) % q;
    const double m1 = orig.index[0], m2 = orig.index[1];
    // Landau gauge A = 2 pi f x dy integrated along the straight edge.
    edges[j].alpha = wrap_angle(orig.alpha + 2.0 * std::numbers::pi * f * (k1 + m1 / 2.0) * m2);
  }
  return FundamentalGraph(s.dim(), s.vertex_names(), std::move(edges), s.potential());
}

std::vector<ButterflyRow> butterfly(const FundamentalGraph& g, int max_q, const SweepOptions& opts) {
  if (max_q < 1) throw Error(ErrorCode::BadParams, "flux steps must be >= 1");
  if (g.dim() < 2) throw Error(ErrorCode::BadParams, "uniform flux needs a lattice of rank >= 2");
  std::vector<ButterflyRow> rows;
  for (int q = 1; q <= max_q; ++q) {
    for (int p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      FundamentalGraph s = landau_supercell(g, p, q);
      ButterflyRow row;
      row.p = p;
      row.q = q;
      row.flux = static_cast<double>(p) / q;
      row.bands = band_sweep(s, s.index_form(), s.magnetic_form(), opts).bands;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace magspec
