#include "magspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "magspec/error.hpp"

namespace magspec {

FundamentalGraph::FundamentalGraph(int dim, std::vector<std::string> vertex_names, std::vector<Edge> edges,
                                   std::vector<double> potential)
    : dim_(dim), names_(std::move(vertex_names)), edges_(std::move(edges)), potential_(std::move(potential)) {
  if (dim_ < 1) throw Error(ErrorCode::BadParams, "lattice rank must be >= 1");
  if (names_.empty()) throw Error(ErrorCode::BadParams, "graph has no vertices");
  const int nu = vertex_count();
  if (potential_.empty()) potential_.assign(nu, 0.0);
  if (static_cast<int>(potential_.size()) != nu) {
    throw Error(ErrorCode::BadParams, "potential must have one value per vertex");
  }
  degree_.assign(nu, 0);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.tail < 0 || e.tail >= nu || e.head < 0 || e.head >= nu) {
      throw Error(ErrorCode::BadParams, "edge " + std::to_string(id) + " references an unknown vertex");
    }
    ++degree_[e.tail];
    ++degree_[e.head];
  }
}

bool FundamentalGraph::has_potential() const {
  return std::any_of(potential_.begin(), potential_.end(), [](double q) { return q != 0.0; });
}

int FundamentalGraph::max_degree() const { return *std::max_element(degree_.begin(), degree_.end()); }

bool FundamentalGraph::is_connected() const {
  const int nu = vertex_count();
  std::vector<int> parent(nu);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = nu;
  for (const Edge& e : edges_) {
    int a = find(e.tail), b = find(e.head);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::vector<OrientedEdge> FundamentalGraph::outgoing(int v) const {
  std::vector<OrientedEdge> out;
  for (int id = 0; id < edge_count(); ++id) {
    if (edges_[id].tail == v) out.push_back({id, false});
    if (edges_[id].head == v) out.push_back({id, true});
  }
  return out;
}

OneForm FundamentalGraph::index_form() const {
  OneForm f(edge_count(), dim_);
  std::vector<double> buf(dim_);
  for (int id = 0; id < edge_count(); ++id) {
    const auto& idx = edges_[id].index;
    if (static_cast<int>(idx.size()) != dim_) {
      throw Error(ErrorCode::BadIndexLength, "edge " + std::to_string(id) + " index has wrong length");
    }
    std::copy(idx.begin(), idx.end(), buf.begin());
    f.set(id, buf);
  }
  return f;
}

OneForm FundamentalGraph::magnetic_form() const {
  OneForm f(edge_count(), 1, FormKind::Magnetic);
  for (int id = 0; id < edge_count(); ++id) f.set(id, edges_[id].alpha);
  return f;
}

FundamentalGraph FundamentalGraph::with_phases(const OneForm& alpha) const {
  if (alpha.edge_count() != edge_count() || alpha.dim() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "phase form does not match the graph");
  }
  auto edges = edges_;
  for (int id = 0; id < edge_count(); ++id) edges[id].alpha = wrap_angle(alpha.scalar(id));
  return FundamentalGraph(dim_, names_, std::move(edges), potential_);
}

FundamentalGraph FundamentalGraph::with_potential(std::vector<double> potential) const {
  return FundamentalGraph(dim_, names_, edges_, std::move(potential));
}

ValidationReport validate(const FundamentalGraph& g) {
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (static_cast<int>(e.index.size()) != g.dim()) {
      throw Error(ErrorCode::BadIndexLength, "edge " + std::to_string(id) + " has index of length " +
                                                 std::to_string(e.index.size()) + ", expected " +
                                                 std::to_string(g.dim()));
    }
    if (!std::isfinite(e.alpha) || e.alpha <= -std::numbers::pi || e.alpha > std::numbers::pi) {
      throw Error(ErrorCode::AlphaOutOfRange, "edge " + std::to_string(id) + " phase outside (-pi, pi]");
    }
  }
  if (!g.is_connected()) throw Error(ErrorCode::DisconnectedGraph, "fundamental graph is not connected");

  ValidationReport r;
  r.connected = true;
  r.vertex_count = g.vertex_count();
  r.edge_count = g.edge_count();
  for (int v = 0; v < g.vertex_count(); ++v) r.degrees.push_back(g.degree(v));
  r.max_degree = g.max_degree();
  r.betti = g.betti();
  return r;
}

namespace {

void check_positions(const FundamentalGraph& g, const PeriodicEmbedding& emb) {
  if (static_cast<int>(emb.positions.size()) != g.vertex_count()) {
    throw Error(ErrorCode::InconsistentEmbedding, "embedding needs one position per vertex");
  }
  std::set<std::vector<double>> seen;
  for (const auto& p : emb.positions) {
    if (static_cast<int>(p.size()) != g.dim()) {
      throw Error(ErrorCode::InconsistentEmbedding, "position has wrong dimension");
    }
    for (double x : p) {
      if (!(x >= 0.0 && x < 1.0)) {
        throw Error(ErrorCode::InconsistentEmbedding, "position outside the fundamental cell [0,1)^d");
      }
    }
    if (!seen.insert(p).second) throw Error(ErrorCode::InconsistentEmbedding, "positions are not distinct");
  }
}

}  // namespace

OneForm coordinate_form(const FundamentalGraph& g, const PeriodicEmbedding& emb) {
  check_positions(g, emb);
  OneForm kappa(g.edge_count(), g.dim());
  std::vector<double> buf(g.dim());
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if (static_cast<int>(e.index.size()) != g.dim()) {
      throw Error(ErrorCode::BadIndexLength, "edge " + std::to_string(id) + " index has wrong length");
    }
    for (int s = 0; s < g.dim(); ++s) {
      buf[s] = emb.positions[e.head][s] + e.index[s] - emb.positions[e.tail][s];
    }
    kappa.set(id, buf);
  }
  return kappa;
}

void check_embedding_indices(const FundamentalGraph& g, const PeriodicEmbedding& emb, const OneForm& kappa) {
  check_positions(g, emb);
  if (kappa.edge_count() != g.edge_count() || kappa.dim() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate form does not match the graph");
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    auto k = kappa.at(id);
    for (int s = 0; s < g.dim(); ++s) {
      double integer_part = k[s] - (emb.positions[e.head][s] - emb.positions[e.tail][s]);
      double rounded = std::round(integer_part);
      if (std::abs(integer_part - rounded) > kZeroTol || static_cast<int>(rounded) != e.index[s]) {
        throw Error(ErrorCode::InconsistentEmbedding,
                    "edge " + std::to_string(id) + " integer part disagrees with its stored index");
      }
    }
  }
}

}  // namespace magspec
