#include "magspec/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <map>
#include <set>

#include "magspec/error.hpp"

namespace magspec {

namespace {

// Union-find with undo for the backtracking enumerator (no path compression).
class RollbackDsu {
 public:
  explicit RollbackDsu(int n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }

  void undo() {
    int b = history_.back();
    history_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> history_;
};

// True when the edges chosen so far plus edges [from, E) still connect the graph.
bool still_spannable(const FundamentalGraph& g, const RollbackDsu& chosen, int from) {
  const int nu = g.vertex_count();
  std::vector<int> parent(nu);
  for (int v = 0; v < nu; ++v) parent[v] = chosen.find(v);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = 0;
  for (int v = 0; v < nu; ++v) components += (parent[v] == v);
  for (int id = from; id < g.edge_count() && components > 1; ++id) {
    int a = find(g.edge(id).tail), b = find(g.edge(id).head);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::vector<int> flux_support(const FundamentalGraph& g, const OneForm& x, const SpanningTreeBasis& tree) {
  std::vector<int> support;
  for (const BasicCycle& c : tree.cycles()) {
    if (!is_zero_flux(flux(g, x, c.edges))) support.push_back(c.chord);
  }
  return support;
}

}  // namespace

SpanningTreeBasis::SpanningTreeBasis(const FundamentalGraph& g, std::vector<int> tree_edges)
    : tree_edges_(std::move(tree_edges)) {
  const int nu = g.vertex_count();
  std::sort(tree_edges_.begin(), tree_edges_.end());
  if (static_cast<int>(tree_edges_.size()) != nu - 1) {
    throw Error(ErrorCode::BadParams, "a spanning tree needs exactly nu - 1 edges");
  }

  std::vector<std::vector<OrientedEdge>> adj(nu);
  std::vector<bool> in_tree(g.edge_count(), false);
  for (int id : tree_edges_) {
    if (id < 0 || id >= g.edge_count()) throw Error(ErrorCode::BadParams, "tree edge id out of range");
    if (in_tree[id]) throw Error(ErrorCode::BadParams, "duplicate tree edge");
    in_tree[id] = true;
    adj[g.edge(id).tail].push_back({id, false});
    adj[g.edge(id).head].push_back({id, true});
  }

  up_.assign(nu, {});
  parent_.assign(nu, -1);
  depth_.assign(nu, -1);
  depth_[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int v = queue[k];
    for (OrientedEdge e : adj[v]) {
      int u = g.head(e);
      if (depth_[u] >= 0) continue;
      depth_[u] = depth_[v] + 1;
      parent_[u] = v;
      up_[u] = e.inverse();
      queue.push_back(u);
    }
  }
  if (static_cast<int>(queue.size()) != nu) throw Error(ErrorCode::BadParams, "edge set is not a spanning tree");

  for (int id = 0; id < g.edge_count(); ++id) {
    if (in_tree[id]) continue;
    chords_.push_back(id);
    BasicCycle c;
    c.chord = id;
    c.edges.push_back({id, false});
    auto back = tree_path(g.edge(id).head, g.edge(id).tail);
    c.edges.insert(c.edges.end(), back.begin(), back.end());
    cycles_.push_back(std::move(c));
  }
}

std::vector<OrientedEdge> SpanningTreeBasis::tree_path(int from, int to) const {
  std::vector<OrientedEdge> head_part, tail_part;
  int a = from, b = to;
  while (depth_[a] > depth_[b]) {
    head_part.push_back(up_[a]);
    a = parent_[a];
  }
  while (depth_[b] > depth_[a]) {
    tail_part.push_back(up_[b].inverse());
    b = parent_[b];
  }
  while (a != b) {
    head_part.push_back(up_[a]);
    a = parent_[a];
    tail_part.push_back(up_[b].inverse());
    b = parent_[b];
  }
  head_part.insert(head_part.end(), tail_part.rbegin(), tail_part.rend());
  return head_part;
}

std::size_t for_each_spanning_tree(const FundamentalGraph& g, std::size_t cap,
                                   const std::function<void(std::span<const int>)>& visit) {
  if (!g.is_connected()) throw Error(ErrorCode::DisconnectedGraph, "fundamental graph is not connected");
  const int nu = g.vertex_count();
  const int edges = g.edge_count();
  RollbackDsu dsu(nu);
  std::vector<int> chosen;
  std::size_t count = 0;

  // Include-first depth-first search yields trees in lexicographic order.
  std::function<void(int)> rec = [&](int id) {
    if (static_cast<int>(chosen.size()) == nu - 1) {
      if (++count > cap) {
        throw Error(ErrorCode::TreeCountExceedsCap,
                    "more than " + std::to_string(cap) + " spanning trees");
      }
      visit(chosen);
      return;
    }
    if (id >= edges) return;
    if (dsu.unite(g.edge(id).tail, g.edge(id).head)) {
      chosen.push_back(id);
      rec(id + 1);
      chosen.pop_back();
      dsu.undo();
    }
    if (still_spannable(g, dsu, id + 1)) rec(id + 1);
  };
  rec(0);
  return count;
}

std::vector<SpanningTreeBasis> enumerate_spanning_trees(const FundamentalGraph& g, std::size_t cap) {
  std::vector<SpanningTreeBasis> trees;
  for_each_spanning_tree(g, cap, [&](std::span<const int> edges) {
    trees.emplace_back(g, std::vector<int>(edges.begin(), edges.end()));
  });
  return trees;
}

std::vector<double> flux(const FundamentalGraph& g, const OneForm& form, std::span<const OrientedEdge> cycle) {
  if (form.edge_count() != g.edge_count()) throw Error(ErrorCode::DimensionMismatch, "form does not match the graph");
  std::vector<double> total(form.dim(), 0.0);
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const OrientedEdge e = cycle[k];
    const OrientedEdge next = cycle[(k + 1) % cycle.size()];
    if (g.head(e) != g.tail(next)) throw Error(ErrorCode::OpenPath, "edge sequence is not a closed path");
    auto v = form.at(e.edge);
    for (int s = 0; s < form.dim(); ++s) total[s] += e.sign() * v[s];
  }
  if (form.is_magnetic()) {
    for (double& x : total) x = wrap_angle(x);
  }
  return total;
}

bool is_zero_flux(std::span<const double> flux) {
  return std::all_of(flux.begin(), flux.end(), [](double x) { return std::abs(x) <= kZeroTol; });
}

int nonzero_flux_count(const FundamentalGraph& g, const OneForm& x, const SpanningTreeBasis& tree) {
  return static_cast<int>(flux_support(g, x, tree).size());
}

OneForm tree_form(const FundamentalGraph& g, const OneForm& x, const SpanningTreeBasis& tree) {
  OneForm out(g.edge_count(), x.dim(), x.kind());
  for (const BasicCycle& c : tree.cycles()) {
    auto phi = flux(g, x, c.edges);
    if (is_zero_flux(phi)) continue;
    out.set(c.chord, phi);
  }
  return out;
}

MinimalForm minimal_form(const FundamentalGraph& g, const OneForm& x, std::span<const SpanningTreeBasis> trees) {
  if (trees.empty()) throw Error(ErrorCode::BadParams, "empty spanning tree list");
  MinimalForm best;
  int best_count = std::numeric_limits<int>::max();
  for (std::size_t k = 0; k < trees.size(); ++k) {
    int count = nonzero_flux_count(g, x, trees[k]);
    if (count < best_count) {
      best_count = count;
      best.minimal_trees.clear();
    }
    if (count == best_count) best.minimal_trees.push_back(k);
  }
  best.tree = trees[best.minimal_trees.front()];
  best.form = tree_form(g, x, best.tree);
  best.beta_x = best_count;
  return best;
}

IntMatrix chord_flux_matrix(const FundamentalGraph& g, const SpanningTreeBasis& tree) {
  const OneForm tau = g.index_form();
  IntMatrix m(g.dim(), static_cast<int>(tree.cycles().size()));
  for (int j = 0; j < m.cols; ++j) {
    auto phi = flux(g, tau, tree.cycles()[j].edges);
    for (int s = 0; s < m.rows; ++s) m(s, j) = std::llround(phi[s]);
  }
  return m;
}

GraphInvariants compute_invariants(const FundamentalGraph& g, const InvariantOptions& opts) {
  validate(g);
  GraphInvariants out;
  out.trees = enumerate_spanning_trees(g, opts.tree_cap);
  InvariantReport& r = out.report;
  r.beta = g.betti();
  r.d = g.dim();
  r.tree_count = out.trees.size();

  IntMatrix fm = chord_flux_matrix(g, out.trees.front());
  r.lattice_image_ok = lattice_image_check(fm);
  r.flux_kernel_dim = r.beta - static_cast<int>(smith_divisors(fm).size());
  if (!r.lattice_image_ok && opts.require_full_lattice) {
    throw Error(ErrorCode::FluxImageNotFullLattice, "index fluxes do not generate Z^" + std::to_string(r.d));
  }

  const OneForm tau = g.index_form();
  const OneForm alpha = g.magnetic_form();
  out.mu = minimal_form(g, tau, out.trees);
  out.phi = minimal_form(g, alpha, out.trees);
  r.I = out.mu.beta_x;
  r.I_alpha = out.phi.beta_x;

  auto union_size = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return static_cast<int>(u.size());
  };
  r.I_mu_phi = union_size(out.mu.form.support_edges(), out.phi.form.support_edges());

  // Distinct supports only; one representative tree each.
  auto supports = [&](const OneForm& x, const MinimalForm& m) {
    std::map<std::vector<int>, std::size_t> seen;
    for (std::size_t k : m.minimal_trees) seen.emplace(flux_support(g, x, out.trees[k]), k);
    return seen;
  };
  auto mu_supports = supports(tau, out.mu);
  auto phi_supports = supports(alpha, out.phi);
  r.I_mu_phi_min = std::numeric_limits<int>::max();
  std::size_t best_mu = 0, best_phi = 0;
  for (const auto& [sm, km] : mu_supports) {
    for (const auto& [sp, kp] : phi_supports) {
      int size = union_size(sm, sp);
      if (size < r.I_mu_phi_min) {
        r.I_mu_phi_min = size;
        best_mu = km;
        best_phi = kp;
      }
    }
  }
  out.pair_mu = tree_form(g, tau, out.trees[best_mu]);
  out.pair_phi = tree_form(g, alpha, out.trees[best_phi]);
  return out;
}

}  // namespace magspec
