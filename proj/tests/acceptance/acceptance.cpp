// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "magspec/builder.hpp"
#include "magspec/error.hpp"
#include "magspec/generators.hpp"
#include "magspec/verify.hpp"
#include "oracles.hpp"

using namespace magspec;

namespace {

const double pi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

struct Named {
  std::string name;
  FundamentalGraph graph;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

FundamentalGraph randomize_fields(const FundamentalGraph& g, std::mt19937_64& rng, bool potential) {
  std::uniform_real_distribution<double> angle(-pi, pi), unit(-1.0, 1.0);
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.alpha = wrap_angle(angle(rng));
  std::vector<double> q(g.vertex_count(), 0.0);
  if (potential) {
    for (double& x : q) x = unit(rng);
  }
  return FundamentalGraph(g.dim(), g.vertex_names(), std::move(edges), std::move(q));
}

FundamentalGraph triangle() {
  return FundamentalGraph(1, {"a", "b", "c"}, {{0, 1, {0}, 0.0}, {1, 2, {0}, 0.0}, {2, 0, {0}, 0.0}});
}

std::vector<Named> generator_graphs() {
  return {{"zd1", make_zd(1)},
          {"zd2", make_zd(2)},
          {"zd3", make_zd(3)},
          {"hexagonal", make_hexagonal()},
          {"kagome", make_kagome()},
          {"decorated1_path2", make_decorated(1, make_path(2))},
          {"decorated2_path2", make_decorated(2, make_path(2))},
          {"decorated2_path4", make_decorated(2, make_path(4))},
          {"decorated3_path2", make_decorated(3, make_path(2))},
          {"decorated2_triangle", make_decorated(2, triangle())}};
}

// Generators, their copies with random phases and potentials, and seeded random graphs.
std::vector<Named> battery_graphs(int random_count) {
  std::vector<Named> out = generator_graphs();
  std::mt19937_64 rng(20240611);
  for (const auto& n : generator_graphs()) out.push_back({n.name + "+fields", randomize_fields(n.graph, rng, true)});
  for (int k = 0; k < random_count; ++k) out.push_back({"random" + std::to_string(k), random_periodic_graph(rng)});
  return out;
}

std::vector<double> random_theta(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::vector<double> t(d);
  for (double& x : t) x = angle(rng);
  return t;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double w = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) w = std::max(w, std::abs(a[k] - b[k]));
  return w;
}

// ---------------------------------------------------------------------------

Outcome criterion_invariants() {
  Outcome o;
  auto timed = [&](const std::string& name, const FundamentalGraph& g, int beta, int I) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = compute_invariants(g).report;
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(r.beta == beta && r.I == I,
              name + ": beta=" + std::to_string(r.beta) + " I=" + std::to_string(r.I));
    o.require(s < 1.0, name + " took " + fmt("%.3f s", s));
  };
  timed("kagome", make_kagome(), 4, 3);
  for (int d = 1; d <= 3; ++d) timed("zd" + std::to_string(d), make_zd(d), d, d);
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 4; ++n) timed("decorated", make_decorated(d, make_path(n)), d, d);
  }
  if (o.passed) o.detail = "kagome beta=4 I=3; zd and decorated(d, path) beta=I=d for d=1..3";
  return o;
}

Outcome criterion_measures() {
  Outcome o;
  std::mt19937_64 rng(2);
  double worst_deco = 0.0, worst_z2 = 0.0, worst_hex = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    auto deco = randomize_fields(make_decorated(2, make_path(2)), rng, true);
    auto s = spectrum_bands(deco, compute_invariants(deco));
    worst_deco = std::max(worst_deco, std::abs(s.width_sum - 8.0));

    auto z2 = randomize_fields(make_zd(2), rng, false);
    auto a = spectrum_bands(z2, compute_invariants(z2));
    worst_z2 = std::max({worst_z2, std::abs(a.bands.front().lo), std::abs(a.bands.back().hi - 8.0),
                         std::abs(a.measure - 8.0)});

    auto hex = randomize_fields(make_hexagonal(), rng, false);
    auto h = spectrum_bands(hex, compute_invariants(hex));
    worst_hex = std::max({worst_hex, std::abs(h.bands.front().lo), std::abs(h.bands.back().hi - 6.0),
                          std::abs(h.measure - 6.0)});
  }
  o.require(worst_deco <= 1e-3, "decorated width sum off by " + fmt("%.3g", worst_deco));
  o.require(worst_z2 <= 1e-3, "Z^2 spectrum off [0,8] by " + fmt("%.3g", worst_z2));
  o.require(worst_hex <= 1e-3, "hexagonal spectrum off [0,6] by " + fmt("%.3g", worst_hex));
  if (o.passed) {
    o.detail = "max deviations: decorated sum " + fmt("%.2e", worst_deco) + ", Z^2 " + fmt("%.2e", worst_z2) +
               ", hexagonal " + fmt("%.2e", worst_hex);
  }
  return o;
}

Outcome criterion_localization(const std::vector<Named>& graphs) {
  Outcome o;
  double worst = -INFINITY;
  for (const auto& n : graphs) {
    auto inv = compute_invariants(n.graph);
    auto rep = verify_band_localization(n.graph, inv.mu.form);
    worst = std::max(worst, rep.max_violation);
    for (const auto& c : rep.checks) o.require(c.passed, n.name + ": " + c.name + " worst " + fmt("%.3g", c.worst));
  }
  if (o.passed) {
    o.detail = std::to_string(graphs.size()) + " graphs; largest window excursion " + fmt("%.2e", worst);
  }
  return o;
}

Outcome criterion_gauge(const std::vector<Named>& graphs) {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  double worst = 0.0;
  int distinct_triples = 0;
  for (const auto& n : graphs) {
    const auto& g = n.graph;
    auto inv = compute_invariants(g);
    const OneForm tau = g.index_form(), alpha = g.magnetic_form();

    // Tree gauge of the last tree, moved by a random exact form df.
    OneForm tb = tree_form(g, tau, inv.trees.back());
    OneForm ta = tree_form(g, alpha, inv.trees.back());
    std::vector<std::vector<double>> fb(g.vertex_count(), std::vector<double>(g.dim()));
    std::vector<double> fa(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (double& x : fb[v]) x = shift(rng);
      fa[v] = shift(rng);
    }
    for (int id = 0; id < g.edge_count(); ++id) {
      const Edge& e = g.edge(id);
      std::vector<double> b(tb.at(id).begin(), tb.at(id).end());
      for (int s = 0; s < g.dim(); ++s) b[s] += fb[e.head][s] - fb[e.tail][s];
      tb.set(id, b);
      ta.set(id, ta.scalar(id) + fa[e.head] - fa[e.tail]);
    }
    if (tb.raw() != tau.raw() && tb.raw() != inv.pair_mu.raw() && tau.raw() != inv.pair_mu.raw()) ++distinct_triples;

    for (int k = 0; k < 20; ++k) {
      auto theta = random_theta(g.dim(), rng);
      auto ref = hermitian_eigenvalues(fiber_matrix(g, tau, alpha, theta));
      worst = std::max(worst, max_diff(ref, hermitian_eigenvalues(fiber_matrix(g, inv.pair_mu, inv.pair_phi, theta))));
      worst = std::max(worst, max_diff(ref, hermitian_eigenvalues(fiber_matrix(g, tb, ta, theta))));
    }
  }
  o.require(worst <= 1e-9, "spectra differ by " + fmt("%.3g", worst));
  if (o.passed) {
    o.detail = std::to_string(graphs.size()) + " graphs x 20 theta; max deviation " + fmt("%.2e", worst) + "; " +
               std::to_string(distinct_triples) + " graphs with three distinct quasimomentum forms";
  }
  return o;
}

Outcome criterion_perturbation(const std::vector<Named>& graphs) {
  Outcome o;
  std::mt19937_64 rng(5);
  int removable = 0, nontrivial = 0;
  double worst_equal = 0.0;
  for (const auto& n : graphs) {
    const auto& g = n.graph;
    auto inv = compute_invariants(g);
    auto rep = verify_perturbation(g, inv.pair_mu, inv.pair_phi);
    for (const auto& c : rep.checks) o.require(c.passed, n.name + ": " + c.name + " worst " + fmt("%.3g", c.worst));
    if (!rep.phi_tilde.is_zero()) {
      ++nontrivial;
      continue;
    }
    ++removable;
    o.require(rep.c_phi == 0.0 && rep.lambda_1 == 0.0 && rep.lambda_nu == 0.0, n.name + ": nonzero bounds");
    const OneForm zero(g.edge_count(), 1, FormKind::Magnetic);
    for (int k = 0; k < 20; ++k) {
      auto theta = random_theta(g.dim(), rng);
      std::vector<double> shifted(theta);
      for (int s = 0; s < g.dim(); ++s) shifted[s] -= rep.theta0[s];
      worst_equal = std::max(
          worst_equal, max_diff(hermitian_eigenvalues(fiber_matrix(g, g.index_form(), g.magnetic_form(), theta)),
                                hermitian_eigenvalues(fiber_matrix(g, inv.pair_mu, zero, shifted))));
    }
    for (std::size_t b = 0; b < rep.magnetic.bands.size(); ++b) {
      worst_equal = std::max({worst_equal, std::abs(rep.magnetic.bands[b].lo - rep.free.bands[b].lo),
                              std::abs(rep.magnetic.bands[b].hi - rep.free.bands[b].hi)});
    }
  }
  o.require(worst_equal <= 1e-9, "removable-field spectra differ by " + fmt("%.3g", worst_equal));
  o.require(nontrivial > 0 && removable > 0, "battery lacks one of the two cases");
  if (o.passed) {
    o.detail = std::to_string(nontrivial) + " graphs with residual field, " + std::to_string(removable) +
               " with removable field (max deviation " + fmt("%.2e", worst_equal) + ")";
  }
  return o;
}

Outcome criterion_structural() {
  Outcome o;
  std::mt19937_64 rng(6);

  int tree_graphs = 0;
  auto tree_check = [&](const std::string& name, const FundamentalGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (const Edge& e : g.edges()) edges.emplace_back(e.tail, e.head);
    long long kirchhoff = oracle::kirchhoff_tree_count(g.vertex_count(), edges);
    long long enumerated = static_cast<long long>(enumerate_spanning_trees(g).size());
    double spectral = matrix_tree_count(g);
    o.require(enumerated == kirchhoff && std::abs(spectral - static_cast<double>(enumerated)) < 1e-6,
              name + ": trees " + std::to_string(enumerated) + " vs Kirchhoff " + std::to_string(kirchhoff) +
                  " vs spectral " + fmt("%.9g", spectral));
    ++tree_graphs;
  };
  for (const auto& n : generator_graphs()) tree_check(n.name, n.graph);
  tree_check("five_vertex", make_five_vertex_example());
  for (int k = 0; k < 50; ++k) tree_check("random" + std::to_string(k), random_periodic_graph(rng));

  std::uniform_int_distribution<int> entry(-2, 2), dim(1, 2), cols(1, 4);
  int snf_true = 0;
  for (int k = 0; k < 50; ++k) {
    int d = dim(rng), b = cols(rng);
    IntMatrix m(d, b);
    std::vector<std::vector<long long>> rows(d, std::vector<long long>(b));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < b; ++j) m(i, j) = rows[i][j] = entry(rng);
    }
    bool snf = lattice_image_check(m);
    snf_true += snf;
    o.require(snf == oracle::brute_force_full_lattice(rows, 5), "Smith check disagrees on matrix " + std::to_string(k));
  }

  std::normal_distribution<double> z;
  std::uniform_int_distribution<int> size(1, 6);
  double worst_eig = 0.0;
  for (int k = 0; k < 100; ++k) {
    int n = size(rng);
    ComplexMatrix a(n, n);
    oracle::CMat c(n, std::vector<std::complex<double>>(n));
    for (int i = 0; i < n; ++i) {
      a(i, i) = c[i][i] = z(rng);
      for (int j = i + 1; j < n; ++j) {
        a(i, j) = c[i][j] = {z(rng), z(rng)};
        a(j, i) = c[j][i] = std::conj(c[i][j]);
      }
    }
    worst_eig = std::max(worst_eig, max_diff(hermitian_eigenvalues(a), oracle::charpoly_eigenvalues(c)));
  }
  o.require(worst_eig <= 1e-8, "eigensolver vs characteristic polynomial " + fmt("%.3g", worst_eig));
  if (o.passed) {
    o.detail = std::to_string(tree_graphs) + " tree counts; 50 Smith checks (" + std::to_string(snf_true) +
               " full lattice); 100 eigen problems max dev " + fmt("%.2e", worst_eig);
  }
  return o;
}

Outcome criterion_flat_band() {
  Outcome o;
  auto g = make_kagome();
  auto s = band_sweep(g, g.index_form(), g.magnetic_form());
  int flat = 0;
  for (std::size_t n = 0; n < s.flat.size(); ++n) {
    if (!s.flat[n]) continue;
    ++flat;
    o.require(std::abs(s.bands[n].lo - 6.0) <= 1e-8 && std::abs(s.bands[n].hi - 6.0) <= 1e-8,
              "flat band not at 6: [" + fmt("%.12g", s.bands[n].lo) + ", " + fmt("%.12g", s.bands[n].hi) + "]");
  }
  o.require(flat == 1, std::to_string(flat) + " flat bands flagged");

  std::mt19937_64 rng(7);
  double worst_det = 0.0, worst_entry = 0.0;
  for (int k = 0; k <= 10; ++k) {
    std::vector<double> theta = k == 0 ? std::vector<double>{0.0, 0.0} : random_theta(2, rng);
    auto hand = oracle::kagome_fiber(theta[0], theta[1]);
    auto ours = fiber_matrix(g, g.index_form(), g.magnetic_form(), theta);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) worst_entry = std::max(worst_entry, std::abs(ours(i, j) - hand[i][j]));
    }
    for (int i = 0; i < 3; ++i) hand[i][i] -= 6.0;
    worst_det = std::max(worst_det, std::abs(oracle::det3(hand)));
  }
  o.require(worst_entry <= 1e-12, "fiber differs from the hand matrix by " + fmt("%.3g", worst_entry));
  o.require(worst_det <= 1e-10, "det(H - 6) = " + fmt("%.3g", worst_det));
  if (o.passed) o.detail = "one flat band at 6; |det(H(theta) - 6)| <= " + fmt("%.1e", worst_det) + " at 11 points";
  return o;
}

Outcome criterion_psd(const std::vector<Named>& graphs) {
  Outcome o;
  std::mt19937_64 rng(8);
  double lo = 0.0, hi = 0.0;
  for (const auto& n : graphs) {
    const auto& g = n.graph;
    auto inv = compute_invariants(g);
    const OneForm& mu = inv.mu.form;
    const OneForm alpha = g.magnetic_form();
    Eigen::VectorXd two_b = 2.0 * support_degrees(g, mu);
    auto axis = axis_samples(g.dim() <= 2 ? 15 : 5);
    std::vector<std::vector<double>> thetas;
    for (std::size_t k = 0; k < grid_size(g.dim(), g.dim() <= 2 ? 15 : 5); ++k) thetas.push_back(grid_point(g.dim(), axis, k));
    for (int k = 0; k < 20; ++k) thetas.push_back(random_theta(g.dim(), rng));
    for (const auto& theta : thetas) {
      ComplexMatrix tilde = support_laplacian(g, mu, alpha, theta);
      ComplexMatrix upper = -tilde;
      upper.diagonal() += two_b.cast<std::complex<double>>();
      lo = std::min(lo, hermitian_eigenvalues(tilde).front());
      hi = std::min(hi, hermitian_eigenvalues(upper).front());
    }
  }
  o.require(lo >= -1e-9, "min eig of the support part " + fmt("%.3g", lo));
  o.require(hi >= -1e-9, "min eig of 2B - support part " + fmt("%.3g", hi));
  if (o.passed) o.detail = std::to_string(graphs.size()) + " graphs; min eigenvalues " + fmt("%.2e", lo) + ", " + fmt("%.2e", hi);
  return o;
}

}  // namespace

int main() {
  const auto battery = battery_graphs(100);
  struct Entry {
    int id;
    const char* title;
    double limit;  // seconds
    std::function<Outcome()> run;
  };
  std::vector<Entry> entries{
      {1, "invariants exactness", 10.0, criterion_invariants},
      {2, "measure identities", 30.0, criterion_measures},
      {3, "band localization battery", 300.0, [&] { return criterion_localization(battery); }},
      {4, "gauge equivalence", 300.0, [&] { return criterion_gauge(battery); }},
      {5, "perturbation battery", 300.0, [&] { return criterion_perturbation(battery); }},
      {6, "structural oracles", 300.0, criterion_structural},
      {7, "Kagome flat band", 60.0, criterion_flat_band},
      {8, "PSD sandwich", 300.0, [&] { return criterion_psd(battery); }},
  };

  int failures = 0;
  for (const auto& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.passed = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > e.limit) o.require(false, "runtime " + fmt("%.1f s", s) + " over limit");
    failures += !o.passed;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", e.id, e.title, o.detail.c_str(), s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
