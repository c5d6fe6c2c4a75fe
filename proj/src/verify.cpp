#include "magspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "magspec/error.hpp"
#include "magspec/fiber.hpp"

namespace magspec {

namespace {

constexpr double kMatrixTol = 1e-9;

CheckResult check(std::string name, double worst, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.passed = worst <= tol;
  r.detail = std::move(detail);
  return r;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

}  // namespace

bool VerificationReport::passed() const { return first_failure() == nullptr; }

const CheckResult* VerificationReport::first_failure() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

VerificationReport run_verification(const FundamentalGraph& g, const VerifyOptions& opts) {
  VerificationReport report;
  InvariantOptions iopts;
  iopts.tree_cap = opts.tree_cap;
  GraphInvariants inv = compute_invariants(g, iopts);
  report.invariants = inv.report;
  const InvariantReport& r = inv.report;
  auto& out = report.checks;

  out.push_back(check("d_le_I_le_beta", std::max(r.d - r.I, r.I - r.beta), 0.0));
  out.push_back(check("I_alpha_le_beta", r.I_alpha - r.beta, 0.0));
  out.push_back(check("flux_kernel_dim", std::abs(r.flux_kernel_dim - (r.beta - r.d)), 0.0));
  out.push_back(check("minimal_support", std::abs(inv.mu.form.support_size() - 2 * r.I) +
                                             std::abs(inv.phi.form.support_size() - 2 * r.I_alpha), 0.0));

  const double mt = matrix_tree_count(g);
  out.push_back(check("matrix_tree_count", std::abs(mt - static_cast<double>(r.tree_count)),
                      1e-6 * std::max(1.0, mt), "enumerated " + std::to_string(r.tree_count)));

  const OneForm tau = g.index_form();
  const OneForm alpha = g.magnetic_form();
  double flux_residual = 0.0;
  for (const SpanningTreeBasis& t : inv.trees) {
    for (const BasicCycle& c : t.cycles()) {
      flux_residual = std::max(flux_residual, max_abs_diff(flux(g, inv.mu.form, c.edges), flux(g, tau, c.edges)));
      double dphi = flux(g, inv.phi.form, c.edges)[0] - flux(g, alpha, c.edges)[0];
      flux_residual = std::max(flux_residual, std::abs(wrap_angle(dphi)));
    }
  }
  out.push_back(check("flux_preservation", flux_residual, kMatrixTol));

  const int exp_mu = quasimomentum_exponent_count(inv.mu.form);
  const int exp_phi = phase_exponent_count(inv.phi.form);
  out.push_back(check("exponent_count_minimal",
                      std::abs(exp_mu - 2 * r.I) + std::abs(exp_phi - 2 * r.I_alpha), 0.0));
  out.push_back(check("exponent_count_lower_bound",
                      std::max(2 * r.I - quasimomentum_exponent_count(tau), 2 * r.I_alpha - phase_exponent_count(alpha)),
                      0.0));

  // Representatives of F(tau) x F(alpha): the stored data, the minimal pair,
  // and the tree gauge of the last enumerated tree.
  struct Pair {
    const char* name;
    OneForm b, a;
  };
  const SpanningTreeBasis& last = inv.trees.back();
  std::vector<Pair> pairs{{"stored", tau, alpha},
                          {"minimal", inv.pair_mu, inv.pair_phi},
                          {"tree", tree_form(g, tau, last), tree_form(g, alpha, last)}};
  std::vector<GaugeWeights> weights;
  for (const Pair& p : pairs) weights.push_back(gauge_weights(g, p.b, p.a));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double herm = 0.0, gauge_spec = 0.0, gauge_mat = 0.0, split = 0.0, psd_lo = 0.0, psd_hi = 0.0;
  const Eigen::VectorXd two_b = 2.0 * support_degrees(g, inv.mu.form);
  const ComplexMatrix reduced = reduced_laplacian(g, inv.mu.form, alpha);
  for (int sample = 0; sample < opts.theta_samples; ++sample) {
    std::vector<double> theta(g.dim());
    for (double& x : theta) x = angle(rng);
    const ComplexMatrix ref = fiber_matrix(g, tau, alpha, theta);
    const auto ref_ev = hermitian_eigenvalues(ref);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      ComplexMatrix m = fiber_matrix(g, pairs[k].b, pairs[k].a, theta);
      herm = std::max(herm, hermitian_defect(m) / (1.0 + m.norm()));
      gauge_spec = std::max(gauge_spec, max_abs_diff(hermitian_eigenvalues(m), ref_ev));
      gauge_mat = std::max(gauge_mat, (apply_gauge(m, weights[k], theta) - ref).cwiseAbs().maxCoeff());
    }
    const ComplexMatrix lap = fiber_matrix(g, inv.mu.form, alpha, theta, false);
    const ComplexMatrix tilde = support_laplacian(g, inv.mu.form, alpha, theta);
    split = std::max(split, (lap - reduced - tilde).cwiseAbs().maxCoeff());
    psd_lo = std::max(psd_lo, -min_eigenvalue(tilde));
    ComplexMatrix upper = -tilde;
    upper.diagonal() += two_b.cast<std::complex<double>>();
    psd_hi = std::max(psd_hi, -min_eigenvalue(upper));
  }
  out.push_back(check("hermitian", herm, 1e-12));
  out.push_back(check("gauge_spectra", gauge_spec, kMatrixTol));
  out.push_back(check("gauge_conjugation", gauge_mat, kMatrixTol));
  out.push_back(check("splitting", split, kMatrixTol));
  out.push_back(check("psd_lower", psd_lo, kMatrixTol));
  out.push_back(check("psd_upper", psd_hi, kMatrixTol));

  LocalizationReport loc = verify_band_localization(g, inv.mu.form, opts.sweep);
  out.insert(out.end(), loc.checks.begin(), loc.checks.end());

  if (alpha.is_zero()) {
    out.push_back(check("bottom_at_zero", sy_sunada_check(g, opts.sweep) ? 0.0 : 1.0, 0.0));
    if (!g.has_potential() || !opts.sweep.with_potential) {
      std::vector<double> origin(g.dim(), 0.0);
      out.push_back(check("zero_mode", std::abs(min_eigenvalue(fiber_matrix(g, tau, alpha, origin))), kMatrixTol));
    }
  }

  PerturbationReport pert = verify_perturbation(g, inv.pair_mu, inv.pair_phi, opts.sweep);
  out.insert(out.end(), pert.checks.begin(), pert.checks.end());
  out.push_back(check("phi_tilde_support", pert.phi_tilde.support_size() - 2 * (r.I_mu_phi_min - r.d), 0.0));
  if (pert.phi_tilde.is_zero()) {
    // H_{tau,alpha}(theta) is unitarily equivalent to H_{mu,0}(theta - theta0).
    const OneForm zero(g.edge_count(), 1, FormKind::Magnetic);
    double worst = 0.0;
    for (int sample = 0; sample < opts.theta_samples; ++sample) {
      std::vector<double> theta(g.dim()), shifted(g.dim());
      for (int s = 0; s < g.dim(); ++s) {
        theta[s] = angle(rng);
        shifted[s] = theta[s] - pert.theta0[s];
      }
      worst = std::max(worst, max_abs_diff(hermitian_eigenvalues(fiber_matrix(g, tau, alpha, theta)),
                                           hermitian_eigenvalues(fiber_matrix(g, inv.pair_mu, zero, shifted))));
    }
    out.push_back(check("field_removed", worst, kMatrixTol));
  }
  return report;
}

BandSpectrum spectrum_bands(const FundamentalGraph& g, const GraphInvariants& inv, const SweepOptions& opts) {
  const ThetaReduction red = theta0_reduction(g, inv.pair_mu, inv.pair_phi);
  BandSpectrum s = band_sweep(g, inv.pair_mu, red.phi_tilde, opts);
  for (auto& theta : s.thetas) {
    for (std::size_t k = 0; k < theta.size(); ++k) {
      double x = wrap_angle(theta[k] + red.theta0[k]);
      theta[k] = (x >= std::numbers::pi) ? x - 2.0 * std::numbers::pi : x;
    }
  }
  return s;
}

FundamentalGraph random_periodic_graph(std::mt19937_64& rng, const RandomGraphOptions& opts) {
  if (opts.max_vertices < 1 || opts.min_dim < 1 || opts.max_dim < opts.min_dim) {
    throw Error(ErrorCode::BadParams, "invalid random graph options");
  }
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  for (;;) {
    const int d = uniform(opts.min_dim, opts.max_dim);
    const int nu = uniform(1, opts.max_vertices);
    const int min_edges = nu - 1 + d;
    if (min_edges > opts.max_edges) continue;
    const int edge_total = uniform(min_edges, opts.max_edges);

    std::vector<Edge> edges;
    for (int v = 1; v < nu; ++v) edges.push_back({uniform(0, v - 1), v, {}, 0.0});
    while (static_cast<int>(edges.size()) < edge_total) edges.push_back({uniform(0, nu - 1), uniform(0, nu - 1), {}, 0.0});
    std::shuffle(edges.begin(), edges.end(), rng);
    for (Edge& e : edges) {
      if (uniform(0, 1)) std::swap(e.tail, e.head);
      e.index.resize(d);
      for (int& x : e.index) x = uniform(-opts.index_range, opts.index_range);
      if (opts.random_phases) e.alpha = wrap_angle(angle(rng));
    }
    std::vector<double> potential(nu, 0.0);
    if (opts.random_potential) {
      for (double& q : potential) q = unit(rng);
    }
    std::vector<std::string> names;
    for (int v = 0; v < nu; ++v) names.push_back("v" + std::to_string(v));
    FundamentalGraph g(d, std::move(names), std::move(edges), std::move(potential));

    std::vector<int> tree, root(nu);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
      while (root[x] != x) x = root[x];
      return x;
    };
    for (int id = 0; id < g.edge_count(); ++id) {
      int a = find(g.edge(id).tail), b = find(g.edge(id).head);
      if (a == b) continue;
      root[a] = b;
      tree.push_back(id);
    }
    if (lattice_image_check(chord_flux_matrix(g, SpanningTreeBasis(g, tree)))) return g;
  }
}

double matrix_tree_count(const FundamentalGraph& g) {
  const int nu = g.vertex_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nu, nu);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    lap(e.tail, e.tail) += 1.0;
    lap(e.head, e.head) += 1.0;
    lap(e.tail, e.head) -= 1.0;
    lap(e.head, e.tail) -= 1.0;
  }
  if (nu == 1) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  double product = 1.0;
  for (int k = 1; k < nu; ++k) product *= solver.eigenvalues()(k);
  return product / nu;
}

}  // namespace magspec
