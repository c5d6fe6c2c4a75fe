#include "magspec/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>

#include "magspec/error.hpp"
#include "magspec/smith.hpp"

namespace magspec {

namespace {

using cd = std::complex<double>;

void check_forms(const FundamentalGraph& g, const OneForm& b, const OneForm& a, std::size_t theta_size) {
  if (b.edge_count() != g.edge_count() || a.edge_count() != g.edge_count()) {
    throw Error(ErrorCode::DimensionMismatch, "form edge count differs from the graph");
  }
  if (b.dim() != g.dim() || static_cast<int>(theta_size) != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "quasimomentum form must have dimension " + std::to_string(g.dim()));
  }
  if (a.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "phase form must be scalar");
}

double phase_at(const OneForm& b, const OneForm& a, int edge, std::span<const double> theta) {
  double p = a.scalar(edge);
  auto v = b.at(edge);
  for (std::size_t s = 0; s < theta.size(); ++s) p += v[s] * theta[s];
  return p;
}

void add_edge(ComplexMatrix& m, const Edge& e, double p) {
  if (e.is_loop()) {
    m(e.tail, e.tail) += 2.0 - 2.0 * std::cos(p);
    return;
  }
  const cd z = std::polar(1.0, p);
  m(e.tail, e.head) -= z;
  m(e.head, e.tail) -= std::conj(z);
  m(e.tail, e.tail) += 1.0;
  m(e.head, e.head) += 1.0;
}

}  // namespace

ComplexMatrix fiber_matrix(const FundamentalGraph& g, const OneForm& b, const OneForm& a,
                           std::span<const double> theta, bool with_potential) {
  check_forms(g, b, a, theta.size());
  const int nu = g.vertex_count();
  ComplexMatrix m = ComplexMatrix::Zero(nu, nu);
  for (int id = 0; id < g.edge_count(); ++id) add_edge(m, g.edge(id), phase_at(b, a, id, theta));
  if (with_potential) {
    for (int v = 0; v < nu; ++v) m(v, v) += g.potential()[v];
  }
  return m;
}

ComplexMatrix reduced_laplacian(const FundamentalGraph& g, const OneForm& mu, const OneForm& a) {
  const int nu = g.vertex_count();
  ComplexMatrix m = ComplexMatrix::Zero(nu, nu);
  for (int id = 0; id < g.edge_count(); ++id) {
    if (!mu.is_zero_on(id)) continue;
    add_edge(m, g.edge(id), a.scalar(id));
  }
  return m;
}

ComplexMatrix support_laplacian(const FundamentalGraph& g, const OneForm& mu, const OneForm& a,
                                std::span<const double> theta) {
  check_forms(g, mu, a, theta.size());
  const int nu = g.vertex_count();
  ComplexMatrix m = ComplexMatrix::Zero(nu, nu);
  for (int id : mu.support_edges()) add_edge(m, g.edge(id), phase_at(mu, a, id, theta));
  return m;
}

Eigen::VectorXd support_degrees(const FundamentalGraph& g, const OneForm& mu) {
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(g.vertex_count());
  for (int id : mu.support_edges()) {
    deg(g.edge(id).tail) += 1.0;
    deg(g.edge(id).head) += 1.0;
  }
  return deg;
}

int quasimomentum_exponent_count(const OneForm& b) { return b.support_size(); }

int phase_exponent_count(const OneForm& a) {
  int count = 0;
  for (int id = 0; id < a.edge_count(); ++id) count += is_trivial_phase(a.scalar(id)) ? 0 : 2;
  return count;
}

GaugeWeights gauge_weights(const FundamentalGraph& g, const OneForm& b, const OneForm& a, int v0) {
  const int nu = g.vertex_count();
  const int d = g.dim();
  if (v0 < 0 || v0 >= nu) throw Error(ErrorCode::BadParams, "base vertex out of range");
  std::vector<double> zero(d, 0.0);
  check_forms(g, b, a, zero.size());
  const OneForm tau = g.index_form();
  const OneForm alpha = g.magnetic_form();

  GaugeWeights w;
  w.base = v0;
  w.w_b.assign(nu, std::vector<double>(d, 0.0));
  w.w_a.assign(nu, 0.0);
  std::vector<bool> seen(nu, false);
  seen[v0] = true;
  std::vector<int> queue{v0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int v = queue[k];
    for (OrientedEdge e : g.outgoing(v)) {
      int u = g.head(e);
      if (seen[u]) continue;
      seen[u] = true;
      for (int s = 0; s < d; ++s) w.w_b[u][s] = w.w_b[v][s] + e.sign() * (tau.at(e.edge)[s] - b.at(e.edge)[s]);
      w.w_a[u] = w.w_a[v] + e.sign() * (alpha.scalar(e.edge) - a.scalar(e.edge));
      queue.push_back(u);
    }
  }
  if (static_cast<int>(queue.size()) != nu) throw Error(ErrorCode::DisconnectedGraph, "fundamental graph is not connected");

  // Path independence on every edge, i.e. on every basic cycle.
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    for (int s = 0; s < d; ++s) {
      double lhs = w.w_b[e.head][s] - w.w_b[e.tail][s];
      double rhs = tau.at(id)[s] - b.at(id)[s];
      if (std::abs(lhs - rhs) > kZeroTol) {
        throw Error(ErrorCode::FluxMismatch, "quasimomentum form has different fluxes from the index form");
      }
    }
    double lhs = w.w_a[e.head] - w.w_a[e.tail];
    double rhs = alpha.scalar(id) - a.scalar(id);
    if (!is_trivial_phase(lhs - rhs)) {
      throw Error(ErrorCode::FluxMismatch, "phase form has different fluxes from the magnetic form");
    }
  }
  return w;
}

ComplexMatrix apply_gauge(const ComplexMatrix& m, const GaugeWeights& w, std::span<const double> theta) {
  const int nu = static_cast<int>(w.w_a.size());
  if (m.rows() != nu || m.cols() != nu) throw Error(ErrorCode::DimensionMismatch, "gauge size differs from matrix");
  Eigen::VectorXcd phase(nu);
  for (int v = 0; v < nu; ++v) {
    double x = w.w_a[v];
    for (std::size_t s = 0; s < theta.size(); ++s) x += w.w_b[v][s] * theta[s];
    phase(v) = std::polar(1.0, x);
  }
  return phase.conjugate().asDiagonal() * m * phase.asDiagonal();
}

ThetaReduction theta0_reduction(const FundamentalGraph& g, const OneForm& mu, const OneForm& phi) {
  const int d = mu.dim();
  if (mu.edge_count() != g.edge_count() || phi.edge_count() != g.edge_count() || phi.dim() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "forms do not match the graph");
  }
  const std::vector<int> supp = mu.support_edges();
  const int n = static_cast<int>(supp.size());

  auto det_of = [&](const std::vector<int>& pick) {
    IntMatrix a(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) a(r, c) = std::llround(mu.at(supp[pick[r]])[c]);
    }
    return determinant(a);
  };

  // Lexicographic scan of d-subsets of supp mu.
  std::vector<int> pick(d), first_full;
  std::iota(pick.begin(), pick.end(), 0);
  long long det = 0;
  while (d <= n) {
    long long dt = det_of(pick);
    if (dt != 0 && first_full.empty()) {
      first_full = pick;
      det = dt;
    }
    if (std::llabs(dt) == 1) {
      first_full = pick;
      det = dt;
      break;
    }
    int k = d - 1;
    while (k >= 0 && pick[k] == n - d + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (first_full.empty()) {
    throw Error(ErrorCode::NoIndependentSubset, "support of mu has no " + std::to_string(d) + " independent edges");
  }

  ThetaReduction out;
  out.basis_determinant = det;
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd rhs(d);
  for (int r = 0; r < d; ++r) {
    int e = supp[first_full[r]];
    out.basis_edges.push_back(e);
    for (int c = 0; c < d; ++c) a(r, c) = mu.at(e)[c];
    rhs(r) = -phi.scalar(e);
  }
  Eigen::VectorXd t = a.fullPivLu().solve(rhs);
  out.theta0.resize(d);
  for (int s = 0; s < d; ++s) {
    double x = wrap_angle(t(s));
    out.theta0[s] = (x >= std::numbers::pi) ? x - 2.0 * std::numbers::pi : x;
  }

  out.phi_tilde = OneForm(g.edge_count(), 1, FormKind::Magnetic);
  for (int id = 0; id < g.edge_count(); ++id) {
    if (std::find(out.basis_edges.begin(), out.basis_edges.end(), id) != out.basis_edges.end()) continue;
    if (mu.is_zero_on(id) && phi.is_zero_on(id)) continue;
    double x = phi.scalar(id);
    for (int s = 0; s < d; ++s) x += mu.at(id)[s] * out.theta0[s];
    x = wrap_angle(x);
    if (std::abs(x) > kZeroTol) out.phi_tilde.set(id, x);
  }
  return out;
}

ComplexMatrix perturbation_matrix(const FundamentalGraph& g, const OneForm& mu, const OneForm& phi_tilde,
                                  std::span<const double> theta) {
  const OneForm zero(g.edge_count(), 1, FormKind::Magnetic);
  return fiber_matrix(g, mu, phi_tilde, theta, false) - fiber_matrix(g, mu, zero, theta, false);
}

double perturbation_constant(const FundamentalGraph& g, const OneForm& phi_tilde) {
  double best = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    double sum = 0.0;
    for (OrientedEdge e : g.outgoing(v)) {
      if (phi_tilde.is_zero_on(e.edge)) continue;
      sum += std::abs(std::sin(phi_tilde.scalar(e) / 2.0));
    }
    best = std::max(best, sum);
  }
  return 2.0 * best;
}

double hermitian_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace magspec
