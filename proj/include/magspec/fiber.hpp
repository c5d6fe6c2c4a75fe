#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "magspec/graph.hpp"

namespace magspec {

using ComplexMatrix = Eigen::MatrixXcd;

/// Hermitian nu x nu fiber matrix
///   (D f)(v) = deg(v) f(v) - sum_{e=(v,u)} exp(i (a(e) + <b(e), theta>)) f(u)
/// plus diag(Q) when `with_potential`. `b` has dimension dim, `a` is scalar.
/// Throws DimensionMismatch.
ComplexMatrix fiber_matrix(const FundamentalGraph& g, const OneForm& b, const OneForm& a,
                           std::span<const double> theta, bool with_potential = true);

/// Magnetic Laplacian on the subgraph of edges outside supp(mu), with phases a.
ComplexMatrix reduced_laplacian(const FundamentalGraph& g, const OneForm& mu, const OneForm& a);

/// Magnetic Laplacian on the subgraph of edges in supp(mu), with phases
/// a(e) + <mu(e), theta>.
ComplexMatrix support_laplacian(const FundamentalGraph& g, const OneForm& mu, const OneForm& a,
                                std::span<const double> theta);

/// Degrees in the subgraph supp(mu) (loops count 2).
Eigen::VectorXd support_degrees(const FundamentalGraph& g, const OneForm& mu);

/// Number of oriented edges whose exponent exp(i <b(e), .>) is not identically 1.
int quasimomentum_exponent_count(const OneForm& b);
/// Number of oriented edges with exp(i a(e)) != 1.
int phase_exponent_count(const OneForm& a);

/// Vertex weights of the gauge transformation between (index, alpha) and (b, a):
/// w_b(v) = sum over a path v0 -> v of (index - b), w_a(v) likewise with (alpha - a).
struct GaugeWeights {
  int base = 0;
  std::vector<std::vector<double>> w_b;
  std::vector<double> w_a;
};

/// Throws FluxMismatch when (b, a) do not have the fluxes of (index, alpha).
GaugeWeights gauge_weights(const FundamentalGraph& g, const OneForm& b, const OneForm& a, int v0 = 0);

/// W^{-1} M W with W = diag(exp(i (w_a(v) + <w_b(v), theta>))). Maps the
/// (b, a) fiber onto the (index, alpha) fiber at the same theta.
ComplexMatrix apply_gauge(const ComplexMatrix& m, const GaugeWeights& w, std::span<const double> theta);

/// Shift of quasimomentum that removes the phases on d independent edges.
struct ThetaReduction {
  std::vector<double> theta0;       // components in [-pi, pi)
  OneForm phi_tilde;                // zero on the chosen edges and outside supp mu U supp phi
  std::vector<int> basis_edges;     // the d chosen edges of supp mu
  long long basis_determinant = 0;  // det of their mu-values
};

/// Solves phi(e_s) + <mu(e_s), theta0> = 0 on d edges of supp mu with linearly
/// independent (integer) mu-values, preferring |det| = 1. Throws
/// NoIndependentSubset.
ThetaReduction theta0_reduction(const FundamentalGraph& g, const OneForm& mu, const OneForm& phi);

/// X(theta) = D_{mu, phi_tilde}(theta) - D_{mu, 0}(theta).
ComplexMatrix perturbation_matrix(const FundamentalGraph& g, const OneForm& mu,
                                  const OneForm& phi_tilde, std::span<const double> theta);

/// 2 max_v sum_{e=(v,u) in supp phi_tilde} |sin(phi_tilde(e) / 2)|.
double perturbation_constant(const FundamentalGraph& g, const OneForm& phi_tilde);

/// max |M - M^*| (entrywise).
double hermitian_defect(const ComplexMatrix& m);

}  // namespace magspec
