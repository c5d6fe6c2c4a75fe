#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "magspec/fiber.hpp"
#include "magspec/graph.hpp"

namespace magspec {

/// Sorted eigenvalues of a Hermitian matrix. Throws NotHermitian when
/// max |M - M^*| exceeds 1e-12 (1 + ||M||).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Default samples per torus axis: 101 for d <= 2, 21 for d = 3 and up.
int default_grid(int dim);

/// Per-axis quasimomentum samples: the uniform points 2 pi k / N - pi,
/// k = 0..N-1, merged with the symmetry points j pi / 6, j = -6..5.
/// Throws GridTooCoarse for N < 3.
std::vector<double> axis_samples(int n);

/// Visits every point of the product grid in row-major order (last axis fastest).
std::size_t grid_size(int dim, int n);
std::vector<double> grid_point(int dim, std::span<const double> axis, std::size_t flat_index);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Lebesgue measure of a union of closed intervals.
double union_measure(std::span<const Interval> intervals);

struct BandSpectrum {
  int grid_n = 0;
  std::vector<double> axis;
  std::vector<Interval> bands;  // one per eigenvalue index, ascending labels
  std::vector<bool> flat;
  double measure = 0.0;         // of the union of all bands
  double width_sum = 0.0;
  // Optional eigenvalue table: one row per grid point (row-major grid order).
  std::vector<std::vector<double>> thetas;
  std::vector<std::vector<double>> eigenvalues;
};

struct SweepOptions {
  int grid = 0;  // 0 selects default_grid(dim)
  double flat_tol = 1e-8;
  bool with_potential = true;
  bool keep_table = false;
  unsigned threads = 0;  // 0: MAGSPEC_THREADS or hardware concurrency
};

/// Evaluates an arbitrary Hermitian family over the grid.
BandSpectrum sweep(int dim, int nu, const std::function<ComplexMatrix(std::span<const double>)>& fiber,
                   const SweepOptions& opts);

/// Bands of H_{b,a}(theta) = D_{b,a}(theta) (+ Q) over the grid.
BandSpectrum band_sweep(const FundamentalGraph& g, const OneForm& b, const OneForm& a,
                        const SweepOptions& opts = {});

/// Outcome of one executable inequality/identity check.
struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // signed margin or residual, check specific
  std::string detail;
};

struct LocalizationReport {
  std::vector<double> reduced_eigenvalues;  // of H^0 on the graph without supp mu
  int support_max_degree = 0;               // kappa_+^mu
  BandSpectrum spectrum;                    // of H_{mu, alpha}
  int invariant_I = 0;
  int beta = 0;
  double max_violation = 0.0;  // largest excursion outside a window (<= 0 when inside)
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Band localization sigma_n in [mu_n, mu_n + 2 kappa_+^mu] and the measure
/// bounds sum |sigma_n| <= 4 I <= 4 beta, with mu a minimal index form.
LocalizationReport verify_band_localization(const FundamentalGraph& g, const OneForm& mu,
                                            const SweepOptions& opts = {});

struct PerturbationReport {
  std::vector<double> theta0;
  OneForm phi_tilde;
  double lambda_1 = 0.0;   // min over the grid of lambda_1(X(theta))
  double lambda_nu = 0.0;  // max over the grid of lambda_nu(X(theta))
  double c_phi = 0.0;
  BandSpectrum magnetic;   // of H_{mu, phi_tilde}
  BandSpectrum free;       // of H_{mu, 0}
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Perturbation bounds for the magnetic field against the field-free operator.
PerturbationReport verify_perturbation(const FundamentalGraph& g, const OneForm& mu, const OneForm& phi,
                                       const SweepOptions& opts = {});

/// lambda_1(0) <= lambda_1(theta) on the whole grid, for a graph without phases.
/// Throws BadParams if the graph carries a nonzero magnetic form.
bool sy_sunada_check(const FundamentalGraph& g, const SweepOptions& opts = {});

}  // namespace magspec
