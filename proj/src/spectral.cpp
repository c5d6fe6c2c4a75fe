#include "magspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

#include "magspec/error.hpp"

namespace magspec {

namespace {

constexpr double kMatrixTol = 1e-9;
constexpr double kSweepTol = 1e-6;

unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("MAGSPEC_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

CheckResult check(std::string name, double worst, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.passed = worst <= tol;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  if (m.size() == 0) return {};
  const double defect = hermitian_defect(m);
  if (defect > 1e-12 * (1.0 + m.norm())) {
    throw Error(ErrorCode::NotHermitian, "max |M - M^*| = " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
  std::sort(ev.begin(), ev.end());
  return ev;
}

int default_grid(int dim) { return dim <= 2 ? 101 : 21; }

std::vector<double> axis_samples(int n) {
  if (n < 3) throw Error(ErrorCode::GridTooCoarse, "need at least 3 samples per axis, got " + std::to_string(n));
  const double pi = std::numbers::pi;
  std::vector<double> pts;
  for (int k = 0; k < n; ++k) pts.push_back(2.0 * pi * k / n - pi);
  for (int j = -6; j <= 5; ++j) pts.push_back(j * pi / 6.0);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  }
  return out;
}

std::size_t grid_size(int dim, int n) {
  std::size_t per_axis = axis_samples(n).size();
  std::size_t total = 1;
  for (int s = 0; s < dim; ++s) total *= per_axis;
  return total;
}

std::vector<double> grid_point(int dim, std::span<const double> axis, std::size_t flat_index) {
  std::vector<double> theta(dim);
  for (int s = dim - 1; s >= 0; --s) {
    theta[s] = axis[flat_index % axis.size()];
    flat_index /= axis.size();
  }
  return theta;
}

double union_measure(std::span<const Interval> intervals) {
  std::vector<Interval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double total = 0.0;
  bool open = false;
  Interval cur;
  for (const Interval& iv : sorted) {
    if (open && iv.lo <= cur.hi) {
      cur.hi = std::max(cur.hi, iv.hi);
      continue;
    }
    if (open) total += cur.width();
    cur = iv;
    open = true;
  }
  if (open) total += cur.width();
  return total;
}

BandSpectrum sweep(int dim, int nu, const std::function<ComplexMatrix(std::span<const double>)>& fiber,
                   const SweepOptions& opts) {
  BandSpectrum s;
  s.grid_n = opts.grid > 0 ? opts.grid : default_grid(dim);
  s.axis = axis_samples(s.grid_n);
  std::size_t points = 1;
  for (int k = 0; k < dim; ++k) points *= s.axis.size();
  if (opts.keep_table) {
    s.thetas.resize(points);
    s.eigenvalues.resize(points);
  }

  const unsigned workers = worker_count(opts.threads, points);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<Interval>> partial(workers, std::vector<Interval>(nu, Interval{inf, -inf}));
  std::vector<std::exception_ptr> errors(workers);

  auto run = [&](unsigned w) {
    try {
      const std::size_t begin = points * w / workers, end = points * (w + 1) / workers;
      for (std::size_t k = begin; k < end; ++k) {
        auto theta = grid_point(dim, s.axis, k);
        auto ev = hermitian_eigenvalues(fiber(theta));
        if (static_cast<int>(ev.size()) != nu) throw Error(ErrorCode::DimensionMismatch, "fiber size changed");
        for (int n = 0; n < nu; ++n) {
          partial[w][n].lo = std::min(partial[w][n].lo, ev[n]);
          partial[w][n].hi = std::max(partial[w][n].hi, ev[n]);
        }
        if (opts.keep_table) {
          s.thetas[k] = std::move(theta);
          s.eigenvalues[k] = std::move(ev);
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  s.bands.assign(nu, Interval{inf, -inf});
  for (const auto& part : partial) {
    for (int n = 0; n < nu; ++n) {
      s.bands[n].lo = std::min(s.bands[n].lo, part[n].lo);
      s.bands[n].hi = std::max(s.bands[n].hi, part[n].hi);
    }
  }
  for (const Interval& b : s.bands) {
    s.flat.push_back(b.width() < opts.flat_tol);
    s.width_sum += b.width();
  }
  s.measure = union_measure(s.bands);
  return s;
}

BandSpectrum band_sweep(const FundamentalGraph& g, const OneForm& b, const OneForm& a, const SweepOptions& opts) {
  return sweep(g.dim(), g.vertex_count(),
               [&](std::span<const double> theta) { return fiber_matrix(g, b, a, theta, opts.with_potential); }, opts);
}

bool LocalizationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

LocalizationReport verify_band_localization(const FundamentalGraph& g, const OneForm& mu, const SweepOptions& opts) {
  LocalizationReport r;
  const OneForm alpha = g.magnetic_form();
  ComplexMatrix h0 = reduced_laplacian(g, mu, alpha);
  if (opts.with_potential) {
    for (int v = 0; v < g.vertex_count(); ++v) h0(v, v) += g.potential()[v];
  }
  r.reduced_eigenvalues = hermitian_eigenvalues(h0);
  r.support_max_degree = static_cast<int>(support_degrees(g, mu).maxCoeff());
  r.spectrum = band_sweep(g, mu, alpha, opts);
  r.invariant_I = mu.support_size() / 2;
  r.beta = g.betti();

  const double reach = 2.0 * r.support_max_degree;
  r.max_violation = -std::numeric_limits<double>::infinity();
  int worst_band = 0;
  for (std::size_t n = 0; n < r.spectrum.bands.size(); ++n) {
    const double m = r.reduced_eigenvalues[n];
    double v = std::max(m - r.spectrum.bands[n].lo, r.spectrum.bands[n].hi - (m + reach));
    if (v > r.max_violation) {
      r.max_violation = v;
      worst_band = static_cast<int>(n) + 1;
    }
  }
  r.checks.push_back(check("band_localization", r.max_violation, kMatrixTol,
                           "worst band " + std::to_string(worst_band)));
  r.checks.push_back(check("measure_le_sum", r.spectrum.measure - r.spectrum.width_sum, kSweepTol));
  r.checks.push_back(check("width_sum_le_4I", r.spectrum.width_sum - 4.0 * r.invariant_I, kSweepTol));
  r.checks.push_back(check("width_sum_le_4beta", r.spectrum.width_sum - 4.0 * r.beta, kSweepTol));

  double qmin = 0.0, qmax = 0.0;
  if (opts.with_potential) {
    qmin = *std::min_element(g.potential().begin(), g.potential().end());
    qmax = *std::max_element(g.potential().begin(), g.potential().end());
  }
  double range = std::max(qmin - r.spectrum.bands.front().lo,
                          r.spectrum.bands.back().hi - (2.0 * g.max_degree() + qmax));
  r.checks.push_back(check("spectrum_in_range", range, kMatrixTol));
  return r;
}

bool PerturbationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

PerturbationReport verify_perturbation(const FundamentalGraph& g, const OneForm& mu, const OneForm& phi,
                                       const SweepOptions& opts) {
  PerturbationReport r;
  ThetaReduction red = theta0_reduction(g, mu, phi);
  r.theta0 = red.theta0;
  r.phi_tilde = red.phi_tilde;
  const OneForm zero(g.edge_count(), 1, FormKind::Magnetic);

  SweepOptions table = opts;
  table.keep_table = true;
  r.magnetic = band_sweep(g, mu, r.phi_tilde, table);
  r.free = band_sweep(g, mu, zero, table);
  BandSpectrum x = sweep(
      g.dim(), g.vertex_count(),
      [&](std::span<const double> theta) { return perturbation_matrix(g, mu, r.phi_tilde, theta); }, opts);
  r.lambda_1 = x.bands.front().lo;
  r.lambda_nu = x.bands.back().hi;
  r.c_phi = perturbation_constant(g, r.phi_tilde);

  double pointwise = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < r.magnetic.eigenvalues.size(); ++k) {
    const auto& a = r.magnetic.eigenvalues[k];
    const auto& f = r.free.eigenvalues[k];
    for (std::size_t n = 0; n < a.size(); ++n) {
      pointwise = std::max({pointwise, f[n] + r.lambda_1 - a[n], a[n] - f[n] - r.lambda_nu});
    }
  }
  r.checks.push_back(check("pointwise_sandwich", pointwise, kMatrixTol));

  double ends = -std::numeric_limits<double>::infinity();
  double widths = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < r.magnetic.bands.size(); ++n) {
    const Interval& a = r.magnetic.bands[n];
    const Interval& f = r.free.bands[n];
    for (double diff : {a.lo - f.lo, a.hi - f.hi}) ends = std::max({ends, r.lambda_1 - diff, diff - r.lambda_nu});
    widths = std::max(widths, std::abs(a.width() - f.width()) - (r.lambda_nu - r.lambda_1));
  }
  r.checks.push_back(check("band_end_shift", ends, kSweepTol));
  r.checks.push_back(check("band_width_change", widths, kSweepTol));
  r.checks.push_back(check("spread_le_2C", (r.lambda_nu - r.lambda_1) - 2.0 * r.c_phi, kMatrixTol));
  r.checks.push_back(
      check("extreme_le_C", std::max(std::abs(r.lambda_1), std::abs(r.lambda_nu)) - r.c_phi, kMatrixTol));
  return r;
}

bool sy_sunada_check(const FundamentalGraph& g, const SweepOptions& opts) {
  const OneForm alpha = g.magnetic_form();
  if (!alpha.is_zero()) throw Error(ErrorCode::BadParams, "bottom-of-spectrum check needs zero phases");
  const OneForm tau = g.index_form();
  std::vector<double> origin(g.dim(), 0.0);
  const double bottom = hermitian_eigenvalues(fiber_matrix(g, tau, alpha, origin, opts.with_potential)).front();
  BandSpectrum s = band_sweep(g, tau, alpha, opts);
  return bottom <= s.bands.front().lo + kMatrixTol;
}

}  // namespace magspec
