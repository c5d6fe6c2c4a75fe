#include <doctest.h>

#include <numbers>
#include <random>

#include "magspec/error.hpp"
#include "magspec/generators.hpp"
#include "magspec/spectral.hpp"
#include "magspec/verify.hpp"
#include "oracles.hpp"

using namespace magspec;

namespace {

const double pi = std::numbers::pi;

oracle::CMat to_oracle(const ComplexMatrix& m) {
  oracle::CMat a(m.rows(), std::vector<std::complex<double>>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  }
  return a;
}

FundamentalGraph with_alpha(const FundamentalGraph& g, std::vector<double> alpha) {
  std::vector<Edge> edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) edges[k].alpha = wrap_angle(alpha[k]);
  return FundamentalGraph(g.dim(), g.vertex_names(), edges, g.potential());
}

}  // namespace

TEST_CASE("hermitian eigenvalues") {
  ComplexMatrix c(1, 1);
  c(0, 0) = 2.5;
  CHECK(hermitian_eigenvalues(c) == std::vector<double>{2.5});

  for (double phi : {0.0, 0.7, 2.0, pi}) {
    ComplexMatrix m(2, 2);
    m << 2.0, -std::polar(1.0, phi), -std::polar(1.0, -phi), 2.0;
    auto ev = hermitian_eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(3.0));
  }

  ComplexMatrix bad(2, 2);
  bad << 1.0, 1.0, 0.0, 1.0;
  try {
    hermitian_eigenvalues(bad);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("eigenvalues agree with the characteristic polynomial") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5;
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
      a(i, i) = z(rng);
      for (int j = i + 1; j < n; ++j) {
        a(i, j) = {z(rng), z(rng)};
        a(j, i) = std::conj(a(i, j));
      }
    }
    auto ours = hermitian_eigenvalues(a);
    auto ref = oracle::charpoly_eigenvalues(to_oracle(a));
    REQUIRE(ref.size() == ours.size());
    for (int k = 0; k < n; ++k) CHECK(std::abs(ours[k] - ref[k]) < 1e-8);
  }
}

TEST_CASE("grid") {
  CHECK_THROWS_AS(axis_samples(2), Error);
  auto axis = axis_samples(101);
  CHECK(axis.front() == doctest::Approx(-pi));
  CHECK(axis.back() < pi);
  CHECK(std::is_sorted(axis.begin(), axis.end()));
  auto has = [&](double x) {
    return std::any_of(axis.begin(), axis.end(), [&](double a) { return std::abs(a - x) < 1e-12; });
  };
  CHECK(has(0.0));
  CHECK(has(2 * pi / 3));
  CHECK(has(-2 * pi / 3));
  CHECK(default_grid(2) == 101);
  CHECK(default_grid(3) == 21);
  CHECK(grid_size(2, 101) == axis.size() * axis.size());
  auto p = grid_point(2, axis, 1);
  CHECK(p[0] == axis[0]);
  CHECK(p[1] == axis[1]);
}

TEST_CASE("union measure") {
  std::vector<Interval> overlap{{0, 1}, {0.5, 2}};
  CHECK(union_measure(overlap) == doctest::Approx(2.0));
  std::vector<Interval> apart{{2, 3}, {0, 1}};
  CHECK(union_measure(apart) == doctest::Approx(2.0));
  std::vector<Interval> nested{{0, 4}, {1, 2}};
  CHECK(union_measure(nested) == doctest::Approx(4.0));
}

TEST_CASE("band sweeps of the standard lattices") {
  auto z2 = make_zd(2);
  auto s = band_sweep(z2, z2.index_form(), z2.magnetic_form());
  CHECK(s.bands[0].lo == doctest::Approx(0.0));
  CHECK(s.bands[0].hi == doctest::Approx(8.0));
  CHECK(s.measure == doctest::Approx(8.0));

  auto hex = make_hexagonal();
  auto h = band_sweep(hex, hex.index_form(), hex.magnetic_form());
  CHECK(h.measure == doctest::Approx(6.0).epsilon(1e-6));

  auto kag = make_kagome();
  auto k = band_sweep(kag, kag.index_form(), kag.magnetic_form());
  CHECK(k.flat == std::vector<bool>{false, false, true});
  CHECK(k.bands[2].lo == doctest::Approx(6.0));
  CHECK(k.measure <= k.width_sum + 1e-12);
}

TEST_CASE("sweep table and threads are deterministic") {
  auto kag = with_alpha(make_kagome(), {0.3, -0.2, 0.9, 1.7, -2.5, 0.4});
  SweepOptions one;
  one.grid = 15;
  one.keep_table = true;
  one.threads = 1;
  SweepOptions four = one;
  four.threads = 4;
  auto a = band_sweep(kag, kag.index_form(), kag.magnetic_form(), one);
  auto b = band_sweep(kag, kag.index_form(), kag.magnetic_form(), four);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.thetas == b.thetas);
  for (std::size_t n = 0; n < a.bands.size(); ++n) {
    CHECK(a.bands[n].lo == b.bands[n].lo);
    CHECK(a.bands[n].hi == b.bands[n].hi);
  }
  for (const auto& row : a.eigenvalues) CHECK(std::is_sorted(row.begin(), row.end()));
}

TEST_CASE("band localization") {
  SUBCASE("Z^2 equality case") {
    auto g = make_zd(2);
    auto rep = verify_band_localization(g, g.index_form());
    CHECK(rep.passed());
    CHECK(rep.reduced_eigenvalues == std::vector<double>{0.0});
    CHECK(rep.support_max_degree == 4);
  }
  SUBCASE("decorated lattice attains 4I") {
    auto g = make_decorated(2, make_path(2));
    auto inv = compute_invariants(g);
    auto rep = verify_band_localization(g, inv.mu.form);
    CHECK(rep.passed());
    CHECK(rep.spectrum.width_sum == doctest::Approx(8.0).epsilon(1e-3));
  }
  SUBCASE("Kagome") {
    auto g = make_kagome();
    auto inv = compute_invariants(g);
    CHECK(verify_band_localization(g, inv.mu.form).passed());
  }
}

TEST_CASE("perturbation bounds") {
  SUBCASE("removable field") {
    auto g = with_alpha(make_zd(2), {0.9, -2.0});
    auto rep = verify_perturbation(g, g.index_form(), g.magnetic_form());
    CHECK(rep.passed());
    CHECK(rep.c_phi == 0.0);
    CHECK(rep.lambda_1 == 0.0);
    CHECK(rep.lambda_nu == 0.0);
  }
  SUBCASE("decoration carries flux") {
    // Z^2 decorated by a triangle; the triangle's flux cannot be shifted away.
    FundamentalGraph tri(1, {"a", "b", "c"}, {{0, 1, {0}, 0.0}, {1, 2, {0}, 0.0}, {2, 0, {0}, 0.0}});
    auto base = make_decorated(2, tri);
    auto g = with_alpha(base, {0.0, 0.0, 0.0, 0.0, 1.3});
    auto inv = compute_invariants(g);
    auto rep = verify_perturbation(g, inv.pair_mu, inv.pair_phi);
    CHECK(rep.passed());
    CHECK_FALSE(rep.phi_tilde.is_zero());
    CHECK(rep.lambda_nu - rep.lambda_1 <= 2 * rep.c_phi + 1e-9);
  }
}

TEST_CASE("bottom of the spectrum") {
  CHECK(sy_sunada_check(make_zd(2)));
  CHECK(sy_sunada_check(make_kagome()));
  auto hex = make_hexagonal().with_potential({0.7, -0.4});
  CHECK(sy_sunada_check(hex));
  CHECK_THROWS_AS(sy_sunada_check(with_alpha(make_zd(1), {0.5})), Error);
}
