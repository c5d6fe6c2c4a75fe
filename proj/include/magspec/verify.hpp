#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "magspec/forms.hpp"
#include "magspec/spectral.hpp"

namespace magspec {

struct VerifyOptions {
  SweepOptions sweep;
  std::size_t tree_cap = kDefaultTreeCap;
  int theta_samples = 20;  // random quasimomenta for matrix-level identities
  std::uint64_t seed = 1;
};

struct VerificationReport {
  InvariantReport invariants;
  std::vector<CheckResult> checks;
  bool passed() const;
  const CheckResult* first_failure() const;
};

/// Runs the full battery on one graph: invariants, tree counting, flux
/// preservation, Hermiticity, gauge equivalence, exponent counts, splitting
/// and PSD sandwich, band localization, measure bounds, spectrum range,
/// field-free bottom of the spectrum, perturbation bounds.
VerificationReport run_verification(const FundamentalGraph& g, const VerifyOptions& opts = {});

/// Bands of H_{tau,alpha} swept in the representation H_{mu,phi_tilde} of the
/// minimal pair, where the phase field is reduced by a quasimomentum shift.
/// Table rows report the quasimomentum of the stored representation.
BandSpectrum spectrum_bands(const FundamentalGraph& g, const GraphInvariants& inv, const SweepOptions& opts = {});

struct RandomGraphOptions {
  int max_vertices = 6;
  int max_edges = 10;
  int min_dim = 1;
  int max_dim = 2;
  int index_range = 2;  // indices drawn from [-range, range]^d
  bool random_phases = true;
  bool random_potential = true;
};

/// Random connected fundamental graph whose index fluxes generate Z^d.
FundamentalGraph random_periodic_graph(std::mt19937_64& rng, const RandomGraphOptions& opts = {});

/// Laplacian (no phases, indices ignored) spanning tree count via the
/// product of nonzero Laplacian eigenvalues divided by nu.
double matrix_tree_count(const FundamentalGraph& g);

}  // namespace magspec
