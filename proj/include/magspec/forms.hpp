#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "magspec/graph.hpp"
#include "magspec/smith.hpp"

namespace magspec {

inline constexpr std::size_t kDefaultTreeCap = 1'000'000;

/// A closed path through the tree that starts with its chord: the chord in its
/// canonical orientation, then the tree path from head(chord) back to tail(chord).
struct BasicCycle {
  int chord = 0;
  std::vector<OrientedEdge> edges;
};

/// A spanning tree together with its chords and basic cycles.
class SpanningTreeBasis {
 public:
  SpanningTreeBasis() = default;
  SpanningTreeBasis(const FundamentalGraph& g, std::vector<int> tree_edges);

  const std::vector<int>& tree_edges() const { return tree_edges_; }
  const std::vector<int>& chords() const { return chords_; }
  /// Basic cycles in the order of `chords()`.
  const std::vector<BasicCycle>& cycles() const { return cycles_; }

  /// Tree path from vertex `from` to vertex `to`.
  std::vector<OrientedEdge> tree_path(int from, int to) const;

 private:
  std::vector<int> tree_edges_;
  std::vector<int> chords_;
  std::vector<BasicCycle> cycles_;
  // Rooted at vertex 0: parent edge leading towards the root and depth.
  std::vector<OrientedEdge> up_;
  std::vector<int> parent_;
  std::vector<int> depth_;
};

/// Visits the edge-id sets of all spanning trees in lexicographic order.
/// Returns the number of trees. Throws TreeCountExceedsCap once more than
/// `cap` trees are found.
std::size_t for_each_spanning_tree(const FundamentalGraph& g, std::size_t cap,
                                   const std::function<void(std::span<const int>)>& visit);

/// All spanning trees with chords and basic cycles, lexicographic by sorted
/// tree edge ids. Throws DisconnectedGraph or TreeCountExceedsCap.
std::vector<SpanningTreeBasis> enumerate_spanning_trees(const FundamentalGraph& g,
                                                        std::size_t cap = kDefaultTreeCap);

/// Sum of the form along a closed oriented edge sequence; magnetic forms are
/// reduced into (-pi, pi]. Throws OpenPath when the sequence is not closed.
std::vector<double> flux(const FundamentalGraph& g, const OneForm& form,
                         std::span<const OrientedEdge> cycle);

/// True when a flux vector vanishes (magnetic fluxes already reduced).
bool is_zero_flux(std::span<const double> flux);

/// Number of basic cycles of `tree` on which `x` has nonzero flux.
int nonzero_flux_count(const FundamentalGraph& g, const OneForm& x, const SpanningTreeBasis& tree);

/// The form equal to zero on tree edges and to the basic-cycle flux of `x` on
/// each chord. It has the same fluxes as `x` on every cycle.
OneForm tree_form(const FundamentalGraph& g, const OneForm& x, const SpanningTreeBasis& tree);

struct MinimalForm {
  OneForm form;
  SpanningTreeBasis tree;    // lexicographically smallest x-minimal tree
  int beta_x = 0;            // = #supp(form) / 2
  std::vector<std::size_t> minimal_trees;  // indices into the tree list
};

/// Minimal form in the flux class of `x`, certified by exhaustive search over
/// `trees` (which must be the complete enumeration).
MinimalForm minimal_form(const FundamentalGraph& g, const OneForm& x,
                         std::span<const SpanningTreeBasis> trees);

/// d x beta integer matrix of index-form fluxes over the chords of `tree`.
IntMatrix chord_flux_matrix(const FundamentalGraph& g, const SpanningTreeBasis& tree);

struct InvariantReport {
  int beta = 0;
  int d = 0;
  int I = 0;
  int I_alpha = 0;
  int I_mu_phi = 0;      // for the lexicographic (mu, phi) pair
  int I_mu_phi_min = 0;  // minimum over all pairs of minimal forms
  std::size_t tree_count = 0;
  bool lattice_image_ok = false;
  int flux_kernel_dim = 0;  // beta - rank of the chord flux matrix
};

/// Everything the spectral checks need: the report plus the minimal forms.
struct GraphInvariants {
  InvariantReport report;
  MinimalForm mu;   // minimal form for the index form
  MinimalForm phi;  // minimal form for the magnetic form
  // Pair (mu, phi) of minimal forms attaining I_mu_phi_min.
  OneForm pair_mu;
  OneForm pair_phi;
  std::vector<SpanningTreeBasis> trees;
};

struct InvariantOptions {
  std::size_t tree_cap = kDefaultTreeCap;
  /// Throw FluxImageNotFullLattice instead of reporting lattice_image_ok=false.
  bool require_full_lattice = true;
};

GraphInvariants compute_invariants(const FundamentalGraph& g, const InvariantOptions& opts = {});

}  // namespace magspec
