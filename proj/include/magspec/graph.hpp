#pragma once

#include <span>
#include <string>
#include <vector>

#include "magspec/one_form.hpp"

namespace magspec {

/// One unoriented edge of the fundamental graph, stored in its canonical
/// orientation. The reverse orientation carries index -index and phase -alpha.
struct Edge {
  int tail = 0;
  int head = 0;
  std::vector<int> index;  // lattice translate crossed by tail -> head, length dim
  double alpha = 0.0;      // magnetic phase on tail -> head

  bool is_loop() const { return tail == head; }
};

/// Finite quotient of a periodic graph: vertices, edges with integer indices,
/// magnetic phases and a vertex potential. Immutable after construction.
class FundamentalGraph {
 public:
  FundamentalGraph() = default;
  FundamentalGraph(int dim, std::vector<std::string> vertex_names, std::vector<Edge> edges,
                   std::vector<double> potential = {});

  int dim() const { return dim_; }
  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }
  const std::vector<double>& potential() const { return potential_; }
  bool has_potential() const;

  int tail(OrientedEdge e) const { return e.reversed ? edges_[e.edge].head : edges_[e.edge].tail; }
  int head(OrientedEdge e) const { return e.reversed ? edges_[e.edge].tail : edges_[e.edge].head; }

  /// Number of oriented edges starting at v; a loop contributes 2.
  int degree(int v) const { return degree_[v]; }
  int max_degree() const;
  /// #edges - #vertices + 1.
  int betti() const { return edge_count() - vertex_count() + 1; }
  bool is_connected() const;

  /// Oriented edges leaving v (both orientations of a loop are listed).
  std::vector<OrientedEdge> outgoing(int v) const;

  /// The integer edge-index form as a real form of dimension dim.
  OneForm index_form() const;
  /// The magnetic form carried by the edge phases.
  OneForm magnetic_form() const;

  /// Same graph with phases replaced (values wrapped into (-pi, pi]).
  FundamentalGraph with_phases(const OneForm& alpha) const;
  FundamentalGraph with_potential(std::vector<double> potential) const;

 private:
  int dim_ = 0;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<double> potential_;
  std::vector<int> degree_;
};

struct ValidationReport {
  bool connected = false;
  int vertex_count = 0;
  int edge_count = 0;
  std::vector<int> degrees;
  int max_degree = 0;
  int betti = 0;
};

/// Checks connectivity, index lengths and phase ranges.
/// Throws Error{DisconnectedGraph | BadIndexLength | AlphaOutOfRange}.
ValidationReport validate(const FundamentalGraph& g);

/// Fractional vertex positions in the fundamental cell, in lattice-basis
/// coordinates, each component in [0, 1).
struct PeriodicEmbedding {
  std::vector<std::vector<double>> positions;
};

/// kappa(e) = pos(head) + index(e) - pos(tail) in lattice coordinates.
/// Throws Error{InconsistentEmbedding} when positions are missing, out of the
/// cell, of the wrong length, or not distinct.
OneForm coordinate_form(const FundamentalGraph& g, const PeriodicEmbedding& emb);

/// Recovers integer indices from an explicit edge-coordinate form:
/// index(e) = kappa(e) - (pos(head) - pos(tail)). Throws InconsistentEmbedding
/// if the result is not integral or disagrees with the stored indices.
void check_embedding_indices(const FundamentalGraph& g, const PeriodicEmbedding& emb,
                             const OneForm& kappa);

}  // namespace magspec
