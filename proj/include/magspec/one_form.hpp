#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace magspec {

/// An edge of the fundamental graph traversed in a definite direction.
/// `reversed == false` follows the stored (canonical) orientation tail -> head.
struct OrientedEdge {
  int edge = 0;
  bool reversed = false;

  OrientedEdge inverse() const { return {edge, !reversed}; }
  double sign() const { return reversed ? -1.0 : 1.0; }
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

enum class FormKind {
  Real,      // values in R^n
  Magnetic,  // scalar values taken modulo 2*pi, stored in (-pi, pi]
};

/// Absolute tolerance below which a (reduced) form value counts as zero.
inline constexpr double kZeroTol = 1e-9;

/// Reduces an angle into (-pi, pi].
double wrap_angle(double x);

/// True when exp(i x) == 1 within kZeroTol.
bool is_trivial_phase(double x);

/// An antisymmetric edge function b(reverse e) = -b(e). Values are stored once
/// per unoriented edge on its canonical orientation, so antisymmetry holds by
/// construction.
class OneForm {
 public:
  OneForm() = default;
  OneForm(int edge_count, int dim, FormKind kind = FormKind::Real);

  static OneForm magnetic(std::span<const double> values);

  int edge_count() const { return edge_count_; }
  int dim() const { return dim_; }
  FormKind kind() const { return kind_; }
  bool is_magnetic() const { return kind_ == FormKind::Magnetic; }

  /// Value on the canonical orientation of `edge`.
  std::span<const double> at(int edge) const {
    return {values_.data() + static_cast<std::size_t>(edge) * dim_, static_cast<std::size_t>(dim_)};
  }
  double scalar(int edge) const { return values_[static_cast<std::size_t>(edge) * dim_]; }

  /// Value on an oriented edge (sign flipped for the reverse orientation).
  std::vector<double> value(OrientedEdge e) const;
  double scalar(OrientedEdge e) const { return e.sign() * scalar(e.edge); }

  /// Sets the canonical value. Magnetic values are wrapped into (-pi, pi].
  void set(int edge, std::span<const double> value);
  void set(int edge, double value);

  bool is_zero_on(int edge) const;
  bool is_zero() const;
  /// Unoriented edges where the form is nonzero, ascending.
  std::vector<int> support_edges() const;
  /// Number of oriented edges in the support (twice the unoriented count).
  int support_size() const { return 2 * static_cast<int>(support_edges().size()); }

  const std::vector<double>& raw() const { return values_; }

 private:
  int edge_count_ = 0;
  int dim_ = 0;
  FormKind kind_ = FormKind::Real;
  std::vector<double> values_;
};

}  // namespace magspec
