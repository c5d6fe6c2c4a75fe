#include "magspec/one_form.hpp"

#include <cmath>
#include <numbers>

#include "magspec/error.hpp"

namespace magspec {

double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(x, two_pi);  // in [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

bool is_trivial_phase(double x) { return std::abs(wrap_angle(x)) <= kZeroTol; }

OneForm::OneForm(int edge_count, int dim, FormKind kind)
    : edge_count_(edge_count), dim_(dim), kind_(kind),
      values_(static_cast<std::size_t>(edge_count) * dim, 0.0) {
  if (edge_count < 0 || dim < 1) throw Error(ErrorCode::BadParams, "one-form needs dim >= 1");
  if (kind == FormKind::Magnetic && dim != 1) {
    throw Error(ErrorCode::DimensionMismatch, "magnetic forms are scalar");
  }
}

OneForm OneForm::magnetic(std::span<const double> values) {
  OneForm f(static_cast<int>(values.size()), 1, FormKind::Magnetic);
  for (std::size_t e = 0; e < values.size(); ++e) f.set(static_cast<int>(e), values[e]);
  return f;
}

std::vector<double> OneForm::value(OrientedEdge e) const {
  auto v = at(e.edge);
  std::vector<double> out(v.begin(), v.end());
  if (e.reversed) {
    for (double& x : out) x = -x;
    // -pi is outside (-pi, pi]; keep reversed magnetic values in range.
    if (is_magnetic()) out[0] = wrap_angle(out[0]);
  }
  return out;
}

void OneForm::set(int edge, std::span<const double> value) {
  if (static_cast<int>(value.size()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "form value has wrong length");
  }
  double* dst = values_.data() + static_cast<std::size_t>(edge) * dim_;
  for (int i = 0; i < dim_; ++i) dst[i] = is_magnetic() ? wrap_angle(value[i]) : value[i];
}

void OneForm::set(int edge, double value) { set(edge, std::span<const double>(&value, 1)); }

bool OneForm::is_zero_on(int edge) const {
  if (is_magnetic()) return is_trivial_phase(scalar(edge));
  for (double x : at(edge)) {
    if (std::abs(x) > kZeroTol) return false;
  }
  return true;
}

bool OneForm::is_zero() const {
  for (int e = 0; e < edge_count_; ++e) {
    if (!is_zero_on(e)) return false;
  }
  return true;
}

std::vector<int> OneForm::support_edges() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count_; ++e) {
    if (!is_zero_on(e)) out.push_back(e);
  }
  return out;
}

}  // namespace magspec
