#pragma once

#include <cstdint>
#include <vector>

namespace magspec {

/// Dense row-major integer matrix.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  std::int64_t& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  std::int64_t operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

/// Nonzero elementary divisors d_1 | d_2 | ... of the Smith normal form,
/// all positive. Their count is the rank of the matrix.
std::vector<std::int64_t> smith_divisors(IntMatrix m);

/// True iff the integer column span of a d x beta matrix is all of Z^d,
/// i.e. the matrix has rank d and every elementary divisor equals 1.
bool lattice_image_check(const IntMatrix& flux_matrix);

/// Determinant of a small square integer matrix (fraction-free elimination).
std::int64_t determinant(const IntMatrix& m);

}  // namespace magspec
