#include "magspec/smith.hpp"

#include <cstdlib>
#include <numeric>
#include <tuple>
#include <utility>

#include "magspec/error.hpp"

namespace magspec {

namespace {

std::int64_t checked(__int128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw Error(ErrorCode::BadParams, "integer overflow in Smith normal form");
  return static_cast<std::int64_t>(x);
}

// Replaces rows r1, r2 by (a r1 + b r2, c r1 + d r2).
void combine_rows(IntMatrix& m, int r1, int r2, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  for (int j = 0; j < m.cols; ++j) {
    __int128 x = m(r1, j), y = m(r2, j);
    m(r1, j) = checked(a * x + b * y);
    m(r2, j) = checked(c * x + d * y);
  }
}

void combine_cols(IntMatrix& m, int c1, int c2, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  for (int i = 0; i < m.rows; ++i) {
    __int128 x = m(i, c1), y = m(i, c2);
    m(i, c1) = checked(a * x + b * y);
    m(i, c2) = checked(c * x + d * y);
  }
}

// g = gcd(a, b) = s a + t b
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, cur_s) = std::make_pair(cur_s, old_s - q * cur_s);
    std::tie(old_t, cur_t) = std::make_pair(cur_t, old_t - q * cur_t);
  }
  s = old_s;
  t = old_t;
  return old_r;
}

}  // namespace

std::vector<std::int64_t> smith_divisors(IntMatrix m) {
  std::vector<std::int64_t> divisors;
  const int n = std::min(m.rows, m.cols);
  for (int k = 0; k < n; ++k) {
    // Pivot: smallest nonzero |entry| in the trailing block.
    int pr = -1, pc = -1;
    for (int i = k; i < m.rows; ++i) {
      for (int j = k; j < m.cols; ++j) {
        if (m(i, j) != 0 && (pr < 0 || std::llabs(m(i, j)) < std::llabs(m(pr, pc)))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr < 0) break;
    if (pr != k) combine_rows(m, k, pr, 0, 1, 1, 0);
    if (pc != k) combine_cols(m, k, pc, 0, 1, 1, 0);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = k + 1; i < m.rows; ++i) {
        if (m(i, k) == 0) continue;
        std::int64_t s, t, a = m(k, k), b = m(i, k);
        if (b % a == 0) {
          combine_rows(m, k, i, 1, 0, -b / a, 1);
          continue;
        }
        std::int64_t g = ext_gcd(a, b, s, t);
        // Unimodular: [s t; -b/g a/g]
        combine_rows(m, k, i, s, t, -b / g, a / g);
      }
      for (int j = k + 1; j < m.cols; ++j) {
        if (m(k, j) == 0) continue;
        std::int64_t s, t, a = m(k, k), b = m(k, j);
        if (b % a == 0) {
          combine_cols(m, k, j, 1, 0, -b / a, 1);
          continue;
        }
        std::int64_t g = ext_gcd(a, b, s, t);
        combine_cols(m, k, j, s, t, -b / g, a / g);
        clean = false;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide the whole trailing block.
      for (int i = k + 1; i < m.rows && clean; ++i) {
        for (int j = k + 1; j < m.cols; ++j) {
          if (m(i, j) % m(k, k) != 0) {
            combine_rows(m, k, i, 1, 1, 0, 1);
            clean = false;
            break;
          }
        }
      }
    }
    divisors.push_back(std::llabs(m(k, k)));
  }
  return divisors;
}

bool lattice_image_check(const IntMatrix& flux_matrix) {
  if (flux_matrix.rows == 0) return true;
  auto divisors = smith_divisors(flux_matrix);
  if (static_cast<int>(divisors.size()) != flux_matrix.rows) return false;
  for (auto d : divisors) {
    if (d != 1) return false;
  }
  return true;
}

std::int64_t determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const int n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  std::vector<__int128> a(m.data.begin(), m.data.end());
  auto at = [&](int i, int j) -> __int128& { return a[static_cast<std::size_t>(i) * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i) {
        if (at(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    }
    prev = at(k, k);
  }
  return checked(sign * at(n - 1, n - 1));
}

}  // namespace magspec
