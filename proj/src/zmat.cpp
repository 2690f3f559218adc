#include "covrep/zmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace covrep::zmat {

i64 umod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcd_ll(i64 a, i64 b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm_ll(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return std::llabs(a);
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

i64 isqrt_ll(i64 a) {
  if (a < 0) return -1;
  if (a == 0) return 0;
  i64 s = static_cast<i64>(std::sqrt(static_cast<double>(a)));
  if (s < 1) s = 1;
  // compare via division so the probes cannot overflow
  while (s > 0 && s > a / s) --s;
  while (s + 1 <= a / (s + 1)) ++s;
  return s;
}

Mat hnf(Mat m) {
  if (m.empty()) return m;
  const size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    // Eliminate below `row` in this column via gcd row operations.
    for (size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      if (m[row][col] == 0) {
        std::swap(m[row], m[r]);
        continue;
      }
      i64 x, y;
      i64 g = ext_gcd(m[row][col], m[r][col], x, y);
      i64 a = m[row][col] / g, b = m[r][col] / g;
      for (size_t k = 0; k < cols; ++k) {
        i64 top = m[row][k], bot = m[r][k];
        m[row][k] = x * top + y * bot;
        m[r][k] = -b * top + a * bot;
      }
    }
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0)
      for (size_t k = 0; k < cols; ++k) m[row][k] = -m[row][k];
    // Reduce entries above the pivot into [0, pivot).
    for (size_t r = 0; r < row; ++r) {
      i64 q = m[r][col] / m[row][col];
      if (m[r][col] % m[row][col] < 0) --q;
      if (q == 0) continue;
      for (size_t k = 0; k < cols; ++k) m[r][k] -= q * m[row][k];
    }
    ++row;
  }
  m.resize(row);
  return m;
}

Mat left_kernel(const Mat& m) {
  const size_t rows = m.size();
  if (rows == 0) return {};
  const size_t cols = m[0].size();
  // Augment [m | I], run the HNF elimination; rows whose m-part vanishes
  // carry kernel vectors in the identity part.
  Mat a(rows, Row(cols + rows, 0));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) a[r][c] = m[r][c];
    a[r][cols + r] = 1;
  }
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    for (size_t r = row + 1; r < rows; ++r) {
      if (a[r][col] == 0) continue;
      if (a[row][col] == 0) {
        std::swap(a[row], a[r]);
        continue;
      }
      i64 x, y;
      i64 g = ext_gcd(a[row][col], a[r][col], x, y);
      i64 p = a[row][col] / g, q = a[r][col] / g;
      for (size_t k = 0; k < cols + rows; ++k) {
        i64 top = a[row][k], bot = a[r][k];
        a[row][k] = x * top + y * bot;
        a[r][k] = -q * top + p * bot;
      }
    }
    if (a[row][col] != 0) ++row;
  }
  Mat kernel;
  for (size_t r = row; r < rows; ++r)
    kernel.push_back(Row(a[r].begin() + cols, a[r].end()));
  return hnf(std::move(kernel));
}

i64 diag_product(const Mat& m) {
  i64 p = 1;
  for (size_t i = 0; i < m.size(); ++i) p *= m[i][i];
  return p;
}

} // namespace covrep::zmat
