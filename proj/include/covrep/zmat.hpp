#pragma once

#include <cstdint>
#include <vector>

// Small exact integer linear algebra over Z.  Everything here operates on
// matrices a few rows/columns wide with entries far below 2^31, so plain
// int64 arithmetic is exact throughout.

namespace covrep::zmat {

using i64 = long long;
using Row = std::vector<i64>;
using Mat = std::vector<Row>;

i64 umod(i64 a, i64 m);          // representative in [0, m)
i64 gcd_ll(i64 a, i64 b);
i64 lcm_ll(i64 a, i64 b);
// g = gcd(a,b) together with x,y such that a*x + b*y = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);
i64 isqrt_ll(i64 a);             // floor of the square root, a >= 0

// Row-style Hermite normal form of the lattice spanned by the rows of m.
// Result: rows are a basis in echelon form, pivots positive, entries above
// each pivot reduced into [0, pivot).  Zero rows are dropped.  The form is
// canonical, so two row sets span the same lattice iff their HNFs are equal.
Mat hnf(Mat m);

// Basis (as rows) of { x : x * m == 0 } for an r x c integer matrix m.
Mat left_kernel(const Mat& m);

// det of a square upper-triangular matrix (product of diagonal entries).
i64 diag_product(const Mat& m);

} // namespace covrep::zmat
