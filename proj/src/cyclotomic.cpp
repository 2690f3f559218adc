#include "covrep/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "covrep/error.hpp"

namespace covrep::cyc {

namespace {

// Exact quotient of monic integer polynomials, remainder must vanish.
std::vector<i64> poly_divide(std::vector<i64> num, const std::vector<i64>& den) {
  size_t dn = num.size() - 1, dd = den.size() - 1;
  std::vector<i64> q(dn - dd + 1, 0);
  for (size_t i = dn + 1; i-- > dd;) {
    i64 c = num[i];
    q[i - dd] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (i64 c : num)
    if (c != 0) fail(ErrorKind::Engine, "cyclotomic division left a remainder");
  return q;
}

std::vector<i64> cyclotomic_poly(i64 m) {
  // x^m - 1 divided by Phi_d for every proper divisor d of m.
  std::vector<i64> num(static_cast<size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<size_t>(m)] = 1;
  for (i64 d = 1; d < m; ++d)
    if (m % d == 0) num = poly_divide(std::move(num), cyclotomic_poly(d));
  return num;
}

CycContext build_context(i64 m) {
  CycContext cx;
  cx.m = m;
  cx.phi_coeffs = cyclotomic_poly(m);
  size_t deg = cx.phi_coeffs.size() - 1;
  cx.powers.resize(2 * deg);
  for (size_t j = 0; j < deg; ++j) {
    cx.powers[j].assign(deg, 0);
    cx.powers[j][j] = 1;
  }
  for (size_t j = deg; j < 2 * deg; ++j) {
    // x^j = x * x^{j-1}, then subtract lead * Phi (monic).
    std::vector<i64> v(deg + 1, 0);
    for (size_t t = 0; t < deg; ++t) v[t + 1] = cx.powers[j - 1][t];
    i64 lead = v[deg];
    std::vector<i64> red(deg, 0);
    for (size_t t = 0; t < deg; ++t) red[t] = v[t] - lead * cx.phi_coeffs[t];
    cx.powers[j] = std::move(red);
  }
  cx.root_pow.resize(static_cast<size_t>(m));
  std::vector<i64> cur(deg, 0);
  cur[0] = 1;
  for (i64 k = 0; k < m; ++k) {
    cx.root_pow[static_cast<size_t>(k)] = cur;
    // multiply by x
    std::vector<i64> nx(deg, 0);
    for (size_t t = 0; t < deg; ++t)
      if (cur[t] != 0)
        for (size_t u = 0; u < deg; ++u) nx[u] += cur[t] * cx.powers[t + 1][u];
    cur = std::move(nx);
  }
  return cx;
}

} // namespace

const CycContext& context(i64 m) {
  static std::map<i64, CycContext> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_context(m)).first;
  return it->second;
}

Cyc::Cyc(i64 integer, i64 m) : m_(m), co_(context(m).deg(), 0) { co_[0] = integer; }

Cyc Cyc::root_power(i64 k, i64 m) {
  const CycContext& cx = context(m);
  Cyc z(0, m);
  z.co_ = cx.root_pow[static_cast<size_t>(zmat::umod(k, m))];
  return z;
}

Cyc Cyc::lift(i64 M) const {
  if (M == m_) return *this;
  if (M % m_ != 0) fail(ErrorKind::Precondition, "cyclotomic lift requires m | M");
  i64 step = M / m_;
  const CycContext& cx = context(M);
  Cyc out(0, M);
  for (size_t j = 0; j < co_.size(); ++j) {
    if (co_[j] == 0) continue;
    const std::vector<i64>& p =
        cx.root_pow[static_cast<size_t>((static_cast<i64>(j) * step) % M)];
    for (size_t u = 0; u < out.co_.size(); ++u) out.co_[u] += co_[j] * p[u];
  }
  return out;
}

namespace {
void match_orders(Cyc& a, Cyc& b) {
  if (a.order() == b.order()) return;
  i64 M = zmat::lcm_ll(a.order(), b.order());
  a = a.lift(M);
  b = b.lift(M);
}
} // namespace

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc a = *this, b = o;
  match_orders(a, b);
  for (size_t j = 0; j < a.co_.size(); ++j) a.co_[j] += b.co_[j];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const {
  Cyc a = *this, b = o;
  match_orders(a, b);
  for (size_t j = 0; j < a.co_.size(); ++j) a.co_[j] -= b.co_[j];
  return a;
}

Cyc Cyc::operator*(const Cyc& o) const {
  Cyc a = *this, b = o;
  match_orders(a, b);
  const CycContext& cx = context(a.m_);
  size_t deg = cx.deg();
  std::vector<i64> conv(2 * deg, 0);
  for (size_t i = 0; i < deg; ++i) {
    if (a.co_[i] == 0) continue;
    for (size_t j = 0; j < deg; ++j)
      if (b.co_[j] != 0) conv[i + j] += a.co_[i] * b.co_[j];
  }
  Cyc out(0, a.m_);
  for (size_t t = 0; t < 2 * deg; ++t) {
    if (conv[t] == 0) continue;
    const std::vector<i64>& p = cx.powers[t];
    for (size_t u = 0; u < deg; ++u) out.co_[u] += conv[t] * p[u];
  }
  return out;
}

Cyc Cyc::operator*(i64 k) const {
  Cyc out = *this;
  for (i64& c : out.co_) c *= k;
  return out;
}

bool Cyc::operator==(const Cyc& o) const {
  Cyc a = *this, b = o;
  match_orders(a, b);
  return a.co_ == b.co_;
}

Cyc Cyc::conj() const {
  const CycContext& cx = context(m_);
  Cyc out(0, m_);
  for (size_t j = 0; j < co_.size(); ++j) {
    if (co_[j] == 0) continue;
    const std::vector<i64>& p =
        cx.root_pow[static_cast<size_t>((m_ - static_cast<i64>(j)) % m_)];
    for (size_t u = 0; u < out.co_.size(); ++u) out.co_[u] += co_[j] * p[u];
  }
  return out;
}

bool Cyc::is_zero() const {
  return std::all_of(co_.begin(), co_.end(), [](i64 c) { return c == 0; });
}

bool Cyc::is_rational_integer() const {
  // The power basis of Z[x]/Phi_m is an integral basis, so membership in Z
  // is visible on coordinates.
  for (size_t j = 1; j < co_.size(); ++j)
    if (co_[j] != 0) return false;
  return true;
}

i64 Cyc::rational_value() const {
  if (!is_rational_integer())
    fail(ErrorKind::Engine, "cyclotomic value is not a rational integer");
  return co_[0];
}

Cyc Cyc::divide_exact(i64 k) const {
  if (k == 0) fail(ErrorKind::Precondition, "division by zero");
  Cyc out = *this;
  for (i64& c : out.co_) {
    if (c % k != 0) fail(ErrorKind::Engine, "inexact cyclotomic division");
    c /= k;
  }
  return out;
}

bool Cyc::operator<(const Cyc& o) const {
  if (m_ != o.m_) {
    Cyc a = *this, b = o;
    match_orders(a, b);
    return a < b;
  }
  return co_ < o.co_;
}

Rat::Rat(i64 n, i64 d) {
  if (d == 0) fail(ErrorKind::Precondition, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i64 g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

} // namespace covrep::cyc
