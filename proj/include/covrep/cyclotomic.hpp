#pragma once

#include <cstdint>
#include <vector>

#include "covrep/zmat.hpp"

// Exact arithmetic in Z[zeta_m], represented in the power basis of
// Z[x]/(Phi_m(x)).  All character values live here; nothing is ever rounded.

namespace covrep::cyc {

using zmat::i64;

// Coefficients of the m-th cyclotomic polynomial (degree phi(m)), and the
// reduction table x^j mod Phi_m for j in [0, 2 phi(m)).
struct CycContext {
  i64 m = 1;
  std::vector<i64> phi_coeffs;            // monic, length phi(m) + 1
  std::vector<std::vector<i64>> powers;   // powers[j] = x^j reduced, length phi(m)
  std::vector<std::vector<i64>> root_pow; // root_pow[k] = zeta^k reduced, k in [0, m)

  size_t deg() const { return phi_coeffs.size() - 1; }
};

const CycContext& context(i64 m); // cached per m

class Cyc {
public:
  Cyc() : m_(1), co_(1, 0) {}
  explicit Cyc(i64 integer, i64 m = 1);
  static Cyc root_power(i64 k, i64 m); // zeta_m^k
  static Cyc zero(i64 m) { return Cyc(0, m); }
  static Cyc one(i64 m) { return Cyc(1, m); }

  i64 order() const { return m_; }
  const std::vector<i64>& coeffs() const { return co_; }

  // Lifts this value into Z[zeta_M] for m | M.
  Cyc lift(i64 M) const;

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  Cyc operator*(i64 k) const;
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  Cyc conj() const; // complex conjugate: zeta -> zeta^{-1}

  bool is_zero() const;
  bool is_rational_integer() const; // lies in Z
  i64 rational_value() const;       // requires is_rational_integer

  // Exact division by a non-zero integer; fails if not divisible.
  Cyc divide_exact(i64 k) const;

  // Strict weak order for deterministic sorting.
  bool operator<(const Cyc& o) const;

private:
  i64 m_;
  std::vector<i64> co_; // length phi(m)
};

// Exact rational with small numerator/denominator, used for inner products.
struct Rat {
  i64 num = 0;
  i64 den = 1;
  Rat() = default;
  Rat(i64 n, i64 d);
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool is_integer() const { return den == 1; }
};

} // namespace covrep::cyc
