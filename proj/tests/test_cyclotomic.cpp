#include <doctest.h>

#include "covrep/cyclotomic.hpp"
#include "covrep/error.hpp"

using namespace covrep;
using cyc::Cyc;
using cyc::Rat;
using zmat::i64;

TEST_CASE("cyclotomic polynomial coefficients") {
  CHECK(cyc::context(1).phi_coeffs == std::vector<i64>{-1, 1});
  CHECK(cyc::context(2).phi_coeffs == std::vector<i64>{1, 1});
  CHECK(cyc::context(3).phi_coeffs == std::vector<i64>{1, 1, 1});
  CHECK(cyc::context(4).phi_coeffs == std::vector<i64>{1, 0, 1});
  CHECK(cyc::context(6).phi_coeffs == std::vector<i64>{1, -1, 1});
  CHECK(cyc::context(12).phi_coeffs == std::vector<i64>{1, 0, -1, 0, 1});
}

TEST_CASE("roots of unity relations") {
  CHECK(Cyc::root_power(2, 4) == Cyc(-1, 4));
  CHECK(Cyc::root_power(3, 6) == Cyc(-1, 6));
  // zeta_3 + zeta_3^2 = -1
  CHECK(Cyc::root_power(1, 3) + Cyc::root_power(2, 3) == Cyc(-1, 3));
  // zeta_2 * zeta_3 = zeta_6^5
  CHECK(Cyc::root_power(1, 2) * Cyc::root_power(1, 3) == Cyc::root_power(5, 6));
  // zeta_m^m = 1
  for (i64 m = 1; m <= 12; ++m) CHECK(Cyc::root_power(m, m) == Cyc::one(m));
}

TEST_CASE("sum of all m-th roots vanishes") {
  for (i64 m = 2; m <= 12; ++m) {
    Cyc s = Cyc::zero(m);
    for (i64 k = 0; k < m; ++k) s += Cyc::root_power(k, m);
    CHECK(s.is_zero());
  }
}

TEST_CASE("lift consistency") {
  CHECK(Cyc::root_power(1, 3).lift(12) == Cyc::root_power(4, 12));
  CHECK(Cyc::root_power(1, 2).lift(6) == Cyc::root_power(3, 6));
  CHECK(Cyc(5, 1).lift(8).rational_value() == 5);
}

TEST_CASE("conjugation") {
  Cyc z = Cyc::root_power(1, 5);
  CHECK(z.conj() == Cyc::root_power(4, 5));
  CHECK((z * z.conj()) == Cyc::one(5));
  // (2 + i)(2 - i) = 5
  Cyc v = Cyc::root_power(1, 4) + Cyc(2, 4);
  CHECK((v * v.conj()).is_rational_integer());
  CHECK((v * v.conj()).rational_value() == 5);
}

TEST_CASE("rational detection in the power basis") {
  Cyc s = Cyc::root_power(1, 4) + Cyc::root_power(3, 4); // i + (-i) = 0
  CHECK(s.is_zero());
  CHECK(s.is_rational_integer());
  Cyc t = Cyc::root_power(1, 3) + Cyc::root_power(2, 3) + Cyc(4, 3);
  CHECK(t.is_rational_integer());
  CHECK(t.rational_value() == 3);
  CHECK(!Cyc::root_power(1, 3).is_rational_integer());
}

TEST_CASE("exact division") {
  Cyc v = Cyc::root_power(1, 6) * 9;
  CHECK(v.divide_exact(3) == Cyc::root_power(1, 6) * 3);
  CHECK_THROWS_AS((void)v.divide_exact(2), Error);
}

TEST_CASE("rationals normalize") {
  Rat r(6, -4);
  CHECK(r.num == -3);
  CHECK(r.den == 2);
  CHECK(Rat(4, 2).is_integer());
  CHECK(Rat(0, 7) == Rat(0, 1));
}
