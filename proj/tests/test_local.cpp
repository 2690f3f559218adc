#include <doctest.h>

#include "covrep/error.hpp"
#include "covrep/local.hpp"

using namespace covrep;
using namespace covrep::local;
using zmat::umod;

static const std::pair<i64, i64> kGrid[] = {{5, 2}, {5, 4}, {7, 3},
                                            {7, 6}, {13, 4}, {13, 12}};

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((void)make_spec(6, 2), Error);  // not prime
  CHECK_THROWS_AS((void)make_spec(7, 4), Error);  // n does not divide p-1
  CHECK_THROWS_AS((void)make_spec(2, 1), Error);  // even residue char
  CHECK(make_spec(13, 12).eps_half() == 6);
}

TEST_CASE("primitive roots") {
  CHECK(make_spec(5, 2).primitive_root() == 2);
  CHECK(make_spec(7, 3).primitive_root() == 3);
  CHECK(make_spec(13, 4).primitive_root() == 2);
}

TEST_CASE("uniformizer against unit") {
  // (pi, g) = zeta^{-1} independent of p
  for (auto [p, n] : kGrid) {
    auto spec = make_spec(p, n);
    CHECK(hilbert_exp(spec, {1, 0}, {0, 1}) == umod(-1, n));
    CHECK(hilbert(spec, {1, 0}, {0, 1}).n == n);
  }
}

TEST_CASE("specific symbol values") {
  // eps_half = 2 for p=13, n=4: (pi, pi) = zeta_4^2 = -1
  auto s134 = make_spec(13, 4);
  CHECK(hilbert_exp(s134, {1, 0}, {1, 0}) == 2);
  // p=7, n=3: eps_half = 0, (pi g, pi) = zeta^{w_a v_b} = zeta^1
  auto s73 = make_spec(7, 3);
  CHECK(hilbert_exp(s73, {1, 1}, {1, 0}) == 1);
  // units pair trivially with units when eps_half arithmetic cancels:
  // (g, g) = 0 always (v = 0 on both sides)
  for (auto [p, n] : kGrid)
    CHECK(hilbert_exp(make_spec(p, n), {0, 1}, {0, 1}) == 0);
}

TEST_CASE("bilinearity and antisymmetry") {
  for (auto [p, n] : kGrid) {
    auto spec = make_spec(p, n);
    for (i64 va = 0; va < n; ++va)
      for (i64 wa = 0; wa < n; ++wa)
        for (i64 vb = 0; vb < n; ++vb)
          for (i64 wb = 0; wb < n; ++wb) {
            UnitClass a{va, wa}, b{vb, wb};
            i64 ab = hilbert_exp(spec, a, b);
            CHECK(umod(ab + hilbert_exp(spec, b, a), n) == 0);
            // multiplicative in the first slot against a fixed probe
            UnitClass probe{1, 1};
            i64 lhs = hilbert_exp(spec, class_mul(spec, a, b), probe);
            i64 rhs = umod(hilbert_exp(spec, a, probe) + hilbert_exp(spec, b, probe), n);
            CHECK(lhs == rhs);
          }
  }
}

TEST_CASE("a paired with minus a is trivial") {
  for (auto [p, n] : kGrid) {
    auto spec = make_spec(p, n);
    UnitClass minus1 = reduce_class(spec, 0, (p - 1) / 2);
    for (i64 v = 0; v < n; ++v)
      for (i64 w = 0; w < n; ++w) {
        UnitClass a{v, w};
        CHECK(hilbert_exp(spec, a, class_mul(spec, minus1, a)) == 0);
      }
  }
}

TEST_CASE("nondegeneracy") {
  for (auto [p, n] : kGrid) {
    auto spec = make_spec(p, n);
    for (i64 v = 0; v < n; ++v)
      for (i64 w = 0; w < n; ++w) {
        if (v == 0 && w == 0) continue;
        bool all_trivial = true;
        for (i64 vb = 0; vb < n && all_trivial; ++vb)
          for (i64 wb = 0; wb < n && all_trivial; ++wb)
            if (hilbert_exp(spec, {v, w}, {vb, wb}) != 0) all_trivial = false;
        CHECK(!all_trivial);
      }
  }
}

TEST_CASE("power class equivalence") {
  for (auto [p, n] : kGrid) {
    auto spec = make_spec(p, n);
    for (i64 k = 1; k <= n; ++k)
      for (i64 v = 0; v < n; ++v)
        for (i64 w = 0; w < n; ++w)
          CHECK(power_class_equivalence(spec, {v, w}, k));
  }
}

TEST_CASE("class arithmetic") {
  auto spec = make_spec(7, 3);
  UnitClass a = reduce_class(spec, 4, -1);
  CHECK(a.v == 1);
  CHECK(a.w == 2);
  UnitClass sq = class_pow(spec, {1, 2}, 2);
  CHECK(sq.v == 2);
  CHECK(sq.w == 1);
}
