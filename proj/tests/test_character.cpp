#include <doctest.h>

#include <array>
#include <vector>

#include "covrep/character.hpp"
#include "covrep/error.hpp"

using namespace covrep;
using namespace covrep::chr;
using covrep::cover::make_cover_spec;
using covrep::grp::FiniteGroup;
using covrep::grp::LinearDual;
using covrep::grp::Subgroup;
using covrep::local::make_spec;

namespace {

GroupPtr quaternion_group() {
  // codes: unit u in {1,i,j,k} and sign s in {0,1}; code = 2u + s
  auto unit_mul = [](int a, int b, int& sign) {
    static const int tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{+1, +1, +1, +1},
                                  {+1, -1, +1, -1},
                                  {+1, -1, -1, +1},
                                  {+1, +1, -1, -1}};
    sign = sgn[a][b];
    return tab[a][b];
  };
  std::vector<std::vector<zmat::i64>> t(8, std::vector<zmat::i64>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int sign;
      int u = unit_mul(a / 2, b / 2, sign);
      int s = (a % 2) ^ (b % 2) ^ (sign < 0 ? 1 : 0);
      t[a][b] = 2 * u + s;
    }
  return FiniteGroup::from_table(t);
}

GroupPtr unitriangular_27() {
  // (a,b,c) ~ [[1,a,c],[0,1,b],[0,0,1]] over F_3; code = a + 3b + 9c
  std::vector<std::vector<zmat::i64>> t(27, std::vector<zmat::i64>(27));
  for (int x = 0; x < 27; ++x)
    for (int y = 0; y < 27; ++y) {
      int a1 = x % 3, b1 = (x / 3) % 3, c1 = x / 9;
      int a2 = y % 3, b2 = (y / 3) % 3, c2 = y / 9;
      int a = (a1 + a2) % 3, b = (b1 + b2) % 3, c = (c1 + c2 + a1 * b2) % 3;
      t[x][y] = a + 3 * b + 9 * c;
    }
  return FiniteGroup::from_table(t);
}

std::vector<std::vector<zmat::i64>> cyclic_table(zmat::i64 m) {
  std::vector<std::vector<zmat::i64>> t(m, std::vector<zmat::i64>(m));
  for (zmat::i64 i = 0; i < m; ++i)
    for (zmat::i64 j = 0; j < m; ++j) t[i][j] = (i + j) % m;
  return t;
}

} // namespace

TEST_CASE("trivial character basics") {
  auto U = FiniteGroup::from_table(cyclic_table(4));
  auto dom = full_domain(U);
  auto one = trivial_character(dom);
  CHECK(one.degree() == 1);
  CHECK(inner_product(one, one) == cyc::Rat(1, 1));
  CHECK(is_irreducible(one));
  auto twice = char_add(one, one);
  CHECK(twice.degree() == 2);
  CHECK(!is_irreducible(twice));
  CHECK(multiplicity(twice, one) == 2);
  CHECK(char_equal(char_mul(one, twice), twice));
}

TEST_CASE("engine on a cyclic group") {
  auto U = FiniteGroup::from_table(cyclic_table(8));
  auto eng = irreducible_characters(U);
  CHECK(eng.certified());
  CHECK(eng.chars.size() == 8);
  for (const auto& ch : eng.chars) CHECK(ch.degree() == 1);
  // orthogonality across distinct characters
  for (size_t i = 0; i < eng.chars.size(); ++i)
    for (size_t j = i + 1; j < eng.chars.size(); ++j)
      CHECK(inner_product(eng.chars[i], eng.chars[j]) == cyc::Rat(0, 1));
}

TEST_CASE("engine on the quaternion group") {
  auto eng = irreducible_characters(quaternion_group());
  CHECK(eng.certified());
  CHECK(eng.num_classes == 5);
  std::array<int, 3> by_degree{0, 0, 0}; // counts for degrees 1, 2, other
  for (const auto& ch : eng.chars) {
    zmat::i64 d = ch.degree();
    by_degree[d == 1 ? 0 : (d == 2 ? 1 : 2)] += 1;
  }
  CHECK(by_degree[0] == 4);
  CHECK(by_degree[1] == 1);
  CHECK(by_degree[2] == 0);
}

TEST_CASE("engine on the unitriangular group of order 27") {
  auto eng = irreducible_characters(unitriangular_27());
  CHECK(eng.certified());
  CHECK(eng.num_classes == 11);
  int linear = 0, cubic = 0;
  for (const auto& ch : eng.chars) {
    if (ch.degree() == 1) ++linear;
    if (ch.degree() == 3) ++cubic;
  }
  CHECK(linear == 9);
  CHECK(cubic == 2);
}

TEST_CASE("engine rejects groups of higher class") {
  // S_3 has non-central commutators
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<zmat::i64>> t(6, std::vector<zmat::i64>(6));
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      for (size_t k = 0; k < 6; ++k)
        if (perms[k] == c) t[i][j] = (zmat::i64)k;
    }
  CHECK_THROWS_AS((void)irreducible_characters(FiniteGroup::from_table(t)), Error);
}

TEST_CASE("genuine characters of the 27 element cover") {
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(7, 3), 1, {1}), true);
  auto eng = irreducible_characters(U);
  CHECK(eng.certified());
  auto gen = genuine_characters(eng, grp::fiber_subgroup(U));
  CHECK(gen.size() == 2);
  zmat::i64 degsq = 0;
  for (const auto& ch : gen) {
    CHECK(ch.degree() == 3);
    degsq += ch.degree() * ch.degree();
  }
  CHECK(degsq + 9 == 27); // plus the nine non-genuine linear characters
}

TEST_CASE("genuine characters of an abelian cover") {
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(5, 2), 0, {1}), true);
  auto eng = irreducible_characters(U);
  CHECK(eng.certified());
  CHECK(eng.chars.size() == 8);
  auto gen = genuine_characters(eng, grp::fiber_subgroup(U));
  CHECK(gen.size() == 4); // half of the linear characters see the fiber faithfully
}

TEST_CASE("restriction and frobenius reciprocity") {
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(7, 3), 1, {1}), true);
  auto eng = irreducible_characters(U);
  Subgroup z = grp::group_center(U);
  auto zdom = subgroup_domain(U, z);
  LinearDual zdual(U, z);
  auto zchars = zdual.all_characters();
  REQUIRE(zchars.size() == 3);
  auto gdom = full_domain(U);
  for (const auto& psi : zchars) {
    auto phi = linear_character(zdom, zdual, psi);
    auto ind = induce_character(phi, gdom);
    CHECK(ind.degree() == 9);
    for (const auto& chi : eng.chars) {
      auto res = restrict_character(chi, zdom);
      CHECK(multiplicity(ind, chi) == multiplicity(res, phi));
    }
  }
}

TEST_CASE("induction is invariant under conjugating the inducing character") {
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(7, 3), 1, {1}), true);
  // a maximal abelian subgroup: fiber plus one base direction
  Subgroup m = Subgroup::generated(U, {U->encode(1, {0, 0}), U->encode(0, {1, 0})});
  REQUIRE(m.order() == 9);
  REQUIRE(m.is_abelian());
  REQUIRE(m.is_normal());
  auto mdom = subgroup_domain(U, m);
  LinearDual mdual(U, m);
  auto mchars = mdual.all_characters();
  auto gdom = full_domain(U);
  i64 outside = -1;
  for (i64 g = 0; g < U->order() && outside < 0; ++g)
    if (!m.contains(g)) outside = g;
  for (const auto& lam : mchars) {
    auto chi = linear_character(mdom, mdual, lam);
    auto chig = conjugate_character(chi, outside);
    CHECK(char_equal(induce_character(chi, gdom), induce_character(chig, gdom)));
  }
}

TEST_CASE("central exponents of genuine characters") {
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(7, 3), 1, {1}), true);
  auto eng = irreducible_characters(U);
  auto gen = genuine_characters(eng, grp::fiber_subgroup(U));
  i64 zgen = U->encode(1, {0, 0});
  std::vector<i64> exps;
  for (const auto& ch : gen) exps.push_back(central_exponent(ch, zgen));
  std::sort(exps.begin(), exps.end());
  CHECK(exps == std::vector<i64>{1, 2});
}

TEST_CASE("conjugate dual and products") {
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(7, 3), 1, {1}), true);
  auto eng = irreducible_characters(U);
  for (const auto& ch : eng.chars) {
    auto bar = char_conjugate_dual(ch);
    CHECK(bar.degree() == ch.degree());
    // <chi, chi> = <bar chi, bar chi> = 1
    CHECK(is_irreducible(bar));
    // chi * conj(chi) contains the trivial character exactly once
    auto prod = char_mul(ch, bar);
    CHECK(multiplicity(prod, trivial_character(full_domain(U))) == 1);
  }
}
