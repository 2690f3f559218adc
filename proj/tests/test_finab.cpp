#include <doctest.h>

#include "covrep/error.hpp"
#include "covrep/finab.hpp"

using namespace covrep;
using namespace covrep::finab;

TEST_CASE("group arithmetic in elementary divisor coordinates") {
  FinAbGroup g({2, 4});
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  CHECK(g.reduce({3, 5}) == Vec{1, 1});
  CHECK(g.add({1, 3}, {1, 2}) == Vec{0, 1});
  CHECK(g.neg({1, 3}) == Vec{1, 1});
  CHECK(g.smul(3, {1, 2}) == Vec{1, 2});
  CHECK(g.elements().size() == 8);
  CHECK_THROWS_AS(FinAbGroup({4, 2}), Error); // not a divisor chain
  CHECK(FinAbGroup({1, 1}).order() == 1);     // degenerate group is fine
}

TEST_CASE("subgroup handles are canonical") {
  FinAbGroup g({2, 4});
  SubgroupHandle h1(g, {{1, 2}});
  SubgroupHandle h2(g, {{1, 2}, {0, 0}, {1, 2}});
  CHECK(h1 == h2);
  CHECK(h1.order() == 2);
  CHECK(h1.index() == 4);
  CHECK(h1.contains({1, 2}));
  CHECK(h1.contains({1, 6})); // reduction happens before the test
  CHECK(!h1.contains({1, 0}));
  CHECK(SubgroupHandle::full(g).order() == 8);
  CHECK(SubgroupHandle::trivial(g).order() == 1);
  CHECK(subgroup_index(g, h1) == 4);
}

TEST_CASE("join and intersect") {
  FinAbGroup g({4, 4});
  SubgroupHandle a(g, {{1, 0}});
  SubgroupHandle b(g, {{0, 1}});
  CHECK(a.join(b) == SubgroupHandle::full(g));
  CHECK(a.intersect(b) == SubgroupHandle::trivial(g));
  SubgroupHandle c(g, {{2, 2}});
  SubgroupHandle d(g, {{1, 1}});
  CHECK(d.contains_subgroup(c));
  CHECK(d.intersect(c) == c);
}

TEST_CASE("subgroup elements enumerate exactly") {
  FinAbGroup g({2, 4});
  SubgroupHandle h(g, {{0, 2}, {1, 0}});
  auto els = h.elements();
  CHECK(els.size() == 4);
  for (const auto& e : els) CHECK(h.contains(e));
}

TEST_CASE("characters evaluate and compose") {
  FinAbGroup g({2, 4});
  SubgroupHandle full = SubgroupHandle::full(g);
  // chi(x) = zeta_4^{2 x_0 + x_1}
  AbCharacter chi(full, {1, 1});
  CHECK(chi.zeta_order() == 4);
  CHECK(chi.value_exp({1, 0}) == 2);
  CHECK(chi.value_exp({0, 1}) == 1);
  CHECK(chi.value_exp({1, 1}) == 3);
  AbCharacter sq = chi.times(chi);
  CHECK(sq.value_exp({0, 1}) == 2);
  CHECK(chi.times(chi.inverse()).equals(AbCharacter::trivial(full)));
  // restriction remembers only values on the smaller domain
  SubgroupHandle h(g, {{0, 2}});
  AbCharacter res = chi.restrict_to(h);
  CHECK(res.value_exp({0, 2}) == 2);
  AbCharacter other(full, {0, 1});
  CHECK(res.equals(other.restrict_to(h).times(AbCharacter(h, {1, 0}))));
}

TEST_CASE("character extension count and distinctness") {
  FinAbGroup g({2, 4});
  SubgroupHandle h(g, {{1, 2}});
  AbCharacter psi(h, {0, 1}); // psi on h
  auto exts = extend_character(g, h, psi);
  CHECK((i64)exts.size() == subgroup_index(g, h));
  for (size_t i = 0; i < exts.size(); ++i) {
    CHECK(exts[i].restrict_to(h).equals(psi));
    for (size_t j = i + 1; j < exts.size(); ++j) CHECK(!exts[i].equals(exts[j]));
  }
}

TEST_CASE("consistency on intersections") {
  FinAbGroup g({4, 4});
  SubgroupHandle a(g, {{1, 0}, {0, 2}});
  SubgroupHandle b(g, {{0, 1}});
  AbCharacter chi_a(a, {1, 2});
  AbCharacter chi_b(b, {3, 2}); // on b, only the second exponent matters
  CHECK(consistent(chi_a, chi_b)); // both give value 0 on a cap b = <(0,2)>? no:
  // a cap b = <(0,2)>; chi_a(0,2) = zeta^{2*2} = 1, chi_b(0,2) = zeta^{2*2} = 1
  AbCharacter bad(b, {0, 1});
  CHECK(!consistent(chi_a, bad)); // bad(0,2) = zeta^2 != 1
  AbCharacter glued = common_extension(chi_a, chi_b);
  CHECK(glued.domain() == a.join(b));
  CHECK(glued.restrict_to(a).equals(chi_a));
  CHECK(glued.restrict_to(b).equals(chi_b));
}

TEST_CASE("diamond with equal corners returns the given pair") {
  FinAbGroup d({2, 2});
  SubgroupHandle full = SubgroupHandle::full(d);
  SubgroupHandle triv = SubgroupHandle::trivial(d);
  AbCharacter psi2(full, {1, 0});
  AbCharacter chi2 = AbCharacter::trivial(triv);
  auto res = diamond_check(d, full, full, triv, triv, psi2, chi2);
  REQUIRE(res.z.size() == 1);
  CHECK(res.z[0].first.equals(psi2));
  CHECK(res.graph_of_bijection);
  CHECK(res.expected == 1);
}

TEST_CASE("diamond bijection on a proper configuration") {
  FinAbGroup d({2, 2});
  SubgroupHandle a1(d, {{1, 0}});
  SubgroupHandle a2 = SubgroupHandle::trivial(d);
  SubgroupHandle b1 = SubgroupHandle::full(d);
  SubgroupHandle b2(d, {{0, 1}});
  AbCharacter psi2 = AbCharacter::trivial(a2);
  AbCharacter chi2(b2, {0, 1});
  auto res = diamond_check(d, a1, a2, b1, b2, psi2, chi2);
  CHECK(res.z.size() == 2);
  CHECK(res.expected == 2);
  CHECK(res.graph_of_bijection);
  for (auto& [p1, c1] : res.z) {
    CHECK(consistent(p1, c1));
    CHECK(c1.restrict_to(b2).equals(chi2));
  }
}

TEST_CASE("diamond hypothesis violations are named") {
  // product decomposition D = A2 B1 fails when A2 is trivial and B1 is the
  // diagonal, and likewise for the cyclic configuration
  FinAbGroup d2({2, 2});
  SubgroupHandle a1 = SubgroupHandle::full(d2);
  SubgroupHandle diag(d2, {{1, 1}});
  SubgroupHandle triv = SubgroupHandle::trivial(d2);
  AbCharacter tpsi = AbCharacter::trivial(triv);
  CHECK_THROWS_WITH_AS(
      (void)diamond_check(d2, a1, triv, diag, triv, tpsi, tpsi),
      "diamond hypothesis failed: D = A2 B1", Error);

  FinAbGroup d4({4});
  SubgroupHandle a1c = SubgroupHandle::full(d4);
  SubgroupHandle a2c(d4, {{2}});
  SubgroupHandle trivc = SubgroupHandle::trivial(d4);
  AbCharacter psi2c = AbCharacter::trivial(a2c);
  AbCharacter chi2c = AbCharacter::trivial(trivc);
  CHECK_THROWS_WITH_AS(
      (void)diamond_check(d4, a1c, a2c, trivc, trivc, psi2c, chi2c),
      "diamond hypothesis failed: D = A2 B1", Error);
}

TEST_CASE("json round trip") {
  FinAbGroup g({2, 4});
  auto jg = to_json(g);
  CHECK(group_from_json(jg) == g);
  SubgroupHandle h(g, {{1, 2}});
  auto jh = to_json(h);
  CHECK(subgroup_from_json(jh) == h);
  AbCharacter chi(h, {0, 1});
  auto jc = to_json(chi);
  CHECK(character_from_json(jc).equals(chi));
}

TEST_CASE("double dual evaluation") {
  // evaluating all characters on all elements separates points
  FinAbGroup g({2, 4});
  SubgroupHandle full = SubgroupHandle::full(g);
  auto chars = extend_character(g, full, AbCharacter::trivial(full));
  CHECK(chars.size() == 1); // extensions of a character of G itself: only it
  auto all = extend_character(g, SubgroupHandle::trivial(g),
                              AbCharacter::trivial(SubgroupHandle::trivial(g)));
  CHECK(all.size() == 8);
  for (const auto& x : g.elements()) {
    if (x == g.zero()) continue;
    bool separated = false;
    for (const auto& c : all)
      if (c.value_exp(x) != 0) separated = true;
    CHECK(separated);
  }
}
