#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

#include "covrep/error.hpp"
#include "covrep/group.hpp"

using namespace covrep;
using namespace covrep::grp;
using covrep::cover::CoverSpec;
using covrep::cover::make_cover_spec;
using covrep::local::make_spec;

namespace {

std::vector<std::vector<i64>> cyclic_table(i64 m) {
  std::vector<std::vector<i64>> t(m, std::vector<i64>(m));
  for (i64 i = 0; i < m; ++i)
    for (i64 j = 0; j < m; ++j) t[i][j] = (i + j) % m;
  return t;
}

std::vector<std::vector<i64>> s3_table() {
  // permutations of {0,1,2} in lexicographic order; composition (pq)(x)=p(q(x))
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return (i64)i;
    return (i64)-1;
  };
  std::vector<std::vector<i64>> t(6, std::vector<i64>(6));
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = index_of(c);
    }
  return t;
}

} // namespace

TEST_CASE("table group validation and arithmetic") {
  auto U = FiniteGroup::from_table(cyclic_table(6));
  CHECK(U->order() == 6);
  CHECK(U->id() == 0);
  CHECK(U->mul(4, 5) == 3);
  CHECK(U->inv(2) == 4);
  CHECK(U->pow(1, 100) == 4);
  CHECK(U->pow(1, -1) == 5);
  CHECK(U->element_order(2) == 3);
  CHECK(U->exponent() == 6);
  CHECK(!U->is_cover_model());

  // malformed tables are rejected
  CHECK_THROWS_AS((void)FiniteGroup::from_table({{0, 1}, {1}}), Error);
  CHECK_THROWS_AS((void)FiniteGroup::from_table({{1, 0}, {0, 0}}), Error);
}

TEST_CASE("symmetric group on three letters") {
  auto U = FiniteGroup::from_table(s3_table());
  CHECK(U->order() == 6);
  CHECK(U->exponent() == 6);
  Subgroup z = group_center(U);
  CHECK(z.order() == 1);
  auto cls = make_class_data(*U, whole_group(U).elements(), U->generators());
  CHECK(cls.num_classes() == 3);
  std::vector<i64> sizes = cls.sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<i64>{1, 2, 3});
}

TEST_CASE("subgroups of the symmetric group") {
  auto U = FiniteGroup::from_table(s3_table());
  // find a transposition and a 3-cycle by element order
  i64 transposition = -1, three_cycle = -1;
  for (i64 g = 0; g < 6; ++g) {
    if (U->element_order(g) == 2 && transposition < 0) transposition = g;
    if (U->element_order(g) == 3 && three_cycle < 0) three_cycle = g;
  }
  Subgroup t = Subgroup::generated(U, {transposition});
  CHECK(t.order() == 2);
  CHECK(!t.is_normal());
  Subgroup a3 = Subgroup::generated(U, {three_cycle});
  CHECK(a3.order() == 3);
  CHECK(a3.is_normal());
  CHECK(a3.is_abelian());
  CHECK(t.join(a3).order() == 6);
  CHECK(t.intersect(a3).order() == 1);
  Subgroup conj = t.conjugate_by(three_cycle);
  CHECK(conj.order() == 2);
  CHECK(!conj.same_as(t));
  CHECK(whole_group(U).centralizer_of(a3).same_as(a3));
  // closure check catches non-subgroups
  CHECK_THROWS_AS((void)Subgroup::from_elements(U, {0, transposition, three_cycle}),
                  Error);
}

TEST_CASE("cover model multiplication matches the cocycle") {
  auto field = make_spec(5, 2);
  CoverSpec spec = make_cover_spec(field, 0, {2});
  auto U = FiniteGroup::from_cover(spec, true);
  CHECK(U->order() == 32);
  CHECK(U->dims() == 4);
  CHECK(U->fiber_n() == 2);
  CHECK(U->is_cover_model());
  CHECK(U->cross_blocks());

  for (i64 a = 0; a < U->order(); ++a) {
    auto [ta, xa] = U->decode(a);
    CHECK(U->encode(ta, xa) == a);
    CHECK(U->mul(a, U->inv(a)) == U->id());
    for (i64 b = 0; b < U->order(); ++b) {
      auto [tb, xb] = U->decode(b);
      auto [tc, xc] = U->decode(U->mul(a, b));
      i64 n = spec.n();
      CHECK(tc == (ta + tb + cover::torus_cocycle(spec, xa, xb)) % n);
      for (size_t i = 0; i < xc.size(); ++i) CHECK(xc[i] == (xa[i] + xb[i]) % n);
    }
  }
  // commutators land in the fiber and match the base-level form
  for (i64 a = 0; a < U->order(); ++a)
    for (i64 b = 0; b < U->order(); ++b) {
      auto [tc, xc] = U->decode(U->commutator(a, b));
      for (i64 v : xc) CHECK(v == 0);
      CHECK(tc == cover::commutator(spec, U->decode(a).second, U->decode(b).second));
    }
}

TEST_CASE("cover model exponent") {
  // cross terms make squares hit the fiber: exponent 2n
  auto U1 = FiniteGroup::from_cover(make_cover_spec(make_spec(5, 2), 0, {2}), true);
  CHECK(U1->exponent() == 4);
  // single line at n=3: every non-identity element has order 3
  auto U2 = FiniteGroup::from_cover(make_cover_spec(make_spec(7, 3), 1, {1}), true);
  CHECK(U2->order() == 27);
  CHECK(U2->exponent() == 3);
  // c = 0 kills the one-line form entirely: abelian of exponent 2
  auto U3 = FiniteGroup::from_cover(make_cover_spec(make_spec(5, 2), 0, {1}), true);
  CHECK(U3->order() == 8);
  CHECK(U3->exponent() == 2);
  CHECK(whole_group(U3).is_abelian());
}

TEST_CASE("fiber and preimages") {
  CoverSpec spec = make_cover_spec(make_spec(7, 3), 1, {1});
  auto U = FiniteGroup::from_cover(spec, true);
  Subgroup fib = fiber_subgroup(U);
  CHECK(fib.order() == 3);
  CHECK(fib.is_abelian());
  Subgroup z = group_center(U);
  CHECK(z.same_as(fib)); // nondegenerate one-line form: center is the fiber
  auto base = cover::base_group(spec);
  Subgroup pre = cover_preimage(U, finab::SubgroupHandle::full(base));
  CHECK(pre.order() == 27);
  Subgroup pre_triv = cover_preimage(U, finab::SubgroupHandle::trivial(base));
  CHECK(pre_triv.same_as(fib));
}

TEST_CASE("classes of the 27 element cover") {
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(7, 3), 1, {1}), true);
  auto cls = make_class_data(*U, whole_group(U).elements(), U->generators());
  CHECK(cls.num_classes() == 11); // 3 central classes + 8 of size 3
  i64 singletons = 0, triples = 0;
  for (i64 s : cls.sizes) (s == 1 ? singletons : triples) += 1;
  CHECK(singletons == 3);
  CHECK(triples == 8);
}

TEST_CASE("linear duals of abelian groups") {
  auto U = FiniteGroup::from_table(cyclic_table(6));
  LinearDual dual(U, whole_group(U));
  auto chars = dual.all_characters();
  CHECK(chars.size() == 6);
  // distinct characters, homomorphism property for each
  for (size_t i = 0; i < chars.size(); ++i) {
    for (i64 a = 0; a < 6; ++a)
      for (i64 b = 0; b < 6; ++b) {
        i64 lhs = dual.value_exp(chars[i], U->mul(a, b));
        i64 rhs = (dual.value_exp(chars[i], a) + dual.value_exp(chars[i], b)) %
                  dual.value_mod();
        CHECK(lhs == rhs);
      }
    for (size_t j = i + 1; j < chars.size(); ++j) {
      bool same = true;
      for (i64 g = 0; g < 6; ++g)
        if (dual.value_exp(chars[i], g) != dual.value_exp(chars[j], g)) same = false;
      CHECK(!same);
    }
  }
}

TEST_CASE("linear dual rejects nonabelian domains") {
  // S_3 admits no polycyclic chain through a trivial prefix (the chain needs
  // the derived subgroup below it), so construction already fails
  auto U = FiniteGroup::from_table(s3_table());
  CHECK_THROWS_AS((void)LinearDual(U, whole_group(U)), Error);
}

TEST_CASE("constrained extension through a central prefix") {
  // (Z/2)^3 cover model: extend a character of the fiber to the whole group
  auto U = FiniteGroup::from_cover(make_cover_spec(make_spec(5, 2), 0, {1}), true);
  auto prefix = std::make_shared<LinearDual>(U, fiber_subgroup(U));
  auto fib_chars = prefix->all_characters();
  REQUIRE(fib_chars.size() == 2);
  LinearDual full(U, whole_group(U), prefix);
  for (const auto& psi : fib_chars) {
    auto exts = full.characters_extending(psi);
    CHECK(exts.size() == 4); // [G : fiber] = 4
    for (const auto& e : exts) {
      // restriction to the prefix chain matches
      for (size_t i = 0; i < prefix->chain().size(); ++i)
        CHECK(full.value_exp(e, prefix->chain()[i]) ==
              prefix->value_exp(psi, prefix->chain()[i]));
    }
  }
}
