#include <doctest.h>

#include <utility>
#include <vector>

#include "covrep/error.hpp"
#include "covrep/mtp.hpp"

using namespace covrep;
using namespace covrep::mtp;
using covrep::cover::make_cover_spec;
using covrep::grp::FiniteGroup;
using covrep::grp::GroupPtr;
using covrep::grp::LinChar;
using covrep::grp::LinearDual;
using covrep::heis::CheckItem;
using covrep::heis::CheckList;
using covrep::local::make_spec;

namespace {

void check_all(const CheckList& cl) {
  for (const CheckItem& item : cl.items) {
    INFO(item.name << ": " << item.detail);
    CHECK(item.pass);
  }
}

WellMatchedData matched(i64 p, i64 n, i64 c, std::vector<i64> beta) {
  return build_models(make_spec(p, n), c, std::move(beta));
}

GroupPtr block_model(i64 p, i64 n, i64 c, i64 r) {
  return FiniteGroup::from_cover(make_cover_spec(make_spec(p, n), c, {r}),
                                 true);
}

std::vector<chr::CharacterObject> genuine_irrs(const GroupPtr& U) {
  auto eng = heis::irreducible_characters(U);
  REQUIRE(eng.certified());
  i64 a = U->encode(1, grp::Vec(static_cast<size_t>(U->dims()), 0));
  return heis::genuine_subset(eng.chars, a, U->fiber_n());
}

// Exponents of a character's central values on the generators of a chain.
LinChar restrict_central(const chr::CharacterObject& c,
                         const LinearDual& dual) {
  LinChar out;
  for (i64 z : dual.chain()) out.t.push_back(chr::central_exponent(c, z));
  return out;
}

bool lin_eq(const LinearDual& dual, const LinChar& a, const LinChar& b) {
  for (i64 z : dual.chain())
    if (dual.value_exp(a, z) != dual.value_exp(b, z)) return false;
  return true;
}

}  // namespace

TEST_CASE("matched blockwise and full models certify on the base grid") {
  WellMatchedData wm = matched(5, 2, 0, {1, 1});
  REQUIRE(wm.ok());
  check_all(wm.cert);
  CHECK(wm.G1->order() == 32);
  CHECK(wm.G2->order() == 32);
  CHECK(wm.G1.get() != wm.G2.get());
  CHECK(wm.sp1.d == 4);  // full model is extraspecial-like over its center
  CHECK(wm.sp2.d == 1);  // blockwise model is abelian
  CHECK(wm.cert.find("iota_homomorphism") != nullptr);
  CHECK(wm.cert.find("block_commutation") != nullptr);
  CHECK(wm.cert.find("shared_overlap_chain") != nullptr);

  WellMatchedData wm7 = matched(7, 3, 1, {1, 1});
  REQUIRE(wm7.ok());
  check_all(wm7.cert);
  CHECK(wm7.G1->order() == 243);
  CHECK(wm7.G2->order() == 243);
  CHECK(wm7.sp1.d == 9);
}

TEST_CASE("a single block collapses the two models into one") {
  WellMatchedData wm = matched(5, 2, 0, {2});
  REQUIRE(wm.ok());
  check_all(wm.cert);
  CHECK(wm.G1.get() == wm.G2.get());
  CHECK(wm.G1->order() == 32);
  // scalars are both the distinguished subgroup and the block center here
  CHECK(wm.sp1.H.same_as(wm.sp1.N));
  CHECK(wm.sp1.H.order() == 8);
}

TEST_CASE("central character systems track fiber exponents") {
  GroupPtr B = block_model(5, 2, 0, 1);
  CHECK(B->order() == 8);
  auto gs = genuine_irrs(B);
  REQUIRE(gs.size() == 4);
  for (const auto& g : gs) CHECK(fiber_exponent(g) == 1);

  auto dom = chr::full_domain(B);
  chr::CharacterObject triv = chr::trivial_character(dom);
  CHECK(fiber_exponent(triv) == 0);

  CHECK(compatible(central_system({gs[0], gs[1]}, 1)));
  CHECK(!compatible(central_system({gs[0], gs[1]}, 0)));
  CHECK(!compatible(central_system({gs[0], triv}, 1)));
  CHECK(compatible(central_system({gs[0]}, 1)));

  // with n = 3 the two genuine exponents are distinct and must not mix
  GroupPtr B7 = block_model(7, 3, 1, 1);
  auto gs7 = genuine_irrs(B7);
  REQUIRE(gs7.size() == 2);
  i64 e0 = fiber_exponent(gs7[0]);
  i64 e1 = fiber_exponent(gs7[1]);
  CHECK(e0 != e1);
  CHECK(!compatible(central_system({gs7[0], gs7[1]}, e0)));
  CHECK(compatible(central_system({gs7[0], gs7[0]}, e0)));
}

TEST_CASE("glued characters are independent of the fiber split") {
  WellMatchedData wm = matched(5, 2, 0, {1, 1});
  GroupPtr B = block_model(5, 2, 0, 1);
  auto gs = genuine_irrs(B);
  REQUIRE(gs.size() == 4);

  chr::CharacterObject glue = tensor_on_product(wm, {gs[0], gs[1]});
  CHECK(glue.degree() == 1);
  CHECK(fiber_exponent(glue) == 1);

  // the fiber coordinate may sit in either factor
  for (i64 g = 0; g < wm.G2->order(); ++g) {
    auto [t, x] = wm.G2->decode(g);
    cyc::Cyc a = gs[0].value_of(B->encode(t, {x[0], x[1]})) *
                 gs[1].value_of(B->encode(0, {x[2], x[3]}));
    cyc::Cyc b = gs[0].value_of(B->encode(0, {x[0], x[1]})) *
                 gs[1].value_of(B->encode(t, {x[2], x[3]}));
    CHECK(a == b);
    CHECK(glue.value_of(g) == a);
  }

  auto dom = chr::full_domain(B);
  chr::CharacterObject triv = chr::trivial_character(dom);
  CHECK_THROWS_AS((void)tensor_on_product(wm, {gs[0], triv}), covrep::Error);
  // a part living on the wrong model is rejected
  auto full = genuine_irrs(wm.G1);
  REQUIRE(full.size() == 1);
  CHECK_THROWS_AS((void)tensor_on_product(wm, {full[0], gs[0]}),
                  covrep::Error);
}

TEST_CASE("the models share their auxiliary characters") {
  WellMatchedData wm = matched(5, 2, 0, {1, 1});
  LinChar chi1 = omega_with_exponent(wm, 1);
  auto chis2 = genuine_central_chars(wm.sp2);
  CHECK(chis2.size() == 16);
  for (const LinChar& chi2 : chis2)
    CHECK(shared_auxiliaries(wm, chi1, chi2).size() == 1);

  // on one scalar block the overlap is all of H and four auxiliaries fit
  WellMatchedData wms = matched(5, 2, 0, {2});
  auto chis = genuine_central_chars(wms.sp1);
  REQUIRE(chis.size() == 1);
  CHECK(shared_auxiliaries(wms, chis[0], chis[0]).size() == 4);
}

TEST_CASE("transfer on a collapsed pair is the identity") {
  WellMatchedData wm = matched(5, 2, 0, {2});
  auto gs = genuine_irrs(wm.G1);
  REQUIRE(gs.size() == 1);
  CHECK(gs[0].degree() == 4);

  auto chis = genuine_central_chars(wm.sp1);
  REQUIRE(chis.size() == 1);
  // four auxiliary choices are averaged over internally; all must agree
  chr::CharacterObject out = transfer(wm, chis[0], chis[0], gs[0]);
  CHECK(char_values_equal(out, gs[0]));

  // a non-genuine central character shares no auxiliary with a genuine one
  LinChar bad;
  for (const LinChar& c : wm.sp1.zng_dual->all_characters())
    if (!heis::linchar_genuine(*wm.sp1.zng_dual, c, wm.sp1.a_gen,
                               wm.sp1.a_ord)) {
      bad = c;
      break;
    }
  CHECK_THROWS_AS((void)transfer(wm, bad, chis[0], gs[0]), covrep::Error);
}

TEST_CASE("transfer suite verifies the matched bijection") {
  WellMatchedData wm = matched(5, 2, 0, {1, 1});
  CheckList cl = transfer_suite(wm);
  check_all(cl);
  CHECK(cl.find("bijection_all_pairs") != nullptr);
  CHECK(cl.find("degree_scaling") != nullptr);
  CHECK(cl.find("roundtrip_identity") != nullptr);
  CHECK(cl.find("twist_equivariance") != nullptr);
  CHECK(cl.find("twist_orbit_counts") != nullptr);

  check_all(transfer_suite(matched(5, 2, 1, {1, 1})));
  check_all(transfer_suite(matched(7, 3, 1, {1, 1})));
}

TEST_CASE("the product of block characters lands on the full model") {
  WellMatchedData wm = matched(5, 2, 0, {1, 1});
  GroupPtr B = block_model(5, 2, 0, 1);
  auto gs = genuine_irrs(B);
  auto full = genuine_irrs(wm.G1);
  REQUIRE(full.size() == 1);
  REQUIRE(full[0].degree() == 4);

  LinChar omega = omega_with_exponent(wm, 1);
  // every pair of genuine block characters feeds the same full character
  for (const auto& a : gs)
    for (const auto& b : gs) {
      chr::CharacterObject m = mtp::mtp(wm, {a, b}, omega);
      CHECK(m.degree() == 4);
      CHECK(char_values_equal(m, full[0]));
    }

  CHECK_THROWS_AS((void)mtp::mtp(wm, {gs[0]}, omega), covrep::Error);
}

TEST_CASE("the product separates central exponents when n is odd") {
  WellMatchedData wm = matched(7, 3, 1, {1, 1});
  GroupPtr B = block_model(7, 3, 1, 1);
  auto gs = genuine_irrs(B);
  REQUIRE(gs.size() == 2);
  auto full = genuine_irrs(wm.G1);
  REQUIRE(full.size() == 2);

  for (const auto& part : gs) {
    i64 eps = fiber_exponent(part);
    chr::CharacterObject m = mtp::mtp(wm, {part, part}, omega_with_exponent(wm, eps));
    CHECK(m.degree() == 9);
    CHECK(fiber_exponent(m) == eps);
    bool hit = false;
    for (const auto& f : full)
      if (fiber_exponent(f) == eps) hit = char_values_equal(m, f);
    CHECK(hit);
  }

  i64 e0 = fiber_exponent(gs[0]);
  i64 e1 = fiber_exponent(gs[1]);
  CHECK_THROWS_AS((void)mtp::mtp(wm, {gs[0], gs[0]}, omega_with_exponent(wm, e1)),
                  covrep::Error);
  CHECK_THROWS_AS((void)mtp::mtp(wm, {gs[0], gs[1]}, omega_with_exponent(wm, e0)),
                  covrep::Error);
}

TEST_CASE("a single block product twists by the center datum") {
  // r c' - 1 vanishes mod n here, so the center model is larger than the
  // fiber and distinct omegas genuinely twist the outcome
  WellMatchedData wm = matched(5, 2, 0, {3});
  REQUIRE(wm.ok());
  auto omegas = genuine_central_chars(wm.sp1);
  CHECK(omegas.size() == 4);

  GroupPtr B = block_model(5, 2, 0, 3);
  auto gs = genuine_irrs(B);
  REQUIRE(gs.size() == 4);  // one per center character

  for (const auto& pi : gs) {
    CHECK(pi.degree() == 4);
    chr::CharacterObject glue = tensor_on_product(wm, {pi});
    LinChar own = restrict_central(glue, *wm.sp1.zng_dual);
    for (const LinChar& omega : omegas) {
      chr::CharacterObject out = mtp::mtp(wm, {pi}, omega);
      CHECK(out.degree() == 4);
      CHECK(lin_eq(*wm.sp1.zng_dual, restrict_central(out, *wm.sp1.zng_dual),
                   omega));
      CHECK(char_values_equal(out, glue) == lin_eq(*wm.sp1.zng_dual, own, omega));
    }
  }

  // the outcome is pinned by the center datum alone
  for (const LinChar& omega : omegas)
    CHECK(char_values_equal(mtp::mtp(wm, {gs[0]}, omega),
                            mtp::mtp(wm, {gs[1]}, omega)));
}

TEST_CASE("products of three blocks associate") {
  AssociativityReport rep = associativity_check(make_spec(5, 2), 0, 1, 1, 1);
  check_all(rep.checks);
  CHECK(rep.systems == 256);
  CHECK(rep.mismatches == 0);

  // n = 1 degenerates to the ordinary tensor product
  AssociativityReport triv = associativity_check(make_spec(5, 1), 0, 1, 1, 1);
  check_all(triv.checks);
  CHECK(triv.systems == 1);
  CHECK(triv.mismatches == 0);
}

TEST_CASE("block permutations act through the coordinate isomorphism") {
  PermutationReport id_rep =
      permutation_equivariance_check(make_spec(5, 2), 0, {1, 1}, {0, 1});
  check_all(id_rep.checks);
  CHECK(id_rep.exact_count == static_cast<i64>(id_rep.cases.size()));
  CHECK(id_rep.weak_count == 0);

  PermutationReport swap52 =
      permutation_equivariance_check(make_spec(5, 2), 0, {1, 1}, {1, 0});
  check_all(swap52.checks);
  CHECK(swap52.cases.size() == 16);
  CHECK(swap52.exact_count + swap52.weak_count ==
        static_cast<i64>(swap52.cases.size()));

  PermutationReport swap73 =
      permutation_equivariance_check(make_spec(7, 3), 1, {1, 1}, {1, 0});
  check_all(swap73.checks);
  for (const PermutationCase& pc : swap73.cases) CHECK(pc.pass);

  // unequal block sizes permute onto a genuinely different model
  PermutationReport mixed =
      permutation_equivariance_check(make_spec(5, 2), 0, {1, 2}, {1, 0});
  check_all(mixed.checks);
  for (const PermutationCase& pc : mixed.cases) CHECK(pc.pass);
}

TEST_CASE("det twists partition the genuine characters into orbits") {
  TwistOrbitData one = weak_equivalence_orbits(block_model(7, 3, 1, 1));
  check_all(one.checks);
  CHECK(one.chars.size() == 2);
  CHECK(one.orbits.size() == 2);  // twists fix both deg-3 characters

  TwistOrbitData scal = weak_equivalence_orbits(block_model(5, 2, 0, 2));
  check_all(scal.checks);
  CHECK(scal.chars.size() == 1);
  CHECK(scal.orbits.size() == 1);

  // the blockwise abelian model has free orbits of full size n^2
  GroupPtr T = FiniteGroup::from_cover(
      make_cover_spec(make_spec(5, 2), 0, {1, 1}), false);
  TwistOrbitData ab = weak_equivalence_orbits(T);
  check_all(ab.checks);
  CHECK(ab.chars.size() == 16);
  CHECK(ab.orbits.size() == 4);
  for (const auto& orb : ab.orbits) CHECK(orb.size() == 4);

  TwistOrbitData triv = weak_equivalence_orbits(block_model(5, 1, 0, 1));
  check_all(triv.checks);
  CHECK(triv.chars.size() == 1);
  CHECK(triv.orbits.size() == 1);
}
