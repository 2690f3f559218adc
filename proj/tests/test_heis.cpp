#include <doctest.h>

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covrep/error.hpp"
#include "covrep/heis.hpp"

using namespace covrep;
using namespace covrep::heis;
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

GroupPtr unitriangular_27() {
  // (a,b,c) ~ [[1,a,c],[0,1,b],[0,0,1]] over F_3; code = a + 3b + 9c
  std::vector<std::vector<i64>> t(27, std::vector<i64>(27));
  for (int x = 0; x < 27; ++x)
    for (int y = 0; y < 27; ++y) {
      int a1 = x % 3, b1 = (x / 3) % 3, c1 = x / 9;
      int a2 = y % 3, b2 = (y / 3) % 3, c2 = y / 9;
      int a = (a1 + a2) % 3, b = (b1 + b2) % 3, c = (c1 + c2 + a1 * b2) % 3;
      t[x][y] = a + 3 * b + 9 * c;
    }
  return FiniteGroup::from_table(t);
}

// A torus cover with its distinguished subgroups pulled back to the cover.
struct Model {
  CoverSpec spec;
  GroupPtr U;
  Subgroup H, N, A;
};

Model torus_model(i64 p, i64 n, i64 c, std::vector<i64> beta) {
  CoverSpec spec = make_cover_spec(make_spec(p, n), c, std::move(beta));
  GroupPtr U = FiniteGroup::from_cover(spec, true);
  auto ds = cover::distinguished_subgroups(spec);
  Subgroup H = grp::cover_preimage(U, ds.h_beta);
  Subgroup N = grp::cover_preimage(U, ds.z_beta);
  Subgroup A = grp::fiber_subgroup(U);
  return Model{spec, U, H, N, A};
}

void check_all(const CheckList& cl) {
  for (const CheckItem& item : cl.items) {
    INFO(item.name << ": " << item.detail);
    CHECK(item.pass);
  }
}

LinChar first_genuine(const LinearDual& dual, i64 a_gen, i64 a_ord) {
  for (const LinChar& c : dual.all_characters())
    if (linchar_genuine(dual, c, a_gen, a_ord)) return c;
  REQUIRE(false);
  return LinChar{};
}

// Exponents of a characters on the generators of a chain.
LinChar restrict_lin(const CharacterObject& c, const LinearDual& dual) {
  LinChar out;
  for (i64 z : dual.chain()) out.t.push_back(chr::central_exponent(c, z));
  return out;
}

bool lin_equal(const LinearDual& dual, const LinChar& a, const LinChar& b) {
  for (i64 z : dual.chain())
    if (dual.value_exp(a, z) != dual.value_exp(b, z)) return false;
  return true;
}

// The unique-by-construction character chi of Z_N(G) consistent with psi.
LinChar chi_matching(const SpecialPairData& sp, const LinChar& psi) {
  LinChar phi;
  for (i64 z : sp.phi_dual->chain()) phi.t.push_back(sp.hn_dual->value_exp(psi, z));
  auto exts = sp.zng_dual->characters_extending(phi);
  REQUIRE(!exts.empty());
  return exts.front();
}

} // namespace

TEST_CASE("heisenberg type detection") {
  auto z4 = FiniteGroup::from_table(cyclic_table(4));
  CHECK(is_heisenberg_type(z4, grp::whole_group(z4), grp::whole_group(z4)));

  auto es = unitriangular_27();
  Subgroup ze = grp::group_center(es);
  CHECK(ze.order() == 3);
  CHECK(is_heisenberg_type(es, grp::whole_group(es), ze));

  auto s3 = FiniteGroup::from_table(s3_table());
  Subgroup triv = Subgroup::from_elements(s3, {0});
  // commutators generate A_3, which is not contained in the trivial subgroup
  CHECK(!is_heisenberg_type(s3, grp::whole_group(s3), triv));
  // a transposition generates a cyclic but non-central subgroup
  Subgroup refl = Subgroup::generated(s3, {2});
  CHECK(refl.order() == 2);
  CHECK_THROWS_AS((void)is_heisenberg_type(s3, grp::whole_group(s3), refl), Error);
}

TEST_CASE("subgroup intervals, transversals and replayed subgroups") {
  auto es = unitriangular_27();
  Subgroup whole = grp::whole_group(es);
  Subgroup ze = grp::group_center(es);

  // the quotient is (Z/3)^2: two trivial subgroups plus four lines
  auto between = subgroups_between(ze, whole, 100);
  CHECK(between.size() == 6);
  CHECK(between.front().same_as(ze));
  CHECK(between.back().same_as(whole));
  CHECK_THROWS_AS((void)subgroups_between(ze, whole, 3), Error);

  auto pr = commutator_pairing(es, whole, ze);
  Subgroup L = first_lagrangian(pr);
  auto uni = sub_universe(es, L);
  CHECK(uni.T->order() == 9);
  CHECK(uni.image(ze).order() == 3);
  for (i64 tcode = 0; tcode < uni.T->order(); ++tcode)
    CHECK(uni.to_T.at(uni.from_T[(size_t)tcode]) == tcode);

  auto reps = left_transversal(whole, L);
  CHECK(reps.size() == 3);
  CHECK(reps.front() == es->id());
}

TEST_CASE("commutator pairing on the extraspecial group") {
  auto es = unitriangular_27();
  auto pr = commutator_pairing(es, grp::whole_group(es), grp::group_center(es));
  CHECK(pr.ok());
  check_all(pr.checks);
  CHECK(pr.d == 3);
  CHECK(pr.a_ord == 3);
  CHECK(pr.xreps.size() == 9);
  CHECK(pr.ZN.same_as(grp::group_center(es)));

  auto ls = lagrangians(pr);
  CHECK(ls.size() == 4);
  for (const Subgroup& l : ls) {
    CHECK(l.order() == 9);
    CHECK(l.is_abelian());
    CHECK(l.contains_all(pr.ZN));
  }
  CHECK(first_lagrangian(pr).order() == 9);
}

TEST_CASE("pairing matches the cover cocycle commutator") {
  // rank one at n=3: X = (Z/3)^2 with the slotwise symplectic form
  Model m1 = torus_model(7, 3, 1, {1});
  CHECK(m1.U->order() == 27);
  auto pr1 = commutator_pairing(m1.U, grp::whole_group(m1.U), m1.A);
  CHECK(pr1.ok());
  CHECK(pr1.d == 3);
  CHECK(pr1.xreps.size() == 9);
  std::vector<i64> zero1((size_t)m1.U->dims(), 0);
  for (i64 x : pr1.xreps)
    for (i64 y : pr1.xreps) {
      auto [tx, vx] = m1.U->decode(x);
      auto [ty, vy] = m1.U->decode(y);
      i64 k = zmat::umod(cover::commutator(m1.spec, vx, vy), 3);
      CHECK(m1.U->commutator(x, y) == m1.U->encode(k, zero1));
    }

  // two blocks of one line at n=2: the hyperbolic cross-slot form, and the
  // scalar-class carrier is everything
  Model m2 = torus_model(5, 2, 0, {1, 1});
  CHECK(m2.N.order() == 32);
  CHECK(m2.N.same_as(grp::whole_group(m2.U)));
  auto pr2 = commutator_pairing(m2.U, m2.N, m2.A);
  CHECK(pr2.ok());
  CHECK(pr2.d == 4);
  CHECK(pr2.xreps.size() == 16);
  std::vector<i64> zero2((size_t)m2.U->dims(), 0);
  for (i64 x : pr2.xreps)
    for (i64 y : pr2.xreps) {
      auto [tx, vx] = m2.U->decode(x);
      auto [ty, vy] = m2.U->decode(y);
      i64 k = zmat::umod(cover::commutator(m2.spec, vx, vy), 2);
      CHECK(m2.U->commutator(x, y) == m2.U->encode(k, zero2));
    }
}

TEST_CASE("lagrangian count matches brute force over coset subspaces") {
  // one block of two lines at n=2: X = (Z/2)^4 hyperbolic, 15 Lagrangians
  Model m = torus_model(5, 2, 0, {2});
  auto pr = commutator_pairing(m.U, grp::whole_group(m.U), m.A);
  CHECK(pr.ok());
  CHECK(pr.d == 4);
  REQUIRE(pr.xreps.size() == 16);
  auto ls = lagrangians(pr);
  CHECK(ls.size() == 15);

  // X multiplication on coset indices
  auto coset_index = [&](i64 g) {
    for (size_t i = 0; i < pr.xreps.size(); ++i)
      if (pr.ZN.contains(m.U->mul(m.U->inv(pr.xreps[i]), g))) return (i64)i;
    return (i64)-1;
  };
  std::vector<std::vector<i64>> xm(16, std::vector<i64>(16));
  for (size_t i = 0; i < 16; ++i)
    for (size_t j = 0; j < 16; ++j) {
      xm[i][j] = coset_index(m.U->mul(pr.xreps[i], pr.xreps[j]));
      REQUIRE(xm[i][j] >= 0);
    }
  i64 e = coset_index(m.U->id());
  // X is elementary abelian of rank 4
  for (i64 i = 0; i < 16; ++i) CHECK(xm[(size_t)i][(size_t)i] == e);

  std::set<std::set<i64>> planes;
  for (i64 a = 0; a < 16; ++a)
    for (i64 b = 0; b < 16; ++b) {
      std::set<i64> span = {e, a, b, xm[(size_t)a][(size_t)b]};
      if (span.size() != 4) continue;
      bool iso = true;
      for (i64 u : span)
        for (i64 v : span)
          if (pr.pairing[(size_t)u][(size_t)v] != 0) iso = false;
      if (iso) planes.insert(span);
    }
  CHECK(planes.size() == 15);
}

TEST_CASE("stone von neumann on abelian and extraspecial groups") {
  // abelian carrier: X is trivial, the only Lagrangian is Z(N) = N itself
  auto z4 = FiniteGroup::from_table(cyclic_table(4));
  Subgroup whole4 = grp::whole_group(z4);
  auto pr = commutator_pairing(z4, whole4, whole4);
  CHECK(pr.ok());
  CHECK(pr.d == 1);
  auto ls = lagrangians(pr);
  REQUIRE(ls.size() == 1);
  CHECK(ls.front().same_as(pr.ZN));
  auto gen = genuine_central_characters(pr);
  REQUIRE(gen.size() == 2);
  for (const LinChar& psi : gen) {
    auto svn = stone_von_neumann(pr, psi);
    check_all(svn.checks);
    CHECK(svn.degree == 1);
    CHECK(chr::char_equal(svn.character,
                          chr::linear_character(pr.n_dom, *pr.zn_dual, psi)));
  }
  LinChar not_genuine;
  not_genuine.t.assign(pr.zn_dual->chain().size(), 0);
  CHECK_THROWS_AS((void)stone_von_neumann(pr, not_genuine), Error);

  // extraspecial 27: one degree-3 representation per genuine character
  auto es = unitriangular_27();
  auto prE = commutator_pairing(es, grp::whole_group(es), grp::group_center(es));
  auto genE = genuine_central_characters(prE);
  REQUIRE(genE.size() == 2);
  std::vector<CharacterObject> svns;
  for (const LinChar& psi : genE) {
    auto svn = stone_von_neumann(prE, psi);
    check_all(svn.checks);
    CHECK(svn.degree == 3);
    svns.push_back(svn.character);
  }
  CHECK(!chr::char_equal(svns[0], svns[1]));
}

TEST_CASE("stone von neumann on torus covers") {
  // rank one at n=3: two genuine characters, each of degree 3
  Model m1 = torus_model(7, 3, 1, {1});
  auto pr1 = commutator_pairing(m1.U, grp::whole_group(m1.U), m1.A);
  auto gen1 = genuine_central_characters(pr1);
  REQUIRE(gen1.size() == 2);
  for (const LinChar& psi : gen1) {
    auto svn = stone_von_neumann(pr1, psi);
    check_all(svn.checks);
    CHECK(svn.degree == 3);
  }
  auto eng1 = irreducible_characters(m1.U);
  CHECK(eng1.certified());
  CHECK(eng1.sum_deg_sq == 27);
  i64 lin = 0, deg3 = 0;
  for (const CharacterObject& c : eng1.chars) {
    if (c.degree() == 1) ++lin;
    if (c.degree() == 3) ++deg3;
  }
  CHECK(lin == 9);
  CHECK(deg3 == 2);

  // scalar-class carrier at n=2: the unique genuine character has degree 4
  Model m2 = torus_model(5, 2, 0, {1, 1});
  auto pr2 = commutator_pairing(m2.U, m2.N, m2.A);
  auto gen2 = genuine_central_characters(pr2);
  REQUIRE(gen2.size() == 1);
  auto svn2 = stone_von_neumann(pr2, gen2.front());
  check_all(svn2.checks);
  CHECK(svn2.degree == 4);
  CHECK(svn2.degree * svn2.degree == m2.N.order() / pr2.ZN.order());
}

TEST_CASE("special pair detection") {
  auto es = unitriangular_27();
  Subgroup whole = grp::whole_group(es);
  Subgroup ze = grp::group_center(es);
  CHECK(is_special_pair(es, whole, ze, ze).is_special());
  CHECK(is_special_pair(es, ze, whole, ze).is_special());

  for (i64 c : {0, 1}) {
    Model m = torus_model(5, 2, c, {1, 1});
    CHECK(m.H.same_as(m.A));
    auto sp = is_special_pair(m.U, m.H, m.N, m.A);
    INFO("twisting parameter " << c);
    CHECK(sp.is_special());
    // the scalar-class carrier is the full centralizer of the determinant
    // kernel model
    CHECK(grp::whole_group(m.U).centralizer_of(m.H).same_as(m.N));
  }

  // two transverse Lagrangian subgroups do not centralize each other
  auto pr = commutator_pairing(es, whole, ze);
  auto ls = lagrangians(pr);
  REQUIRE(ls.size() >= 2);
  auto bad = is_special_pair(es, ls[0], ls[1], ze);
  CHECK(!bad.is_special());
  const CheckItem* item = bad.cert.find("n_centralizes_h");
  REQUIRE(item != nullptr);
  CHECK(!item->pass);
}

TEST_CASE("special pair report on the extraspecial pairs") {
  auto es = unitriangular_27();
  Subgroup whole = grp::whole_group(es);
  Subgroup ze = grp::group_center(es);

  auto sp1 = is_special_pair(es, whole, ze, ze);
  REQUIRE(sp1.is_special());
  auto rep1 = special_pair_report(sp1);
  check_all(rep1.checks);
  REQUIRE(rep1.n_max.has_value());
  CHECK(rep1.n_max->same_as(ze));

  auto sp2 = is_special_pair(es, ze, whole, ze);
  REQUIRE(sp2.is_special());
  CHECK(sp2.d == 3);
  auto rep2 = special_pair_report(sp2);
  check_all(rep2.checks);
  REQUIRE(rep2.n_max.has_value());
  CHECK(rep2.n_max->same_as(whole));
}

TEST_CASE("special pair report on scalar torus models") {
  // determinant-kernel part trivial: H is the fiber, N is everything
  Model m = torus_model(5, 2, 0, {1, 1});
  auto sp = is_special_pair(m.U, m.H, m.N, m.A);
  REQUIRE(sp.is_special());
  CHECK(sp.d == 4);
  auto rep = special_pair_report(sp);
  check_all(rep.checks);
  REQUIRE(rep.n_max.has_value());
  CHECK(rep.n_max->same_as(m.N));

  // one block of two lines: H = N is the abelian scalar-class preimage
  Model m2 = torus_model(5, 2, 0, {2});
  CHECK(m2.H.same_as(m2.N));
  CHECK(m2.H.order() == 8);
  auto sp2 = is_special_pair(m2.U, m2.H, m2.N, m2.A);
  REQUIRE(sp2.is_special());
  CHECK(sp2.d == 1);
  CHECK(sp2.HN.order() == 8);
  CHECK(sp2.ZNG.order() == 2);
  auto rep2 = special_pair_report(sp2);
  check_all(rep2.checks);
  REQUIRE(rep2.n_max.has_value());
  CHECK(rep2.n_max->same_as(m2.N));
}

TEST_CASE("local extension of consistent characters") {
  auto es = unitriangular_27();
  Subgroup whole = grp::whole_group(es);
  Subgroup ze = grp::group_center(es);
  auto hirr = irreducible_characters_of(es, whole);
  CHECK(hirr.certified);
  CHECK(hirr.sum_deg_sq == 27);

  const CharacterObject* tau3 = nullptr;
  for (const CharacterObject& c : hirr.chars)
    if (c.degree() == 3) { tau3 = &c; break; }
  REQUIRE(tau3 != nullptr);

  // L inside H: the extension is tau itself
  auto zdual = std::make_shared<LinearDual>(es, ze);
  DomainPtr z_dom = chr::subgroup_domain(es, ze);
  LinChar cen = restrict_lin(*tau3, *zdual);
  auto chi = chr::linear_character(z_dom, *zdual, cen);
  auto ext = extend_locally(*tau3, chi);
  CHECK(chr::char_equal(ext, *tau3));

  // a character that disagrees on the overlap is refused
  LinChar shifted;
  shifted.t = {zmat::umod(zdual->value_exp(cen, zdual->chain().front()) + 1, 3)};
  auto chi_bad = chr::linear_character(z_dom, *zdual, shifted);
  CHECK_THROWS_AS((void)extend_locally(*tau3, chi_bad), Error);

  // H trivial: the extension is chi itself
  auto z4 = FiniteGroup::from_table(cyclic_table(4));
  Subgroup triv = Subgroup::from_elements(z4, {0});
  auto gdual = std::make_shared<LinearDual>(z4, grp::whole_group(z4));
  auto g_dom = chr::full_domain(z4);
  LinChar faithful = first_genuine(*gdual, 1, 4);
  auto chi4 = chr::linear_character(g_dom, *gdual, faithful);
  auto ext4 = extend_locally(chr::trivial_character(chr::subgroup_domain(z4, triv)), chi4);
  CHECK(chr::char_equal(ext4, chi4));

  // the extensions of a genuine central character to a Lagrangian sum to the
  // induced character
  auto pr = commutator_pairing(es, whole, ze);
  auto psi = genuine_central_characters(pr).front();
  auto tau_z = chr::linear_character(z_dom, *pr.zn_dual, psi);
  auto sums = extension_sum_check(tau_z, first_lagrangian(pr));
  check_all(sums);
}

TEST_CASE("lagrangian induction on collapsed pairs") {
  auto es = unitriangular_27();
  Subgroup whole = grp::whole_group(es);
  Subgroup ze = grp::group_center(es);

  // H = G: induction is the identity and so is its inverse
  auto sp = is_special_pair(es, whole, ze, ze);
  REQUIRE(sp.is_special());
  auto cache = make_lind_cache(sp);
  CHECK(cache.LH.order() == 27);
  auto psi = first_genuine(*sp.hn_dual, sp.a_gen, sp.a_ord);
  auto chi = chi_matching(sp, psi);
  auto hirr = irreducible_characters_of(es, whole);
  const CharacterObject* tau = nullptr;
  for (const CharacterObject& c : hirr.chars)
    if (c.degree() == 3 &&
        lin_equal(*sp.hn_dual, restrict_lin(c, *sp.hn_dual), psi)) {
      tau = &c;
      break;
    }
  REQUIRE(tau != nullptr);
  auto pi = lind(sp, cache, psi, chi, *tau);
  CHECK(chr::char_equal(pi, *tau));
  CHECK(chr::char_equal(lres(sp, cache, psi, chi, pi), *tau));

  // H = Z(N), N = G: induction recovers the Stone-von Neumann character
  auto sp2 = is_special_pair(es, ze, whole, ze);
  REQUIRE(sp2.is_special());
  auto cache2 = make_lind_cache(sp2);
  auto psi2 = first_genuine(*sp2.hn_dual, sp2.a_gen, sp2.a_ord);
  auto chi2 = chi_matching(sp2, psi2);
  auto tau2 = chr::linear_character(cache2.h_dom, *sp2.hn_dual, psi2);
  auto pi2 = lind(sp2, cache2, psi2, chi2, tau2);
  auto pr = commutator_pairing(es, whole, ze);
  LinChar psi_zn;
  for (i64 z : pr.zn_dual->chain()) psi_zn.t.push_back(sp2.hn_dual->value_exp(psi2, z));
  auto svn = stone_von_neumann(pr, psi_zn);
  CHECK(chr::char_equal(pi2, svn.character));

  // inconsistent central data is refused before any induction happens
  auto gen = genuine_central_characters(pr);
  REQUIRE(gen.size() == 2);
  CHECK(!lin_equal(*sp2.hn_dual, gen[0], gen[1]));
  CHECK_THROWS_AS((void)lind(sp2, cache2, gen[0], gen[1], tau2), Error);
}

TEST_CASE("lagrangian induction certificate on torus models") {
  // H the fiber, N everything: tau is the genuine character of the fiber
  Model m = torus_model(5, 2, 0, {1, 1});
  auto sp = is_special_pair(m.U, m.H, m.N, m.A);
  REQUIRE(sp.is_special());
  auto cache = make_lind_cache(sp);
  auto psi = first_genuine(*sp.hn_dual, sp.a_gen, sp.a_ord);
  auto chi = chi_matching(sp, psi);
  auto tau = chr::linear_character(cache.h_dom, *sp.hn_dual, psi);
  auto rep = lagrangian_induction(sp, psi, chi, tau);
  check_all(rep.checks);
  CHECK(rep.character.degree() == 4);

  // rank one at n=3
  Model m2 = torus_model(7, 3, 1, {1});
  auto sp2 = is_special_pair(m2.U, m2.H, m2.N, m2.A);
  REQUIRE(sp2.is_special());
  auto cache2 = make_lind_cache(sp2);
  auto psi2 = first_genuine(*sp2.hn_dual, sp2.a_gen, sp2.a_ord);
  auto chi2 = chi_matching(sp2, psi2);
  auto tau2 = chr::linear_character(cache2.h_dom, *sp2.hn_dual, psi2);
  auto rep2 = lagrangian_induction(sp2, psi2, chi2, tau2);
  check_all(rep2.checks);
  CHECK(rep2.character.degree() == 3);

  // H = N abelian of index four: the conjugation and restriction families
  // are honest four-element orbits
  Model m3 = torus_model(5, 2, 0, {2});
  auto sp3 = is_special_pair(m3.U, m3.H, m3.N, m3.A);
  REQUIRE(sp3.is_special());
  CHECK(sp3.HcapN.order() / sp3.ZHcapNG.order() == 4);
  auto cache3 = make_lind_cache(sp3);
  auto psi3 = first_genuine(*sp3.hn_dual, sp3.a_gen, sp3.a_ord);
  auto chi3 = chi_matching(sp3, psi3);
  auto tau3 = chr::linear_character(cache3.h_dom, *sp3.hn_dual, psi3);
  auto rep3 = lagrangian_induction(sp3, psi3, chi3, tau3);
  check_all(rep3.checks);
  CHECK(rep3.character.degree() == 4);
}

TEST_CASE("lagrangian induction bijection suites") {
  Model m = torus_model(5, 2, 0, {1, 1});
  auto sp = is_special_pair(m.U, m.H, m.N, m.A);
  REQUIRE(sp.is_special());
  check_all(lind_bijection_suite(sp));

  Model m2 = torus_model(5, 2, 0, {2});
  auto sp2 = is_special_pair(m2.U, m2.H, m2.N, m2.A);
  REQUIRE(sp2.is_special());
  check_all(lind_bijection_suite(sp2));
}

TEST_CASE("blocked torus model certificate") {
  // two blocks (1, 2) at n=3: the full 2187-element cover
  Model m = torus_model(7, 3, 1, {1, 2});
  REQUIRE(m.U->order() == 2187);
  CHECK(m.H.order() == 27);
  CHECK(m.N.order() == 243);
  auto sp = is_special_pair(m.U, m.H, m.N, m.A);
  REQUIRE(sp.is_special());
  CHECK(sp.d == 9);
  CHECK(sp.HN.order() == 2187);
  CHECK(sp.HcapN.same_as(m.A));

  auto rep = special_pair_report(sp);
  check_all(rep.checks);
  REQUIRE(rep.n_max.has_value());
  CHECK(rep.n_max->same_as(m.N));

  // tau is a genuine degree-3 irreducible of the determinant-kernel part;
  // its extensions to LH sum to the induced character
  auto cache = make_lind_cache(sp);
  auto hirr = irreducible_characters_of(m.U, m.H);
  CHECK(hirr.certified);
  auto gt = genuine_subset(hirr.chars, sp.a_gen, sp.a_ord);
  REQUIRE(gt.size() == 2);
  CHECK(gt.front().degree() == 3);
  CHECK(cache.LH.order() == 243);
  auto sums = extension_sum_check(gt.front(), cache.L);
  check_all(sums);

  check_all(lind_bijection_suite(sp));
}

TEST_CASE("clifford restriction certificates") {
  // the whole group over itself: every orbit is a fixed point
  auto es = unitriangular_27();
  check_all(clifford_suite(es, grp::whole_group(es)));

  // index two in a cyclic group: restriction of induction doubles
  auto z4 = FiniteGroup::from_table(cyclic_table(4));
  Subgroup h2 = Subgroup::generated(z4, {2});
  check_all(clifford_suite(z4, h2));
  auto hirr = irreducible_characters_of(z4, h2);
  auto g_dom = chr::full_domain(z4);
  for (const CharacterObject& t : hirr.chars) {
    auto round = chr::restrict_character(chr::induce_character(t, g_dom), hirr.dom);
    CHECK(chr::char_equal(round, chr::char_scale(t, 2)));
  }

  // abelian scalar-class preimage inside the two-line cover
  Model m = torus_model(5, 2, 0, {2});
  check_all(clifford_suite(m.U, m.H));
}

TEST_CASE("character tables of whole covers") {
  auto z4 = FiniteGroup::from_table(cyclic_table(4));
  auto eng = irreducible_characters(z4);
  CHECK(eng.certified());
  CHECK(eng.sum_deg_sq == 4);
  for (const CharacterObject& c : eng.chars) CHECK(c.degree() == 1);

  Model m = torus_model(5, 2, 1, {2});
  auto engm = irreducible_characters(m.U);
  CHECK(engm.certified());
  CHECK(engm.sum_deg_sq == 32);
}
