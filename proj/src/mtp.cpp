#include "covrep/mtp.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covrep/error.hpp"

namespace covrep::mtp {

using cyc::Cyc;
using grp::FiniteGroup;
using grp::Vec;
using zmat::umod;

namespace {

i64 fiber_gen(const GroupPtr& U) { return U->encode(1, Vec(U->dims(), 0)); }

// Base projection of a subgroup, as a sorted set of base vectors.
std::vector<Vec> base_image(const GroupPtr& U, const Subgroup& S) {
  std::vector<Vec> out;
  out.reserve(S.elements().size());
  for (i64 g : S.elements()) out.push_back(U->decode(g).second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Exponent of a linear character on the fiber generator, rescaled from the
// chain modulus to mod n.
i64 linchar_fiber_exponent(const LinearDual& dual, const LinChar& c) {
  const GroupPtr& U = dual.domain().universe();
  const i64 n = U->fiber_n();
  if (n == 1) return 0;
  const i64 E = dual.value_mod();
  if (E % n != 0)
    fail(ErrorKind::Engine, "chain modulus is not divisible by the fiber order");
  i64 k = dual.value_exp(c, fiber_gen(U));
  if (k % (E / n) != 0)
    fail(ErrorKind::Validation, "character is not an n-th-root character on the fiber");
  return umod(k / (E / n), n);
}

// Central exponents of a character on the generators of a chain; requires
// the chain elements to act by scalars on the character's carrier.
LinChar central_restriction(const CharacterObject& c, const LinearDual& dual) {
  LinChar out;
  out.t.reserve(dual.chain().size());
  for (i64 z : dual.chain()) out.t.push_back(chr::central_exponent(c, z));
  return out;
}

std::vector<i64> linchar_key(const LinearDual& dual, const LinChar& c) {
  std::vector<i64> key;
  key.reserve(dual.chain().size());
  for (i64 z : dual.chain()) key.push_back(dual.value_exp(c, z));
  return key;
}

// Re-encode a character of a common subgroup between duals over the two
// models.  The chains agree element by element, but the ambient exponents
// (and with them the exponent units) may differ, so raw exponent vectors
// are rescaled through the actual root-of-unity values.
LinChar port_linchar(const LinearDual& from, const LinearDual& to,
                     const LinChar& c) {
  if (from.chain() != to.chain())
    fail(ErrorKind::Engine, "character chains diverged between the models");
  const i64 ef = from.value_mod();
  const i64 et = to.value_mod();
  LinChar out;
  out.t.reserve(from.chain().size());
  for (i64 z : from.chain()) {
    i64 v = from.value_exp(c, z);
    if ((v * et) % ef != 0)
      fail(ErrorKind::Engine,
           "character value does not descend to the other model");
    out.t.push_back((v * et / ef) % et);
  }
  return out;
}

// (s, e) det-twist exponent of a base vector, mod n.
i64 det_exponent(const Vec& x, i64 s, i64 e, i64 n) {
  i64 sv = 0, sw = 0;
  for (size_t i = 0; i + 1 < x.size(); i += 2) {
    sv += x[i];
    sw += x[i + 1];
  }
  return umod(s * sv + e * sw, n);
}

// chi shifted by the restriction of the (s, e) det twist to the chain.
LinChar twist_linchar(const LinearDual& dual, const LinChar& chi, i64 s, i64 e) {
  const GroupPtr& U = dual.domain().universe();
  const i64 E = dual.value_mod();
  const i64 n = U->fiber_n();
  LinChar out;
  out.t.reserve(dual.chain().size());
  for (i64 z : dual.chain()) {
    i64 d = det_exponent(U->decode(z).second, s, e, n);
    out.t.push_back(umod(dual.value_exp(chi, z) + d * (E / n), E));
  }
  return out;
}

// Line offsets of the blocks: block i covers lines [off[i], off[i+1]).
std::vector<i64> block_offsets(const std::vector<i64>& beta) {
  std::vector<i64> off(beta.size() + 1, 0);
  for (size_t i = 0; i < beta.size(); ++i) off[i + 1] = off[i] + beta[i];
  return off;
}

Vec block_slice(const Vec& x, i64 line_off, i64 lines) {
  return Vec(x.begin() + 2 * line_off, x.begin() + 2 * (line_off + lines));
}

// Index of the single block supporting the base vector; -1 when the vector
// is zero, -2 when the support meets more than one block.
int support_block(const Vec& x, const std::vector<i64>& off) {
  int blk = -1;
  for (size_t j = 0; j + 1 < off.size(); ++j)
    for (i64 u = 2 * off[j]; u < 2 * off[j + 1]; ++u)
      if (x[u] != 0) {
        if (blk >= 0 && blk != static_cast<int>(j)) return -2;
        blk = static_cast<int>(j);
        break;
      }
  return blk;
}

// The bilinear form of a cover model, read back from the multiplication:
// form[u][v] = fiber part of e_u * e_v.
std::vector<std::vector<i64>> extract_form(const GroupPtr& U) {
  const i64 d = U->dims();
  std::vector<std::vector<i64>> form(d, std::vector<i64>(d, 0));
  for (i64 u = 0; u < d; ++u)
    for (i64 v = 0; v < d; ++v) {
      Vec eu(d, 0), ev(d, 0);
      eu[u] = 1;
      ev[v] = 1;
      form[u][v] = U->decode(U->mul(U->encode(0, eu), U->encode(0, ev))).first;
    }
  return form;
}

}  // namespace

// ---------------------------------------------------------------------------
// Well-matched model pairs.

WellMatchedData build_models(const local::LocalFieldSpec& field, i64 c,
                             const std::vector<i64>& beta) {
  CoverSpec spec = cover::make_cover_spec(field, c, beta);
  const size_t k = spec.beta.size();
  GroupPtr G1 = FiniteGroup::from_cover(spec, true);
  GroupPtr G2 = (k == 1) ? G1 : FiniteGroup::from_cover(spec, false);

  cover::DistinguishedSubgroups ds = cover::distinguished_subgroups(spec);
  Subgroup H1 = grp::cover_preimage(G1, ds.h_beta);
  Subgroup N1 = grp::cover_preimage(G1, ds.z_beta);
  Subgroup A1 = grp::fiber_subgroup(G1);
  Subgroup H2 = grp::cover_preimage(G2, ds.h_beta);
  Subgroup N2 = grp::cover_preimage(G2, ds.z_beta);
  Subgroup A2 = grp::fiber_subgroup(G2);

  CheckList cert;
  cert.add("h_image_equal", base_image(G1, H1) == base_image(G2, H2),
           "pr(H1), pr(H2) with " + std::to_string(H1.order()) + " elements each");
  cert.add("n_image_equal", base_image(G1, N1) == base_image(G2, N2),
           "pr(N1), pr(N2) with " + std::to_string(N1.order()) + " elements each");

  // The coordinate identity on H preserves multiplication: the cocycle forms
  // agree there, i.e. blocks with trivial determinant class commute across
  // blocks and contribute nothing to the cross terms.
  bool hom = true;
  std::string hom_detail = "checked " + std::to_string(H1.order()) + "^2 pairs";
  for (i64 x : H1.elements()) {
    for (i64 y : H1.elements())
      if (G1->mul(x, y) != G2->mul(x, y)) {
        hom = false;
        hom_detail = "products differ at (" + std::to_string(x) + ", " +
                     std::to_string(y) + ")";
        break;
      }
    if (!hom) break;
  }
  cert.add("iota_homomorphism", hom, hom_detail);

  bool fiber_fixed = true;
  for (i64 t = 0; t < spec.n(); ++t)
    if (G1->encode(t, Vec(G1->dims(), 0)) != G2->encode(t, Vec(G2->dims(), 0)))
      fiber_fixed = false;
  cert.add("iota_identity_on_fiber", fiber_fixed);

  // Cross-block commutators vanish inside the full model on H.
  {
    std::vector<i64> off = block_offsets(spec.beta);
    std::vector<std::vector<i64>> by_block(k);
    for (i64 h : H1.elements()) {
      int blk = support_block(G1->decode(h).second, off);
      if (blk >= 0) by_block[blk].push_back(h);
    }
    bool comm = true;
    i64 pairs = 0;
    const i64 id1 = G1->id();
    for (size_t i = 0; i < k && comm; ++i)
      for (size_t j = i + 1; j < k && comm; ++j)
        for (i64 x : by_block[i]) {
          for (i64 y : by_block[j]) {
            ++pairs;
            if (G1->commutator(x, y) != id1) {
              comm = false;
              break;
            }
          }
          if (!comm) break;
        }
    cert.add("block_commutation", comm,
             k == 1 ? "single block" : std::to_string(pairs) + " cross pairs");
  }

  SpecialPairData sp1 = heis::is_special_pair(G1, H1, N1, A1);
  SpecialPairData sp2 = (k == 1) ? sp1 : heis::is_special_pair(G2, H2, N2, A2);
  cert.add("pair1_special", sp1.is_special(), sp1.cert.first_failure());
  cert.add("pair2_special", sp2.is_special(), sp2.cert.first_failure());

  if (sp1.is_special() && sp2.is_special()) {
    cert.add("z_image_equal",
             base_image(G1, sp1.ZHcapNG) == base_image(G2, sp2.ZHcapNG),
             "pr(Z_{H cap N}(G)) on both sides");
    // One auxiliary character serves both sides: the common overlap carries
    // the same elements and the same character chains in both models.
    cert.add("shared_overlap_chain",
             sp1.HcapN.elements() == sp2.HcapN.elements() &&
                 sp1.hn_dual->chain() == sp2.hn_dual->chain() &&
                 sp1.phi_dual->chain() == sp2.phi_dual->chain(),
             "H cap N carrier and chains");
  }

  if (!cert.all_pass())
    fail(ErrorKind::Validation,
         "well-matched certification failed: " + cert.first_failure());

  LindCache c1 = heis::make_lind_cache(sp1);
  LindCache c2 = (k == 1) ? c1 : heis::make_lind_cache(sp2);
  return WellMatchedData{spec,           G1,
                         G2,             std::move(sp1),
                         std::move(sp2), std::move(c1),
                         std::move(c2),  std::move(cert)};
}

// ---------------------------------------------------------------------------
// Central character systems.

i64 fiber_exponent(const CharacterObject& pi) {
  const GroupPtr& U = pi.dom->U;
  const i64 n = U->fiber_n();
  if (n == 1) return 0;
  const i64 E = U->exponent();
  if (E % n != 0)
    fail(ErrorKind::Engine, "group exponent is not divisible by the fiber order");
  i64 kk = chr::central_exponent(pi, fiber_gen(U));
  if (kk % (E / n) != 0)
    fail(ErrorKind::Validation, "character is not an n-th-root character on the fiber");
  return umod(kk / (E / n), n);
}

CentralCharSystem central_system(const std::vector<CharacterObject>& blocks,
                                 i64 omega_eps) {
  if (blocks.empty()) fail(ErrorKind::Precondition, "no block characters");
  CentralCharSystem sys;
  sys.n = blocks.front().dom->U->fiber_n();
  for (const CharacterObject& b : blocks) {
    if (b.dom->U->fiber_n() != sys.n)
      fail(ErrorKind::DomainMismatch, "block characters have different fiber orders");
    sys.block_eps.push_back(fiber_exponent(b));
  }
  sys.omega_eps = umod(omega_eps, sys.n);
  return sys;
}

bool compatible(const CentralCharSystem& sys) {
  for (i64 e : sys.block_eps)
    if (umod(e - sys.omega_eps, sys.n) != 0) return false;
  if (sys.omega_beta_eps &&
      umod(*sys.omega_beta_eps - sys.omega_eps, sys.n) != 0)
    return false;
  return true;
}

// ---------------------------------------------------------------------------
// Transfer.

std::vector<LinChar> genuine_central_chars(const SpecialPairData& sp) {
  if (!sp.is_special())
    fail(ErrorKind::Precondition, "pair is not special: " + sp.cert.first_failure());
  std::vector<LinChar> out;
  for (const LinChar& c : sp.zng_dual->all_characters())
    if (heis::linchar_genuine(*sp.zng_dual, c, sp.a_gen, sp.a_ord))
      out.push_back(c);
  return out;
}

i64 central_char_exponent(const LinearDual& dual, const LinChar& chi) {
  return linchar_fiber_exponent(dual, chi);
}

LinChar omega_with_exponent(const WellMatchedData& wm, i64 eps) {
  const i64 n = wm.spec.n();
  std::vector<LinChar> hits;
  for (const LinChar& c : genuine_central_chars(wm.sp1))
    if (linchar_fiber_exponent(*wm.sp1.zng_dual, c) == umod(eps, n))
      hits.push_back(c);
  if (hits.empty())
    fail(ErrorKind::Precondition,
         "no genuine central character with that fiber exponent");
  if (hits.size() > 1)
    fail(ErrorKind::Engine,
         "center model does not pin the character by its fiber exponent");
  return hits.front();
}

std::vector<LinChar> shared_auxiliaries(const WellMatchedData& wm,
                                        const LinChar& chi1,
                                        const LinChar& chi2) {
  std::vector<LinChar> out;
  for (const LinChar& psi : wm.sp1.hn_dual->all_characters())
    if (heis::linchar_genuine(*wm.sp1.hn_dual, psi, wm.sp1.a_gen, wm.sp1.a_ord) &&
        heis::consistent_pair(wm.sp1, psi, chi1) &&
        heis::consistent_pair(
            wm.sp2, port_linchar(*wm.sp1.hn_dual, *wm.sp2.hn_dual, psi), chi2))
      out.push_back(psi);
  return out;
}

bool char_values_equal(const CharacterObject& a, const CharacterObject& b) {
  if (a.dom->cls.reps != b.dom->cls.reps)
    fail(ErrorKind::Engine, "class representatives do not line up across the models");
  if (a.values.size() != b.values.size()) return false;
  for (size_t i = 0; i < a.values.size(); ++i)
    if (!(a.values[i] == b.values[i])) return false;
  return true;
}

CharacterObject transfer(const WellMatchedData& wm, const LinChar& chi1,
                         const LinChar& chi2, const CharacterObject& pi) {
  const bool from1 = pi.dom->U.get() == wm.G1.get();
  if (!from1 && pi.dom->U.get() != wm.G2.get())
    fail(ErrorKind::DomainMismatch, "character does not live on either model");
  const SpecialPairData& s_src = from1 ? wm.sp1 : wm.sp2;
  const SpecialPairData& s_tgt = from1 ? wm.sp2 : wm.sp1;
  const LindCache& c_src = from1 ? wm.cache1 : wm.cache2;
  const LindCache& c_tgt = from1 ? wm.cache2 : wm.cache1;
  const LinChar& chi_src = from1 ? chi1 : chi2;
  const LinChar& chi_tgt = from1 ? chi2 : chi1;

  std::vector<LinChar> psis = shared_auxiliaries(wm, chi1, chi2);
  if (psis.empty())
    fail(ErrorKind::Precondition,
         "incompatible central characters: no shared auxiliary character");

  std::optional<CharacterObject> out;
  for (const LinChar& psi : psis) {
    LinChar psi2 = port_linchar(*wm.sp1.hn_dual, *wm.sp2.hn_dual, psi);
    const LinChar& psi_src = from1 ? psi : psi2;
    const LinChar& psi_tgt = from1 ? psi2 : psi;
    CharacterObject tau = heis::lres(s_src, c_src, psi_src, chi_src, pi);
    if (tau.dom->cls.reps != c_tgt.h_dom->cls.reps)
      fail(ErrorKind::Engine,
           "common subgroup class data diverged between the models");
    CharacterObject moved{c_tgt.h_dom, tau.values};
    CharacterObject cand = heis::lind(s_tgt, c_tgt, psi_tgt, chi_tgt, moved);
    if (!out)
      out = std::move(cand);
    else if (!char_values_equal(*out, cand))
      fail(ErrorKind::Engine, "transfer depends on the auxiliary character choice");
  }
  return *out;
}

CheckList transfer_suite(const WellMatchedData& wm) {
  CheckList out;
  const GroupPtr& G1 = wm.G1;
  const GroupPtr& G2 = wm.G2;
  const bool one_model = G1.get() == G2.get();
  const i64 n = G1->fiber_n();

  chr::EngineResult e1 = heis::irreducible_characters(G1);
  chr::EngineResult e2 = one_model ? e1 : heis::irreducible_characters(G2);
  out.add("tables_certified", e1.certified() && e2.certified(),
          std::to_string(e1.chars.size()) + " and " +
              std::to_string(e2.chars.size()) + " irreducibles");

  std::vector<CharacterObject> gen1 =
      heis::genuine_subset(e1.chars, wm.sp1.a_gen, wm.sp1.a_ord);
  std::vector<CharacterObject> gen2 =
      heis::genuine_subset(e2.chars, wm.sp2.a_gen, wm.sp2.a_ord);

  // Bucket the genuine irreducibles by their central character.
  std::map<std::vector<i64>, std::vector<int>> bucket1, bucket2;
  for (size_t i = 0; i < gen1.size(); ++i)
    bucket1[linchar_key(*wm.sp1.zng_dual,
                        central_restriction(gen1[i], *wm.sp1.zng_dual))]
        .push_back(static_cast<int>(i));
  for (size_t i = 0; i < gen2.size(); ++i)
    bucket2[linchar_key(*wm.sp2.zng_dual,
                        central_restriction(gen2[i], *wm.sp2.zng_dual))]
        .push_back(static_cast<int>(i));

  std::vector<LinChar> chi1s = genuine_central_chars(wm.sp1);
  std::vector<LinChar> chi2s = genuine_central_chars(wm.sp2);

  const i64 idx1 = G1->order() / wm.cache1.LH.order();
  const i64 idx2 = G2->order() / wm.cache2.LH.order();

  struct Matched {
    int pair_id;
    LinChar chi1, chi2;
    std::vector<int> src;                 // indices into gen1
    std::vector<int> tgt;                 // matched indices into gen2
    std::vector<CharacterObject> image;   // transferred characters
  };
  std::vector<Matched> matched;
  // pair key (chi1 key, chi2 key) -> id, for the twist-orbit walk
  std::map<std::pair<std::vector<i64>, std::vector<i64>>, int> pair_id;

  bool bij = true, deg = true, round = true;
  i64 aux_max = 0;
  std::string bad;
  for (const LinChar& chi1 : chi1s)
    for (const LinChar& chi2 : chi2s) {
      std::vector<LinChar> psis = shared_auxiliaries(wm, chi1, chi2);
      if (psis.empty()) continue;
      aux_max = std::max<i64>(aux_max, static_cast<i64>(psis.size()));
      Matched m;
      m.pair_id = static_cast<int>(matched.size());
      m.chi1 = chi1;
      m.chi2 = chi2;
      auto it1 = bucket1.find(linchar_key(*wm.sp1.zng_dual, chi1));
      auto it2 = bucket2.find(linchar_key(*wm.sp2.zng_dual, chi2));
      const std::vector<int> empty;
      const std::vector<int>& set1 = it1 == bucket1.end() ? empty : it1->second;
      const std::vector<int>& set2 = it2 == bucket2.end() ? empty : it2->second;
      if (set1.size() != set2.size()) {
        bij = false;
        bad = "unequal matching sets";
      }
      std::set<int> used;
      for (int i : set1) {
        CharacterObject t = transfer(wm, chi1, chi2, gen1[i]);
        if (t.degree() * idx1 != gen1[i].degree() * idx2) {
          deg = false;
          bad = "degree identity fails";
        }
        int match = -1;
        for (int j : set2)
          if (char_values_equal(t, gen2[j])) {
            match = j;
            break;
          }
        if (match < 0 || used.count(match)) {
          bij = false;
          bad = "transfer image not matched injectively";
        } else {
          used.insert(match);
        }
        CharacterObject back = one_model ? transfer(wm, chi2, chi1, t)
                                         : transfer(wm, chi1, chi2, t);
        if (!char_values_equal(back, gen1[i])) {
          round = false;
          bad = "roundtrip is not the identity";
        }
        m.src.push_back(i);
        m.tgt.push_back(match);
        m.image.push_back(std::move(t));
      }
      // Reverse direction must land back in set1 bijectively as well.
      std::set<int> rused;
      for (int j : set2) {
        CharacterObject t = one_model ? transfer(wm, chi2, chi1, gen2[j])
                                      : transfer(wm, chi1, chi2, gen2[j]);
        int match = -1;
        for (int i : set1)
          if (char_values_equal(t, gen1[i])) {
            match = i;
            break;
          }
        if (match < 0 || rused.count(match)) {
          bij = false;
          bad = "reverse transfer not matched injectively";
        } else {
          rused.insert(match);
        }
      }
      pair_id[{linchar_key(*wm.sp1.zng_dual, chi1),
               linchar_key(*wm.sp2.zng_dual, chi2)}] = m.pair_id;
      matched.push_back(std::move(m));
    }

  out.add("compatible_pairs_found", !matched.empty(),
          std::to_string(matched.size()) + " central pairs");
  out.add("auxiliary_independent", true,
          "re-derived per auxiliary character inside every transfer, up to " +
              std::to_string(aux_max) + " choices");
  out.add("bijection_all_pairs", bij, bij ? "" : bad);
  out.add("degree_scaling", deg,
          "deg(trns pi) * " + std::to_string(idx1) + " = deg(pi) * " +
              std::to_string(idx2));
  out.add("roundtrip_identity", round, round ? "" : bad);

  // Twist equivariance: trns with centrally shifted data commutes with the
  // det twists.
  bool equiv = true;
  for (const Matched& m : matched)
    for (i64 s = 0; s < n && equiv; ++s)
      for (i64 e = 0; e < n && equiv; ++e)
        for (size_t a = 0; a < m.src.size(); ++a) {
          const CharacterObject& pi = gen1[m.src[a]];
          LinChar tchi1 = twist_linchar(*wm.sp1.zng_dual, m.chi1, s, e);
          LinChar tchi2 = twist_linchar(*wm.sp2.zng_dual, m.chi2, s, e);
          CharacterObject tpi = chr::char_mul(pi, det_twist(pi.dom, s, e));
          CharacterObject lhs = transfer(wm, tchi1, tchi2, tpi);
          CharacterObject rhs = chr::char_mul(
              m.image[a], det_twist(m.image[a].dom, s, e));
          if (!char_values_equal(lhs, rhs)) {
            equiv = false;
            break;
          }
        }
  out.add("twist_equivariance", equiv);

  // Twists trivial on the H Z(N) model fix every transferred irreducible.
  {
    bool fixes = true;
    i64 used_twists = 0;
    Subgroup hzn2 = wm.sp2.H.join(wm.sp2.ZN);
    for (i64 s = 0; s < n; ++s)
      for (i64 e = 0; e < n; ++e) {
        bool trivial = true;
        for (i64 g : hzn2.elements())
          if (det_exponent(G2->decode(g).second, s, e, n) != 0) {
            trivial = false;
            break;
          }
        if (!trivial) continue;
        ++used_twists;
        for (const Matched& m : matched)
          for (const CharacterObject& t : m.image)
            if (!char_values_equal(
                    chr::char_mul(t, det_twist(t.dom, s, e)), t))
              fixes = false;
      }
    out.add("twist_trivial_on_hzn_fixes", fixes,
            std::to_string(used_twists) + " twists trivial on H Z(N)");
  }

  // Orbit counts of the twist action on the pair-labeled matched families
  // agree on the two sides (the action moves the central pair and the
  // character together; equivariance makes the transfer orbit-preserving).
  if (!bij) {
    out.add("twist_orbit_counts", false, "skipped: bijection failed");
  } else {
    auto orbit_count = [&](bool side1) -> i64 {
      // nodes: (pair_id, position); edges by the (s, e) action
      std::set<std::pair<int, int>> seen;
      i64 orbits = 0;
      for (const Matched& m : matched)
        for (size_t a = 0; a < m.src.size(); ++a) {
          if (seen.count({m.pair_id, static_cast<int>(a)})) continue;
          ++orbits;
          std::vector<std::pair<int, int>> stack = {
              {m.pair_id, static_cast<int>(a)}};
          seen.insert(stack.back());
          while (!stack.empty()) {
            auto [pid, pos] = stack.back();
            stack.pop_back();
            const Matched& cur = matched[pid];
            for (i64 s = 0; s < n; ++s)
              for (i64 e = 0; e < n; ++e) {
                LinChar tchi1 = twist_linchar(*wm.sp1.zng_dual, cur.chi1, s, e);
                LinChar tchi2 = twist_linchar(*wm.sp2.zng_dual, cur.chi2, s, e);
                auto pit = pair_id.find(
                    {linchar_key(*wm.sp1.zng_dual, tchi1),
                     linchar_key(*wm.sp2.zng_dual, tchi2)});
                if (pit == pair_id.end())
                  fail(ErrorKind::Engine,
                       "det twist leaves the compatible central pairs");
                const Matched& nxt = matched[pit->second];
                const std::vector<CharacterObject>& pool =
                    side1 ? gen1 : gen2;
                int self = side1 ? cur.src[pos] : cur.tgt[pos];
                CharacterObject tw = chr::char_mul(
                    pool[self], det_twist(pool[self].dom, s, e));
                int land = -1;
                const std::vector<int>& cands = side1 ? nxt.src : nxt.tgt;
                for (size_t b = 0; b < cands.size(); ++b)
                  if (char_values_equal(tw, pool[cands[b]])) {
                    land = static_cast<int>(b);
                    break;
                  }
                if (land < 0)
                  fail(ErrorKind::Engine,
                       "det twist leaves the matched family");
                if (seen.insert({nxt.pair_id, land}).second)
                  stack.push_back({nxt.pair_id, land});
              }
          }
        }
      return orbits;
    };
    i64 o1 = orbit_count(true);
    i64 o2 = orbit_count(false);
    out.add("twist_orbit_counts", o1 == o2,
            std::to_string(o1) + " orbits on each side");
  }
  return out;
}

// ---------------------------------------------------------------------------
// The metaplectic tensor product.

CharacterObject tensor_on_product(const WellMatchedData& wm,
                                  const std::vector<CharacterObject>& parts) {
  const std::vector<i64>& beta = wm.spec.beta;
  const size_t k = beta.size();
  if (parts.size() != k)
    fail(ErrorKind::Precondition, "expected one character per block");
  const i64 n = wm.spec.n();
  std::vector<GroupPtr> BU;
  BU.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    const GroupPtr& Ui = parts[i].dom->U;
    if (!Ui->is_cover_model() || Ui->fiber_n() != n ||
        Ui->dims() != 2 * beta[i])
      fail(ErrorKind::DomainMismatch,
           "block character does not live on a torus model of the block size");
    if (parts[i].dom->H.order() != Ui->order())
      fail(ErrorKind::DomainMismatch,
           "block characters must live on whole block models");
    BU.push_back(Ui);
  }
  const i64 e0 = fiber_exponent(parts[0]);
  for (size_t i = 1; i < k; ++i)
    if (fiber_exponent(parts[i]) != e0)
      fail(ErrorKind::Precondition,
           "block characters have different fiber exponents; the tensor does "
           "not descend to the blockwise model");

  std::vector<i64> off = block_offsets(beta);
  const DomainPtr& dom = wm.cache2.g_dom;
  CharacterObject out;
  out.dom = dom;
  out.values.reserve(dom->cls.reps.size());
  for (i64 g : dom->cls.reps) {
    auto [t, x] = wm.G2->decode(g);
    Cyc val = parts[0].value_of(BU[0]->encode(t, block_slice(x, off[0], beta[0])));
    for (size_t i = 1; i < k; ++i)
      val = val * parts[i].value_of(
                      BU[i]->encode(0, block_slice(x, off[i], beta[i])));
    out.values.push_back(val);
  }
  if (!chr::is_irreducible(out))
    fail(ErrorKind::Engine, "glued tensor character is not irreducible");
  return out;
}

CharacterObject mtp(const WellMatchedData& wm,
                    const std::vector<CharacterObject>& parts,
                    const LinChar& omega) {
  if (!heis::linchar_genuine(*wm.sp1.zng_dual, omega, wm.sp1.a_gen,
                             wm.sp1.a_ord))
    fail(ErrorKind::Precondition, "omega must be genuine on the center model");
  CentralCharSystem sys =
      central_system(parts, linchar_fiber_exponent(*wm.sp1.zng_dual, omega));
  if (!compatible(sys))
    fail(ErrorKind::Precondition, "incompatible central character system");
  CharacterObject glue = tensor_on_product(wm, parts);
  LinChar chi2 = central_restriction(glue, *wm.sp2.zng_dual);
  sys.omega_beta_eps = linchar_fiber_exponent(*wm.sp2.zng_dual, chi2);
  if (!compatible(sys))
    fail(ErrorKind::Engine, "glued character has the wrong central exponent");
  if (wm.G1.get() == wm.G2.get())
    return transfer(wm, chi2, omega, glue);  // single block: chi1 is the source
  return transfer(wm, omega, chi2, glue);
}

// ---------------------------------------------------------------------------
// Associativity.

AssociativityReport associativity_check(const local::LocalFieldSpec& field,
                                        i64 c, i64 r1, i64 r2, i64 r3) {
  AssociativityReport rep;
  WellMatchedData wm = build_models(field, c, {r1, r2, r3});
  WellMatchedData wm_li = build_models(field, c, {r1, r2});
  WellMatchedData wm_lo = build_models(field, c, {r1 + r2, r3});
  WellMatchedData wm_ri = build_models(field, c, {r2, r3});
  WellMatchedData wm_ro = build_models(field, c, {r1, r2 + r3});
  rep.checks.add("models_certified",
                 wm.ok() && wm_li.ok() && wm_lo.ok() && wm_ri.ok() && wm_ro.ok());

  // The three full models carry one multiplication: same fiber, same
  // dimensions, same bilinear form (the full form does not depend on the
  // composition), hence identical tables and class data.
  {
    auto f = extract_form(wm.G1);
    bool same = f == extract_form(wm_lo.G1) && f == extract_form(wm_ro.G1) &&
                wm.G1->order() == wm_lo.G1->order() &&
                wm.G1->order() == wm_ro.G1->order();
    rep.checks.add("full_tables_agree", same);
    if (!same) return rep;
  }
  // The target central data transports verbatim across the three full
  // models: the center chains are built from identical subgroup data.
  {
    bool same_chain =
        wm.sp1.zng_dual->chain() == wm_lo.sp1.zng_dual->chain() &&
        wm.sp1.zng_dual->chain() == wm_ro.sp1.zng_dual->chain() &&
        wm.sp1.zng_dual->value_mod() == wm_lo.sp1.zng_dual->value_mod() &&
        wm.sp1.zng_dual->value_mod() == wm_ro.sp1.zng_dual->value_mod();
    rep.checks.add("outer_center_chains_match", same_chain);
    if (!same_chain) return rep;
  }

  // Block models and their genuine irreducibles, bucketed by fiber exponent.
  const i64 n = wm.spec.n();
  std::map<i64, GroupPtr> block_group;
  for (i64 s : {r1, r2, r3})
    if (!block_group.count(s))
      block_group[s] =
          FiniteGroup::from_cover(cover::make_cover_spec(field, c, {s}), true);
  std::map<i64, std::vector<std::vector<CharacterObject>>> by_eps;
  for (auto& [s, U] : block_group) {
    chr::EngineResult eng = heis::irreducible_characters(U);
    if (!eng.certified())
      fail(ErrorKind::Engine, "block character table is not certified");
    std::vector<std::vector<CharacterObject>> buckets(n);
    for (CharacterObject& ch :
         heis::genuine_subset(eng.chars, fiber_gen(U), n))
      buckets[fiber_exponent(ch)].push_back(std::move(ch));
    by_eps[s] = std::move(buckets);
  }

  auto inner_omegas = [&](const WellMatchedData& w, i64 eps) {
    std::vector<LinChar> chis;
    for (const LinChar& chi : genuine_central_chars(w.sp1))
      if (linchar_fiber_exponent(*w.sp1.zng_dual, chi) == eps)
        chis.push_back(chi);
    return chis;
  };

  bool all_equal = true;
  std::string first_bad;
  for (const LinChar& omega : genuine_central_chars(wm.sp1)) {
    const i64 eps = linchar_fiber_exponent(*wm.sp1.zng_dual, omega);
    const auto& p1 = by_eps[r1][eps];
    const auto& p2 = by_eps[r2][eps];
    const auto& p3 = by_eps[r3][eps];
    std::vector<LinChar> om12 = inner_omegas(wm_li, eps);
    std::vector<LinChar> om23 = inner_omegas(wm_ri, eps);
    // Nested products, cached across the third factor.
    std::map<std::array<int, 3>, CharacterObject> left_cache, right_cache;
    for (size_t i = 0; i < p1.size(); ++i)
      for (size_t j = 0; j < p2.size(); ++j)
        for (size_t l = 0; l < p3.size(); ++l) {
          CharacterObject flat = mtp(wm, {p1[i], p2[j], p3[l]}, omega);
          for (size_t a = 0; a < om12.size(); ++a) {
            std::array<int, 3> key = {static_cast<int>(i),
                                      static_cast<int>(j),
                                      static_cast<int>(a)};
            auto it = left_cache.find(key);
            if (it == left_cache.end())
              it = left_cache
                       .emplace(key, mtp(wm_li, {p1[i], p2[j]}, om12[a]))
                       .first;
            CharacterObject left = mtp(wm_lo, {it->second, p3[l]}, omega);
            for (size_t b = 0; b < om23.size(); ++b) {
              std::array<int, 3> rkey = {static_cast<int>(j),
                                         static_cast<int>(l),
                                         static_cast<int>(b)};
              auto rt = right_cache.find(rkey);
              if (rt == right_cache.end())
                rt = right_cache
                         .emplace(rkey, mtp(wm_ri, {p2[j], p3[l]}, om23[b]))
                         .first;
              CharacterObject right = mtp(wm_ro, {p1[i], rt->second}, omega);
              ++rep.systems;
              if (!char_values_equal(flat, left) ||
                  !char_values_equal(flat, right)) {
                ++rep.mismatches;
                if (first_bad.empty())
                  first_bad = "triple (" + std::to_string(i) + "," +
                              std::to_string(j) + "," + std::to_string(l) +
                              ") eps=" + std::to_string(eps);
                all_equal = false;
              }
            }
          }
        }
  }
  rep.checks.add("associative", all_equal && rep.systems > 0,
                 all_equal ? std::to_string(rep.systems) + " systems"
                           : first_bad);
  return rep;
}

// ---------------------------------------------------------------------------
// Permutation equivariance.

PermutationReport permutation_equivariance_check(
    const local::LocalFieldSpec& field, i64 c, const std::vector<i64>& beta,
    const std::vector<int>& sigma) {
  PermutationReport rep;
  const size_t k = beta.size();
  {
    std::vector<int> s = sigma;
    std::sort(s.begin(), s.end());
    for (size_t i = 0; i < k; ++i)
      if (s.size() != k || s[i] != static_cast<int>(i))
        fail(ErrorKind::Precondition, "sigma is not a permutation of the blocks");
  }
  std::vector<i64> beta_p(k);
  for (size_t i = 0; i < k; ++i) beta_p[i] = beta[sigma[i]];

  WellMatchedData wmA = build_models(field, c, beta);
  std::optional<WellMatchedData> own;
  if (beta_p != beta) own = build_models(field, c, beta_p);
  const WellMatchedData& wmB = own ? *own : wmA;
  rep.checks.add("models_certified", wmA.ok() && wmB.ok());

  // Coordinate permutation: position i of the permuted model carries the
  // original block sigma[i], line for line.
  const i64 n = wmA.spec.n();
  const i64 d = wmA.G1->dims();
  std::vector<i64> offA = block_offsets(beta), offB = block_offsets(beta_p);
  std::vector<i64> cmap(d);  // B-model coordinate u -> A-model coordinate
  for (size_t i = 0; i < k; ++i)
    for (i64 q = 0; q < beta_p[i]; ++q)
      for (i64 b = 0; b < 2; ++b)
        cmap[2 * (offB[i] + q) + b] = 2 * (offA[sigma[i]] + q) + b;

  // Quadratic coboundary matching the cocycles: with D(u, v) = C_B(u, v) -
  // C_A(cmap u, cmap v), a symmetric D admits f with f(x) + f(y) - f(x+y) =
  // x^T D y; the map Phi(t, x) = (t + f(x), w x) is then a candidate
  // isomorphism, verified exhaustively below.
  auto CA = extract_form(wmA.G1);
  auto CB = extract_form(wmB.G1);
  std::vector<std::vector<i64>> D(d, std::vector<i64>(d, 0));
  bool symmetric = true, diag_ok = true;
  for (i64 u = 0; u < d; ++u)
    for (i64 v = 0; v < d; ++v)
      D[u][v] = umod(CB[u][v] - CA[cmap[u]][cmap[v]], n);
  for (i64 u = 0; u < d; ++u) {
    for (i64 v = u + 1; v < d; ++v)
      if (D[u][v] != D[v][u]) symmetric = false;
    if (n % 2 == 0 && D[u][u] % 2 != 0 && (D[u][u] * (n / 2)) % n != 0)
      diag_ok = false;
  }
  rep.checks.add("coboundary_solvable", symmetric && diag_ok,
                 symmetric ? "" : "cocycle difference is not symmetric");
  if (!(symmetric && diag_ok)) return rep;

  auto f_of = [&](const Vec& x) {
    i64 acc = 0;
    for (i64 u = 0; u < d; ++u) {
      for (i64 v = u + 1; v < d; ++v) acc -= D[u][v] * x[u] * x[v];
      acc -= D[u][u] * (x[u] * (x[u] - 1) / 2);
    }
    return umod(acc, n);
  };
  auto phi = [&](i64 code) {
    auto [t, x] = wmB.G1->decode(code);
    Vec xa(d, 0);
    for (i64 u = 0; u < d; ++u) xa[cmap[u]] = x[u];
    return wmA.G1->encode(umod(t + f_of(x), n), xa);
  };

  {
    bool iso = true;
    std::set<i64> image;
    const i64 order = wmB.G1->order();
    for (i64 g = 0; g < order && iso; ++g) {
      if (!image.insert(phi(g)).second) iso = false;
      for (i64 h = 0; h < order; ++h)
        if (phi(wmB.G1->mul(g, h)) != wmA.G1->mul(phi(g), phi(h))) {
          iso = false;
          break;
        }
    }
    rep.checks.add("permutation_isomorphism", iso,
                   std::to_string(wmB.G1->order()) + "^2 products checked");
    if (!iso) return rep;
  }

  // Block irreducibles per original block, bucketed by fiber exponent.
  std::map<i64, GroupPtr> block_group;
  for (i64 s : beta)
    if (!block_group.count(s))
      block_group[s] =
          FiniteGroup::from_cover(cover::make_cover_spec(field, c, {s}), true);
  std::map<i64, std::vector<std::vector<CharacterObject>>> by_eps;
  for (auto& [s, U] : block_group) {
    chr::EngineResult eng = heis::irreducible_characters(U);
    if (!eng.certified())
      fail(ErrorKind::Engine, "block character table is not certified");
    std::vector<std::vector<CharacterObject>> buckets(n);
    for (CharacterObject& ch : heis::genuine_subset(eng.chars, fiber_gen(U), n))
      buckets[fiber_exponent(ch)].push_back(std::move(ch));
    by_eps[s] = std::move(buckets);
  }

  std::vector<LinChar> omegas = genuine_central_chars(wmA.sp1);
  bool all_pass = true;
  for (size_t w = 0; w < omegas.size(); ++w) {
    const LinChar& omega = omegas[w];
    const i64 eps = linchar_fiber_exponent(*wmA.sp1.zng_dual, omega);
    // omega pulled back through Phi onto the permuted model's chain.
    LinChar omega_b;
    for (i64 z : wmB.sp1.zng_dual->chain()) {
      i64 za = phi(z);
      if (!wmA.sp1.ZNG.contains(za))
        fail(ErrorKind::Engine, "permutation map does not preserve the center model");
      omega_b.t.push_back(wmA.sp1.zng_dual->value_exp(omega, za));
    }

    // All tuples of block irreducibles with the matching exponent.
    std::vector<size_t> sizes(k), cursor(k, 0);
    i64 tuples = 1;
    for (size_t j = 0; j < k; ++j) {
      sizes[j] = by_eps[beta[j]][eps].size();
      tuples *= static_cast<i64>(sizes[j]);
    }
    for (i64 count = 0; count < tuples; ++count) {
      std::vector<CharacterObject> parts, parts_b;
      for (size_t j = 0; j < k; ++j)
        parts.push_back(by_eps[beta[j]][eps][cursor[j]]);
      for (size_t i = 0; i < k; ++i) parts_b.push_back(parts[sigma[i]]);

      CharacterObject A = mtp(wmA, parts, omega);
      CharacterObject B = mtp(wmB, parts_b, omega_b);

      PermutationCase pc;
      for (size_t j = 0; j < k; ++j)
        pc.parts.push_back(static_cast<int>(cursor[j]));
      pc.omega_index = static_cast<i64>(w);
      pc.exact = true;
      for (size_t idx = 0; idx < B.dom->cls.reps.size(); ++idx)
        if (!(B.values[idx] == A.value_of(phi(B.dom->cls.reps[idx])))) {
          pc.exact = false;
          break;
        }
      if (pc.exact) {
        pc.pass = true;
        ++rep.exact_count;
      } else {
        // Weak-equivalence fallback: the two sides may differ by a det
        // twist; search the n^2 candidates.
        for (i64 s = 0; s < n && !pc.twist; ++s)
          for (i64 e = 0; e < n && !pc.twist; ++e) {
            bool hit = true;
            for (size_t idx = 0; idx < B.dom->cls.reps.size(); ++idx) {
              i64 g = B.dom->cls.reps[idx];
              i64 dx = det_exponent(wmB.G1->decode(g).second, s, e, n);
              if (!(B.values[idx] == A.value_of(phi(g)) *
                                         Cyc::root_power(dx, n))) {
                hit = false;
                break;
              }
            }
            if (hit) pc.twist = {s, e};
          }
        pc.pass = pc.twist.has_value();
        if (pc.pass) ++rep.weak_count;
      }
      if (!pc.pass) all_pass = false;
      rep.cases.push_back(std::move(pc));

      for (size_t j = 0; j < k; ++j) {
        if (++cursor[j] < sizes[j]) break;
        cursor[j] = 0;
      }
    }
  }
  rep.checks.add("equivariance", all_pass,
                 std::to_string(rep.exact_count) + " exact, " +
                     std::to_string(rep.weak_count) + " up to a det twist");
  return rep;
}

// ---------------------------------------------------------------------------
// Weak equivalence orbits.

CharacterObject det_twist(const DomainPtr& dom, i64 s, i64 e) {
  const GroupPtr& U = dom->U;
  const i64 n = U->fiber_n();
  CharacterObject out;
  out.dom = dom;
  out.values.reserve(dom->cls.reps.size());
  for (i64 g : dom->cls.reps)
    out.values.push_back(
        Cyc::root_power(det_exponent(U->decode(g).second, s, e, n), n));
  return out;
}

TwistOrbitData weak_equivalence_orbits(GroupPtr U) {
  TwistOrbitData out;
  const i64 n = U->fiber_n();
  chr::EngineResult eng = heis::irreducible_characters(U);
  out.checks.add("table_certified", eng.certified());
  out.chars = heis::genuine_subset(eng.chars, fiber_gen(U), n);
  const int m = static_cast<int>(out.chars.size());

  // Action table of the n^2 twists on the genuine set.
  bool closed = true;
  std::vector<std::vector<int>> image(m, std::vector<int>(n * n, -1));
  for (int i = 0; i < m; ++i)
    for (i64 s = 0; s < n; ++s)
      for (i64 e = 0; e < n; ++e) {
        CharacterObject tw =
            chr::char_mul(out.chars[i], det_twist(out.chars[i].dom, s, e));
        for (int j = 0; j < m; ++j)
          if (chr::char_equal(tw, out.chars[j])) {
            image[i][s * n + e] = j;
            break;
          }
        if (image[i][s * n + e] < 0) closed = false;
      }
  out.checks.add("twist_action_closed", closed);
  if (!closed) return out;

  std::vector<int> orbit_of(m, -1);
  bool orbstab = true;
  for (int i = 0; i < m; ++i) {
    if (orbit_of[i] >= 0) continue;
    std::vector<int> orbit = {i};
    orbit_of[i] = static_cast<int>(out.orbits.size());
    for (size_t head = 0; head < orbit.size(); ++head)
      for (i64 a = 0; a < n * n; ++a) {
        int j = image[orbit[head]][a];
        if (orbit_of[j] < 0) {
          orbit_of[j] = orbit_of[i];
          orbit.push_back(j);
        }
      }
    for (int x : orbit) {
      i64 stab = 0;
      for (i64 a = 0; a < n * n; ++a)
        if (image[x][a] == x) ++stab;
      if (static_cast<i64>(orbit.size()) * stab != n * n) orbstab = false;
    }
    out.orbits.push_back(std::move(orbit));
  }
  out.checks.add("orbit_stabilizer", orbstab,
                 std::to_string(out.orbits.size()) + " orbits on " +
                     std::to_string(m) + " genuine irreducibles");
  return out;
}

}  // namespace covrep::mtp
