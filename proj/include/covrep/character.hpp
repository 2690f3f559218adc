#pragma once

#include <memory>
#include <vector>

#include "covrep/cyclotomic.hpp"
#include "covrep/group.hpp"

// Exact class functions on the finite groups of group.hpp, the monomial
// engine producing complete irreducible character lists for class-<=2
// groups, and the standard operations (induction, restriction, conjugation,
// twisting, inner products), all in cyclotomic integer arithmetic.

namespace covrep::chr {

using cyc::Cyc;
using cyc::Rat;
using grp::GroupPtr;
using grp::Subgroup;
using zmat::i64;

struct Domain {
  GroupPtr U;
  Subgroup H;  // the carrier (possibly the whole group)
  bool full = false;
  grp::ClassData cls;
};
using DomainPtr = std::shared_ptr<const Domain>;

DomainPtr full_domain(GroupPtr U);
DomainPtr subgroup_domain(GroupPtr U, Subgroup H);

struct CharacterObject {
  DomainPtr dom;
  std::vector<Cyc> values;  // one per conjugacy class of the carrier

  const Cyc& value_of(i64 code) const;
  i64 degree() const;  // value at the identity, a rational integer
};

CharacterObject trivial_character(DomainPtr dom);
CharacterObject linear_character(DomainPtr dom, const grp::LinearDual& dual,
                                 const grp::LinChar& c);

CharacterObject char_add(const CharacterObject& a, const CharacterObject& b);
CharacterObject char_scale(const CharacterObject& a, i64 k);
CharacterObject char_mul(const CharacterObject& a, const CharacterObject& b);
CharacterObject char_conjugate_dual(const CharacterObject& a);  // complex conj
bool char_equal(const CharacterObject& a, const CharacterObject& b);

// Exact Hermitian inner product (1/|H|) sum |c| a(c) conj(b(c)).
Rat inner_product(const CharacterObject& a, const CharacterObject& b);
// Same, asserting a non-negative integer result (multiplicity).
i64 multiplicity(const CharacterObject& a, const CharacterObject& b);
bool is_irreducible(const CharacterObject& a);

CharacterObject restrict_character(const CharacterObject& a, DomainPtr sub);
// Induction along H <= B, H normal in B with commutators [B,H] central in
// the universe (the class-<=2 situation); exact closed form.
CharacterObject induce_character(const CharacterObject& a, DomainPtr big);
// chi^g with (chi^g)(m) = chi(g m g^{-1}); g must normalize the carrier.
CharacterObject conjugate_character(const CharacterObject& a, i64 g);

// Exponent k with a(z) = deg(a) * zeta_E^k for a central element z.
i64 central_exponent(const CharacterObject& a, i64 z);

struct EngineResult {
  std::vector<CharacterObject> chars;
  i64 group_order = 0;
  i64 num_classes = 0;
  i64 sum_deg_sq = 0;
  bool sum_deg_sq_ok = false;
  bool count_ok = false;
  bool all_irreducible = false;
  bool certified() const { return sum_deg_sq_ok && count_ok && all_irreducible; }
};

// Complete irreducible character list for a group with [G,G] <= Z(G),
// constructed monomially and certified by sum of squared degrees, class
// count, and per-character irreducibility.
EngineResult irreducible_characters(GroupPtr U);

// Irreducibles whose restriction to the subgroup A is the faithful power
// eps^k (k coprime to |A|, value exponent k on the chosen generator).
std::vector<CharacterObject> genuine_characters(const EngineResult& eng,
                                                const Subgroup& fiber);

} // namespace covrep::chr
