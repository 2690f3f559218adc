#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covrep/zmat.hpp"

#include <json.hpp>

// Finite abelian groups in elementary-divisor coordinates, their subgroups,
// and their characters.  A group is prod_i Z/d_i with d_1 | d_2 | ... | d_k;
// elements are integer vectors with the i-th coordinate reduced mod d_i.
// A subgroup is handled as an integer lattice L with D*Z^k <= L <= Z^k
// (D = diag(d_i)), stored in Hermite normal form; the HNF is canonical, so
// handle equality is structural equality.

namespace covrep::finab {

using zmat::i64;
using Vec = std::vector<i64>;

class FinAbGroup {
public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<i64> invariants);

  const std::vector<i64>& invariants() const { return inv_; }
  size_t rank() const { return inv_.size(); }
  i64 order() const;
  i64 exponent() const; // last invariant (1 for the trivial group)

  Vec zero() const { return Vec(inv_.size(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec smul(i64 k, const Vec& a) const;

  // All elements in lexicographic order.
  std::vector<Vec> elements() const;

  bool operator==(const FinAbGroup& o) const { return inv_ == o.inv_; }
  bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

private:
  std::vector<i64> inv_;
};

class SubgroupHandle {
public:
  SubgroupHandle() = default;
  // Subgroup generated by the given vectors.
  SubgroupHandle(FinAbGroup parent, const std::vector<Vec>& generators);

  static SubgroupHandle full(const FinAbGroup& g);
  static SubgroupHandle trivial(const FinAbGroup& g);

  const FinAbGroup& parent() const { return parent_; }
  const zmat::Mat& basis() const { return basis_; } // square HNF, rank x rank

  i64 order() const;
  i64 index() const; // [parent : this]
  bool contains(const Vec& v) const;
  bool contains_subgroup(const SubgroupHandle& other) const;
  std::vector<Vec> elements() const; // deterministic order

  SubgroupHandle join(const SubgroupHandle& other) const;      // generated by union
  SubgroupHandle intersect(const SubgroupHandle& other) const;

  bool operator==(const SubgroupHandle& o) const {
    return parent_ == o.parent_ && basis_ == o.basis_;
  }
  bool operator!=(const SubgroupHandle& o) const { return !(*this == o); }

private:
  FinAbGroup parent_;
  zmat::Mat basis_;
};

// Character of a subgroup H <= G, stored as a character of G restricted to H
// (every character of H arises this way).  The exponent vector e gives
// chi(x) = zeta_m^{ sum_i e_i x_i m/d_i }, m = exponent of G.  Equality and
// consistency compare restrictions, not representatives.
class AbCharacter {
public:
  AbCharacter() = default;
  AbCharacter(SubgroupHandle domain, Vec parent_exponents);

  static AbCharacter trivial(const SubgroupHandle& domain);

  const SubgroupHandle& domain() const { return domain_; }
  const Vec& parent_exponents() const { return exps_; }
  i64 zeta_order() const; // m: values are powers of zeta_m

  // Value chi(v) as an exponent of zeta_m; v must lie in the domain.
  i64 value_exp(const Vec& v) const;

  AbCharacter restrict_to(const SubgroupHandle& smaller) const;
  AbCharacter inverse() const;
  // Pointwise product; domains must coincide.
  AbCharacter times(const AbCharacter& other) const;

  bool equals(const AbCharacter& other) const; // same domain, same restriction

private:
  SubgroupHandle domain_;
  Vec exps_; // length = parent rank, entry i reduced mod d_i
};

// [G : H]; error if H is not a subgroup of parent.
i64 subgroup_index(const FinAbGroup& g, const SubgroupHandle& h);

// All extensions of psi (a character of H) to characters of G, in a fixed
// deterministic order.  Their number is [G : H].
std::vector<AbCharacter> extend_character(const FinAbGroup& g,
                                          const SubgroupHandle& h,
                                          const AbCharacter& psi);

// True iff chi1, chi2 agree on the intersection of their domains.
bool consistent(const AbCharacter& chi1, const AbCharacter& chi2);

// Common extension of two consistent characters to the product of their
// domains: (chi1 chi2)(h1 h2) = chi1(h1) chi2(h2).
AbCharacter common_extension(const AbCharacter& chi1, const AbCharacter& chi2);

struct DiamondResult {
  // Pairs (psi1, chi1), psi1 extending psi2 to A1 and chi1 extending chi2 to
  // B1, that are consistent.
  std::vector<std::pair<AbCharacter, AbCharacter>> z;
  i64 expected; // number of extensions of chi2 psi2 to D
  bool graph_of_bijection;
};

// Verifies the extension-diamond statement for subgroups A2 <= A1, B2 <= B1
// of D with D = A1 B2 = A2 B1 and A1 cap B2 = A2 cap B1.  Preconditions are
// checked and named on failure.
DiamondResult diamond_check(const FinAbGroup& d, const SubgroupHandle& a1,
                            const SubgroupHandle& a2, const SubgroupHandle& b1,
                            const SubgroupHandle& b2, const AbCharacter& psi2,
                            const AbCharacter& chi2);

// JSON serialization: {"invariants":[...]}, {"invariants":..,"generators":[[..]]},
// {"invariants":..,"generators":..,"char":[...]} as documented in the README.
nlohmann::ordered_json to_json(const FinAbGroup& g);
nlohmann::ordered_json to_json(const SubgroupHandle& h);
nlohmann::ordered_json to_json(const AbCharacter& chi);
FinAbGroup group_from_json(const nlohmann::json& j);
SubgroupHandle subgroup_from_json(const nlohmann::json& j);
AbCharacter character_from_json(const nlohmann::json& j);

} // namespace covrep::finab
