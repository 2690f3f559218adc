#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "covrep/cover.hpp"
#include "covrep/zmat.hpp"

// Concrete finite groups: either a central-extension model built from a
// torus cocycle form (elements (t, x) with t in Z/n, x in (Z/n)^dims) or an
// explicit multiplication table.  Elements are integer codes.

namespace covrep::grp {

using zmat::i64;
using Vec = std::vector<i64>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  // Central extension of (Z/n)^{2r} by mu_n with multiplication
  // (t1,x1)(t2,x2) = (t1 + t2 + x1^T C x2, x1 + x2).  cross_blocks=false
  // zeroes the form between distinct beta-blocks (the product-cover model).
  static GroupPtr from_cover(const cover::CoverSpec& spec, bool cross_blocks);
  // Explicit table; validated (identity, inverses, associativity up to cap).
  static GroupPtr from_table(const std::vector<std::vector<i64>>& table,
                             i64 max_ops = 20'000'000);

  i64 order() const { return order_; }
  i64 id() const { return id_; }
  i64 mul(i64 a, i64 b) const;
  i64 inv(i64 a) const;
  i64 pow(i64 a, i64 k) const;
  i64 conj_elt(i64 g, i64 x) const;    // g x g^{-1}
  i64 commutator(i64 a, i64 b) const;  // a^{-1} b^{-1} a b
  i64 element_order(i64 a) const;
  i64 exponent() const;
  const std::vector<i64>& generators() const { return gens_; }

  bool is_cover_model() const { return is_cover_; }
  const cover::CoverSpec& spec() const;
  bool cross_blocks() const { return cross_blocks_; }
  i64 fiber_n() const;                       // n
  i64 dims() const;                          // 2r
  i64 encode(i64 t, const Vec& x) const;
  std::pair<i64, Vec> decode(i64 code) const;

 private:
  FiniteGroup() = default;
  i64 order_ = 1;
  i64 id_ = 0;
  std::vector<i64> gens_;
  mutable i64 exponent_ = 0;
  // cover model
  bool is_cover_ = false;
  bool cross_blocks_ = true;
  std::optional<cover::CoverSpec> spec_;
  i64 n_ = 1;
  i64 dims_ = 0;
  i64 nbase_ = 1;  // n^dims
  zmat::Mat form_;
  // table model
  std::vector<int32_t> table_;
  std::vector<int32_t> invtab_;
};

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated(GroupPtr U, std::vector<i64> gens);
  // Elements must already be closed under multiplication (verified).
  static Subgroup from_elements(GroupPtr U, std::vector<i64> elems);
  // Caller guarantees closure (e.g. a radical or preimage); no O(k^2) check.
  static Subgroup from_elements_trusted(GroupPtr U, std::vector<i64> elems,
                                        std::vector<i64> gens);

  const GroupPtr& universe() const { return U_; }
  const std::vector<i64>& elements() const { return elems_; }
  const std::vector<i64>& gens() const { return gens_; }
  i64 order() const { return static_cast<i64>(elems_.size()); }
  bool contains(i64 code) const { return set_.count(code) != 0; }
  bool contains_all(const Subgroup& o) const;
  bool same_as(const Subgroup& o) const;

  bool is_abelian() const;
  bool is_normal() const;  // in the whole universe
  Subgroup center() const;
  // Elements of *this commuting with every element of `of`.
  Subgroup centralizer_of(const Subgroup& of) const;
  Subgroup join(const Subgroup& o) const;
  Subgroup intersect(const Subgroup& o) const;
  Subgroup conjugate_by(i64 g) const;

 private:
  GroupPtr U_;
  std::vector<i64> elems_;  // sorted
  std::unordered_set<i64> set_;
  std::vector<i64> gens_;
};

Subgroup whole_group(GroupPtr U);
Subgroup fiber_subgroup(GroupPtr U);  // A = {(t, 0)}, cover models only
// Preimage in the cover model of a subgroup of the base (fiber included).
Subgroup cover_preimage(GroupPtr U, const finab::SubgroupHandle& base_sub);
Subgroup group_center(GroupPtr U);

// Conjugacy data for a subgroup (or the whole group) acting on itself.
struct ClassData {
  std::vector<i64> elems;  // domain, sorted
  std::unordered_map<i64, int32_t> pos;
  std::vector<int32_t> class_of;  // by position in elems
  std::vector<i64> reps;          // class -> representative (min code)
  std::vector<i64> sizes;
  size_t num_classes() const { return reps.size(); }
  int32_t class_index(i64 code) const;
};

ClassData make_class_data(const FiniteGroup& U, const std::vector<i64>& elems,
                          const std::vector<i64>& gens);

// Linear characters of a subgroup A, enumerated through a polycyclic chain.
// Exponents are taken mod the universe exponent E; the value at g is
// zeta_E^{exp}.  If a prefix dual is supplied, the chain extends the prefix
// chain; the prefix subgroup must be central in A and contain [A, A], which
// is what makes constrained extension sound for class-2 groups.
struct LinChar {
  std::vector<i64> t;  // exponent per chain generator, mod E
};

class LinearDual {
 public:
  LinearDual(GroupPtr U, Subgroup A);
  LinearDual(GroupPtr U, Subgroup A, std::shared_ptr<const LinearDual> prefix);

  const Subgroup& domain() const { return A_; }
  i64 value_mod() const { return emod_; }
  const std::vector<i64>& chain() const { return chain_; }
  size_t prefix_len() const { return prefix_len_; }

  // All linear characters; requires A abelian.
  std::vector<LinChar> all_characters() const;
  // Characters whose values on the prefix chain are prescribed; empty iff
  // the prescription kills no commutator relator (then no extension exists).
  std::vector<LinChar> characters_extending(const LinChar& on_prefix) const;

  i64 value_exp(const LinChar& c, i64 code) const;
  bool is_trivial_on(const LinChar& c, const Subgroup& S) const;
  // Chain factorization of a domain element (fails outside the domain).
  const std::vector<int32_t>& factor_of(i64 code) const { return factor(code); }

 private:
  void build_chain();
  void enumerate(std::vector<i64>& t, size_t i, std::vector<LinChar>& out) const;
  const std::vector<int32_t>& factor(i64 code) const;

  GroupPtr U_;
  Subgroup A_;
  std::shared_ptr<const LinearDual> prefix_;
  size_t prefix_len_ = 0;
  i64 emod_ = 1;
  std::vector<i64> chain_;      // generators
  std::vector<i64> rel_order_;  // d_i
  std::unordered_map<i64, std::vector<int32_t>> factor_;
};

} // namespace covrep::grp
