#include "covrep/finab.hpp"

#include <algorithm>
#include <map>

#include "covrep/error.hpp"

namespace covrep::finab {

using zmat::umod;

FinAbGroup::FinAbGroup(std::vector<i64> invariants) : inv_(std::move(invariants)) {
  for (size_t i = 0; i < inv_.size(); ++i) {
    if (inv_[i] < 1) fail(ErrorKind::Validation, "invariant d_i must be positive");
    if (i + 1 < inv_.size() && inv_[i + 1] % inv_[i] != 0)
      fail(ErrorKind::Validation, "invariants must form a divisor chain d_i | d_{i+1}");
  }
}

i64 FinAbGroup::order() const {
  i64 n = 1;
  for (i64 d : inv_) n *= d;
  return n;
}

i64 FinAbGroup::exponent() const { return inv_.empty() ? 1 : inv_.back(); }

Vec FinAbGroup::reduce(Vec v) const {
  if (v.size() != inv_.size()) fail(ErrorKind::DomainMismatch, "vector rank mismatch");
  for (size_t i = 0; i < v.size(); ++i) v[i] = umod(v[i], inv_[i]);
  return v;
}

Vec FinAbGroup::add(const Vec& a, const Vec& b) const {
  Vec r(inv_.size());
  for (size_t i = 0; i < inv_.size(); ++i) r[i] = umod(a[i] + b[i], inv_[i]);
  return r;
}

Vec FinAbGroup::neg(const Vec& a) const {
  Vec r(inv_.size());
  for (size_t i = 0; i < inv_.size(); ++i) r[i] = umod(-a[i], inv_[i]);
  return r;
}

Vec FinAbGroup::smul(i64 k, const Vec& a) const {
  Vec r(inv_.size());
  for (size_t i = 0; i < inv_.size(); ++i) r[i] = umod(k * a[i], inv_[i]);
  return r;
}

std::vector<Vec> FinAbGroup::elements() const {
  std::vector<Vec> out;
  Vec cur = zero();
  while (true) {
    out.push_back(cur);
    size_t i = inv_.size();
    while (i > 0) {
      --i;
      if (++cur[i] < inv_[i]) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (inv_.empty()) return out;
  }
}

namespace {

zmat::Mat lattice_basis(const FinAbGroup& g, const std::vector<Vec>& gens) {
  zmat::Mat rows;
  for (const auto& v : gens) {
    if (v.size() != g.rank()) fail(ErrorKind::DomainMismatch, "generator rank mismatch");
    rows.push_back(v);
  }
  for (size_t i = 0; i < g.rank(); ++i) {
    zmat::Row d(g.rank(), 0);
    d[i] = g.invariants()[i];
    rows.push_back(d);
  }
  zmat::Mat h = zmat::hnf(std::move(rows));
  if (h.size() != g.rank())
    fail(ErrorKind::Engine, "subgroup lattice lost full rank");
  return h;
}

} // namespace

SubgroupHandle::SubgroupHandle(FinAbGroup parent, const std::vector<Vec>& generators)
    : parent_(std::move(parent)), basis_(lattice_basis(parent_, generators)) {}

SubgroupHandle SubgroupHandle::full(const FinAbGroup& g) {
  std::vector<Vec> gens;
  for (size_t i = 0; i < g.rank(); ++i) {
    Vec e(g.rank(), 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return SubgroupHandle(g, gens);
}

SubgroupHandle SubgroupHandle::trivial(const FinAbGroup& g) {
  return SubgroupHandle(g, {});
}

i64 SubgroupHandle::order() const { return parent_.order() / index(); }

i64 SubgroupHandle::index() const { return zmat::diag_product(basis_); }

bool SubgroupHandle::contains(const Vec& v) const {
  // Back-substitute against the upper-triangular basis.  Reduction first is
  // harmless: the lattice contains D * Z^k.
  Vec r = parent_.reduce(v);
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i] % basis_[i][i] != 0) return false;
    i64 q = r[i] / basis_[i][i];
    for (size_t k = i; k < r.size(); ++k) r[k] -= q * basis_[i][k];
  }
  // Remainder must vanish mod the ambient moduli (it does by construction:
  // D rows are in the lattice, and we reduced exactly).
  for (size_t k = 0; k < r.size(); ++k)
    if (r[k] != 0) return false;
  return true;
}

bool SubgroupHandle::contains_subgroup(const SubgroupHandle& other) const {
  if (parent_ != other.parent_) fail(ErrorKind::DomainMismatch, "subgroups of different parents");
  for (const auto& row : other.basis_)
    if (!contains(parent_.reduce(row))) return false;
  return true;
}

std::vector<Vec> SubgroupHandle::elements() const {
  std::vector<i64> counts(parent_.rank());
  for (size_t i = 0; i < parent_.rank(); ++i)
    counts[i] = parent_.invariants()[i] / basis_[i][i];
  std::vector<Vec> out;
  std::vector<i64> t(parent_.rank(), 0);
  while (true) {
    Vec v = parent_.zero();
    for (size_t i = 0; i < t.size(); ++i)
      if (t[i]) v = parent_.add(v, parent_.smul(t[i], parent_.reduce(basis_[i])));
    out.push_back(v);
    size_t i = t.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++t[i] < counts[i]) {
        done = false;
        break;
      }
      t[i] = 0;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupHandle SubgroupHandle::join(const SubgroupHandle& other) const {
  if (parent_ != other.parent_) fail(ErrorKind::DomainMismatch, "subgroups of different parents");
  std::vector<Vec> gens;
  for (const auto& r : basis_) gens.push_back(parent_.reduce(r));
  for (const auto& r : other.basis_) gens.push_back(parent_.reduce(r));
  return SubgroupHandle(parent_, gens);
}

SubgroupHandle SubgroupHandle::intersect(const SubgroupHandle& other) const {
  if (parent_ != other.parent_) fail(ErrorKind::DomainMismatch, "subgroups of different parents");
  const size_t k = parent_.rank();
  zmat::Mat stacked;
  for (const auto& r : basis_) stacked.push_back(r);
  for (const auto& r : other.basis_) {
    zmat::Row neg(k);
    for (size_t i = 0; i < k; ++i) neg[i] = -r[i];
    stacked.push_back(neg);
  }
  zmat::Mat ker = zmat::left_kernel(stacked);
  std::vector<Vec> gens;
  for (const auto& u : ker) {
    Vec v(k, 0);
    for (size_t i = 0; i < basis_.size(); ++i)
      for (size_t j = 0; j < k; ++j) v[j] += u[i] * basis_[i][j];
    gens.push_back(parent_.reduce(v));
  }
  return SubgroupHandle(parent_, gens);
}

AbCharacter::AbCharacter(SubgroupHandle domain, Vec parent_exponents)
    : domain_(std::move(domain)), exps_(std::move(parent_exponents)) {
  const auto& g = domain_.parent();
  if (exps_.size() != g.rank())
    fail(ErrorKind::DomainMismatch, "character exponent rank mismatch");
  for (size_t i = 0; i < exps_.size(); ++i) exps_[i] = umod(exps_[i], g.invariants()[i]);
}

AbCharacter AbCharacter::trivial(const SubgroupHandle& domain) {
  return AbCharacter(domain, Vec(domain.parent().rank(), 0));
}

i64 AbCharacter::zeta_order() const { return domain_.parent().exponent(); }

i64 AbCharacter::value_exp(const Vec& v) const {
  if (!domain_.contains(v))
    fail(ErrorKind::DomainMismatch, "character evaluated outside its domain");
  const auto& g = domain_.parent();
  i64 m = g.exponent();
  i64 acc = 0;
  for (size_t i = 0; i < exps_.size(); ++i)
    acc = umod(acc + exps_[i] * umod(v[i], g.invariants()[i]) % m * (m / g.invariants()[i]), m);
  return acc;
}

AbCharacter AbCharacter::restrict_to(const SubgroupHandle& smaller) const {
  if (!domain_.contains_subgroup(smaller))
    fail(ErrorKind::DomainMismatch, "restriction target is not contained in the domain");
  return AbCharacter(smaller, exps_);
}

AbCharacter AbCharacter::inverse() const {
  const auto& g = domain_.parent();
  Vec e(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i) e[i] = umod(-exps_[i], g.invariants()[i]);
  return AbCharacter(domain_, e);
}

AbCharacter AbCharacter::times(const AbCharacter& other) const {
  if (domain_ != other.domain_)
    fail(ErrorKind::DomainMismatch, "pointwise product requires equal domains");
  const auto& g = domain_.parent();
  Vec e(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i)
    e[i] = umod(exps_[i] + other.exps_[i], g.invariants()[i]);
  return AbCharacter(domain_, e);
}

bool AbCharacter::equals(const AbCharacter& other) const {
  if (domain_ != other.domain_) return false;
  for (const auto& row : domain_.basis()) {
    Vec v = domain_.parent().reduce(row);
    if (value_exp(v) != other.value_exp(v)) return false;
  }
  return true;
}

i64 subgroup_index(const FinAbGroup& g, const SubgroupHandle& h) {
  if (h.parent() != g)
    fail(ErrorKind::DomainMismatch, "subgroup does not live in the given parent");
  return h.index();
}

namespace {

// Signature of a character on a subgroup: its values on the canonical basis.
Vec char_signature(const AbCharacter& chi, const SubgroupHandle& on) {
  Vec sig;
  for (const auto& row : on.basis()) sig.push_back(chi.value_exp(on.parent().reduce(row)));
  return sig;
}

// All distinct characters of `big` restricting to psi on its subgroup
// psi.domain(), ordered by signature.
std::vector<AbCharacter> extensions_within(const SubgroupHandle& big, const AbCharacter& psi) {
  const FinAbGroup& g = big.parent();
  if (!big.contains_subgroup(psi.domain()))
    fail(ErrorKind::DomainMismatch, "extension target does not contain the character domain");
  if (g.order() > 2000000) fail(ErrorKind::SizeCap, "character extension search too large");
  std::map<Vec, AbCharacter> found;
  Vec e(g.rank(), 0);
  bool more = !e.empty() || true;
  while (more) {
    AbCharacter cand(big, e);
    if (cand.restrict_to(psi.domain()).equals(psi)) {
      Vec sig = char_signature(cand, big);
      found.emplace(std::move(sig), cand);
    }
    size_t i = e.size();
    more = false;
    while (i > 0) {
      --i;
      if (++e[i] < g.invariants()[i]) {
        more = true;
        break;
      }
      e[i] = 0;
    }
  }
  std::vector<AbCharacter> out;
  for (auto& kv : found) out.push_back(kv.second);
  return out;
}

} // namespace

std::vector<AbCharacter> extend_character(const FinAbGroup& g, const SubgroupHandle& h,
                                          const AbCharacter& psi) {
  if (h.parent() != g) fail(ErrorKind::DomainMismatch, "subgroup lives in a different parent");
  if (psi.domain() != h) fail(ErrorKind::DomainMismatch, "character domain is not the given subgroup");
  auto out = extensions_within(SubgroupHandle::full(g), psi);
  if ((i64)out.size() != h.index())
    fail(ErrorKind::Engine, "extension count differs from [G:H]");
  return out;
}

bool consistent(const AbCharacter& chi1, const AbCharacter& chi2) {
  if (chi1.domain().parent() != chi2.domain().parent())
    fail(ErrorKind::DomainMismatch, "characters live in different parents");
  SubgroupHandle meet = chi1.domain().intersect(chi2.domain());
  for (const auto& row : meet.basis()) {
    Vec v = meet.parent().reduce(row);
    if (chi1.value_exp(v) != chi2.value_exp(v)) return false;
  }
  return true;
}

AbCharacter common_extension(const AbCharacter& chi1, const AbCharacter& chi2) {
  if (!consistent(chi1, chi2))
    fail(ErrorKind::Precondition, "common extension requires consistent characters");
  const FinAbGroup& g = chi1.domain().parent();
  SubgroupHandle prod = chi1.domain().join(chi2.domain());
  // Search the parent dual for a character matching both restrictions; the
  // first hit restricted to the product is the common extension.
  Vec e(g.rank(), 0);
  while (true) {
    AbCharacter cand(SubgroupHandle::full(g), e);
    if (cand.restrict_to(chi1.domain()).equals(chi1) &&
        cand.restrict_to(chi2.domain()).equals(chi2))
      return cand.restrict_to(prod);
    size_t i = e.size();
    bool more = false;
    while (i > 0) {
      --i;
      if (++e[i] < g.invariants()[i]) {
        more = true;
        break;
      }
      e[i] = 0;
    }
    if (!more) break;
  }
  fail(ErrorKind::Engine, "consistent characters admit no common extension");
}

DiamondResult diamond_check(const FinAbGroup& d, const SubgroupHandle& a1,
                            const SubgroupHandle& a2, const SubgroupHandle& b1,
                            const SubgroupHandle& b2, const AbCharacter& psi2,
                            const AbCharacter& chi2) {
  const SubgroupHandle full = SubgroupHandle::full(d);
  auto expect = [&](bool ok, const char* identity) {
    if (!ok) fail(ErrorKind::Precondition, std::string("diamond hypothesis failed: ") + identity);
  };
  expect(a1.parent() == d && a2.parent() == d && b1.parent() == d && b2.parent() == d,
         "subgroups of D");
  expect(a1.contains_subgroup(a2), "A2 <= A1");
  expect(b1.contains_subgroup(b2), "B2 <= B1");
  expect(a1.join(b2) == full, "D = A1 B2");
  expect(a2.join(b1) == full, "D = A2 B1");
  expect(a1.intersect(b2) == a2.intersect(b1), "A1 cap B2 = A2 cap B1");
  expect(psi2.domain() == a2, "psi2 defined on A2");
  expect(chi2.domain() == b2, "chi2 defined on B2");
  expect(consistent(psi2, chi2), "psi2 consistent with chi2");

  auto x = extensions_within(a1, psi2);
  auto y = extensions_within(b1, chi2);

  DiamondResult res;
  AbCharacter glued = common_extension(psi2, chi2);
  res.expected = (i64)extensions_within(full, glued).size();
  std::vector<size_t> hits_x(x.size(), 0), hits_y(y.size(), 0);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j)
      if (consistent(x[i], y[j])) {
        res.z.emplace_back(x[i], y[j]);
        ++hits_x[i];
        ++hits_y[j];
      }
  res.graph_of_bijection = true;
  for (size_t c : hits_x)
    if (c != 1) res.graph_of_bijection = false;
  for (size_t c : hits_y)
    if (c != 1) res.graph_of_bijection = false;
  return res;
}

nlohmann::ordered_json to_json(const FinAbGroup& g) {
  return {{"invariants", g.invariants()}};
}

nlohmann::ordered_json to_json(const SubgroupHandle& h) {
  nlohmann::ordered_json j = to_json(h.parent());
  std::vector<Vec> gens;
  for (const auto& row : h.basis()) gens.push_back(h.parent().reduce(row));
  j["generators"] = gens;
  return j;
}

nlohmann::ordered_json to_json(const AbCharacter& chi) {
  nlohmann::ordered_json j = to_json(chi.domain());
  j["char"] = chi.parent_exponents();
  return j;
}

FinAbGroup group_from_json(const nlohmann::json& j) {
  if (!j.contains("invariants") || !j["invariants"].is_array())
    fail(ErrorKind::Validation, "group JSON requires an \"invariants\" array");
  return FinAbGroup(j["invariants"].get<std::vector<i64>>());
}

SubgroupHandle subgroup_from_json(const nlohmann::json& j) {
  FinAbGroup g = group_from_json(j);
  if (!j.contains("generators") || !j["generators"].is_array())
    fail(ErrorKind::Validation, "subgroup JSON requires a \"generators\" array");
  std::vector<Vec> gens;
  for (const auto& row : j["generators"]) gens.push_back(g.reduce(row.get<Vec>()));
  return SubgroupHandle(g, gens);
}

AbCharacter character_from_json(const nlohmann::json& j) {
  SubgroupHandle h = subgroup_from_json(j);
  if (!j.contains("char") || !j["char"].is_array())
    fail(ErrorKind::Validation, "character JSON requires a \"char\" array");
  return AbCharacter(h, j["char"].get<Vec>());
}

} // namespace covrep::finab
