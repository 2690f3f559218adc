#include "covrep/group.hpp"

#include <algorithm>
#include <deque>

#include "covrep/error.hpp"

namespace covrep::grp {

using zmat::umod;

namespace {

i64 apply_form(const zmat::Mat& c, const Vec& x, const Vec& y, i64 n) {
  i64 acc = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      if (c[i][j] != 0 && y[j] != 0) acc += x[i] % n * (c[i][j] * y[j] % n);
  }
  return umod(acc, n);
}

} // namespace

GroupPtr FiniteGroup::from_cover(const cover::CoverSpec& spec, bool cross_blocks) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->is_cover_ = true;
  g->cross_blocks_ = cross_blocks;
  g->spec_ = spec;
  g->n_ = spec.n();
  g->dims_ = 2 * spec.r();
  g->nbase_ = 1;
  for (i64 i = 0; i < g->dims_; ++i) g->nbase_ *= g->n_;
  g->order_ = g->nbase_ * g->n_;
  g->form_ = cover::cocycle_form(spec, cross_blocks);
  g->id_ = 0;
  if (g->n_ > 1) {
    g->gens_.push_back(g->encode(1, Vec(g->dims_, 0)));
    for (i64 i = 0; i < g->dims_; ++i) {
      Vec e(g->dims_, 0);
      e[i] = 1;
      g->gens_.push_back(g->encode(0, e));
    }
  }
  return g;
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<i64>>& table,
                                 i64 max_ops) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  i64 n = static_cast<i64>(table.size());
  if (n == 0) fail(ErrorKind::Validation, "empty multiplication table");
  g->order_ = n;
  g->table_.assign(static_cast<size_t>(n * n), 0);
  for (i64 a = 0; a < n; ++a) {
    if (static_cast<i64>(table[a].size()) != n)
      fail(ErrorKind::Validation, "multiplication table is not square");
    for (i64 b = 0; b < n; ++b) {
      i64 v = table[a][b];
      if (v < 0 || v >= n)
        fail(ErrorKind::Validation, "table entry out of range");
      g->table_[static_cast<size_t>(a * n + b)] = static_cast<int32_t>(v);
    }
  }
  // identity
  i64 id = -1;
  for (i64 e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (i64 a = 0; a < n && ok; ++a)
      ok = table[e][a] == a && table[a][e] == a;
    if (ok) id = e;
  }
  if (id < 0) fail(ErrorKind::Validation, "table has no identity element");
  g->id_ = id;
  // inverses
  g->invtab_.assign(static_cast<size_t>(n), -1);
  for (i64 a = 0; a < n; ++a) {
    for (i64 b = 0; b < n; ++b)
      if (table[a][b] == id && table[b][a] == id) {
        g->invtab_[static_cast<size_t>(a)] = static_cast<int32_t>(b);
        break;
      }
    if (g->invtab_[static_cast<size_t>(a)] < 0)
      fail(ErrorKind::Validation, "table element has no inverse");
  }
  if (n * n * n <= max_ops) {
    for (i64 a = 0; a < n; ++a)
      for (i64 b = 0; b < n; ++b)
        for (i64 c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            fail(ErrorKind::Validation, "multiplication table not associative");
  }
  // small generating set, greedily
  std::unordered_set<i64> span = {id};
  for (i64 a = 0; a < n; ++a) {
    if (span.count(a)) continue;
    g->gens_.push_back(a);
    std::deque<i64> work(span.begin(), span.end());
    span.insert(a);
    work.push_back(a);
    while (!work.empty()) {
      i64 x = work.front();
      work.pop_front();
      for (i64 y : g->gens_) {
        i64 z = table[x][y];
        if (span.insert(z).second) work.push_back(z);
        z = table[y][x];
        if (span.insert(z).second) work.push_back(z);
      }
    }
  }
  return g;
}

i64 FiniteGroup::mul(i64 a, i64 b) const {
  if (!is_cover_) return table_[static_cast<size_t>(a * order_ + b)];
  auto [ta, xa] = decode(a);
  auto [tb, xb] = decode(b);
  i64 t = umod(ta + tb + apply_form(form_, xa, xb, n_), n_);
  Vec x(dims_);
  for (i64 i = 0; i < dims_; ++i) x[i] = umod(xa[i] + xb[i], n_);
  return encode(t, x);
}

i64 FiniteGroup::inv(i64 a) const {
  if (!is_cover_) return invtab_[static_cast<size_t>(a)];
  auto [t, x] = decode(a);
  Vec y(dims_);
  for (i64 i = 0; i < dims_; ++i) y[i] = umod(-x[i], n_);
  i64 s = umod(-t + apply_form(form_, x, x, n_), n_);
  return encode(s, y);
}

i64 FiniteGroup::pow(i64 a, i64 k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  i64 acc = id_, base = a;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

i64 FiniteGroup::conj_elt(i64 g, i64 x) const { return mul(mul(g, x), inv(g)); }

i64 FiniteGroup::commutator(i64 a, i64 b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

i64 FiniteGroup::element_order(i64 a) const {
  i64 x = a, d = 1;
  while (x != id_) {
    x = mul(x, a);
    ++d;
    if (d > order_) fail(ErrorKind::Engine, "element order exceeds group order");
  }
  return d;
}

i64 FiniteGroup::exponent() const {
  if (exponent_ == 0) {
    i64 e = 1;
    for (i64 a = 0; a < order_; ++a) e = zmat::lcm_ll(e, element_order(a));
    exponent_ = e;
  }
  return exponent_;
}

const cover::CoverSpec& FiniteGroup::spec() const {
  if (!spec_) fail(ErrorKind::Precondition, "group is not a cover model");
  return *spec_;
}

i64 FiniteGroup::fiber_n() const {
  if (!is_cover_) fail(ErrorKind::Precondition, "group is not a cover model");
  return n_;
}

i64 FiniteGroup::dims() const {
  if (!is_cover_) fail(ErrorKind::Precondition, "group is not a cover model");
  return dims_;
}

i64 FiniteGroup::encode(i64 t, const Vec& x) const {
  i64 code = 0;
  for (i64 i = dims_ - 1; i >= 0; --i) code = code * n_ + umod(x[i], n_);
  return umod(t, n_) * nbase_ + code;
}

std::pair<i64, Vec> FiniteGroup::decode(i64 code) const {
  i64 t = code / nbase_;
  i64 rest = code % nbase_;
  Vec x(dims_);
  for (i64 i = 0; i < dims_; ++i) {
    x[i] = rest % n_;
    rest /= n_;
  }
  return {t, x};
}

Subgroup Subgroup::generated(GroupPtr U, std::vector<i64> gens) {
  Subgroup s;
  s.U_ = std::move(U);
  s.gens_ = gens;
  s.set_.insert(s.U_->id());
  std::deque<i64> work = {s.U_->id()};
  while (!work.empty()) {
    i64 x = work.front();
    work.pop_front();
    for (i64 g : gens) {
      i64 y = s.U_->mul(x, g);
      if (s.set_.insert(y).second) work.push_back(y);
    }
  }
  s.elems_.assign(s.set_.begin(), s.set_.end());
  std::sort(s.elems_.begin(), s.elems_.end());
  return s;
}

Subgroup Subgroup::from_elements(GroupPtr U, std::vector<i64> elems) {
  Subgroup s;
  s.U_ = std::move(U);
  s.set_.insert(elems.begin(), elems.end());
  s.elems_.assign(s.set_.begin(), s.set_.end());
  std::sort(s.elems_.begin(), s.elems_.end());
  if (!s.set_.count(s.U_->id()))
    fail(ErrorKind::Precondition, "element set lacks the identity");
  for (i64 a : s.elems_)
    for (i64 b : s.elems_)
      if (!s.set_.count(s.U_->mul(a, b)))
        fail(ErrorKind::Precondition, "element set is not closed");
  s.gens_ = s.elems_;
  return s;
}

Subgroup Subgroup::from_elements_trusted(GroupPtr U, std::vector<i64> elems,
                                         std::vector<i64> gens) {
  Subgroup s;
  s.U_ = std::move(U);
  s.set_.insert(elems.begin(), elems.end());
  s.elems_.assign(s.set_.begin(), s.set_.end());
  std::sort(s.elems_.begin(), s.elems_.end());
  s.gens_ = std::move(gens);
  return s;
}

bool Subgroup::contains_all(const Subgroup& o) const {
  for (i64 x : o.elems_)
    if (!set_.count(x)) return false;
  return true;
}

bool Subgroup::same_as(const Subgroup& o) const { return elems_ == o.elems_; }

bool Subgroup::is_abelian() const {
  for (i64 a : gens_)
    for (i64 b : gens_)
      if (U_->mul(a, b) != U_->mul(b, a)) return false;
  return true;
}

bool Subgroup::is_normal() const {
  for (i64 g : U_->generators())
    for (i64 s : gens_)
      if (!set_.count(U_->conj_elt(g, s))) return false;
  return true;
}

Subgroup Subgroup::center() const {
  std::vector<i64> z;
  for (i64 a : elems_) {
    bool central = true;
    for (i64 g : gens_)
      if (U_->mul(a, g) != U_->mul(g, a)) {
        central = false;
        break;
      }
    if (central) z.push_back(a);
  }
  return from_elements(U_, std::move(z));
}

Subgroup Subgroup::centralizer_of(const Subgroup& of) const {
  std::vector<i64> z;
  for (i64 a : elems_) {
    bool ok = true;
    for (i64 g : of.gens_)
      if (U_->mul(a, g) != U_->mul(g, a)) {
        ok = false;
        break;
      }
    if (ok) z.push_back(a);
  }
  return from_elements(U_, std::move(z));
}

Subgroup Subgroup::join(const Subgroup& o) const {
  std::vector<i64> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return generated(U_, std::move(g));
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
  std::vector<i64> both;
  for (i64 x : elems_)
    if (o.contains(x)) both.push_back(x);
  return from_elements(U_, std::move(both));
}

Subgroup Subgroup::conjugate_by(i64 g) const {
  std::vector<i64> out;
  out.reserve(elems_.size());
  for (i64 x : elems_) out.push_back(U_->conj_elt(g, x));
  return from_elements(U_, std::move(out));
}

Subgroup whole_group(GroupPtr U) {
  Subgroup s = Subgroup::generated(U, U->generators());
  if (s.order() != U->order())
    fail(ErrorKind::Engine, "stored generators do not generate the group");
  return s;
}

Subgroup fiber_subgroup(GroupPtr U) {
  i64 n = U->fiber_n();
  Vec zero(U->dims(), 0);
  std::vector<i64> elems;
  for (i64 t = 0; t < n; ++t) elems.push_back(U->encode(t, zero));
  return Subgroup::from_elements(U, std::move(elems));
}

Subgroup cover_preimage(GroupPtr U, const finab::SubgroupHandle& base_sub) {
  i64 n = U->fiber_n();
  std::vector<i64> elems;
  for (const Vec& x : base_sub.elements())
    for (i64 t = 0; t < n; ++t) elems.push_back(U->encode(t, x));
  return Subgroup::from_elements(U, std::move(elems));
}

Subgroup group_center(GroupPtr U) {
  std::vector<i64> z;
  for (i64 a = 0; a < U->order(); ++a) {
    bool central = true;
    for (i64 g : U->generators())
      if (U->mul(a, g) != U->mul(g, a)) {
        central = false;
        break;
      }
    if (central) z.push_back(a);
  }
  return Subgroup::from_elements(U, std::move(z));
}

int32_t ClassData::class_index(i64 code) const {
  auto it = pos.find(code);
  if (it == pos.end())
    fail(ErrorKind::DomainMismatch, "element outside the class-function domain");
  return class_of[static_cast<size_t>(it->second)];
}

ClassData make_class_data(const FiniteGroup& U, const std::vector<i64>& elems,
                          const std::vector<i64>& gens) {
  ClassData cd;
  cd.elems = elems;
  std::sort(cd.elems.begin(), cd.elems.end());
  for (size_t i = 0; i < cd.elems.size(); ++i)
    cd.pos[cd.elems[i]] = static_cast<int32_t>(i);
  cd.class_of.assign(cd.elems.size(), -1);
  for (size_t i = 0; i < cd.elems.size(); ++i) {
    if (cd.class_of[i] >= 0) continue;
    int32_t idx = static_cast<int32_t>(cd.reps.size());
    i64 rep = cd.elems[i];
    // conjugation orbit under the supplied generators
    std::vector<i64> orbit = {rep};
    std::unordered_set<i64> seen = {rep};
    for (size_t k = 0; k < orbit.size(); ++k)
      for (i64 g : gens) {
        i64 y = U.conj_elt(g, orbit[k]);
        if (seen.insert(y).second) orbit.push_back(y);
      }
    for (i64 y : orbit) {
      auto it = cd.pos.find(y);
      if (it == cd.pos.end())
        fail(ErrorKind::Engine, "conjugation leaves the domain; not normal");
      cd.class_of[static_cast<size_t>(it->second)] = idx;
    }
    cd.reps.push_back(rep);
    cd.sizes.push_back(static_cast<i64>(orbit.size()));
  }
  return cd;
}

LinearDual::LinearDual(GroupPtr U, Subgroup A) : U_(std::move(U)), A_(std::move(A)) {
  emod_ = U_->exponent();
  build_chain();
}

LinearDual::LinearDual(GroupPtr U, Subgroup A, std::shared_ptr<const LinearDual> prefix)
    : U_(std::move(U)), A_(std::move(A)), prefix_(std::move(prefix)) {
  emod_ = U_->exponent();
  if (!A_.contains_all(prefix_->A_))
    fail(ErrorKind::Precondition, "prefix subgroup not contained in domain");
  build_chain();
}

void LinearDual::build_chain() {
  std::unordered_set<i64> span;
  if (prefix_) {
    chain_ = prefix_->chain_;
    rel_order_ = prefix_->rel_order_;
    prefix_len_ = chain_.size();
    const std::vector<i64>& pe = prefix_->A_.elements();
    span.insert(pe.begin(), pe.end());
  } else {
    span.insert(U_->id());
  }

  for (i64 cand : A_.elements()) {
    if (static_cast<i64>(span.size()) == A_.order()) break;
    if (span.count(cand)) continue;
    // relative order of cand over the current span
    i64 d = 1, p = cand;
    while (!span.count(p)) {
      p = U_->mul(p, cand);
      ++d;
    }
    chain_.push_back(cand);
    rel_order_.push_back(d);
    std::vector<i64> snapshot(span.begin(), span.end());
    for (i64 e = 1; e < d; ++e) {
      i64 ge = U_->pow(cand, e);
      for (i64 s : snapshot)
        if (!span.insert(U_->mul(ge, s)).second)
          fail(ErrorKind::Engine, "chain cosets overlap; step not polycyclic");
    }
  }
  if (static_cast<i64>(span.size()) != A_.order())
    fail(ErrorKind::Engine, "chain construction did not exhaust the subgroup");

  // Factor every element by peeling chain generators from the top.
  // Precompute inverse powers of each chain generator.
  std::vector<std::vector<i64>> ipow(chain_.size());
  for (size_t i = 0; i < chain_.size(); ++i) {
    ipow[i].resize(static_cast<size_t>(rel_order_[i]));
    for (i64 e = 0; e < rel_order_[i]; ++e) ipow[i][static_cast<size_t>(e)] = U_->pow(chain_[i], -e);
  }
  // membership in the partial spans S_i: rebuild them
  std::vector<std::unordered_set<i64>> spans(chain_.size() + 1);
  spans[0].insert(U_->id());
  for (size_t i = 0; i < chain_.size(); ++i) {
    spans[i + 1] = spans[i];
    std::vector<i64> snapshot(spans[i].begin(), spans[i].end());
    for (i64 e = 1; e < rel_order_[i]; ++e) {
      i64 ge = U_->pow(chain_[i], e);
      for (i64 s : snapshot) spans[i + 1].insert(U_->mul(ge, s));
    }
  }
  if (spans.back().size() != A_.elements().size())
    fail(ErrorKind::Engine, "span reconstruction mismatch");

  factor_.clear();
  for (i64 x : A_.elements()) {
    std::vector<int32_t> f(chain_.size(), 0);
    i64 cur = x;
    for (size_t i = chain_.size(); i-- > 0;) {
      bool found = false;
      for (i64 e = 0; e < rel_order_[i]; ++e) {
        i64 y = U_->mul(ipow[i][static_cast<size_t>(e)], cur);
        if (spans[i].count(y)) {
          f[i] = static_cast<int32_t>(e);
          cur = y;
          found = true;
          break;
        }
      }
      if (!found) fail(ErrorKind::Engine, "factorization failed; chain not polycyclic");
    }
    if (cur != U_->id()) fail(ErrorKind::Engine, "factorization residue nontrivial");
    factor_[x] = std::move(f);
  }
}

const std::vector<int32_t>& LinearDual::factor(i64 code) const {
  auto it = factor_.find(code);
  if (it == factor_.end())
    fail(ErrorKind::DomainMismatch, "element not in the character domain");
  return it->second;
}

i64 LinearDual::value_exp(const LinChar& c, i64 code) const {
  const std::vector<int32_t>& f = factor(code);
  i64 acc = 0;
  for (size_t i = 0; i < chain_.size(); ++i)
    if (f[i] != 0) acc += c.t[i] % emod_ * f[i];
  return umod(acc, emod_);
}

bool LinearDual::is_trivial_on(const LinChar& c, const Subgroup& S) const {
  for (i64 g : S.gens())
    if (value_exp(c, g) != 0) return false;
  return true;
}

void LinearDual::enumerate(std::vector<i64>& t, size_t i,
                           std::vector<LinChar>& out) const {
  if (i == chain_.size()) {
    out.push_back(LinChar{t});
    return;
  }
  i64 d = rel_order_[i];
  if (emod_ % d != 0)
    fail(ErrorKind::Engine, "relative order does not divide the exponent");
  // value forced on g_i^{d}: dot the partial assignment with its word
  i64 gd = U_->pow(chain_[i], d);
  const std::vector<int32_t>& w = factor(gd);
  i64 v = 0;
  for (size_t j = 0; j < i; ++j)
    if (w[j] != 0) v += t[j] * w[j];
  for (size_t j = i; j < chain_.size(); ++j)
    if (w[j] != 0) fail(ErrorKind::Engine, "power word escapes the lower chain");
  v = umod(v, emod_);
  if (v % d != 0) fail(ErrorKind::Engine, "character extension obstruction");
  i64 base = v / d, step = emod_ / d;
  for (i64 k = 0; k < d; ++k) {
    t[i] = umod(base + k * step, emod_);
    enumerate(t, i + 1, out);
  }
  t[i] = 0;
}

std::vector<LinChar> LinearDual::all_characters() const {
  if (!A_.is_abelian())
    fail(ErrorKind::Precondition, "free enumeration requires an abelian domain");
  std::vector<i64> t(chain_.size(), 0);
  std::vector<LinChar> out;
  enumerate(t, 0, out);
  if (static_cast<i64>(out.size()) != A_.order())
    fail(ErrorKind::Engine, "dual size differs from the group order");
  return out;
}

std::vector<LinChar> LinearDual::characters_extending(const LinChar& on_prefix) const {
  if (!prefix_) fail(ErrorKind::Precondition, "no prefix dual attached");
  if (on_prefix.t.size() != prefix_len_)
    fail(ErrorKind::Precondition, "prefix assignment has wrong length");
  // A linear character kills every commutator; with values pinned on the
  // prefix (which contains [A, A]) this is decidable up front.
  for (size_t i = 0; i < chain_.size(); ++i)
    for (size_t j = i + 1; j < chain_.size(); ++j) {
      i64 c = U_->commutator(chain_[i], chain_[j]);
      if (c == U_->id()) continue;
      const std::vector<int32_t>& f = factor(c);
      for (size_t k = prefix_len_; k < chain_.size(); ++k)
        if (f[k] != 0)
          fail(ErrorKind::Precondition,
               "commutators are not confined to the prefix subgroup");
      i64 v = 0;
      for (size_t k = 0; k < prefix_len_; ++k)
        if (f[k] != 0) v += on_prefix.t[k] * f[k];
      if (umod(v, emod_) != 0) return {};
    }
  std::vector<i64> t(chain_.size(), 0);
  for (size_t k = 0; k < prefix_len_; ++k) t[k] = umod(on_prefix.t[k], emod_);
  std::vector<LinChar> out;
  enumerate(t, prefix_len_, out);
  return out;
}

} // namespace covrep::grp
