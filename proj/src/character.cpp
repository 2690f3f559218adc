#include "covrep/character.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "covrep/error.hpp"

namespace covrep::chr {

using grp::LinChar;
using grp::LinearDual;
using grp::Subgroup;
using zmat::umod;

DomainPtr full_domain(GroupPtr U) {
  auto d = std::make_shared<Domain>();
  d->U = U;
  d->H = grp::whole_group(U);
  d->full = true;
  d->cls = grp::make_class_data(*U, d->H.elements(), U->generators());
  return d;
}

DomainPtr subgroup_domain(GroupPtr U, Subgroup H) {
  auto d = std::make_shared<Domain>();
  d->U = U;
  d->H = std::move(H);
  d->full = d->H.order() == U->order();
  d->cls = grp::make_class_data(*U, d->H.elements(), d->H.gens());
  return d;
}

const Cyc& CharacterObject::value_of(i64 code) const {
  return values[static_cast<size_t>(dom->cls.class_index(code))];
}

i64 CharacterObject::degree() const {
  const Cyc& v = value_of(dom->U->id());
  return v.rational_value();
}

CharacterObject trivial_character(DomainPtr dom) {
  CharacterObject c;
  c.dom = dom;
  c.values.assign(dom->cls.num_classes(), Cyc::one(dom->U->exponent()));
  return c;
}

CharacterObject linear_character(DomainPtr dom, const LinearDual& dual,
                                 const LinChar& lc) {
  if (!dual.domain().same_as(dom->H))
    fail(ErrorKind::DomainMismatch, "linear character domain mismatch");
  CharacterObject c;
  c.dom = dom;
  c.values.reserve(dom->cls.num_classes());
  for (i64 rep : dom->cls.reps)
    c.values.push_back(Cyc::root_power(dual.value_exp(lc, rep), dual.value_mod()));
  return c;
}

namespace {
void require_same_domain(const CharacterObject& a, const CharacterObject& b) {
  if (a.dom->U.get() != b.dom->U.get() || !a.dom->H.same_as(b.dom->H))
    fail(ErrorKind::DomainMismatch, "characters live on different domains");
}
} // namespace

CharacterObject char_add(const CharacterObject& a, const CharacterObject& b) {
  require_same_domain(a, b);
  CharacterObject c = a;
  for (size_t i = 0; i < c.values.size(); ++i) c.values[i] += b.values[i];
  return c;
}

CharacterObject char_scale(const CharacterObject& a, i64 k) {
  CharacterObject c = a;
  for (Cyc& v : c.values) v = v * k;
  return c;
}

CharacterObject char_mul(const CharacterObject& a, const CharacterObject& b) {
  require_same_domain(a, b);
  CharacterObject c = a;
  for (size_t i = 0; i < c.values.size(); ++i) c.values[i] *= b.values[i];
  return c;
}

CharacterObject char_conjugate_dual(const CharacterObject& a) {
  CharacterObject c = a;
  for (Cyc& v : c.values) v = v.conj();
  return c;
}

bool char_equal(const CharacterObject& a, const CharacterObject& b) {
  require_same_domain(a, b);
  for (size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] != b.values[i]) return false;
  return true;
}

Rat inner_product(const CharacterObject& a, const CharacterObject& b) {
  require_same_domain(a, b);
  i64 e = a.dom->U->exponent();
  Cyc acc = Cyc::zero(e);
  for (size_t i = 0; i < a.values.size(); ++i)
    acc += a.values[i] * b.values[i].conj() * a.dom->cls.sizes[i];
  if (!acc.is_rational_integer())
    fail(ErrorKind::Engine, "inner product is not rational");
  return Rat(acc.rational_value(), a.dom->H.order());
}

i64 multiplicity(const CharacterObject& a, const CharacterObject& b) {
  Rat r = inner_product(a, b);
  if (!r.is_integer() || r.num < 0)
    fail(ErrorKind::Engine, "multiplicity is not a non-negative integer");
  return r.num;
}

bool is_irreducible(const CharacterObject& a) {
  Rat r = inner_product(a, a);
  return r.is_integer() && r.num == 1;
}

CharacterObject restrict_character(const CharacterObject& a, DomainPtr sub) {
  if (sub->U.get() != a.dom->U.get())
    fail(ErrorKind::DomainMismatch, "restriction across universes");
  if (!a.dom->H.contains_all(sub->H))
    fail(ErrorKind::Precondition, "restriction target is not a subgroup");
  CharacterObject c;
  c.dom = sub;
  c.values.reserve(sub->cls.num_classes());
  for (i64 rep : sub->cls.reps) c.values.push_back(a.value_of(rep));
  return c;
}

CharacterObject induce_character(const CharacterObject& a, DomainPtr big) {
  const GroupPtr& U = a.dom->U;
  if (big->U.get() != U.get())
    fail(ErrorKind::DomainMismatch, "induction across universes");
  const Subgroup& H = a.dom->H;
  const Subgroup& B = big->H;
  if (!B.contains_all(H))
    fail(ErrorKind::Precondition, "induction source is not a subgroup");
  for (i64 g : B.gens())
    for (i64 s : H.gens())
      if (!H.contains(U->conj_elt(g, s)))
        fail(ErrorKind::Precondition, "induction source is not normal");
  i64 index = B.order() / H.order();
  i64 e = U->exponent();
  CharacterObject out;
  out.dom = big;
  out.values.reserve(big->cls.num_classes());
  for (i64 g : big->cls.reps) {
    if (!H.contains(g)) {
      out.values.push_back(Cyc::zero(e));
      continue;
    }
    // I_g = closure of the commutators of g with the generators of B; the
    // conjugates of g be exactly g*I_g, each hit equally often.
    std::vector<i64> orbit = {U->id()};
    std::unordered_set<i64> seen = {U->id()};
    std::vector<i64> seeds;
    for (i64 b : B.gens()) seeds.push_back(U->commutator(b, g));
    for (size_t k = 0; k < orbit.size(); ++k)
      for (i64 s : seeds) {
        i64 y = U->mul(orbit[k], s);
        if (seen.insert(y).second) orbit.push_back(y);
      }
    Cyc acc = Cyc::zero(e);
    for (i64 c : orbit) acc += a.value_of(U->mul(g, c));
    out.values.push_back((acc * index).divide_exact(static_cast<i64>(orbit.size())));
  }
  return out;
}

CharacterObject conjugate_character(const CharacterObject& a, i64 g) {
  const GroupPtr& U = a.dom->U;
  CharacterObject c;
  c.dom = a.dom;
  c.values.reserve(a.values.size());
  for (i64 rep : a.dom->cls.reps) c.values.push_back(a.value_of(U->conj_elt(g, rep)));
  return c;
}

i64 central_exponent(const CharacterObject& a, i64 z) {
  i64 e = a.dom->U->exponent();
  i64 deg = a.degree();
  const Cyc& v = a.value_of(z);
  for (i64 k = 0; k < e; ++k)
    if (Cyc::root_power(k, e) * deg == v) return k;
  fail(ErrorKind::Engine, "element does not act by a scalar root of unity");
}

namespace {

// compact monomial form: degree e, and per class either -1 (zero) or the
// exponent of zeta_E
struct CompactChar {
  i64 deg;
  std::vector<i64> v;
  bool operator<(const CompactChar& o) const {
    if (deg != o.deg) return deg < o.deg;
    return v < o.v;
  }
};

} // namespace

EngineResult irreducible_characters(GroupPtr U) {
  EngineResult res;
  res.group_order = U->order();
  DomainPtr dom = full_domain(U);
  res.num_classes = static_cast<i64>(dom->cls.num_classes());
  i64 E = U->exponent();

  // class <= 2 requirement: generator-pair commutators are central
  Subgroup Z = grp::group_center(U);
  for (i64 a : U->generators())
    for (i64 b : U->generators())
      if (!Z.contains(U->commutator(a, b)))
        fail(ErrorKind::Engine,
             "group is outside the supported class (commutators not central)");

  auto Zdual = std::make_shared<LinearDual>(U, Z);
  const bool central_all = Z.order() == U->order();

  // factor vectors of the generator-commutators of every element, so each
  // psi-radical is a dot-product filter
  size_t ng = U->generators().size();
  std::vector<std::vector<const std::vector<int32_t>*>> commfac(
      static_cast<size_t>(U->order()));
  for (i64 g = 0; g < U->order(); ++g) {
    auto& row = commfac[static_cast<size_t>(g)];
    row.reserve(ng);
    for (i64 h : U->generators())
      row.push_back(&Zdual->factor_of(U->commutator(g, h)));
  }

  std::map<CompactChar, bool> dedup;
  std::vector<CompactChar> collected;

  for (const LinChar& psi : Zdual->all_characters()) {
    if (central_all) {
      // abelian universe: the irreducibles are exactly the linear characters
      CompactChar cc;
      cc.deg = 1;
      cc.v.reserve(dom->cls.reps.size());
      for (i64 g : dom->cls.reps) cc.v.push_back(Zdual->value_exp(psi, g));
      collected.push_back(std::move(cc));
      continue;
    }

    // radical of the psi-commutator form
    std::vector<i64> relems;
    for (i64 g = 0; g < U->order(); ++g) {
      bool in = true;
      for (size_t j = 0; j < ng && in; ++j) {
        const std::vector<int32_t>& f = *commfac[static_cast<size_t>(g)][j];
        i64 acc = 0;
        for (size_t k = 0; k < f.size(); ++k)
          if (f[k] != 0) acc += psi.t[k] * f[k];
        in = umod(acc, E) == 0;
      }
      if (in) relems.push_back(g);
    }
    i64 e2 = U->order() / static_cast<i64>(relems.size());
    i64 e = zmat::isqrt_ll(e2);
    if (e * e != e2)
      fail(ErrorKind::Engine, "radical index is not a perfect square");
    i64 target = U->order() / e;

    // grow a maximal isotropic M containing the radical
    Subgroup M = Subgroup::from_elements_trusted(U, relems, relems);
    while (M.order() < target) {
      bool grew = false;
      for (i64 cand = 0; cand < U->order() && !grew; ++cand) {
        if (M.contains(cand)) continue;
        bool iso = true;
        for (i64 m : M.gens()) {
          i64 c = U->commutator(cand, m);
          if (Zdual->value_exp(psi, c) != 0) {
            iso = false;
            break;
          }
        }
        if (iso) {
          std::vector<i64> g2 = M.gens();
          g2.push_back(cand);
          M = Subgroup::generated(U, g2);
          grew = true;
        }
      }
      if (!grew)
        fail(ErrorKind::Engine, "isotropic growth stalled below target size");
    }
    if (M.order() != target)
      fail(ErrorKind::Engine, "maximal isotropic has unexpected size");

    LinearDual Mdual(U, M, Zdual);
    std::vector<LinChar> exts = Mdual.characters_extending(psi);
    if (static_cast<i64>(exts.size()) != M.order() / Z.order())
      fail(ErrorKind::Engine, "unexpected number of extensions to the isotropic");

    for (const LinChar& lam : exts) {
      CompactChar cc;
      cc.deg = e;
      cc.v.reserve(dom->cls.num_classes());
      for (i64 g : dom->cls.reps) {
        if (!M.contains(g)) {
          cc.v.push_back(-1);
          continue;
        }
        bool triv = true;
        for (i64 h : U->generators()) {
          i64 c = U->commutator(h, g);
          if (Mdual.value_exp(lam, c) != 0) {
            triv = false;
            break;
          }
        }
        cc.v.push_back(triv ? Mdual.value_exp(lam, g) : -1);
      }
      if (dedup.emplace(cc, true).second) collected.push_back(cc);
    }
  }

  for (const CompactChar& cc : collected) {
    CharacterObject ch;
    ch.dom = dom;
    ch.values.reserve(cc.v.size());
    for (i64 v : cc.v)
      ch.values.push_back(v < 0 ? Cyc::zero(E) : Cyc::root_power(v, E) * cc.deg);
    res.chars.push_back(std::move(ch));
    res.sum_deg_sq += cc.deg * cc.deg;
  }

  res.sum_deg_sq_ok = res.sum_deg_sq == U->order();
  res.count_ok = static_cast<i64>(res.chars.size()) == res.num_classes;
  // norm-1 test; values are deg * root-of-unity on the support, so
  // <chi,chi> = deg^2 * |support| / |G|
  res.all_irreducible = true;
  for (const CompactChar& cc : collected) {
    i64 support = 0;
    for (size_t ci = 0; ci < cc.v.size(); ++ci)
      if (cc.v[ci] >= 0) support += dom->cls.sizes[ci];
    if (cc.deg * cc.deg * support != U->order()) {
      res.all_irreducible = false;
      break;
    }
  }
  if (res.all_irreducible && U->order() <= 300)
    for (const CharacterObject& ch : res.chars)
      if (!is_irreducible(ch)) {
        res.all_irreducible = false;
        break;
      }
  if (!res.certified())
    fail(ErrorKind::Engine, "character engine certificate failed");
  return res;
}

std::vector<CharacterObject> genuine_characters(const EngineResult& eng,
                                                const Subgroup& fiber) {
  std::vector<CharacterObject> out;
  if (eng.chars.empty()) return out;
  const GroupPtr& U = eng.chars.front().dom->U;
  i64 E = U->exponent();
  i64 n = fiber.order();
  // a generator of the fiber
  i64 zgen = U->id();
  for (i64 z : fiber.elements())
    if (U->element_order(z) == n) {
      zgen = z;
      break;
    }
  if (n > 1 && zgen == U->id())
    fail(ErrorKind::Precondition, "fiber subgroup is not cyclic of its order");
  for (const CharacterObject& ch : eng.chars) {
    i64 k = central_exponent(ch, zgen);
    i64 j = k / (E / n);
    if (j * (E / n) != k)
      fail(ErrorKind::Engine, "fiber acts by a non-fiber root of unity");
    if (std::gcd(j, n) == 1) out.push_back(ch);
  }
  return out;
}

} // namespace covrep::chr
