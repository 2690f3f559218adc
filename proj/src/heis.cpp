#include "covrep/heis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "covrep/error.hpp"

namespace covrep::heis {

using chr::Cyc;
using chr::Rat;
using zmat::gcd_ll;
using zmat::isqrt_ll;
using zmat::umod;

// ---------------------------------------------------------------------------
// CheckList

void CheckList::add(const std::string& name, bool pass, std::string detail) {
  items.push_back(CheckItem{name, pass, std::move(detail)});
}

void CheckList::merge(const std::string& prefix, const CheckList& sub) {
  for (const CheckItem& it : sub.items)
    items.push_back(CheckItem{prefix + "/" + it.name, it.pass, it.detail});
}

bool CheckList::all_pass() const {
  for (const CheckItem& it : items)
    if (!it.pass) return false;
  return true;
}

const CheckItem* CheckList::find(const std::string& name) const {
  for (const CheckItem& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

std::string CheckList::first_failure() const {
  for (const CheckItem& it : items)
    if (!it.pass) return it.name + (it.detail.empty() ? "" : ": " + it.detail);
  return "";
}

// ---------------------------------------------------------------------------
// Helpers

i64 root_exponent(const cyc::Cyc& v, i64 order) {
  for (i64 k = 0; k < order; ++k)
    if (Cyc::root_power(k, order) == v) return k;
  fail(ErrorKind::Validation, "value is not a root of unity of the expected order");
}

i64 value_order(i64 k, i64 E) { return E / gcd_ll(umod(k, E), E); }

SubUniverse sub_universe(GroupPtr U, const Subgroup& S) {
  SubUniverse out;
  out.from_T = S.elements();
  const i64 n = S.order();
  for (i64 i = 0; i < n; ++i) out.to_T[out.from_T[static_cast<size_t>(i)]] = i;
  std::vector<std::vector<i64>> table(static_cast<size_t>(n),
                                      std::vector<i64>(static_cast<size_t>(n)));
  for (i64 i = 0; i < n; ++i)
    for (i64 j = 0; j < n; ++j) {
      i64 p = U->mul(out.from_T[static_cast<size_t>(i)],
                     out.from_T[static_cast<size_t>(j)]);
      auto it = out.to_T.find(p);
      if (it == out.to_T.end())
        fail(ErrorKind::Precondition, "carrier is not closed under multiplication");
      table[static_cast<size_t>(i)][static_cast<size_t>(j)] = it->second;
    }
  out.T = FiniteGroup::from_table(table);
  return out;
}

Subgroup SubUniverse::image(const Subgroup& S) const {
  std::vector<i64> elems, gens;
  elems.reserve(S.elements().size());
  for (i64 e : S.elements()) {
    auto it = to_T.find(e);
    if (it == to_T.end())
      fail(ErrorKind::DomainMismatch, "subgroup leaves the replayed carrier");
    elems.push_back(it->second);
  }
  for (i64 g : S.gens()) gens.push_back(to_T.at(g));
  std::sort(elems.begin(), elems.end());
  return Subgroup::from_elements_trusted(T, std::move(elems), std::move(gens));
}

std::vector<i64> left_transversal(const Subgroup& big, const Subgroup& small) {
  const GroupPtr& U = big.universe();
  std::set<i64> covered;
  std::vector<i64> reps;
  for (i64 g : big.elements()) {
    if (covered.count(g)) continue;
    reps.push_back(g);
    for (i64 s : small.elements()) covered.insert(U->mul(g, s));
  }
  return reps;
}

namespace {

// The quotient M/K as an indexed coset table; requires K normal in M.
struct CosetSpace {
  std::vector<i64> reps;  // minimal code per coset, ascending
  std::unordered_map<i64, int32_t> coset_of;
  std::vector<std::vector<i64>> members;
  std::vector<std::vector<int32_t>> mul;
  int32_t id = 0;
  i64 size() const { return static_cast<i64>(reps.size()); }
};

CosetSpace make_cosets(const Subgroup& K, const Subgroup& M) {
  const GroupPtr& U = M.universe();
  if (!M.contains_all(K))
    fail(ErrorKind::Precondition, "coset base not contained in the carrier");
  for (i64 m : M.elements())
    for (i64 k : K.gens())
      if (!K.contains(U->conj_elt(m, k)))
        fail(ErrorKind::Precondition, "coset base not normal in the carrier");
  CosetSpace cs;
  for (i64 m : M.elements()) {
    if (cs.coset_of.count(m)) continue;
    int32_t idx = static_cast<int32_t>(cs.reps.size());
    cs.reps.push_back(m);
    cs.members.emplace_back();
    for (i64 k : K.elements()) {
      i64 e = U->mul(m, k);
      cs.coset_of[e] = idx;
      cs.members.back().push_back(e);
    }
    std::sort(cs.members.back().begin(), cs.members.back().end());
    if (m == U->id() || K.contains(m)) cs.id = idx;
  }
  const i64 q = cs.size();
  cs.mul.assign(static_cast<size_t>(q), std::vector<int32_t>(static_cast<size_t>(q)));
  for (i64 i = 0; i < q; ++i)
    for (i64 j = 0; j < q; ++j)
      cs.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = cs.coset_of.at(
          U->mul(cs.reps[static_cast<size_t>(i)], cs.reps[static_cast<size_t>(j)]));
  return cs;
}

// Closure of base + {x} inside the quotient table.
std::vector<int32_t> quo_closure(const CosetSpace& cs,
                                 const std::vector<int32_t>& base, int32_t x) {
  std::vector<char> in(static_cast<size_t>(cs.size()), 0);
  std::vector<int32_t> members;
  for (int32_t b : base) {
    in[static_cast<size_t>(b)] = 1;
    members.push_back(b);
  }
  std::vector<int32_t> work;
  if (!in[static_cast<size_t>(x)]) {
    in[static_cast<size_t>(x)] = 1;
    work.push_back(x);
  }
  while (!work.empty()) {
    int32_t f = work.back();
    work.pop_back();
    // f times everything already present, both sides; later members hit f
    // when they pop, so every pair is covered.
    size_t have = members.size();
    for (size_t i = 0; i < have; ++i) {
      int32_t a = cs.mul[static_cast<size_t>(f)][static_cast<size_t>(members[i])];
      int32_t b = cs.mul[static_cast<size_t>(members[i])][static_cast<size_t>(f)];
      if (!in[static_cast<size_t>(a)]) {
        in[static_cast<size_t>(a)] = 1;
        work.push_back(a);
      }
      if (!in[static_cast<size_t>(b)]) {
        in[static_cast<size_t>(b)] = 1;
        work.push_back(b);
      }
    }
    int32_t sq = cs.mul[static_cast<size_t>(f)][static_cast<size_t>(f)];
    if (!in[static_cast<size_t>(sq)]) {
      in[static_cast<size_t>(sq)] = 1;
      work.push_back(sq);
    }
    members.push_back(f);
  }
  std::sort(members.begin(), members.end());
  return members;
}

// Union of the cosets named by `which`, as a subgroup of the universe.
Subgroup pull_back(const GroupPtr& U, const CosetSpace& cs, const Subgroup& K,
                   const std::vector<int32_t>& which) {
  std::vector<i64> elems, gens = K.gens();
  for (int32_t c : which) {
    const std::vector<i64>& m = cs.members[static_cast<size_t>(c)];
    elems.insert(elems.end(), m.begin(), m.end());
    gens.push_back(cs.reps[static_cast<size_t>(c)]);
  }
  std::sort(elems.begin(), elems.end());
  // closed: the union of the cosets of a subgroup of the quotient.
  return Subgroup::from_elements_trusted(U, std::move(elems), std::move(gens));
}

// Discrete log table in the cyclic subgroup generated by a_gen.
std::unordered_map<i64, i64> power_table(const FiniteGroup& U, i64 a_gen,
                                         i64 a_ord) {
  std::unordered_map<i64, i64> t;
  i64 p = U.id();
  for (i64 k = 0; k < a_ord; ++k) {
    t.emplace(p, k);
    p = U.mul(p, a_gen);
  }
  return t;
}

// Least element of full order; nullopt when the subgroup is not cyclic.
std::optional<i64> cyclic_generator(const Subgroup& A) {
  const GroupPtr& U = A.universe();
  for (i64 a : A.elements())
    if (U->element_order(a) == A.order()) return a;
  return std::nullopt;
}

std::string code_str(i64 x) { return std::to_string(x); }

// (c^g)(x) = c(g x g^{-1}); g must normalize the chain domain.
LinChar conj_linchar(const LinearDual& dual, const LinChar& c, i64 g) {
  const GroupPtr& U = dual.domain().universe();
  LinChar out;
  out.t.reserve(dual.chain().size());
  for (i64 z : dual.chain())
    out.t.push_back(dual.value_exp(c, U->conj_elt(g, z)));
  return out;
}

LinChar inv_linchar(const LinearDual& dual, const LinChar& a) {
  LinChar out;
  const i64 E = dual.value_mod();
  for (i64 t : a.t) out.t.push_back(umod(-t, E));
  return out;
}

bool linchar_equal(const LinearDual& dual, const LinChar& a, const LinChar& b) {
  for (i64 z : dual.chain())
    if (dual.value_exp(a, z) != dual.value_exp(b, z)) return false;
  return true;
}

// Normalized value vector on the chain, a canonical key for sets of chars.
std::vector<i64> linchar_key(const LinearDual& dual, const LinChar& c) {
  std::vector<i64> key;
  key.reserve(dual.chain().size());
  for (i64 z : dual.chain()) key.push_back(dual.value_exp(c, z));
  return key;
}

// Central exponents of a character on the generators of a chain; requires
// the chain elements to act by scalars on the character's carrier.
LinChar central_restriction(const CharacterObject& c, const LinearDual& dual) {
  LinChar out;
  out.t.reserve(dual.chain().size());
  for (i64 z : dual.chain()) out.t.push_back(chr::central_exponent(c, z));
  return out;
}

}  // namespace

std::vector<Subgroup> subgroups_between(const Subgroup& lo, const Subgroup& hi,
                                        i64 cap) {
  const GroupPtr& U = hi.universe();
  CosetSpace cs = make_cosets(lo, hi);
  std::vector<int32_t> unit_set = {cs.id};
  std::set<std::vector<int32_t>> seen;
  std::vector<std::vector<int32_t>> queue;
  seen.insert(unit_set);
  queue.push_back(unit_set);
  for (size_t head = 0; head < queue.size(); ++head) {
    std::vector<int32_t> S = queue[head];
    for (int32_t x = 0; x < cs.size(); ++x) {
      if (std::binary_search(S.begin(), S.end(), x)) continue;
      std::vector<int32_t> T = quo_closure(cs, S, x);
      if (seen.insert(T).second) {
        if (static_cast<i64>(seen.size()) > cap)
          fail(ErrorKind::SizeCap, "subgroup interval exceeds the enumeration cap");
        queue.push_back(std::move(T));
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const std::vector<int32_t>& S : seen) out.push_back(pull_back(U, cs, lo, S));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Heisenberg pairs

bool is_heisenberg_type(GroupPtr U, const Subgroup& N, const Subgroup& A) {
  if (!N.contains_all(A))
    fail(ErrorKind::Precondition, "fiber subgroup not contained in the carrier");
  std::optional<i64> gen = cyclic_generator(A);
  if (!gen) fail(ErrorKind::Precondition, "fiber subgroup not cyclic");
  for (i64 x : N.elements())
    if (U->mul(*gen, x) != U->mul(x, *gen))
      fail(ErrorKind::Precondition, "fiber subgroup not central in the carrier");
  // With A central, commutators are multiplicative in each slot, so the
  // generator check decides [N, N] <= A.
  for (i64 a : N.gens())
    for (i64 b : N.gens())
      if (!A.contains(U->commutator(a, b))) return false;
  return true;
}

HeisenbergPairData commutator_pairing(GroupPtr U, const Subgroup& N,
                                      const Subgroup& A) {
  if (!is_heisenberg_type(U, N, A))
    fail(ErrorKind::Precondition, "commutators leave the fiber subgroup");
  HeisenbergPairData pr;
  pr.U = U;
  pr.N = N;
  pr.A = A;
  pr.a_gen = *cyclic_generator(A);
  pr.a_ord = A.order();
  pr.ZN = N.center();

  CosetSpace cs = make_cosets(pr.ZN, N);
  pr.xreps = cs.reps;
  const i64 q = cs.size();
  i64 d = isqrt_ll(q);
  pr.checks.add("center_index_square", d * d == q,
                "[N : Z(N)] = " + code_str(q));
  pr.d = (d * d == q) ? d : 0;

  std::unordered_map<i64, i64> dlog = power_table(*U, pr.a_gen, pr.a_ord);
  pr.pairing.assign(static_cast<size_t>(q), std::vector<i64>(static_cast<size_t>(q), 0));
  for (i64 i = 0; i < q; ++i)
    for (i64 j = 0; j < q; ++j) {
      i64 c = U->commutator(cs.reps[static_cast<size_t>(i)],
                            cs.reps[static_cast<size_t>(j)]);
      auto it = dlog.find(c);
      if (it == dlog.end())
        fail(ErrorKind::Engine, "commutator escapes the fiber subgroup");
      pr.pairing[static_cast<size_t>(i)][static_cast<size_t>(j)] = it->second;
    }

  // Alternating: trivial on the diagonal and antisymmetric, exhaustively.
  bool alt = true;
  std::string alt_detail;
  for (i64 i = 0; i < q && alt; ++i) {
    if (pr.pairing[static_cast<size_t>(i)][static_cast<size_t>(i)] != 0) {
      alt = false;
      alt_detail = "nonzero at the diagonal coset " + code_str(cs.reps[static_cast<size_t>(i)]);
    }
    for (i64 j = 0; j < q && alt; ++j)
      if (umod(pr.pairing[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                   pr.pairing[static_cast<size_t>(j)][static_cast<size_t>(i)],
               pr.a_ord) != 0) {
        alt = false;
        alt_detail = "not antisymmetric at (" + code_str(i) + "," + code_str(j) + ")";
      }
  }
  pr.checks.add("alternating", alt, alt_detail);

  // Bimultiplicative: exhaustive over triples when affordable, otherwise
  // over generator rows (sufficient by the slotwise multiplicativity that A
  // central already gives).
  bool bim = true;
  std::string bim_detail;
  if (q * q * q <= 40'000'000) {
    for (i64 i = 0; i < q && bim; ++i)
      for (i64 j = 0; j < q && bim; ++j) {
        int32_t ij = cs.mul[static_cast<size_t>(i)][static_cast<size_t>(j)];
        for (i64 k = 0; k < q; ++k) {
          bool left = umod(pr.pairing[static_cast<size_t>(ij)][static_cast<size_t>(k)] -
                               pr.pairing[static_cast<size_t>(i)][static_cast<size_t>(k)] -
                               pr.pairing[static_cast<size_t>(j)][static_cast<size_t>(k)],
                           pr.a_ord) == 0;
          bool right = umod(pr.pairing[static_cast<size_t>(k)][static_cast<size_t>(ij)] -
                                pr.pairing[static_cast<size_t>(k)][static_cast<size_t>(i)] -
                                pr.pairing[static_cast<size_t>(k)][static_cast<size_t>(j)],
                            pr.a_ord) == 0;
          if (!left || !right) {
            bim = false;
            bim_detail = "fails at cosets (" + code_str(i) + "," + code_str(j) + "," +
                         code_str(k) + ")";
            break;
          }
        }
      }
    if (bim) bim_detail = "exhaustive over all coset triples";
  } else {
    for (i64 g = 0; g < q && bim; ++g)
      for (i64 i = 0; i < q && bim; ++i) {
        int32_t gi = cs.mul[static_cast<size_t>(g)][static_cast<size_t>(i)];
        for (i64 k = 0; k < q; ++k)
          if (umod(pr.pairing[static_cast<size_t>(gi)][static_cast<size_t>(k)] -
                       pr.pairing[static_cast<size_t>(g)][static_cast<size_t>(k)] -
                       pr.pairing[static_cast<size_t>(i)][static_cast<size_t>(k)],
                   pr.a_ord) != 0) {
            bim = false;
            bim_detail = "fails at cosets (" + code_str(g) + "," + code_str(i) + "," +
                         code_str(k) + ")";
            break;
          }
      }
    if (bim) bim_detail = "left-slot products over all pairs; right slot by antisymmetry";
  }
  pr.checks.add("bimultiplicative", bim, bim_detail);

  // Non-degenerate; a radical coset is a structural failure.
  for (i64 i = 0; i < q; ++i) {
    if (i == cs.id) continue;
    bool hit = false;
    for (i64 j = 0; j < q; ++j)
      if (pr.pairing[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
        hit = true;
        break;
      }
    if (!hit)
      fail(ErrorKind::Validation,
           "degenerate commutator pairing: the coset of element " +
               code_str(cs.reps[static_cast<size_t>(i)]) +
               " pairs trivially with all of N");
  }
  pr.checks.add("non_degenerate", true, "every nontrivial coset pairs nontrivially");

  // iota: X -> Hom(X, A).  Injective by non-degeneracy; bijective because
  // |Hom(X, A)| = |X| once every coset order divides |A|.
  bool expo = true;
  std::string expo_detail;
  for (i64 i = 0; i < q; ++i) {
    i64 ord = 1;
    int32_t p = static_cast<int32_t>(i);
    while (p != cs.id) {
      p = cs.mul[static_cast<size_t>(p)][static_cast<size_t>(i)];
      ++ord;
    }
    if (pr.a_ord % ord != 0) {
      expo = false;
      expo_detail = "coset of element " + code_str(cs.reps[static_cast<size_t>(i)]) +
                    " has order " + code_str(ord);
      break;
    }
  }
  pr.checks.add("dual_map_bijective", expo,
                expo ? "injective by non-degeneracy, onto by |Hom(X,A)| = |X|"
                     : expo_detail);

  pr.zn_dual = std::make_shared<LinearDual>(U, pr.ZN);
  pr.n_dom = chr::subgroup_domain(U, N);
  return pr;
}

namespace {

// Shared isotropic-extension step: indices of X isotropic against every
// member of S.
bool isotropic_against(const HeisenbergPairData& pr,
                       const std::vector<int32_t>& S, int32_t x) {
  for (int32_t s : S)
    if (pr.pairing[static_cast<size_t>(x)][static_cast<size_t>(s)] != 0) return false;
  return true;
}

CosetSpace xspace(const HeisenbergPairData& pr) { return make_cosets(pr.ZN, pr.N); }

}  // namespace

Subgroup first_lagrangian(const HeisenbergPairData& pr) {
  CosetSpace cs = xspace(pr);
  std::vector<int32_t> S = {cs.id};
  for (int32_t x = 0; x < cs.size(); ++x) {
    if (static_cast<i64>(S.size()) == pr.d) break;
    if (std::binary_search(S.begin(), S.end(), x)) continue;
    if (isotropic_against(pr, S, x)) S = quo_closure(cs, S, x);
  }
  if (static_cast<i64>(S.size()) != pr.d)
    fail(ErrorKind::Engine, "greedy isotropic growth stopped short of a Lagrangian");
  return pull_back(pr.U, cs, pr.ZN, S);
}

std::vector<Subgroup> lagrangians(const HeisenbergPairData& pr, i64 cap) {
  if (!pr.ok())
    fail(ErrorKind::Precondition,
         "pairing checks failed: " + pr.checks.first_failure());
  CosetSpace cs = xspace(pr);
  std::set<std::vector<int32_t>> seen;
  std::vector<std::vector<int32_t>> queue;
  std::vector<std::vector<int32_t>> found;
  std::vector<int32_t> unit = {cs.id};
  seen.insert(unit);
  queue.push_back(unit);
  for (size_t head = 0; head < queue.size(); ++head) {
    std::vector<int32_t> S = queue[head];
    if (static_cast<i64>(S.size()) == pr.d) {
      found.push_back(S);
      continue;  // maximal isotropic: no isotropic extension exists
    }
    for (int32_t x = 0; x < cs.size(); ++x) {
      if (std::binary_search(S.begin(), S.end(), x)) continue;
      if (!isotropic_against(pr, S, x)) continue;
      std::vector<int32_t> T = quo_closure(cs, S, x);
      if (static_cast<i64>(T.size()) > pr.d)
        fail(ErrorKind::Engine, "isotropic subgroup larger than the Lagrangian bound");
      if (seen.insert(T).second) {
        if (static_cast<i64>(seen.size()) > cap)
          fail(ErrorKind::SizeCap, "isotropic enumeration exceeds the cap");
        queue.push_back(std::move(T));
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const std::vector<int32_t>& S : found) {
    Subgroup L = pull_back(pr.U, cs, pr.ZN, S);
    // The equivalent maximality conditions, re-verified per subgroup.
    i64 over = L.order() / pr.ZN.order();
    i64 under = pr.N.order() / L.order();
    if (over != under)
      fail(ErrorKind::Engine, "Lagrangian index condition fails");
    if (!L.is_abelian()) fail(ErrorKind::Engine, "Lagrangian not abelian");
    if (!pr.N.centralizer_of(L).same_as(L))
      fail(ErrorKind::Engine, "Lagrangian not self-centralizing in N");
    for (int32_t s : S) {
      if (s == cs.id) continue;
      bool hit = false;
      for (int32_t x = 0; x < cs.size(); ++x)
        if (pr.pairing[static_cast<size_t>(s)][static_cast<size_t>(x)] != 0) {
          hit = true;
          break;
        }
      if (!hit)
        fail(ErrorKind::Engine, "Lagrangian maps to a degenerate character family");
    }
    out.push_back(std::move(L));
  }
  if (out.empty()) fail(ErrorKind::Engine, "no Lagrangian subgroup found");
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.elements() < b.elements();
  });
  return out;
}

std::vector<LinChar> genuine_central_characters(const HeisenbergPairData& pr) {
  std::vector<LinChar> out;
  for (const LinChar& c : pr.zn_dual->all_characters())
    if (linchar_genuine(*pr.zn_dual, c, pr.a_gen, pr.a_ord)) out.push_back(c);
  return out;
}

SvNResult stone_von_neumann(const HeisenbergPairData& pr, const LinChar& psi,
                            bool verify_choices, bool verify_unique, i64 cap) {
  if (!linchar_genuine(*pr.zn_dual, psi, pr.a_gen, pr.a_ord))
    fail(ErrorKind::Precondition, "central character is not genuine");
  SvNResult res;
  std::vector<Subgroup> Ls;
  if (verify_choices)
    Ls = lagrangians(pr, cap);
  else
    Ls = {first_lagrangian(pr)};

  bool ext_count = true, orbit_ok = true, indep = true;
  std::string ext_detail, orbit_detail, indep_detail;
  bool have = false;
  for (size_t li = 0; li < Ls.size(); ++li) {
    const Subgroup& L = Ls[li];
    auto l_dual = std::make_shared<LinearDual>(pr.U, L, pr.zn_dual);
    std::vector<LinChar> exts = l_dual->characters_extending(psi);
    if (static_cast<i64>(exts.size()) != pr.d) {
      ext_count = false;
      ext_detail = "Lagrangian " + code_str(static_cast<i64>(li)) + " has " +
                   code_str(static_cast<i64>(exts.size())) + " extensions";
    }
    //

    // N/L permutes the extensions simply transitively under conjugation.
    std::vector<i64> nreps = left_transversal(pr.N, L);
    std::set<std::vector<i64>> orbit, all;
    for (const LinChar& e : exts) all.insert(linchar_key(*l_dual, e));
    if (!exts.empty())
      for (i64 g : nreps)
        orbit.insert(linchar_key(*l_dual, conj_linchar(*l_dual, exts[0], g)));
    if (orbit != all || static_cast<i64>(orbit.size()) != pr.d) {
      orbit_ok = false;
      orbit_detail = "orbit of the first extension has size " +
                     code_str(static_cast<i64>(orbit.size()));
    }

    DomainPtr l_dom = chr::subgroup_domain(pr.U, L);
    for (const LinChar& e : exts) {
      CharacterObject lin = chr::linear_character(l_dom, *l_dual, e);
      CharacterObject ind = chr::induce_character(lin, pr.n_dom);
      if (!have) {
        res.character = ind;
        have = true;
      } else if (!chr::char_equal(res.character, ind)) {
        indep = false;
        indep_detail = "choice at Lagrangian " + code_str(static_cast<i64>(li));
      }
    }
  }
  res.checks.add("extension_count", ext_count,
                 ext_count ? code_str(pr.d) + " extensions per Lagrangian"
                           : ext_detail);
  res.checks.add("extension_orbit_simply_transitive", orbit_ok, orbit_detail);
  res.checks.add("choice_independence", indep,
                 indep ? code_str(static_cast<i64>(Ls.size())) + " Lagrangians compared"
                       : indep_detail);
  if (!have) fail(ErrorKind::Engine, "no extension produced a character");

  res.degree = res.character.degree();
  res.checks.add("degree", res.degree == pr.d,
                 "degree " + code_str(res.degree) + ", expected " + code_str(pr.d));
  res.checks.add("irreducible", chr::is_irreducible(res.character));
  res.checks.add(
      "central_character",
      linchar_equal(*pr.zn_dual, central_restriction(res.character, *pr.zn_dual), psi));

  if (verify_unique) {
    SubgroupIrreducibles sub = irreducible_characters_of(pr.U, pr.N);
    res.checks.add("table_certified", sub.certified);
    i64 matches = 0;
    bool equal = false;
    for (const CharacterObject& c : sub.chars)
      if (linchar_equal(*pr.zn_dual, central_restriction(c, *pr.zn_dual), psi)) {
        ++matches;
        if (chr::char_equal(c, res.character)) equal = true;
      }
    res.checks.add("uniqueness", matches == 1 && equal,
                   code_str(matches) + " irreducibles carry this central character");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Character tables of subgroups

SubgroupIrreducibles irreducible_characters_of(GroupPtr U, const Subgroup& H) {
  SubgroupIrreducibles out;
  if (H.order() == U->order()) {
    chr::EngineResult eng = chr::irreducible_characters(U);
    out.dom = eng.chars.empty() ? chr::full_domain(U) : eng.chars.front().dom;
    out.chars = std::move(eng.chars);
    out.sum_deg_sq = eng.sum_deg_sq;
    out.certified = eng.certified();
    return out;
  }
  SubUniverse uni = sub_universe(U, H);
  chr::EngineResult eng = chr::irreducible_characters(uni.T);
  out.dom = chr::subgroup_domain(U, H);
  out.sum_deg_sq = eng.sum_deg_sq;
  out.certified = eng.certified();
  out.chars.reserve(eng.chars.size());
  for (const CharacterObject& c : eng.chars) {
    CharacterObject lifted;
    lifted.dom = out.dom;
    lifted.values.reserve(out.dom->cls.reps.size());
    for (i64 rep : out.dom->cls.reps) lifted.values.push_back(c.value_of(uni.to_T.at(rep)));
    out.chars.push_back(std::move(lifted));
  }
  return out;
}

bool is_genuine(const CharacterObject& c, i64 a_gen, i64 a_ord) {
  if (a_ord == 1) return true;
  i64 k = chr::central_exponent(c, a_gen);
  return value_order(k, c.dom->U->exponent()) == a_ord;
}

std::vector<CharacterObject> genuine_subset(
    const std::vector<CharacterObject>& chars, i64 a_gen, i64 a_ord) {
  std::vector<CharacterObject> out;
  for (const CharacterObject& c : chars)
    if (is_genuine(c, a_gen, a_ord)) out.push_back(c);
  return out;
}

bool linchar_genuine(const LinearDual& dual, const LinChar& c, i64 a_gen,
                     i64 a_ord) {
  if (a_ord == 1) return true;
  return value_order(dual.value_exp(c, a_gen), dual.value_mod()) == a_ord;
}

// ---------------------------------------------------------------------------
// Special pairs

SpecialPairData is_special_pair(GroupPtr U, const Subgroup& H, const Subgroup& N,
                                const Subgroup& A) {
  SpecialPairData sp;
  sp.U = U;
  sp.H = H;
  sp.N = N;
  sp.A = A;

  Subgroup whole = grp::whole_group(U);
  sp.ZG = grp::group_center(U);

  std::optional<i64> gen = cyclic_generator(A);
  bool a_ok = gen.has_value() && sp.ZG.contains_all(A);
  sp.cert.add("fiber_cyclic_central", a_ok,
              a_ok ? "" : "fiber subgroup must be cyclic and central");
  if (gen) {
    sp.a_gen = *gen;
    sp.a_ord = A.order();
  }
  sp.cert.add("fiber_inside_both", H.contains_all(A) && N.contains_all(A));
  sp.cert.add("h_normal", H.is_normal());

  bool ncomm = true;
  std::string ncomm_detail;
  for (i64 n : N.gens()) {
    for (i64 h : H.gens())
      if (U->commutator(n, h) != U->id()) {
        ncomm = false;
        ncomm_detail = "elements " + code_str(n) + " and " + code_str(h);
        break;
      }
    if (!ncomm) break;
  }
  sp.cert.add("n_centralizes_h", ncomm, ncomm_detail);

  // [N, G] <= A: with A central this is generator-decidable.
  bool nimg = a_ok;
  std::string nimg_detail = a_ok ? "" : "skipped: fiber not central";
  if (a_ok)
    for (i64 n : N.gens()) {
      for (i64 g : U->generators())
        if (!A.contains(U->commutator(n, g))) {
          nimg = false;
          nimg_detail = "commutator of " + code_str(n) + " with generator " + code_str(g);
          break;
        }
      if (!nimg) break;
    }
  sp.cert.add("n_image_central", nimg, nimg_detail);

  sp.HcapN = H.intersect(N);
  sp.HN = N.contains_all(H) ? N : (H.contains_all(N) ? H : H.join(N));
  Subgroup zg_overlap = whole.centralizer_of(sp.HcapN);
  sp.cert.add("centralizer_of_overlap_is_nh", zg_overlap.same_as(sp.HN),
              "Z_G(H cap N) has order " + code_str(zg_overlap.order()) +
                  ", NH has order " + code_str(sp.HN.order()));
  sp.cert.add("overlap_abelian", sp.HcapN.is_abelian());

  sp.ZN = N.center();
  sp.ZNG = N.intersect(sp.ZG);
  sp.ZHG = H.intersect(sp.ZG);
  sp.ZHcapNG = sp.HcapN.intersect(sp.ZG);

  i64 q = N.order() / sp.ZN.order();
  i64 d = isqrt_ll(q);
  sp.cert.add("center_index_square", d * d == q, "[N : Z(N)] = " + code_str(q));
  if (d * d == q) sp.d = d;

  if (sp.cert.all_pass()) {
    sp.phi_dual = std::make_shared<LinearDual>(U, sp.ZHcapNG);
    sp.hn_dual = std::make_shared<LinearDual>(U, sp.HcapN, sp.phi_dual);
    sp.zng_dual = std::make_shared<LinearDual>(U, sp.ZNG, sp.phi_dual);
    sp.zn_dual = std::make_shared<LinearDual>(U, sp.ZN);
  }
  return sp;
}

bool consistent_pair(const SpecialPairData& sp, const LinChar& psi,
                     const LinChar& chi) {
  for (i64 z : sp.phi_dual->chain())
    if (sp.hn_dual->value_exp(psi, z) != sp.zng_dual->value_exp(chi, z))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Extension along a central complement

CharacterObject extend_locally(const CharacterObject& tau,
                               const CharacterObject& chi, DomainPtr hl_dom) {
  const GroupPtr& U = tau.dom->U;
  if (chi.dom->U != U)
    fail(ErrorKind::DomainMismatch, "extension factors live in different groups");
  const Subgroup& H = tau.dom->H;
  const Subgroup& L = chi.dom->H;
  if (!L.is_abelian())
    fail(ErrorKind::Precondition, "complement is not abelian");
  for (i64 l : L.gens())
    for (i64 h : H.gens())
      if (U->commutator(l, h) != U->id())
        fail(ErrorKind::Precondition, "complement does not centralize the carrier");
  if (chi.degree() != 1)
    fail(ErrorKind::Precondition, "complement character is not linear");

  Subgroup overlap = L.intersect(H);
  for (i64 z : overlap.elements())
    for (i64 rep : tau.dom->cls.reps)
      if (tau.value_of(U->mul(z, rep)) != chi.value_of(z) * tau.value_of(rep))
        fail(ErrorKind::Precondition,
             "characters inconsistent on the overlap at element " + code_str(z));

  if (!hl_dom) hl_dom = chr::subgroup_domain(U, H.join(L));
  const Subgroup& HL = hl_dom->H;
  if (!(HL.contains_all(H) && HL.contains_all(L) &&
        HL.order() * overlap.order() == H.order() * L.order()))
    fail(ErrorKind::DomainMismatch, "target domain is not the product carrier");

  CharacterObject out;
  out.dom = hl_dom;
  out.values.reserve(hl_dom->cls.reps.size());
  for (i64 g : hl_dom->cls.reps) {
    bool done = false;
    for (i64 a : L.elements()) {
      i64 h = U->mul(U->inv(a), g);
      if (H.contains(h)) {
        out.values.push_back(chi.value_of(a) * tau.value_of(h));
        done = true;
        break;
      }
    }
    if (!done) fail(ErrorKind::Engine, "element admits no product decomposition");
  }
  return out;
}

CheckList extension_sum_check(const CharacterObject& tau, const Subgroup& L) {
  CheckList out;
  const GroupPtr& U = tau.dom->U;
  const Subgroup& H = tau.dom->H;
  Subgroup overlap = L.intersect(H);
  auto prefix = std::make_shared<LinearDual>(U, overlap);
  LinChar on_overlap = central_restriction(tau, *prefix);
  auto l_dual = std::make_shared<LinearDual>(U, L, prefix);
  std::vector<LinChar> exts = l_dual->characters_extending(on_overlap);

  DomainPtr hl_dom = chr::subgroup_domain(U, H.join(L));
  i64 index = hl_dom->H.order() / H.order();
  out.add("extension_count", static_cast<i64>(exts.size()) == index,
          code_str(static_cast<i64>(exts.size())) + " extensions, index " +
              code_str(index));

  DomainPtr l_dom = chr::subgroup_domain(U, L);
  std::optional<CharacterObject> sum;
  for (const LinChar& e : exts) {
    CharacterObject ext = extend_locally(
        tau, chr::linear_character(l_dom, *l_dual, e), hl_dom);
    sum = sum ? chr::char_add(*sum, ext) : ext;
  }
  CharacterObject ind = chr::induce_character(tau, hl_dom);
  out.add("induction_decomposes", sum && chr::char_equal(*sum, ind),
          "Ind tau vs the sum of its extensions");
  return out;
}

// ---------------------------------------------------------------------------
// Quotient dualities and the structural report

namespace {

// Deterministic subfamily: evenly spaced picks keeping the first and last.
std::vector<Subgroup> pick_family(const std::vector<Subgroup>& fam,
                                  size_t budget, bool& sampled) {
  if (fam.size() <= budget || budget < 2) {
    sampled = false;
    return fam;
  }
  sampled = true;
  std::vector<Subgroup> out;
  size_t prev = fam.size();
  for (size_t k = 0; k < budget; ++k) {
    size_t idx = k * (fam.size() - 1) / (budget - 1);
    if (idx == prev) continue;
    out.push_back(fam[idx]);
    prev = idx;
  }
  return out;
}

// Enumerate [lo, hi]; past the cap fall back to a deterministic generated
// family (lo, hi, and the cyclic-over-lo members of the quotient).
std::vector<Subgroup> family_between(const Subgroup& lo, const Subgroup& hi,
                                     i64 cap, bool& truncated) {
  truncated = false;
  try {
    return subgroups_between(lo, hi, cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCap) throw;
  }
  truncated = true;
  const GroupPtr& U = hi.universe();
  CosetSpace cs = make_cosets(lo, hi);
  std::set<std::vector<i64>> seen;
  std::vector<Subgroup> out;
  auto push = [&](Subgroup S) {
    if (seen.insert(S.elements()).second) out.push_back(std::move(S));
  };
  push(lo);
  std::vector<int32_t> unit = {cs.id};
  for (int32_t x = 0; x < cs.size() && out.size() < 24; ++x)
    push(pull_back(U, cs, lo, quo_closure(cs, unit, x)));
  push(hi);
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

void add_family_item(CheckList& out, const std::string& name, i64 total,
                     i64 passed, const std::string& first_fail, bool sampled) {
  std::string detail = code_str(passed) + " of " + code_str(total) + " pass";
  if (sampled) detail += " (deterministic sample)";
  if (passed != total) detail += "; first failure: " + first_fail;
  out.add(name, passed == total, detail);
}

bool cosets_abelian(const CosetSpace& cs) {
  for (i64 i = 0; i < cs.size(); ++i)
    for (i64 j = 0; j < i; ++j)
      if (cs.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
          cs.mul[static_cast<size_t>(j)][static_cast<size_t>(i)])
        return false;
  return true;
}

i64 coset_order(const CosetSpace& cs, int32_t x) {
  i64 ord = 1;
  int32_t p = x;
  while (p != cs.id) {
    p = cs.mul[static_cast<size_t>(p)][static_cast<size_t>(x)];
    ++ord;
  }
  return ord;
}

// The commutator map (M1/K1) x (M2/K2) -> <a_gen> as a perfect duality.
CheckList pairing_duality(const GroupPtr& U, const Subgroup& M1,
                          const Subgroup& K1, const Subgroup& M2,
                          const Subgroup& K2, i64 a_gen, i64 a_ord) {
  CheckList out;
  CosetSpace c1 = make_cosets(K1, M1);
  CosetSpace c2 = make_cosets(K2, M2);
  const i64 q1 = c1.size(), q2 = c2.size();
  std::unordered_map<i64, i64> dlog = power_table(*U, a_gen, a_ord);

  bool fiber = true;
  std::string fiber_detail;
  std::vector<std::vector<i64>> P(static_cast<size_t>(q1),
                                  std::vector<i64>(static_cast<size_t>(q2), 0));
  for (i64 i = 0; i < q1 && fiber; ++i)
    for (i64 j = 0; j < q2; ++j) {
      auto it = dlog.find(U->commutator(c1.reps[static_cast<size_t>(i)],
                                        c2.reps[static_cast<size_t>(j)]));
      if (it == dlog.end()) {
        fiber = false;
        fiber_detail = "commutator at coset pair (" + code_str(i) + "," +
                       code_str(j) + ") leaves the fiber";
        break;
      }
      P[static_cast<size_t>(i)][static_cast<size_t>(j)] = it->second;
    }
  out.add("values_in_fiber", fiber, fiber_detail);
  if (!fiber) {
    out.add("perfect_duality", false, "values leave the fiber");
    return out;
  }

  bool wd = true;
  std::string wd_detail;
  for (i64 m : M1.elements()) {
    int32_t cm = c1.coset_of.at(m);
    for (i64 j = 0; j < q2; ++j) {
      auto it = dlog.find(U->commutator(m, c2.reps[static_cast<size_t>(j)]));
      if (it == dlog.end() ||
          it->second != P[static_cast<size_t>(cm)][static_cast<size_t>(j)]) {
        wd = false;
        wd_detail = "left slot at element " + code_str(m);
        break;
      }
    }
    if (!wd) break;
  }
  if (wd)
    for (i64 m : M2.elements()) {
      int32_t cm = c2.coset_of.at(m);
      for (i64 i = 0; i < q1; ++i) {
        auto it = dlog.find(U->commutator(c1.reps[static_cast<size_t>(i)], m));
        if (it == dlog.end() ||
            it->second != P[static_cast<size_t>(i)][static_cast<size_t>(cm)]) {
          wd = false;
          wd_detail = "right slot at element " + code_str(m);
          break;
        }
      }
      if (!wd) break;
    }
  out.add("well_defined", wd, wd_detail);

  out.add("left_quotient_abelian", cosets_abelian(c1));
  out.add("right_quotient_abelian", cosets_abelian(c2));

  bool bim = true;
  std::string bim_detail;
  for (i64 i = 0; i < q1 && bim; ++i)
    for (i64 i2 = 0; i2 < q1 && bim; ++i2) {
      int32_t ii = c1.mul[static_cast<size_t>(i)][static_cast<size_t>(i2)];
      for (i64 j = 0; j < q2; ++j)
        if (umod(P[static_cast<size_t>(ii)][static_cast<size_t>(j)] -
                     P[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                     P[static_cast<size_t>(i2)][static_cast<size_t>(j)],
                 a_ord) != 0) {
          bim = false;
          bim_detail = "left slot at (" + code_str(i) + "," + code_str(i2) + ")";
          break;
        }
    }
  for (i64 j = 0; j < q2 && bim; ++j)
    for (i64 j2 = 0; j2 < q2 && bim; ++j2) {
      int32_t jj = c2.mul[static_cast<size_t>(j)][static_cast<size_t>(j2)];
      for (i64 i = 0; i < q1; ++i)
        if (umod(P[static_cast<size_t>(i)][static_cast<size_t>(jj)] -
                     P[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                     P[static_cast<size_t>(i)][static_cast<size_t>(j2)],
                 a_ord) != 0) {
          bim = false;
          bim_detail = "right slot at (" + code_str(j) + "," + code_str(j2) + ")";
          break;
        }
    }
  out.add("bimultiplicative", bim, bim_detail);

  out.add("orders_equal", q1 == q2,
          "[M1:K1] = " + code_str(q1) + ", [M2:K2] = " + code_str(q2));

  bool ndl = true;
  std::string ndl_detail;
  for (i64 i = 0; i < q1; ++i) {
    if (i == c1.id) continue;
    bool hit = false;
    for (i64 j = 0; j < q2; ++j)
      if (P[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
        hit = true;
        break;
      }
    if (!hit) {
      ndl = false;
      ndl_detail =
          "radical coset of element " + code_str(c1.reps[static_cast<size_t>(i)]);
      break;
    }
  }
  out.add("non_degenerate_left", ndl, ndl_detail);
  bool ndr = true;
  std::string ndr_detail;
  for (i64 j = 0; j < q2; ++j) {
    if (j == c2.id) continue;
    bool hit = false;
    for (i64 i = 0; i < q1; ++i)
      if (P[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
        hit = true;
        break;
      }
    if (!hit) {
      ndr = false;
      ndr_detail =
          "radical coset of element " + code_str(c2.reps[static_cast<size_t>(j)]);
      break;
    }
  }
  out.add("non_degenerate_right", ndr, ndr_detail);

  bool expo = true;
  std::string expo_detail;
  for (i64 i = 0; i < q1 && expo; ++i)
    if (a_ord % coset_order(c1, static_cast<int32_t>(i)) != 0) {
      expo = false;
      expo_detail = "left coset order does not divide the fiber order";
    }
  for (i64 j = 0; j < q2 && expo; ++j)
    if (a_ord % coset_order(c2, static_cast<int32_t>(j)) != 0) {
      expo = false;
      expo_detail = "right coset order does not divide the fiber order";
    }
  out.add("exponent_divides", expo, expo_detail);

  out.add("perfect_duality", out.all_pass(),
          "quotients of order " + code_str(q1) + " and " + code_str(q2));
  return out;
}

// Linear characters of the universe trivial on the fiber subgroup `base`
// (i.e. characters of the base quotient), optionally filtered to also be
// trivial on `also_trivial_on`.
std::vector<LinChar> base_characters(const GroupPtr& U, const Subgroup& base,
                                     const Subgroup* also_trivial_on,
                                     DualPtr& g_dual_out) {
  auto pref = std::make_shared<LinearDual>(U, base);
  auto g_dual = std::make_shared<LinearDual>(U, grp::whole_group(U), pref);
  LinChar triv;
  triv.t.assign(pref->chain().size(), 0);
  std::vector<LinChar> out;
  for (const LinChar& w : g_dual->characters_extending(triv)) {
    bool keep = true;
    if (also_trivial_on)
      for (i64 h : also_trivial_on->gens())
        if (g_dual->value_exp(w, h) != 0) {
          keep = false;
          break;
        }
    if (keep) out.push_back(w);
  }
  g_dual_out = g_dual;
  return out;
}

}  // namespace

SpecialPairReport special_pair_report(const SpecialPairData& sp, i64 cap) {
  if (!sp.is_special())
    fail(ErrorKind::Precondition,
         "pair is not special: " + sp.cert.first_failure());
  SpecialPairReport rep;
  const GroupPtr& U = sp.U;
  Subgroup whole = grp::whole_group(U);

  Subgroup ZH = sp.H.center();
  rep.checks.add("overlap_is_center_overlap",
                 ZH.intersect(sp.ZN).same_as(sp.HcapN),
                 "H cap N vs Z(H) cap Z(N)");

  HeisenbergPairData pr = commutator_pairing(U, sp.N, sp.A);
  rep.checks.merge("pairing", pr.checks);

  // N_max: the centralizer of H inside the preimage of the center of U/A.
  std::vector<i64> m_elems;
  for (i64 g = 0; g < U->order(); ++g) {
    bool central_image = true;
    for (i64 x : U->generators())
      if (!sp.A.contains(U->commutator(g, x))) {
        central_image = false;
        break;
      }
    if (central_image) m_elems.push_back(g);
  }
  Subgroup M = Subgroup::from_elements(U, m_elems);
  Subgroup n_max = M.centralizer_of(sp.H);
  rep.n_max = n_max;
  rep.checks.add("nmax_contains_n", n_max.contains_all(sp.N),
                 "|N_max| = " + code_str(n_max.order()));
  rep.checks.add("nmax_special",
                 is_special_pair(U, sp.H, n_max, sp.A).is_special());
  {
    bool truncated = false;
    std::vector<Subgroup> fam = family_between(sp.N, n_max, cap, truncated);
    bool sampled = false;
    fam = pick_family(fam, 32, sampled);
    i64 passed = 0;
    std::string first;
    for (const Subgroup& np : fam) {
      if (is_special_pair(U, sp.H, np, sp.A).is_special())
        ++passed;
      else if (first.empty())
        first = "subgroup of order " + code_str(np.order());
    }
    add_family_item(rep.checks, "intermediate_special",
                    static_cast<i64>(fam.size()), passed, first,
                    truncated || sampled);
  }

  // Subgroups A <= N' <= N, shared by the next three items.
  bool famA_truncated = false;
  std::vector<Subgroup> famA = family_between(sp.A, sp.N, cap, famA_truncated);

  {  // G/Z_G(N') is dual to N'/Z_{N'}(G) under the commutator map.
    bool sampled = false;
    std::vector<Subgroup> fam = pick_family(famA, 40, sampled);
    std::vector<Subgroup> with_trivial;
    with_trivial.push_back(Subgroup::from_elements(U, {U->id()}));
    with_trivial.insert(with_trivial.end(), fam.begin(), fam.end());
    i64 passed = 0;
    std::string first;
    for (const Subgroup& np : with_trivial) {
      Subgroup zgn = whole.centralizer_of(np);
      Subgroup znpg = np.intersect(sp.ZG);
      CheckList dual = pairing_duality(U, whole, zgn, np, znpg, sp.a_gen, sp.a_ord);
      if (dual.all_pass())
        ++passed;
      else if (first.empty())
        first = "subgroup of order " + code_str(np.order()) + ": " +
                dual.first_failure();
    }
    add_family_item(rep.checks, "commutator_duality_family",
                    static_cast<i64>(with_trivial.size()), passed, first,
                    famA_truncated || sampled);
  }

  {  // Genuine characters of abelian N': stabilizer Z_G(N'), orbit = extensions.
    bool sampled = false;
    std::vector<Subgroup> fam = pick_family(famA, 16, sampled);
    i64 total = 0, passed = 0;
    std::string first;
    for (const Subgroup& np : fam) {
      if (!np.is_abelian()) continue;
      Subgroup zgn = whole.centralizer_of(np);
      Subgroup znpg = np.intersect(sp.ZG);
      auto prefix = std::make_shared<LinearDual>(U, znpg);
      auto np_dual = std::make_shared<LinearDual>(U, np, prefix);
      for (const LinChar& c : np_dual->all_characters()) {
        if (!linchar_genuine(*np_dual, c, sp.a_gen, sp.a_ord)) continue;
        ++total;
        std::set<std::vector<i64>> orbit;
        std::vector<LinChar> work = {c};
        orbit.insert(linchar_key(*np_dual, c));
        while (!work.empty()) {
          LinChar cur = work.back();
          work.pop_back();
          for (i64 g : U->generators()) {
            LinChar cg = conj_linchar(*np_dual, cur, g);
            if (orbit.insert(linchar_key(*np_dual, cg)).second)
              work.push_back(cg);
          }
        }
        LinChar on_prefix;
        for (i64 z : prefix->chain())
          on_prefix.t.push_back(np_dual->value_exp(c, z));
        std::set<std::vector<i64>> exts;
        for (const LinChar& e : np_dual->characters_extending(on_prefix))
          exts.insert(linchar_key(*np_dual, e));
        bool ok = orbit == exts &&
                  static_cast<i64>(orbit.size()) * zgn.order() == U->order();
        if (ok)
          ++passed;
        else if (first.empty())
          first = "character of a subgroup of order " + code_str(np.order());
      }
    }
    add_family_item(rep.checks, "genuine_character_orbits", total, passed, first,
                    famA_truncated || sampled);
  }

  {  // <Res_{N'} pi, chi'> != 0 exactly when the central characters agree.
    chr::EngineResult eng = chr::irreducible_characters(U);
    rep.checks.add("table_certified_g", eng.certified());
    std::vector<CharacterObject> gpi =
        genuine_subset(eng.chars, sp.a_gen, sp.a_ord);
    bool sampled = false;
    std::vector<Subgroup> fam = pick_family(famA, 6, sampled);
    i64 total = 0, passed = 0;
    std::string first;
    for (const Subgroup& np : fam) {
      if (!np.is_abelian()) continue;
      Subgroup znpg = np.intersect(sp.ZG);
      auto prefix = std::make_shared<LinearDual>(U, znpg);
      auto np_dual = std::make_shared<LinearDual>(U, np, prefix);
      DomainPtr np_dom = chr::subgroup_domain(U, np);
      std::vector<LinChar> cgen;
      for (const LinChar& c : np_dual->all_characters())
        if (linchar_genuine(*np_dual, c, sp.a_gen, sp.a_ord)) cgen.push_back(c);
      if (cgen.size() > 12) {
        cgen.resize(12);
        sampled = true;
      }
      for (const CharacterObject& pi : gpi) {
        CharacterObject res = chr::restrict_character(pi, np_dom);
        LinChar psi_pi = central_restriction(pi, *prefix);
        for (const LinChar& c : cgen) {
          ++total;
          bool match = true;
          for (size_t zi = 0; zi < prefix->chain().size(); ++zi)
            if (np_dual->value_exp(c, prefix->chain()[zi]) != psi_pi.t[zi]) {
              match = false;
              break;
            }
          CharacterObject lc = chr::linear_character(np_dom, *np_dual, c);
          bool contains = chr::multiplicity(res, lc) != 0;
          if (contains == match)
            ++passed;
          else if (first.empty())
            first = "subgroup of order " + code_str(np.order());
        }
      }
    }
    add_family_item(rep.checks, "restriction_detects_central_character", total,
                    passed, first, famA_truncated || sampled);
  }

  {  // Z_G(N') = Z_N(N') H for every H cap N <= N' <= N.
    bool truncated = false;
    std::vector<Subgroup> famz;
    if (sp.HcapN.same_as(sp.A)) {
      famz = famA;
      truncated = famA_truncated;
    } else {
      famz = family_between(sp.HcapN, sp.N, cap, truncated);
    }
    bool sampled = false;
    std::vector<Subgroup> fam = pick_family(famz, 40, sampled);
    i64 passed = 0;
    std::string first;
    for (const Subgroup& np : fam) {
      Subgroup lhs = whole.centralizer_of(np);
      Subgroup rhs = sp.N.centralizer_of(np).join(sp.H);
      if (lhs.same_as(rhs))
        ++passed;
      else if (first.empty())
        first = "subgroup of order " + code_str(np.order());
    }
    add_family_item(rep.checks, "centralizer_factorization",
                    static_cast<i64>(fam.size()), passed, first,
                    truncated || sampled);
  }

  rep.checks.add("centralizer_of_zn_is_nh",
                 whole.centralizer_of(sp.ZN).same_as(sp.HN));
  Subgroup zg_n = whole.centralizer_of(sp.N);
  Subgroup znh = sp.ZN.join(sp.H);
  rep.checks.add("centralizer_of_n_is_znh", zg_n.same_as(znh));
  rep.checks.add("centralizer_of_n_is_zngh", zg_n.same_as(sp.ZNG.join(sp.H)));

  {
    CheckList d1 = pairing_duality(U, whole, znh, sp.N, sp.ZNG, sp.a_gen, sp.a_ord);
    rep.checks.add("duality_g_mod_znh", d1.all_pass(),
                   d1.all_pass() ? "G/Z(N)H paired with N/Z_N(G)"
                                 : d1.first_failure());
    CheckList d2 =
        pairing_duality(U, whole, sp.HN, sp.ZN, sp.ZNG, sp.a_gen, sp.a_ord);
    rep.checks.add("duality_g_mod_nh", d2.all_pass(),
                   d2.all_pass() ? "G/NH paired with Z(N)/Z_N(G)"
                                 : d2.first_failure());
  }
  rep.checks.add("overlap_center_index",
                 sp.ZN.order() * sp.ZHcapNG.order() ==
                     sp.ZNG.order() * sp.HcapN.order(),
                 "[Z(N):Z_N(G)] vs [H cap N : Z_{H cap N}(G)]");
  rep.checks.add("zn_factors", sp.ZN.same_as(sp.ZNG.join(sp.HcapN)));
  rep.checks.add("zg_factors", sp.ZG.same_as(sp.ZNG.join(sp.ZHG)));

  {  // The stabilizer of a genuine irreducible of H is exactly NH.
    SubgroupIrreducibles hirr = irreducible_characters_of(U, sp.H);
    rep.checks.add("table_certified_h", hirr.certified);
    std::vector<CharacterObject> gt =
        genuine_subset(hirr.chars, sp.a_gen, sp.a_ord);
    std::vector<i64> reps = left_transversal(whole, sp.H);
    i64 total = 0, passed = 0;
    std::string first;
    for (const CharacterObject& t : gt)
      for (i64 g : reps) {
        ++total;
        bool fixed = chr::char_equal(chr::conjugate_character(t, g), t);
        if (fixed == sp.HN.contains(g))
          ++passed;
        else if (first.empty())
          first = "coset of element " + code_str(g);
      }
    add_family_item(rep.checks, "genuine_stabilizer_is_nh", total, passed,
                    first, false);
  }

  {  // Heredity in intermediate sub-universes.
    auto dedup_push = [](std::vector<Subgroup>& v, Subgroup S) {
      for (const Subgroup& x : v)
        if (x.same_as(S)) return;
      v.push_back(std::move(S));
    };
    std::vector<Subgroup> over_h;
    dedup_push(over_h, sp.H);
    dedup_push(over_h, sp.H.join(sp.ZN));
    dedup_push(over_h, sp.HN);
    dedup_push(over_h, whole);
    i64 passed = 0;
    std::string first;
    for (const Subgroup& gp : over_h) {
      bool ok;
      if (gp.order() == U->order()) {
        ok = sp.is_special();
      } else {
        SubUniverse uni = sub_universe(U, gp);
        ok = is_special_pair(uni.T, uni.image(sp.H),
                             uni.image(sp.N.intersect(gp)), uni.image(sp.A))
                 .is_special();
      }
      if (ok)
        ++passed;
      else if (first.empty())
        first = "subgroup of order " + code_str(gp.order());
    }
    add_family_item(rep.checks, "heredity_over_h",
                    static_cast<i64>(over_h.size()), passed, first, false);

    std::vector<Subgroup> over_n;
    dedup_push(over_n, sp.N);
    dedup_push(over_n, sp.N.join(sp.ZHG));
    dedup_push(over_n, sp.HN);
    dedup_push(over_n, whole);
    passed = 0;
    first.clear();
    for (const Subgroup& gp : over_n) {
      bool ok;
      if (gp.order() == U->order()) {
        ok = sp.is_special();
      } else {
        SubUniverse uni = sub_universe(U, gp);
        ok = is_special_pair(uni.T, uni.image(sp.H.intersect(gp)),
                             uni.image(sp.N), uni.image(sp.A))
                 .is_special();
      }
      if (ok)
        ++passed;
      else if (first.empty())
        first = "subgroup of order " + code_str(gp.order());
    }
    add_family_item(rep.checks, "heredity_over_n",
                    static_cast<i64>(over_n.size()), passed, first, false);
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Lagrangian induction

LindCache make_lind_cache(const SpecialPairData& sp) {
  if (!sp.is_special())
    fail(ErrorKind::Precondition,
         "pair is not special: " + sp.cert.first_failure());
  LindCache c;
  c.pair = commutator_pairing(sp.U, sp.N, sp.A);
  c.L = first_lagrangian(c.pair);
  c.l_dual = std::make_shared<LinearDual>(sp.U, c.L, sp.zn_dual);
  c.LH = c.L.join(sp.H);
  c.l_dom = chr::subgroup_domain(sp.U, c.L);
  c.lh_dom = chr::subgroup_domain(sp.U, c.LH);
  c.h_dom = chr::subgroup_domain(sp.U, sp.H);
  c.g_dom = chr::full_domain(sp.U);
  return c;
}

LinChar central_product_char(const SpecialPairData& sp, const LinChar& psi,
                             const LinChar& chi) {
  if (!consistent_pair(sp, psi, chi))
    fail(ErrorKind::Precondition,
         "central characters disagree on the common central subgroup");
  const GroupPtr& U = sp.U;
  const i64 E = sp.zn_dual->value_mod();
  LinChar out;
  for (i64 z : sp.zn_dual->chain()) {
    bool done = false;
    for (i64 u : sp.ZNG.elements()) {
      i64 v = U->mul(U->inv(u), z);
      if (sp.HcapN.contains(v)) {
        out.t.push_back(umod(
            sp.zng_dual->value_exp(chi, u) + sp.hn_dual->value_exp(psi, v), E));
        done = true;
        break;
      }
    }
    if (!done)
      fail(ErrorKind::Engine, "center of N does not factor as Z_N(G) (H cap N)");
  }
  return out;
}

namespace {
void require_lind_inputs(const SpecialPairData& sp, const LinChar& psi,
                         const LinChar& chi) {
  if (!sp.is_special())
    fail(ErrorKind::Precondition,
         "pair is not special: " + sp.cert.first_failure());
  if (!linchar_genuine(*sp.hn_dual, psi, sp.a_gen, sp.a_ord) ||
      !linchar_genuine(*sp.zng_dual, chi, sp.a_gen, sp.a_ord))
    fail(ErrorKind::Precondition, "central characters must be genuine");
  if (!consistent_pair(sp, psi, chi))
    fail(ErrorKind::Precondition,
         "central characters disagree on the common central subgroup");
}
}  // namespace

CharacterObject lind(const SpecialPairData& sp, const LindCache& cache,
                     const LinChar& psi, const LinChar& chi,
                     const CharacterObject& tau) {
  require_lind_inputs(sp, psi, chi);
  if (tau.dom->U.get() != sp.U.get() || !tau.dom->H.same_as(sp.H))
    fail(ErrorKind::DomainMismatch, "input character does not live on H");
  if (!linchar_equal(*sp.hn_dual, central_restriction(tau, *sp.hn_dual), psi))
    fail(ErrorKind::Precondition,
         "input character's central character differs from psi");
  LinChar theta0 = central_product_char(sp, psi, chi);
  std::vector<LinChar> exts = cache.l_dual->characters_extending(theta0);
  if (exts.empty())
    fail(ErrorKind::Engine,
         "central character does not extend to the Lagrangian");
  CharacterObject theta =
      chr::linear_character(cache.l_dom, *cache.l_dual, exts.front());
  return chr::induce_character(extend_locally(tau, theta, cache.lh_dom),
                               cache.g_dom);
}

CharacterObject lres(const SpecialPairData& sp, const LindCache& cache,
                     const LinChar& psi, const LinChar& chi,
                     const CharacterObject& pi) {
  require_lind_inputs(sp, psi, chi);
  if (pi.dom->U.get() != sp.U.get() || pi.dom->H.order() != sp.U->order())
    fail(ErrorKind::DomainMismatch,
         "input character does not live on the whole group");
  if (!linchar_equal(*sp.zng_dual, central_restriction(pi, *sp.zng_dual), chi))
    fail(ErrorKind::Precondition,
         "input character's central character differs from chi");
  LinChar theta0 = central_product_char(sp, psi, chi);
  std::vector<LinChar> exts = cache.l_dual->characters_extending(theta0);
  if (exts.empty())
    fail(ErrorKind::Engine,
         "central character does not extend to the Lagrangian");
  const LinChar& theta = exts.front();
  const i64 E = cache.l_dual->value_mod();
  const GroupPtr& U = sp.U;
  // The theta-projector trace: values (1/|L|) sum_a theta(a)^{-1} pi(a h);
  // exact because h centralizes L, so pi(h) commutes with the projector.
  CharacterObject out;
  out.dom = cache.h_dom;
  out.values.reserve(cache.h_dom->cls.reps.size());
  for (i64 h : cache.h_dom->cls.reps) {
    Cyc sum = Cyc::zero(1);
    for (i64 a : cache.L.elements()) {
      i64 k = cache.l_dual->value_exp(theta, a);
      sum += Cyc::root_power(umod(-k, E), E) * pi.value_of(U->mul(a, h));
    }
    out.values.push_back(sum.divide_exact(cache.L.order()));
  }
  return out;
}

LindReport lagrangian_induction(const SpecialPairData& sp, const LinChar& psi,
                                const LinChar& chi, const CharacterObject& tau,
                                i64 cap) {
  LindCache cache = make_lind_cache(sp);
  LindReport rep;
  rep.character = lind(sp, cache, psi, chi, tau);
  const GroupPtr& U = sp.U;
  Subgroup whole = grp::whole_group(U);
  const i64 E = U->exponent();
  const CharacterObject& pi = rep.character;

  LinChar phi_of_psi;
  for (i64 z : sp.phi_dual->chain())
    phi_of_psi.t.push_back(sp.hn_dual->value_exp(psi, z));
  std::vector<LinChar> chi_family =
      sp.zng_dual->characters_extending(phi_of_psi);

  {  // Every (Lagrangian, extension) choice produces the same character.
    std::vector<Subgroup> ls = lagrangians(cache.pair, cap);
    LinChar theta0 = central_product_char(sp, psi, chi);
    bool ok = true;
    std::string detail;
    i64 combos = 0;
    for (const Subgroup& l : ls) {
      auto l_dual = std::make_shared<LinearDual>(U, l, sp.zn_dual);
      DomainPtr l_dom = chr::subgroup_domain(U, l);
      DomainPtr lh_dom = chr::subgroup_domain(U, l.join(sp.H));
      for (const LinChar& e : l_dual->characters_extending(theta0)) {
        ++combos;
        CharacterObject cand = chr::induce_character(
            extend_locally(tau, chr::linear_character(l_dom, *l_dual, e),
                           lh_dom),
            cache.g_dom);
        if (!chr::char_equal(cand, pi)) {
          ok = false;
          detail = "Lagrangian of order " + code_str(l.order());
          break;
        }
      }
      if (!ok) break;
    }
    rep.checks.add("choice_independence", ok,
                   ok ? code_str(combos) + " (L, theta) choices agree" : detail);
  }

  rep.checks.add(
      "inner_product_preserved",
      chr::inner_product(pi, pi) == chr::inner_product(tau, tau));

  const i64 index = U->order() / cache.LH.order();
  rep.checks.add("degree_scaling", pi.degree() == tau.degree() * index,
                 "degree " + code_str(pi.degree()) + " vs " +
                     code_str(tau.degree()) + " * [G:LH] with [G:LH] = " +
                     code_str(index));

  {  // Ind_H^G tau = d * sum over the consistent central family.
    i64 count1 = sp.ZN.order() / sp.HcapN.order();
    i64 count2 = sp.ZNG.order() / sp.ZHcapNG.order();
    rep.checks.add("central_family_count",
                   static_cast<i64>(chi_family.size()) == count2 &&
                       count1 == count2,
                   code_str(static_cast<i64>(chi_family.size())) +
                       " characters; [Z(N) : H cap N] = " + code_str(count1));
    std::optional<CharacterObject> sum;
    for (const LinChar& c : chi_family) {
      CharacterObject t = lind(sp, cache, psi, c, tau);
      sum = sum ? chr::char_add(*sum, t) : t;
    }
    CharacterObject ind = chr::induce_character(tau, cache.g_dom);
    rep.checks.add("induction_decomposes",
                   sum && chr::char_equal(ind, chr::char_scale(*sum, sp.d)),
                   "Ind tau = d * (family sum), d = " + code_str(sp.d));
  }

  {  // Duality.
    LinChar psi_c = inv_linchar(*sp.hn_dual, psi);
    LinChar chi_c = inv_linchar(*sp.zng_dual, chi);
    CharacterObject lhs =
        lind(sp, cache, psi_c, chi_c, chr::char_conjugate_dual(tau));
    rep.checks.add("dual_compatibility",
                   chr::char_equal(lhs, chr::char_conjugate_dual(pi)));
  }

  {  // Conjugation invariance over G/NH.
    std::vector<i64> reps = left_transversal(whole, sp.HN);
    bool ok = true;
    std::string detail;
    for (i64 g : reps) {
      LinChar psi_g = conj_linchar(*sp.hn_dual, psi, g);
      CharacterObject tau_g = chr::conjugate_character(tau, g);
      if (!chr::char_equal(lind(sp, cache, psi_g, chi, tau_g), pi)) {
        ok = false;
        detail = "coset of element " + code_str(g);
        break;
      }
    }
    rep.checks.add("conjugation_invariance", ok,
                   ok ? code_str(static_cast<i64>(reps.size())) +
                            " cosets of NH"
                      : detail);
  }

  {  // The restriction family is the conjugation orbit, and Res decomposes.
    LinChar phi_of_chi;
    for (i64 z : sp.phi_dual->chain())
      phi_of_chi.t.push_back(sp.zng_dual->value_exp(chi, z));
    std::vector<LinChar> psis = sp.hn_dual->characters_extending(phi_of_chi);
    i64 count1 = sp.HcapN.order() / sp.ZHcapNG.order();
    i64 count2 = sp.ZN.order() / sp.ZNG.order();
    rep.checks.add("restriction_family_count",
                   static_cast<i64>(psis.size()) == count1 && count1 == count2,
                   code_str(static_cast<i64>(psis.size())) +
                       " characters; [Z(N) : Z_N(G)] = " + code_str(count2));
    std::set<std::vector<Cyc>> fam;
    std::optional<CharacterObject> sum;
    for (const LinChar& p2 : psis) {
      CharacterObject r = lres(sp, cache, p2, chi, pi);
      fam.insert(r.values);
      sum = sum ? chr::char_add(*sum, r) : r;
    }
    std::set<std::vector<Cyc>> orbit;
    for (i64 g : left_transversal(whole, sp.HN))
      orbit.insert(chr::conjugate_character(tau, g).values);
    rep.checks.add("restriction_family_is_orbit",
                   fam == orbit && fam.size() == psis.size(),
                   code_str(static_cast<i64>(fam.size())) +
                       " distinct restrictions");
    CharacterObject res = chr::restrict_character(pi, cache.h_dom);
    rep.checks.add("restriction_decomposes",
                   sum && chr::char_equal(res, chr::char_scale(*sum, sp.d)),
                   "Res pi = d * (family sum), d = " + code_str(sp.d));
  }

  rep.checks.add("inverse_roundtrip",
                 chr::char_equal(lres(sp, cache, psi, chi, pi), tau));

  {  // Twisting by characters of the base quotient.
    DualPtr g_dual;
    std::vector<LinChar> omegas = base_characters(U, sp.A, nullptr, g_dual);
    rep.checks.add("base_character_count",
                   static_cast<i64>(omegas.size()) * sp.A.order() == U->order(),
                   code_str(static_cast<i64>(omegas.size())) +
                       " characters of the base quotient");
    Subgroup hz = sp.H.join(sp.ZNG);
    bool twist_ok = true, fix_ok = true;
    std::string tdetail;
    i64 fixed_count = 0;
    std::set<std::vector<Cyc>> twists_h;
    for (const LinChar& w : omegas) {
      CharacterObject wchar;
      wchar.dom = cache.g_dom;
      wchar.values.reserve(cache.g_dom->cls.reps.size());
      for (i64 r : cache.g_dom->cls.reps)
        wchar.values.push_back(Cyc::root_power(g_dual->value_exp(w, r), E));
      CharacterObject pw = chr::char_mul(pi, wchar);

      LinChar psi_w, chi_w;
      for (i64 z : sp.hn_dual->chain())
        psi_w.t.push_back(
            umod(sp.hn_dual->value_exp(psi, z) + g_dual->value_exp(w, z), E));
      for (i64 z : sp.zng_dual->chain())
        chi_w.t.push_back(
            umod(sp.zng_dual->value_exp(chi, z) + g_dual->value_exp(w, z), E));
      CharacterObject tau_w =
          chr::char_mul(tau, chr::restrict_character(wchar, tau.dom));
      if (!chr::char_equal(lind(sp, cache, psi_w, chi_w, tau_w), pw)) {
        twist_ok = false;
        if (tdetail.empty()) tdetail = "a base character breaks equivariance";
      }

      bool trivial_on_hz = true;
      for (i64 x : hz.gens())
        if (g_dual->value_exp(w, x) != 0) {
          trivial_on_hz = false;
          break;
        }
      if (trivial_on_hz) {
        ++fixed_count;
        if (!chr::char_equal(pw, pi)) fix_ok = false;
      }

      bool trivial_on_h = true;
      for (i64 x : sp.H.gens())
        if (g_dual->value_exp(w, x) != 0) {
          trivial_on_h = false;
          break;
        }
      if (trivial_on_h) twists_h.insert(pw.values);
    }
    rep.checks.add("twist_compatibility", twist_ok,
                   twist_ok ? code_str(static_cast<i64>(omegas.size())) +
                                  " base characters"
                            : tdetail);
    rep.checks.add("twist_by_trivial_fixes", fix_ok,
                   code_str(fixed_count) + " characters trivial on H Z_N(G)");

    std::set<std::vector<Cyc>> family_imgs;
    for (const LinChar& c : chi_family)
      family_imgs.insert(lind(sp, cache, psi, c, tau).values);
    rep.checks.add("twist_orbit_matches", twists_h == family_imgs,
                   code_str(static_cast<i64>(twists_h.size())) +
                       " twists vs " +
                       code_str(static_cast<i64>(family_imgs.size())) +
                       " family members");
  }

  return rep;
}

CheckList lind_bijection_suite(const SpecialPairData& sp) {
  CheckList out;
  LindCache cache = make_lind_cache(sp);
  const GroupPtr& U = sp.U;
  SubgroupIrreducibles hirr = irreducible_characters_of(U, sp.H);
  chr::EngineResult geng = chr::irreducible_characters(U);
  out.add("tables_certified", hirr.certified && geng.certified());
  std::vector<CharacterObject> gh = genuine_subset(hirr.chars, sp.a_gen, sp.a_ord);
  std::vector<CharacterObject> gg = genuine_subset(geng.chars, sp.a_gen, sp.a_ord);

  std::map<std::vector<i64>, std::vector<size_t>> by_psi, by_chi;
  for (size_t i = 0; i < gh.size(); ++i)
    by_psi[central_restriction(gh[i], *sp.hn_dual).t].push_back(i);
  for (size_t i = 0; i < gg.size(); ++i)
    by_chi[central_restriction(gg[i], *sp.zng_dual).t].push_back(i);

  const i64 index = U->order() / cache.LH.order();
  bool counts = true, member = true, inj = true, surj = true, deg = true,
       inv = true;
  std::string detail;
  i64 pairs = 0;
  std::set<std::vector<i64>> visited_chi;
  for (const auto& [psi_t, hlist] : by_psi) {
    LinChar psi;
    psi.t = psi_t;
    LinChar phi;
    for (i64 z : sp.phi_dual->chain())
      phi.t.push_back(sp.hn_dual->value_exp(psi, z));
    for (const LinChar& chi : sp.zng_dual->characters_extending(phi)) {
      ++pairs;
      visited_chi.insert(chi.t);
      auto git = by_chi.find(chi.t);
      size_t gcount = git == by_chi.end() ? 0 : git->second.size();
      if (hlist.size() != gcount) {
        counts = false;
        if (detail.empty()) detail = "central fiber size mismatch";
      }
      std::set<size_t> hit;
      for (size_t hi2 : hlist) {
        CharacterObject img = lind(sp, cache, psi, chi, gh[hi2]);
        if (img.degree() != gh[hi2].degree() * index) deg = false;
        std::optional<size_t> found;
        if (git != by_chi.end())
          for (size_t gi : git->second)
            if (chr::char_equal(img, gg[gi])) {
              found = gi;
              break;
            }
        if (!found)
          member = false;
        else if (!hit.insert(*found).second)
          inj = false;
        if (!chr::char_equal(lres(sp, cache, psi, chi, img), gh[hi2]))
          inv = false;
      }
      if (hit.size() != gcount) surj = false;
    }
  }
  for (const auto& [chi_t, glist] : by_chi)
    if (!visited_chi.count(chi_t)) {
      surj = false;
      if (detail.empty()) detail = "unreached central character on the G side";
    }

  out.add("central_fiber_counts", counts,
          code_str(pairs) + " consistent central pairs; " +
              code_str(static_cast<i64>(gh.size())) + " genuine on H, " +
              code_str(static_cast<i64>(gg.size())) + " genuine on G");
  out.add("images_are_genuine_irreducible", member);
  out.add("injective", inj);
  out.add("surjective", surj, detail);
  out.add("degree_scaling", deg, "[G : LH] = " + code_str(index));
  out.add("inverse_recovers", inv);

  {  // Conjugation orbits on the H side match twist orbits on the G side.
    std::map<std::vector<Cyc>, size_t> hpos, gpos;
    for (size_t i = 0; i < gh.size(); ++i) hpos[gh[i].values] = i;
    for (size_t i = 0; i < gg.size(); ++i) gpos[gg[i].values] = i;
    std::vector<i64> hreps = left_transversal(grp::whole_group(U), sp.H);
    std::vector<int> horbit(gh.size(), -1);
    int nh = 0;
    bool closed = true;
    for (size_t i = 0; i < gh.size(); ++i) {
      if (horbit[i] != -1) continue;
      int id = nh++;
      for (i64 g : hreps) {
        auto it = hpos.find(chr::conjugate_character(gh[i], g).values);
        if (it == hpos.end()) {
          closed = false;
          continue;
        }
        if (horbit[it->second] == -1) horbit[it->second] = id;
      }
    }
    DualPtr g_dual;
    std::vector<LinChar> omh = base_characters(U, sp.A, &sp.H, g_dual);
    const i64 E = U->exponent();
    std::vector<int> gorbit(gg.size(), -1);
    int ng = 0;
    for (size_t i = 0; i < gg.size(); ++i) {
      if (gorbit[i] != -1) continue;
      int id = ng++;
      for (const LinChar& w : omh) {
        CharacterObject wchar;
        wchar.dom = cache.g_dom;
        wchar.values.reserve(cache.g_dom->cls.reps.size());
        for (i64 r : cache.g_dom->cls.reps)
          wchar.values.push_back(Cyc::root_power(g_dual->value_exp(w, r), E));
        auto it = gpos.find(chr::char_mul(gg[i], wchar).values);
        if (it == gpos.end()) {
          closed = false;
          continue;
        }
        if (gorbit[it->second] == -1) gorbit[it->second] = id;
      }
    }
    std::vector<int> image_of(static_cast<size_t>(nh), -1);
    bool functional = true;
    for (size_t i = 0; i < gh.size(); ++i) {
      LinChar psi = central_restriction(gh[i], *sp.hn_dual);
      LinChar phi;
      for (i64 z : sp.phi_dual->chain())
        phi.t.push_back(sp.hn_dual->value_exp(psi, z));
      std::vector<LinChar> chis = sp.zng_dual->characters_extending(phi);
      if (chis.empty()) {
        functional = false;
        continue;
      }
      CharacterObject img = lind(sp, cache, psi, chis.front(), gh[i]);
      auto it = gpos.find(img.values);
      int target = it == gpos.end() ? -2 : gorbit[it->second];
      int& slot = image_of[static_cast<size_t>(horbit[i])];
      if (slot == -1)
        slot = target;
      else if (slot != target)
        functional = false;
    }
    std::set<int> img_set(image_of.begin(), image_of.end());
    bool bij = functional && closed && nh == ng &&
               static_cast<int>(img_set.size()) == nh && !img_set.count(-2) &&
               !img_set.count(-1);
    out.add("orbit_correspondence", bij,
            code_str(nh) + " conjugation orbits vs " + code_str(ng) +
                " twist orbits");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clifford suite

CheckList clifford_suite(GroupPtr U, const Subgroup& H) {
  CheckList out;
  bool normal = H.is_normal();
  out.add("carrier_normal", normal);
  if (!normal) return out;
  Subgroup whole = grp::whole_group(U);
  SubgroupIrreducibles hirr = irreducible_characters_of(U, H);
  out.add("table_certified", hirr.certified);
  DomainPtr g_dom = chr::full_domain(U);
  std::vector<i64> reps = left_transversal(whole, H);

  bool mackey = true;
  std::string mdetail;
  for (const CharacterObject& t : hirr.chars) {
    CharacterObject res =
        chr::restrict_character(chr::induce_character(t, g_dom), hirr.dom);
    std::optional<CharacterObject> sum;
    for (i64 g : reps) {
      CharacterObject tg = chr::conjugate_character(t, g);
      sum = sum ? chr::char_add(*sum, tg) : tg;
    }
    if (!chr::char_equal(res, *sum)) {
      mackey = false;
      mdetail = "an irreducible of degree " + code_str(t.degree());
      break;
    }
  }
  out.add("mackey_restriction_of_induction", mackey,
          mackey ? code_str(static_cast<i64>(hirr.chars.size())) +
                       " irreducibles"
                 : mdetail);

  Subgroup zh = H.center();
  if (!zh.is_normal()) {
    out.add("center_normal", false, "the center of the carrier is not normal");
    return out;
  }
  auto zh_dual = std::make_shared<LinearDual>(U, zh);
  DomainPtr zh_dom = chr::subgroup_domain(U, zh);
  std::optional<chr::EngineResult> geng;
  bool ind_irr = true, distinct = true, count_ok = true, mult_one = true;
  i64 used = 0;
  for (const LinChar& psi : zh_dual->all_characters()) {
    bool stab_is_h = true;
    for (i64 g : reps) {
      if (H.contains(g)) continue;
      if (linchar_equal(*zh_dual, conj_linchar(*zh_dual, psi, g), psi)) {
        stab_is_h = false;
        break;
      }
    }
    if (!stab_is_h) continue;
    ++used;
    std::vector<const CharacterObject*> members;
    for (const CharacterObject& t : hirr.chars)
      if (linchar_equal(*zh_dual, central_restriction(t, *zh_dual), psi))
        members.push_back(&t);
    std::vector<CharacterObject> inds;
    for (const CharacterObject* t : members) {
      CharacterObject ind = chr::induce_character(*t, g_dom);
      if (!chr::is_irreducible(ind)) ind_irr = false;
      if (chr::multiplicity(chr::restrict_character(ind, hirr.dom), *t) != 1)
        mult_one = false;
      inds.push_back(std::move(ind));
    }
    for (size_t i = 0; i < inds.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (chr::char_equal(inds[i], inds[j])) distinct = false;
    if (!geng) geng = chr::irreducible_characters(U);
    CharacterObject psi_char = chr::linear_character(zh_dom, *zh_dual, psi);
    i64 matches = 0;
    for (const CharacterObject& pi : geng->chars)
      if (chr::multiplicity(chr::restrict_character(pi, zh_dom), psi_char) != 0)
        ++matches;
    if (matches != static_cast<i64>(members.size())) count_ok = false;
  }
  out.add("distinguished_inductions_irreducible", ind_irr,
          code_str(used) + " central characters with stabilizer H");
  out.add("distinguished_inductions_distinct", distinct);
  out.add("distinguished_count_matches", count_ok);
  out.add("distinguished_multiplicity_one", mult_one);
  return out;
}

}  // namespace covrep::heis
