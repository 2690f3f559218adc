#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "covrep/character.hpp"

// Finite Heisenberg-type pairs (N, A), Lagrangian subgroups, Stone-von
// Neumann characters, special pairs (H, N) inside a class-<=2 universe, and
// Lagrangian induction LInd: Irr_psi(H) -> Irr_chi(G), all verified at the
// level of exact cyclotomic character arithmetic.  Every structural claim is
// re-checked at runtime and reported through named check items, so a report
// is a certificate, not an assumption.

namespace covrep::heis {

using chr::CharacterObject;
using chr::DomainPtr;
using grp::FiniteGroup;
using grp::GroupPtr;
using grp::LinChar;
using grp::LinearDual;
using grp::Subgroup;
using zmat::i64;

using DualPtr = std::shared_ptr<const LinearDual>;

// ---------------------------------------------------------------------------
// Named verification results.

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or context on failure; may be empty
};

struct CheckList {
  std::vector<CheckItem> items;

  void add(const std::string& name, bool pass, std::string detail = "");
  // Absorb a sub-list under "prefix/".
  void merge(const std::string& prefix, const CheckList& sub);
  bool all_pass() const;
  const CheckItem* find(const std::string& name) const;
  std::string first_failure() const;  // empty when all pass
};

// ---------------------------------------------------------------------------
// Small helpers shared by the verification drivers.

// k with v = zeta_order^k; fails when v is not a root of unity of that order.
i64 root_exponent(const cyc::Cyc& v, i64 order);

// Multiplicative order of zeta_E^k.
i64 value_order(i64 k, i64 E);

// A subgroup replayed as a standalone group table, with both element maps.
// Used to run whole-group machinery (the character engine, specialness) on a
// proper subgroup.
struct SubUniverse {
  GroupPtr T;
  std::vector<i64> from_T;               // T code -> universe code
  std::unordered_map<i64, i64> to_T;     // universe code -> T code
  Subgroup image(const Subgroup& S) const;  // S must lie inside the carrier
};
SubUniverse sub_universe(GroupPtr U, const Subgroup& S);

// Left coset representatives of `small` in `big` (minimal code per coset).
std::vector<i64> left_transversal(const Subgroup& big, const Subgroup& small);

// Every subgroup S with lo <= S <= hi, enumerated through the finite
// quotient hi/lo; requires lo normal in hi.  Deterministic order (by order,
// then element list).  Fails with a size-cap error past `cap` subgroups.
std::vector<Subgroup> subgroups_between(const Subgroup& lo, const Subgroup& hi,
                                        i64 cap);

// ---------------------------------------------------------------------------
// Heisenberg-type pairs.

// True iff every commutator of N lies in A.  A must be a central cyclic
// subgroup of N (precondition failure otherwise).
bool is_heisenberg_type(GroupPtr U, const Subgroup& N, const Subgroup& A);

struct HeisenbergPairData {
  GroupPtr U;
  Subgroup N, A, ZN;  // ZN = Z(N)
  i64 a_gen = 0;      // generator of A (least code of full order)
  i64 a_ord = 1;      // |A|
  i64 d = 0;          // sqrt([N : Z(N)])
  // X = N/Z(N): sorted minimal coset representatives and the commutator
  // pairing [x_i, x_j] = a_gen^{pairing[i][j]}.
  std::vector<i64> xreps;
  std::vector<std::vector<i64>> pairing;
  CheckList checks;  // bimultiplicative / alternating / non-degenerate /
                     // perfect-square index / dual-map bijectivity
  DualPtr zn_dual;   // linear characters of Z(N)
  DomainPtr n_dom;   // class functions on N

  bool ok() const { return checks.all_pass(); }
};

// Builds X and the pairing and verifies its properties exhaustively.
HeisenbergPairData commutator_pairing(GroupPtr U, const Subgroup& N,
                                      const Subgroup& A);

// Greedy deterministic Lagrangian (least coset codes first).
Subgroup first_lagrangian(const HeisenbergPairData& pr);

// All Lagrangian subgroups Z(N) <= L <= N, each verified against the
// equivalent maximality conditions ([L:Z(N)] = [N:L], L = Z_N(L), maximal
// abelian, L/Z(N) ~ Hom(N/L, A)).  Deterministic order.
std::vector<Subgroup> lagrangians(const HeisenbergPairData& pr,
                                  i64 cap = 200000);

// Characters of Z(N) faithful on A, in chain-enumeration order.
std::vector<LinChar> genuine_central_characters(const HeisenbergPairData& pr);

struct SvNResult {
  CharacterObject character;  // on N
  i64 degree = 0;
  CheckList checks;
};

// The unique irreducible of N with genuine central character psi, built as
// Ind_L^N of an extension of psi.  Verifies irreducibility, degree d, the
// extension count d with the simply-transitive N/L action, independence of
// the (L, extension) choice (all choices compared when verify_choices), and
// uniqueness against the full character table (when verify_unique).
SvNResult stone_von_neumann(const HeisenbergPairData& pr, const LinChar& psi,
                            bool verify_choices = true,
                            bool verify_unique = true, i64 cap = 200000);

// ---------------------------------------------------------------------------
// Character tables of subgroups.

struct SubgroupIrreducibles {
  DomainPtr dom;                      // class functions on H inside U
  std::vector<CharacterObject> chars; // complete irreducible list
  i64 sum_deg_sq = 0;
  bool certified = false;             // engine certificate on the replay table
};

// Complete irreducible characters of a subgroup H <= U (replayed standalone
// when proper), as class functions on H inside U.
SubgroupIrreducibles irreducible_characters_of(GroupPtr U, const Subgroup& H);

// Restriction to A is the full-order power of the faithful character.
bool is_genuine(const CharacterObject& c, i64 a_gen, i64 a_ord);
std::vector<CharacterObject> genuine_subset(
    const std::vector<CharacterObject>& chars, i64 a_gen, i64 a_ord);

// Full irreducible list of the whole universe (the monomial engine).
inline chr::EngineResult irreducible_characters(GroupPtr U) {
  return chr::irreducible_characters(std::move(U));
}

// ---------------------------------------------------------------------------
// Special pairs.

struct SpecialPairData {
  GroupPtr U;
  Subgroup H, N, A;
  i64 a_gen = 0;
  i64 a_ord = 1;
  CheckList cert;  // the specialness certificate, every condition named
  i64 d = 0;       // sqrt([N : Z(N)])

  // Cached subgroup data (valid whenever the names make sense, i.e. the
  // basic containments hold).
  Subgroup HN, HcapN, ZG, ZN, ZNG, ZHG, ZHcapNG;

  // Character chains; only built when the certificate passes.
  DualPtr phi_dual;  // on Z_{H cap N}(G)
  DualPtr hn_dual;   // on H cap N, extending phi_dual's chain
  DualPtr zng_dual;  // on Z_N(G), extending phi_dual's chain
  DualPtr zn_dual;   // on Z(N)

  bool is_special() const { return cert.all_pass(); }
};

// Checks H normal, N <= Z_G(H), [N, G] <= A (central image), and
// Z_G(H cap N) = NH; every failure is a named certificate item.  A must be
// central cyclic in U and contained in both H and N.
SpecialPairData is_special_pair(GroupPtr U, const Subgroup& H,
                                const Subgroup& N, const Subgroup& A);

// Genuine linear characters of a chain (faithful on the fiber generator).
bool linchar_genuine(const LinearDual& dual, const LinChar& c, i64 a_gen,
                     i64 a_ord);
// psi on H cap N and chi on Z_N(G) agree on Z_{H cap N}(G).
bool consistent_pair(const SpecialPairData& sp, const LinChar& psi,
                     const LinChar& chi);

struct SpecialPairReport {
  CheckList checks;
  std::optional<Subgroup> n_max;
};

// Exhaustive verification of the structural consequences of specialness:
// the center overlap H cap N = Z(H) cap Z(N); (N, A) Heisenberg; the maximal
// companion N_max (with every intermediate subgroup special); the commutator
// dualities G/Z_G(N') ~ dual of N'/Z_{N'}(G); the centralizer identities
// down to Z(G) = Z_N(G) Z_H(G); stabilizers of genuine characters and of
// genuine irreducibles of H; and heredity in intermediate sub-universes.
// Lattice quantifiers are capped: when a subgroup interval exceeds the cap,
// a deterministic generated family is used instead and the item says so.
SpecialPairReport special_pair_report(const SpecialPairData& sp,
                                      i64 cap = 4000);

// ---------------------------------------------------------------------------
// Extension of a character along a central complement.

// The extension of tau (on H) and chi (a linear character on L, centralizing
// H) to HL, with value chi(a) tau(h) at ah.  chi and tau must agree on
// L cap H (consistency failure otherwise).  hl_dom, when supplied, must be
// the class-function domain of join(H, L).
CharacterObject extend_locally(const CharacterObject& tau,
                               const CharacterObject& chi,
                               DomainPtr hl_dom = nullptr);

// Ind_H^{HL} tau equals the sum of the extensions of tau over all [HL : H]
// linear characters of L consistent with tau.
CheckList extension_sum_check(const CharacterObject& tau, const Subgroup& L);

// ---------------------------------------------------------------------------
// Lagrangian induction.

// Pinned choices and cached domains for the induction maps of one special
// pair: a fixed Lagrangian L of (N, A), its character chain over Z(N), and
// the class-function domains of L, LH, H, G.
struct LindCache {
  Subgroup L, LH;
  DualPtr l_dual;
  DomainPtr l_dom, lh_dom, h_dom, g_dom;
  HeisenbergPairData pair;
};
LindCache make_lind_cache(const SpecialPairData& sp);

// The linear character chi psi of Z(N) = Z_N(G) (H cap N) determined by a
// consistent pair.
LinChar central_product_char(const SpecialPairData& sp, const LinChar& psi,
                             const LinChar& chi);

// LInd_{H,psi}^{G,chi} tau = Ind_{LH}^G ex(tau, theta) for the cached L and
// the first extension theta of chi psi; preconditions: sp special, (psi,
// chi) consistent genuine, tau has central character psi on H cap N.
CharacterObject lind(const SpecialPairData& sp, const LindCache& cache,
                     const LinChar& psi, const LinChar& chi,
                     const CharacterObject& tau);

// Inverse: the theta-isotypic part of pi restricted to H; preconditions as
// for lind plus pi having central character chi on Z_N(G).
CharacterObject lres(const SpecialPairData& sp, const LindCache& cache,
                     const LinChar& psi, const LinChar& chi,
                     const CharacterObject& pi);

struct LindReport {
  CharacterObject character;
  CheckList checks;
};

// Full per-character verification: independence of every (L, theta) choice;
// inner product preserved; the decomposition Ind_H^G tau = d * sum over
// consistent chi' of LInd^{chi'} tau with the index count; duality
// compatibility; conjugation invariance over G/H with the G/NH orbit of the
// restriction family; twist compatibility (cover models); and the inverse
// property of lres.
LindReport lagrangian_induction(const SpecialPairData& sp, const LinChar& psi,
                                const LinChar& chi, const CharacterObject& tau,
                                i64 cap = 200000);

// Exhaustive bijection check over every consistent genuine pair (psi, chi):
// LInd matches genuine irreducibles of H with central data psi to genuine
// irreducibles of G with central data chi, bijectively in both directions,
// with degrees scaled by exactly [G : LH]; includes the orbit
// correspondence between conjugation orbits on the H side and twist orbits
// on the G side (cover models).
CheckList lind_bijection_suite(const SpecialPairData& sp);

// ---------------------------------------------------------------------------
// Clifford-theory suite for a normal subgroup.

// Mackey's identity Res Ind tau = sum of the Gamma-conjugates of tau for
// every irreducible of H, and the induction bijection Irr_psi(H) ->
// Irr_psi(G) whenever a central character psi of Z(H) has stabilizer
// exactly H.
CheckList clifford_suite(GroupPtr U, const Subgroup& H);

}  // namespace covrep::heis
