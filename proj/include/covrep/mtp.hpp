#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covrep/heis.hpp"

// The metaplectic tensor product in the finite torus models.  One block
// composition beta of r yields two covers on the same coordinate set: the
// full model G1 (every slot pair contributes to the cocycle) and the
// blockwise model G2 (cross-block contributions dropped), which realizes the
// quotient of the product of block covers by the antidiagonal fiber.  The
// identity map on coordinates restricts to a covering isomorphism on the
// common subgroup H of blockwise determinant-trivial classes; transfer of
// genuine irreducible characters runs through Lagrangian restriction on one
// side and Lagrangian induction on the other.  Everything is certified at
// runtime: well-matchedness, independence of auxiliary choices, bijectivity,
// associativity, permutation equivariance, twist-orbit structure.

namespace covrep::mtp {

using chr::CharacterObject;
using chr::DomainPtr;
using cover::CoverSpec;
using grp::GroupPtr;
using grp::LinChar;
using grp::LinearDual;
using grp::Subgroup;
using heis::CheckItem;
using heis::CheckList;
using heis::LindCache;
using heis::SpecialPairData;
using zmat::i64;

// ---------------------------------------------------------------------------
// Well-matched model pairs.

// Both models of one composition with their special pairs (H, N) = (det
// class trivial, blockwise scalar) and the pinned Lagrangian-induction data.
// For a single block the two models coincide and share one group object.
struct WellMatchedData {
  CoverSpec spec;
  GroupPtr G1, G2;
  SpecialPairData sp1, sp2;
  LindCache cache1, cache2;
  CheckList cert;
  bool ok() const { return cert.all_pass(); }
};

// Builds both models and certifies well-matchedness: equal base images of H,
// N and Z_{H cap N}(G) on the two sides, the coordinate identity a covering
// isomorphism on H fixing the fiber pointwise, cross-block commutation of
// determinant-trivial blocks inside the full model, specialness of both
// pairs, and equality of the shared character chains on H cap N (which is
// what lets one auxiliary character serve both sides).  Any failed item is a
// structural error: the models are wrong, not the request.
WellMatchedData build_models(const local::LocalFieldSpec& field, i64 c,
                             const std::vector<i64>& beta);

// ---------------------------------------------------------------------------
// Central character systems.

// Fiber data of a block character system: the exponents on the common mu_n
// of the block characters omega_i, of the target character omega on the
// center model of the full cover, and (when known) of the induced character
// omega_beta on the center of the blockwise model.
struct CentralCharSystem {
  i64 n = 1;
  std::vector<i64> block_eps;
  i64 omega_eps = 0;
  std::optional<i64> omega_beta_eps;
};

// Exponent e with pi(zeta) = deg(pi) zeta^e on the fiber generator, mod n.
i64 fiber_exponent(const CharacterObject& pi);

// System read off from the block characters and the target fiber exponent.
CentralCharSystem central_system(const std::vector<CharacterObject>& blocks,
                                 i64 omega_eps);

// The restriction identity: the tensor of the omega_i descends to the common
// mu_n and agrees there with omega (and with omega_beta when recorded),
// i.e. all recorded exponents coincide mod n.
bool compatible(const CentralCharSystem& sys);

// ---------------------------------------------------------------------------
// Transfer between the two models.

// Genuine linear characters of the central model Z_N(G) of one side; these
// are the admissible central characters chi of that side.
std::vector<LinChar> genuine_central_chars(const SpecialPairData& sp);

// The fiber exponent of a central character on a chain, mod n.
i64 central_char_exponent(const LinearDual& dual, const LinChar& chi);

// The unique genuine central character of the G1 side with the given fiber
// exponent; engine error when the center model does not pin it.
LinChar omega_with_exponent(const WellMatchedData& wm, i64 eps);

// Genuine characters of the common H cap N consistent with chi1 on side 1
// and chi2 on side 2: the auxiliary psi choices of the transfer.  Empty
// exactly when (chi1, chi2) are incompatible.
std::vector<LinChar> shared_auxiliaries(const WellMatchedData& wm,
                                        const LinChar& chi1,
                                        const LinChar& chi2);

// Transfer of a genuine irreducible along the matched pair: Lagrangian
// restriction on the source, transport of the result through the coordinate
// identity on H, Lagrangian induction on the target.  chi1 lives on the
// Z_N(G1) chain and chi2 on the Z_N(G2) chain; the direction is G1 -> G2
// when pi lives on G1, G2 -> G1 otherwise (for one block the models
// coincide and chi1 is read as the source datum).  The result is verified
// independent of the auxiliary character choice.
CharacterObject transfer(const WellMatchedData& wm, const LinChar& chi1,
                         const LinChar& chi2, const CharacterObject& pi);

// Exhaustive verification over every compatible pair (chi1, chi2): transfer
// restricts to a bijection between the matching genuine irreducible sets,
// inverse to the reverse transfer; the degree identity deg(trns pi) *
// [G1 : L1 H1] = deg(pi) * [G2 : L2 H2]; equivariance under the det twists
// (with the centrally shifted pair); invariance under twists trivial on the
// H Z(N) model; and equality of the twist-orbit counts on the two sides of
// the matched family.
CheckList transfer_suite(const WellMatchedData& wm);

// ---------------------------------------------------------------------------
// The metaplectic tensor product.

// Exterior tensor product of block characters, descended to the blockwise
// model: the parts must live on full torus models of the block sizes and
// carry equal fiber exponents (that is exactly when the tensor kills the
// antidiagonal fiber); the result is verified irreducible.
CharacterObject tensor_on_product(const WellMatchedData& wm,
                                  const std::vector<CharacterObject>& parts);

// mtp(parts)_omega: glue on the blockwise model, then transfer to the full
// model with target central character omega (a genuine character on the
// Z_N(G1) chain, the center model of the full cover).  Precondition: the
// fiber exponent system of (parts, omega) is compatible.
CharacterObject mtp(const WellMatchedData& wm,
                    const std::vector<CharacterObject>& parts,
                    const LinChar& omega);

// ---------------------------------------------------------------------------
// Functorial identities.

struct AssociativityReport {
  CheckList checks;
  i64 systems = 0;     // (pi_1, pi_2, pi_3, nested choices, omega) systems
  i64 mismatches = 0;  // systems where the three characters differ
};

// For every triple of genuine block irreducibles, every compatible nested
// character and every compatible omega on beta = (r1, r2, r3): the
// left-nested, flat, and right-nested products agree as characters of the
// full model.  The three full models carry identical multiplication tables,
// so characters are compared class by class through equal representatives.
AssociativityReport associativity_check(const local::LocalFieldSpec& field,
                                        i64 c, i64 r1, i64 r2, i64 r3);

struct PermutationCase {
  std::vector<int> parts;  // chosen block irreducible index per block
  i64 omega_index = 0;
  bool exact = false;  // equal on the nose through the coordinate map
  std::optional<std::pair<i64, i64>> twist;  // det twist resolving the gap
  bool pass = false;
};

struct PermutationReport {
  CheckList checks;
  std::vector<PermutationCase> cases;
  i64 exact_count = 0;
  i64 weak_count = 0;  // resolved only up to a det twist
};

// The products of permuted inputs on the permuted model against the
// pullback of the original product through the block-permutation map
// Phi(t, x) = (t + f(x), w x), with w the coordinate permutation and f the
// quadratic coboundary matching the two cocycles; Phi is verified to be an
// isomorphism exhaustively before any comparison.  sigma[i] is the original
// block placed at position i.  When exact equality fails, the det twist
// identifying the weak equivalence class is searched for and the outcome
// recorded per case.
PermutationReport permutation_equivariance_check(
    const local::LocalFieldSpec& field, i64 c, const std::vector<i64>& beta,
    const std::vector<int>& sigma);

// ---------------------------------------------------------------------------
// Weak equivalence (det-twist) orbits.

struct TwistOrbitData {
  std::vector<CharacterObject> chars;    // the genuine irreducibles
  std::vector<std::vector<int>> orbits;  // partition under the n^2 twists
  CheckList checks;
};

// The det twist on a domain of a torus model: values zeta_n^(s sum v_i +
// e sum w_i) at the class representatives; trivial on the fiber, linear on
// every form model.
CharacterObject det_twist(const DomainPtr& dom, i64 s, i64 e);

// Partition of the genuine irreducibles of a torus model under the n^2 det
// twists, with closure of the action and the orbit-stabilizer product
// |orbit| * |stab| = n^2 verified per member.
TwistOrbitData weak_equivalence_orbits(GroupPtr U);

// Class-by-class equality of characters on carriers with equal class
// representative lists (possibly across distinct group objects with
// identical tables); a representative mismatch is a structural error.
bool char_values_equal(const CharacterObject& a, const CharacterObject& b);

}  // namespace covrep::mtp
