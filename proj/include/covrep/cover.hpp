#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "covrep/finab.hpp"
#include "covrep/local.hpp"

// Finite torus models of Kazhdan-Patterson n-fold covers of GL_r.  The model
// of the diagonal torus cover is mu_n x (F^x/F^{xn})^r; coordinates are r
// unit classes (v_i, w_i), flattened to a vector of length 2r over Z/n.  The
// twisting parameter c enters through c' = 2c + 1.  A composition beta of r
// selects block structure; the block cover model drops all cross-block
// cocycle terms.

namespace covrep::cover {

using finab::FinAbGroup;
using finab::SubgroupHandle;
using finab::Vec;
using local::LocalFieldSpec;
using local::UnitClass;
using zmat::i64;

struct CoverSpec {
  LocalFieldSpec field;
  i64 c = 0;                 // twisting parameter, c' = 2c + 1
  std::vector<i64> beta;     // composition of r; {r} when unblocked

  i64 r() const;
  i64 cprime() const { return 2 * c + 1; }
  i64 n() const { return field.n; }
};

CoverSpec make_cover_spec(const LocalFieldSpec& field, i64 c, std::vector<i64> beta);

// Base coordinate group (Z/n)^{2r}; coordinates 2i, 2i+1 hold (v_i, w_i).
FinAbGroup base_group(const CoverSpec& spec);

// Unit class of slot i of a base vector.
UnitClass slot(const CoverSpec& spec, const Vec& x, i64 i);

// Determinant class of a block (sum of its slots).
UnitClass block_det(const CoverSpec& spec, const Vec& x, i64 block);
UnitClass full_det(const CoverSpec& spec, const Vec& x);

// 2r x 2r matrix C over Z/n with sigma(x, y) = x^T C y: the torus cocycle of
// the full cover when cross_blocks is true, of the blockwise product cover
// when false.
zmat::Mat cocycle_form(const CoverSpec& spec, bool cross_blocks);

// sigma(x, y) for the full-cover torus cocycle, as an exponent of zeta.
i64 torus_cocycle(const CoverSpec& spec, const Vec& x, const Vec& y);

// Commutator [x~, y~] of any two lifts, as an exponent of zeta (well defined).
i64 commutator(const CoverSpec& spec, const Vec& x, const Vec& y);

struct CocycleCheckResult {
  bool pass = true;
  i64 triples_checked = 0;
  std::optional<std::array<Vec, 3>> counterexample;
};

// Exhaustive 2-cocycle identity over all coordinate triples.  The perturb
// hook adds 1 to sigma at one fixed argument pair, which must break the
// identity; it exists as a negative control.
CocycleCheckResult verify_cocycle_condition(const CoverSpec& spec, i64 max_ops,
                                            bool perturb = false);

struct ScalarCommutatorResult {
  bool pass = true;
  std::string detail; // on failure: the offending pair, printed
};

// Checks, exhaustively over the torus model:
//  - [lambda I, g] = (lambda, det g)^{r c' - 1} for scalar classes lambda;
//  - the block refinement prod_i (lambda_i, det(g)^{r_i c'} det(g_i)^{-1});
//  - the blockwise commutator refinement: [x, y] equals the product of
//    within-block commutators times prod_{blocks i != j} (det_i x, det_j y)^{c'}.
ScalarCommutatorResult scalar_commutator_check(const CoverSpec& spec, i64 max_ops);

struct CenterResult {
  SubgroupHandle brute;       // radical of the commutator form on the base
  SubgroupHandle closed_form; // scalar classes with (r c' - 1) lambda = 0
  bool equal = false;
};

// Center of the finite model, brute force vs. closed form.  Both subgroups
// describe base parts; the mu_n fiber is implicit (always central).
CenterResult center(const CoverSpec& spec);

struct DistinguishedSubgroups {
  SubgroupHandle z_beta;      // blockwise scalar classes
  SubgroupHandle z_beta_sml;  // trivial base (fiber only)
  SubgroupHandle z_beta_lrg;  // blockwise scalars with r_i lambda_i = 0
  SubgroupHandle h_beta;      // blockwise determinant class trivial
  SubgroupHandle z_center;    // base part of Z(G_beta) cap T
  bool lrg_cap_center_is_sml = false;
  bool center_is_zgr_times_sml = false;
};

// The distinguished subgroups of the model, with the two verified identities
// Z_{beta,lrg} cap Z(G_beta) = Z_{beta,sml} and Z(G_beta) = Z(G_r) Z_{beta,sml}.
DistinguishedSubgroups distinguished_subgroups(const CoverSpec& spec);

struct IntertwiningConstants {
  i64 b = 0;   // [Z_r : Z_{r,lrg}]
  i64 idx = 0; // [Z(G_r) : Z_{r,sml}]
  i64 a = 0;   // sqrt(b * idx)
  bool square_identity = false; // b * idx is a perfect square and a^2 = b * idx
};

IntertwiningConstants intertwining_constants(const CoverSpec& spec);

} // namespace covrep::cover
