#ifndef COVREP_SEGMENTS_HPP
#define COVREP_SEGMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "covrep/cyclotomic.hpp"
#include "covrep/zmat.hpp"

// Segment and multisegment combinatorics over cuspidal lines, the
// classification labels attached to them, and the shuffle permutation sets
// of the composition calculus.  Everything here is exact bookkeeping on
// small integer data; lines are opaque tokens standing for weak equivalence
// classes of cuspidal representations.

namespace covrep::seg {

using zmat::i64;

// ---------------------------------------------------------------------------
// Cuspidal lines.

// A line {rho, rho nu, rho nu^2, ...} through a cuspidal representation of
// degree r0, identified by an opaque token at weak equivalence class level.
// The reducibility exponent s_rho is carried as metadata only; the step
// along the line is the unit by convention.
struct CuspidalLine {
  std::string id;
  bool dualized = false;  // contragredient marker, toggled by duals
  i64 r0 = 1;
  cyc::Rat s_rho = cyc::Rat(1, 1);
};

CuspidalLine make_line(std::string id, i64 r0, cyc::Rat s_rho = cyc::Rat(1, 1));
bool line_equal(const CuspidalLine& x, const CuspidalLine& y);
CuspidalLine line_dual(const CuspidalLine& x);

// ---------------------------------------------------------------------------
// Segments.

// The interval [a, b] on a line, a <= b; degree r0 * (b - a + 1).
struct Segment {
  CuspidalLine line;
  i64 a = 0, b = 0;
};

Segment make_segment(CuspidalLine line, i64 a, i64 b);
i64 seg_length(const Segment& d);  // number of cuspidals, b - a + 1
i64 seg_degree(const Segment& d);
Segment seg_dual(const Segment& d);  // [-b, -a] on the dual line; involution
bool seg_equal(const Segment& x, const Segment& y);

// d1 precedes d2: same line, a2 > a1, b2 > b1 and b1 + 1 >= a2.
bool precedes(const Segment& d1, const Segment& d2);
// linked: the union is a segment and neither contains the other;
// equivalently, one precedes the other.
bool linked(const Segment& d1, const Segment& d2);
// Line tokens already live at weak equivalence class level, so the weak
// relations coincide with the plain ones on this data.
bool weakly_precedes(const Segment& d1, const Segment& d2);
bool weakly_linked(const Segment& d1, const Segment& d2);

struct UnionIntersection {
  Segment uni;
  std::optional<Segment> inter;  // absent in the adjacent case
};

// Precondition: linked(d1, d2).  deg uni + deg inter = deg d1 + deg d2.
UnionIntersection union_intersection(const Segment& d1, const Segment& d2);

// ---------------------------------------------------------------------------
// Multisegments.

// A multiset of segments in canonical sorted storage.
struct Multisegment {
  std::vector<Segment> segs;
};

Multisegment make_multisegment(std::vector<Segment> segs);
i64 deg(const Multisegment& m);
Multisegment mseg_dual(const Multisegment& m);
bool mseg_equal(const Multisegment& x, const Multisegment& y);

// An enumeration in which no earlier segment weakly precedes a later one
// (sort by b descending, then a descending, then line token); the output is
// re-verified against the predicate after sorting.
std::vector<Segment> order_multisegment(const Multisegment& m);

// ---------------------------------------------------------------------------
// Labels.

enum class LabelKind { Z, L };

// Optional binding of an omega token to a finite-model central character
// system: the fiber exponents of the parts and of omega itself, checked
// through the product-transfer compatibility predicate.
struct OmegaBinding {
  i64 n = 1;
  i64 omega_eps = 0;
  std::vector<i64> part_eps;  // may be empty when parts are unspecified
};

// An opaque central character token; inversion toggles the flag so that
// inversion is an involution on any name.
struct OmegaToken {
  std::string name;
  bool inverted = false;
  std::optional<OmegaBinding> binding;
};

OmegaToken omega_inverse(const OmegaToken& w);
bool omega_equal(const OmegaToken& x, const OmegaToken& y);

// A classification label: kind Z or L, a canonicalized multisegment, and a
// central character token.  Labels are equal iff the kinds agree, the
// multisegments agree at weak class level, and the tokens agree.
struct ClassLabel {
  LabelKind kind = LabelKind::Z;
  Multisegment m;
  OmegaToken omega;
};

// Precondition: when omega carries a binding, it must be compatible as a
// central character system.
ClassLabel label(const Multisegment& m, const OmegaToken& omega,
                 LabelKind kind);
bool label_equal(const ClassLabel& x, const ClassLabel& y);
// The label of the dual: dual multisegment, inverted omega, same kind.
ClassLabel label_dual(const ClassLabel& l);

// ---------------------------------------------------------------------------
// Derived functors on segment data.

// The two tensor factors cut from a segment by the (s, deg - s) functor;
// either side may be empty at the boundary splits.
struct JacquetSplit {
  std::optional<Segment> left, right;
};

// Z kind splits [a, a+s0-1] | [a+s0, b] off the left end; L kind splits
// [b-s0+1, b] | [a, b-s0] off the right end; absent (zero) unless r0 | s.
// Precondition: 0 <= s <= deg d.
std::optional<JacquetSplit> jacquet_segment(const Segment& d, i64 s,
                                            LabelKind kind);

// The socle (Z reading) or cosocle (L reading) of a product of two segment
// representations: {intersection, union} when the segments are weakly
// linked, {d1, d2} otherwise.  Total degree is conserved.
ClassLabel soc_cos_pair(const Segment& d1, const Segment& d2,
                        const OmegaToken& omega, LabelKind kind);

// ---------------------------------------------------------------------------
// Shuffle permutation sets.

// All w in S_r (images, 0-based) increasing on the blocks of beta with
// inverse increasing on the blocks of gamma; beta and gamma must be
// compositions of the same r <= cap.  The count equals the number of
// non-negative integer matrices with row sums beta and column sums gamma.
std::vector<std::vector<i64>> wsets(const std::vector<i64>& beta,
                                    const std::vector<i64>& gamma,
                                    i64 cap = 8);

}  // namespace covrep::seg

#endif
