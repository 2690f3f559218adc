#include "covrep/segments.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>

#include "covrep/error.hpp"
#include "covrep/mtp.hpp"

namespace covrep::seg {

namespace {

using zmat::umod;

// Total order on lines used for canonical storage.
std::tuple<std::string, bool, i64, i64, i64> line_key(const CuspidalLine& x) {
  return {x.id, x.dualized, x.r0, x.s_rho.num, x.s_rho.den};
}

std::tuple<std::string, bool, i64, i64, i64, i64, i64> seg_key(
    const Segment& d) {
  auto [id, fl, r0, sn, sd] = line_key(d.line);
  return {id, fl, r0, sn, sd, d.a, d.b};
}

void require_segment(const Segment& d) {
  if (d.line.r0 < 1) fail(ErrorKind::Validation, "line degree must be positive");
  if (d.line.s_rho.num <= 0)
    fail(ErrorKind::Validation, "reducibility exponent must be positive");
  if (d.a > d.b) fail(ErrorKind::Validation, "segment interval is empty");
}

}  // namespace

// ---------------------------------------------------------------------------
// Lines.

CuspidalLine make_line(std::string id, i64 r0, cyc::Rat s_rho) {
  if (r0 < 1) fail(ErrorKind::Validation, "line degree must be positive");
  if (s_rho.num <= 0)
    fail(ErrorKind::Validation, "reducibility exponent must be positive");
  return CuspidalLine{std::move(id), false, r0, s_rho};
}

bool line_equal(const CuspidalLine& x, const CuspidalLine& y) {
  return line_key(x) == line_key(y);
}

CuspidalLine line_dual(const CuspidalLine& x) {
  CuspidalLine out = x;
  out.dualized = !out.dualized;
  return out;
}

// ---------------------------------------------------------------------------
// Segments.

Segment make_segment(CuspidalLine line, i64 a, i64 b) {
  Segment d{std::move(line), a, b};
  require_segment(d);
  return d;
}

i64 seg_length(const Segment& d) { return d.b - d.a + 1; }

i64 seg_degree(const Segment& d) { return d.line.r0 * seg_length(d); }

Segment seg_dual(const Segment& d) {
  return Segment{line_dual(d.line), -d.b, -d.a};
}

bool seg_equal(const Segment& x, const Segment& y) {
  return seg_key(x) == seg_key(y);
}

bool precedes(const Segment& d1, const Segment& d2) {
  return line_equal(d1.line, d2.line) && d2.a > d1.a && d2.b > d1.b &&
         d1.b + 1 >= d2.a;
}

bool linked(const Segment& d1, const Segment& d2) {
  if (!line_equal(d1.line, d2.line)) return false;
  bool in12 = d2.a <= d1.a && d1.b <= d2.b;
  bool in21 = d1.a <= d2.a && d2.b <= d1.b;
  if (in12 || in21) return false;
  return std::max(d1.a, d2.a) <= std::min(d1.b, d2.b) + 1;
}

bool weakly_precedes(const Segment& d1, const Segment& d2) {
  return precedes(d1, d2);
}

bool weakly_linked(const Segment& d1, const Segment& d2) {
  return linked(d1, d2);
}

UnionIntersection union_intersection(const Segment& d1, const Segment& d2) {
  if (!linked(d1, d2))
    fail(ErrorKind::Precondition, "segments are not linked");
  UnionIntersection out{
      Segment{d1.line, std::min(d1.a, d2.a), std::max(d1.b, d2.b)}, {}};
  i64 ia = std::max(d1.a, d2.a), ib = std::min(d1.b, d2.b);
  if (ia <= ib) out.inter = Segment{d1.line, ia, ib};
  return out;
}

// ---------------------------------------------------------------------------
// Multisegments.

Multisegment make_multisegment(std::vector<Segment> segs) {
  for (const Segment& d : segs) require_segment(d);
  std::sort(segs.begin(), segs.end(),
            [](const Segment& x, const Segment& y) {
              return seg_key(x) < seg_key(y);
            });
  return Multisegment{std::move(segs)};
}

i64 deg(const Multisegment& m) {
  i64 s = 0;
  for (const Segment& d : m.segs) s += seg_degree(d);
  return s;
}

Multisegment mseg_dual(const Multisegment& m) {
  std::vector<Segment> out;
  out.reserve(m.segs.size());
  for (const Segment& d : m.segs) out.push_back(seg_dual(d));
  return make_multisegment(std::move(out));
}

bool mseg_equal(const Multisegment& x, const Multisegment& y) {
  if (x.segs.size() != y.segs.size()) return false;
  for (size_t i = 0; i < x.segs.size(); ++i)
    if (!seg_equal(x.segs[i], y.segs[i])) return false;
  return true;
}

std::vector<Segment> order_multisegment(const Multisegment& m) {
  std::vector<Segment> out = m.segs;
  // if d precedes d', then b < b', so descending b can never place a
  // preceding segment first
  std::sort(out.begin(), out.end(), [](const Segment& x, const Segment& y) {
    if (x.b != y.b) return x.b > y.b;
    if (x.a != y.a) return x.a > y.a;
    return line_key(x.line) < line_key(y.line);
  });
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (weakly_precedes(out[i], out[j]))
        fail(ErrorKind::Engine, "ordering failed the enumeration predicate");
  return out;
}

// ---------------------------------------------------------------------------
// Labels.

OmegaToken omega_inverse(const OmegaToken& w) {
  OmegaToken out = w;
  out.inverted = !out.inverted;
  if (out.binding) {
    OmegaBinding& b = *out.binding;
    b.omega_eps = umod(-b.omega_eps, b.n);
    for (i64& e : b.part_eps) e = umod(-e, b.n);
  }
  return out;
}

bool omega_equal(const OmegaToken& x, const OmegaToken& y) {
  return x.name == y.name && x.inverted == y.inverted;
}

ClassLabel label(const Multisegment& m, const OmegaToken& omega,
                 LabelKind kind) {
  if (omega.binding) {
    const OmegaBinding& b = *omega.binding;
    if (b.n < 1) fail(ErrorKind::Validation, "binding degree must be positive");
    if (!b.part_eps.empty() && b.part_eps.size() != m.segs.size())
      fail(ErrorKind::Precondition,
           "bound part exponents do not match the segment count");
    mtp::CentralCharSystem sys{b.n, b.part_eps, umod(b.omega_eps, b.n), {}};
    if (!mtp::compatible(sys))
      fail(ErrorKind::Precondition,
           "central character token is incompatible with the multisegment");
  }
  return ClassLabel{kind, make_multisegment(m.segs), omega};
}

bool label_equal(const ClassLabel& x, const ClassLabel& y) {
  return x.kind == y.kind && mseg_equal(x.m, y.m) && omega_equal(x.omega, y.omega);
}

ClassLabel label_dual(const ClassLabel& l) {
  return label(mseg_dual(l.m), omega_inverse(l.omega), l.kind);
}

// ---------------------------------------------------------------------------
// Derived functors.

std::optional<JacquetSplit> jacquet_segment(const Segment& d, i64 s,
                                            LabelKind kind) {
  require_segment(d);
  if (s < 0 || s > seg_degree(d))
    fail(ErrorKind::Precondition, "split size out of range");
  if (s % d.line.r0 != 0) return std::nullopt;
  i64 s0 = s / d.line.r0;
  i64 len = seg_length(d);
  JacquetSplit out;
  if (kind == LabelKind::Z) {
    if (s0 > 0) out.left = Segment{d.line, d.a, d.a + s0 - 1};
    if (s0 < len) out.right = Segment{d.line, d.a + s0, d.b};
  } else {
    if (s0 > 0) out.left = Segment{d.line, d.b - s0 + 1, d.b};
    if (s0 < len) out.right = Segment{d.line, d.a, d.b - s0};
  }
  return out;
}

ClassLabel soc_cos_pair(const Segment& d1, const Segment& d2,
                        const OmegaToken& omega, LabelKind kind) {
  std::vector<Segment> parts;
  if (weakly_linked(d1, d2)) {
    const Segment& first = weakly_precedes(d1, d2) ? d1 : d2;
    const Segment& second = weakly_precedes(d1, d2) ? d2 : d1;
    UnionIntersection ui = union_intersection(first, second);
    if (ui.inter) parts.push_back(*ui.inter);
    parts.push_back(ui.uni);
  } else {
    parts = {d1, d2};
  }
  return label(make_multisegment(std::move(parts)), omega, kind);
}

// ---------------------------------------------------------------------------
// Shuffle sets.

std::vector<std::vector<i64>> wsets(const std::vector<i64>& beta,
                                    const std::vector<i64>& gamma, i64 cap) {
  auto total = [](const std::vector<i64>& c) {
    i64 t = 0;
    for (i64 x : c) {
      if (x < 1) fail(ErrorKind::Validation, "composition parts must be positive");
      t += x;
    }
    return t;
  };
  i64 r = total(beta);
  if (total(gamma) != r)
    fail(ErrorKind::Validation, "compositions have mismatched total");
  if (r > cap) fail(ErrorKind::SizeCap, "composition total exceeds the cap");

  // ascent required at position q unless q + 1 is a block boundary
  auto boundaries = [r](const std::vector<i64>& c) {
    std::vector<bool> cut(static_cast<size_t>(r + 1), false);
    i64 t = 0;
    for (size_t i = 0; i + 1 < c.size(); ++i) {
      t += c[i];
      cut[static_cast<size_t>(t)] = true;
    }
    return cut;
  };
  std::vector<bool> bcut = boundaries(beta), gcut = boundaries(gamma);

  std::vector<i64> w(static_cast<size_t>(r));
  std::iota(w.begin(), w.end(), 0);
  std::vector<i64> winv(static_cast<size_t>(r));
  std::vector<std::vector<i64>> out;
  do {
    bool ok = true;
    for (i64 q = 0; ok && q + 1 < r; ++q)
      if (!bcut[static_cast<size_t>(q + 1)] &&
          w[static_cast<size_t>(q)] > w[static_cast<size_t>(q + 1)])
        ok = false;
    if (!ok) continue;
    for (i64 i = 0; i < r; ++i) winv[static_cast<size_t>(w[static_cast<size_t>(i)])] = i;
    for (i64 q = 0; ok && q + 1 < r; ++q)
      if (!gcut[static_cast<size_t>(q + 1)] &&
          winv[static_cast<size_t>(q)] > winv[static_cast<size_t>(q + 1)])
        ok = false;
    if (ok) out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace covrep::seg
