#include "covrep/cover.hpp"

#include <numeric>
#include <sstream>

#include "covrep/error.hpp"

namespace covrep::cover {

using zmat::umod;

i64 CoverSpec::r() const { return std::accumulate(beta.begin(), beta.end(), (i64)0); }

CoverSpec make_cover_spec(const LocalFieldSpec& field, i64 c, std::vector<i64> beta) {
  if (beta.empty()) fail(ErrorKind::Validation, "beta must be a non-empty composition");
  for (i64 b : beta)
    if (b < 1) fail(ErrorKind::Validation, "beta parts must be positive");
  if (c < 0) fail(ErrorKind::Validation, "c must be non-negative");
  return CoverSpec{field, c, std::move(beta)};
}

FinAbGroup base_group(const CoverSpec& spec) {
  return FinAbGroup(std::vector<i64>(2 * spec.r(), spec.n()));
}

UnitClass slot(const CoverSpec& spec, const Vec& x, i64 i) {
  return UnitClass{umod(x[2 * i], spec.n()), umod(x[2 * i + 1], spec.n())};
}

namespace {

i64 block_of(const CoverSpec& spec, i64 slot_index) {
  i64 acc = 0;
  for (size_t b = 0; b < spec.beta.size(); ++b) {
    acc += spec.beta[b];
    if (slot_index < acc) return (i64)b;
  }
  fail(ErrorKind::Engine, "slot index out of range");
}

std::vector<i64> block_slots(const CoverSpec& spec, i64 block) {
  std::vector<i64> out;
  i64 start = 0;
  for (i64 b = 0; b < block; ++b) start += spec.beta[b];
  for (i64 j = 0; j < spec.beta[block]; ++j) out.push_back(start + j);
  return out;
}

i64 form_apply(const zmat::Mat& c, const Vec& x, const Vec& y, i64 n) {
  i64 acc = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      acc += umod(c[i][j] * umod(x[i], n) % n * umod(y[j], n), n);
  }
  return umod(acc, n);
}

} // namespace

UnitClass block_det(const CoverSpec& spec, const Vec& x, i64 block) {
  i64 v = 0, w = 0;
  for (i64 s : block_slots(spec, block)) {
    v += x[2 * s];
    w += x[2 * s + 1];
  }
  return UnitClass{umod(v, spec.n()), umod(w, spec.n())};
}

UnitClass full_det(const CoverSpec& spec, const Vec& x) {
  i64 v = 0, w = 0;
  for (i64 s = 0; s < spec.r(); ++s) {
    v += x[2 * s];
    w += x[2 * s + 1];
  }
  return UnitClass{umod(v, spec.n()), umod(w, spec.n())};
}

zmat::Mat cocycle_form(const CoverSpec& spec, bool cross_blocks) {
  const i64 n = spec.n(), r = spec.r(), eh = spec.field.eps_half();
  // h(a, b) = eps_half v_a v_b + w_a v_b - w_b v_a as a 2x2 block.
  const i64 h[2][2] = {{eh, umod(-1, n)}, {1, 0}};
  zmat::Mat c(2 * r, zmat::Row(2 * r, 0));
  for (i64 i = 0; i < r; ++i)
    for (i64 j = 0; j < r; ++j) {
      if (!cross_blocks && block_of(spec, i) != block_of(spec, j)) continue;
      i64 coef = (i == j) ? spec.c : (i < j ? spec.c + 1 : spec.c);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          c[2 * i + a][2 * j + b] = umod(coef * h[a][b], n);
    }
  return c;
}

i64 torus_cocycle(const CoverSpec& spec, const Vec& x, const Vec& y) {
  return form_apply(cocycle_form(spec, true), x, y, spec.n());
}

i64 commutator(const CoverSpec& spec, const Vec& x, const Vec& y) {
  const zmat::Mat c = cocycle_form(spec, true);
  return umod(form_apply(c, x, y, spec.n()) - form_apply(c, y, x, spec.n()), spec.n());
}

CocycleCheckResult verify_cocycle_condition(const CoverSpec& spec, i64 max_ops, bool perturb) {
  const FinAbGroup base = base_group(spec);
  const i64 n = spec.n();
  if (perturb && n == 1)
    fail(ErrorKind::Validation, "perturbation needs n >= 2");
  const auto elems = base.elements();
  const i64 count = (i64)elems.size();
  if (count * count * count > max_ops)
    fail(ErrorKind::SizeCap, "cocycle triple count exceeds the operation cap");
  const zmat::Mat c = cocycle_form(spec, true);
  Vec spike = base.zero();
  if (!spike.empty()) spike[0] = 1;

  auto sigma = [&](const Vec& x, const Vec& y) {
    i64 s = form_apply(c, x, y, n);
    if (perturb && x == spike && y == spike) s = umod(s + 1, n);
    return s;
  };

  CocycleCheckResult res;
  for (const Vec& x : elems)
    for (const Vec& y : elems) {
      const Vec xy = base.add(x, y);
      const i64 sxy = sigma(x, y);
      for (const Vec& z : elems) {
        ++res.triples_checked;
        i64 lhs = umod(sxy + sigma(xy, z), n);
        i64 rhs = umod(sigma(y, z) + sigma(x, base.add(y, z)), n);
        if (lhs != rhs) {
          res.pass = false;
          res.counterexample = std::array<Vec, 3>{x, y, z};
          return res;
        }
      }
    }
  return res;
}

namespace {

std::string print_vec(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

} // namespace

ScalarCommutatorResult scalar_commutator_check(const CoverSpec& spec, i64 max_ops) {
  const FinAbGroup base = base_group(spec);
  const i64 n = spec.n(), r = spec.r(), cp = spec.cprime();
  const i64 k = (i64)spec.beta.size();
  const auto elems = base.elements();
  const auto& f = spec.field;

  ScalarCommutatorResult res;
  auto fail_at = [&](const char* what, const Vec& a, const Vec& b) {
    res.pass = false;
    res.detail = std::string(what) + " at " + print_vec(a) + ", " + print_vec(b);
  };

  // Scalar classes lambda, embedded diagonally.
  std::vector<Vec> scalars;
  for (i64 v = 0; v < n; ++v)
    for (i64 w = 0; w < n; ++w) {
      Vec z = base.zero();
      for (i64 s = 0; s < r; ++s) {
        z[2 * s] = v;
        z[2 * s + 1] = w;
      }
      scalars.push_back(z);
    }
  if ((i64)scalars.size() * (i64)elems.size() + (i64)elems.size() * (i64)elems.size() > max_ops)
    fail(ErrorKind::SizeCap, "commutator check exceeds the operation cap");

  for (const Vec& z : scalars) {
    UnitClass lam = slot(spec, z, 0);
    for (const Vec& g : elems) {
      i64 lhs = commutator(spec, z, g);
      i64 rhs = umod((r * cp - 1) % n * local::hilbert_exp(f, lam, full_det(spec, g)), n);
      if (lhs != rhs) {
        fail_at("scalar commutator identity", z, g);
        return res;
      }
    }
  }

  // Blockwise scalars against the block refinement.
  std::vector<Vec> block_scalars;
  {
    std::vector<i64> t(2 * k, 0);
    while (true) {
      Vec z = base.zero();
      for (i64 b = 0; b < k; ++b)
        for (i64 s : block_slots(spec, b)) {
          z[2 * s] = t[2 * b];
          z[2 * s + 1] = t[2 * b + 1];
        }
      block_scalars.push_back(z);
      size_t i = t.size();
      bool more = false;
      while (i > 0) {
        --i;
        if (++t[i] < n) {
          more = true;
          break;
        }
        t[i] = 0;
      }
      if (!more) break;
    }
  }
  for (const Vec& z : block_scalars) {
    for (const Vec& g : elems) {
      i64 lhs = commutator(spec, z, g);
      i64 rhs = 0;
      UnitClass dg = full_det(spec, g);
      for (i64 b = 0; b < k; ++b) {
        UnitClass lam = slot(spec, z, block_slots(spec, b)[0]);
        UnitClass dgb = block_det(spec, g, b);
        rhs += spec.beta[b] % n * cp % n * local::hilbert_exp(f, lam, dg) -
               local::hilbert_exp(f, lam, dgb);
      }
      rhs = umod(rhs, n);
      if (lhs != rhs) {
        fail_at("block scalar commutator identity", z, g);
        return res;
      }
    }
  }

  // Blockwise commutator refinement on all pairs.
  const zmat::Mat cfull = cocycle_form(spec, true);
  const zmat::Mat cblock = cocycle_form(spec, false);
  for (const Vec& x : elems)
    for (const Vec& y : elems) {
      i64 lhs = umod(form_apply(cfull, x, y, n) - form_apply(cfull, y, x, n), n);
      i64 rhs = umod(form_apply(cblock, x, y, n) - form_apply(cblock, y, x, n), n);
      for (i64 b = 0; b < k; ++b)
        for (i64 b2 = 0; b2 < k; ++b2) {
          if (b == b2) continue;
          rhs = umod(rhs + cp * local::hilbert_exp(f, block_det(spec, x, b),
                                                   block_det(spec, y, b2)),
                     n);
        }
      if (lhs != rhs) {
        fail_at("blockwise commutator refinement", x, y);
        return res;
      }
    }
  return res;
}

namespace {

SubgroupHandle scalar_subgroup(const CoverSpec& spec, i64 kill) {
  // Scalar classes lambda with kill * lambda = 0 in (Z/n)^2, embedded
  // diagonally across all slots.
  const FinAbGroup base = base_group(spec);
  const i64 n = spec.n();
  const i64 g = zmat::gcd_ll(n, kill);
  const i64 step = n / g;
  std::vector<Vec> gens;
  for (int coord = 0; coord < 2; ++coord) {
    Vec z = base.zero();
    for (i64 s = 0; s < spec.r(); ++s) z[2 * s + coord] = umod(step, n);
    gens.push_back(z);
  }
  return SubgroupHandle(base, gens);
}

} // namespace

CenterResult center(const CoverSpec& spec) {
  const FinAbGroup base = base_group(spec);
  const i64 n = spec.n();
  const zmat::Mat c = cocycle_form(spec, true);
  std::vector<Vec> central;
  for (const Vec& y : base.elements()) {
    // y is central iff B(x, y) = 0 for all x, i.e. each row of the commutator
    // form kills y.
    bool ok = true;
    for (size_t i = 0; i < y.size() && ok; ++i) {
      i64 acc = 0;
      for (size_t j = 0; j < y.size(); ++j) acc += (c[i][j] - c[j][i]) * y[j];
      if (umod(acc, n) != 0) ok = false;
    }
    if (ok) central.push_back(y);
  }
  CenterResult res{SubgroupHandle(base, central),
                   scalar_subgroup(spec, spec.r() * spec.cprime() - 1), false};
  res.equal = (res.brute == res.closed_form);
  return res;
}

DistinguishedSubgroups distinguished_subgroups(const CoverSpec& spec) {
  const FinAbGroup base = base_group(spec);
  const i64 n = spec.n(), cp = spec.cprime();
  const i64 k = (i64)spec.beta.size();
  const auto& f = spec.field;

  std::vector<Vec> zb_gens, lrg_gens, h_gens;
  for (i64 b = 0; b < k; ++b) {
    const auto slots = block_slots(spec, b);
    for (int coord = 0; coord < 2; ++coord) {
      Vec z = base.zero();
      for (i64 s : slots) z[2 * s + coord] = 1;
      zb_gens.push_back(z);
      i64 step = n / zmat::gcd_ll(n, spec.beta[b]);
      Vec l = base.zero();
      for (i64 s : slots) l[2 * s + coord] = umod(step, n);
      lrg_gens.push_back(l);
      for (size_t j = 1; j < slots.size(); ++j) {
        Vec d = base.zero();
        d[2 * slots[0] + coord] = 1;
        d[2 * slots[j] + coord] = umod(-1, n);
        h_gens.push_back(d);
      }
    }
  }

  DistinguishedSubgroups out{
      SubgroupHandle(base, zb_gens),
      SubgroupHandle::trivial(base),
      SubgroupHandle(base, lrg_gens),
      SubgroupHandle(base, h_gens),
      SubgroupHandle::trivial(base),
      false,
      false,
  };

  // Z(G_beta) cap T: blockwise scalars whose block commutator formula
  // vanishes against every tuple of block determinant classes.
  std::vector<Vec> center_elems;
  std::vector<std::vector<UnitClass>> delta_tuples;
  {
    std::vector<i64> t(2 * k, 0);
    while (true) {
      std::vector<UnitClass> tup;
      for (i64 b = 0; b < k; ++b) tup.push_back(UnitClass{t[2 * b], t[2 * b + 1]});
      delta_tuples.push_back(tup);
      size_t i = t.size();
      bool more = false;
      while (i > 0) {
        --i;
        if (++t[i] < n) {
          more = true;
          break;
        }
        t[i] = 0;
      }
      if (!more) break;
    }
  }
  for (const Vec& z : out.z_beta.elements()) {
    bool central = true;
    for (const auto& tup : delta_tuples) {
      i64 dv = 0, dw = 0;
      for (const auto& d : tup) {
        dv += d.v;
        dw += d.w;
      }
      UnitClass dtot{umod(dv, n), umod(dw, n)};
      i64 acc = 0;
      for (i64 b = 0; b < k; ++b) {
        UnitClass lam = slot(spec, z, block_slots(spec, b)[0]);
        acc += spec.beta[b] % n * cp % n * local::hilbert_exp(f, lam, dtot) -
               local::hilbert_exp(f, lam, tup[b]);
      }
      if (umod(acc, n) != 0) {
        central = false;
        break;
      }
    }
    if (central) center_elems.push_back(z);
  }
  out.z_center = SubgroupHandle(base, center_elems);

  out.lrg_cap_center_is_sml =
      (out.z_beta_lrg.intersect(out.z_center) == out.z_beta_sml);
  SubgroupHandle zgr = scalar_subgroup(spec, spec.r() * cp - 1);
  out.center_is_zgr_times_sml = (out.z_center == zgr.join(out.z_beta_sml));
  return out;
}

IntertwiningConstants intertwining_constants(const CoverSpec& spec) {
  SubgroupHandle z_r = scalar_subgroup(spec, 0);
  SubgroupHandle lrg = scalar_subgroup(spec, spec.r());
  SubgroupHandle zgr = scalar_subgroup(spec, spec.r() * spec.cprime() - 1);

  IntertwiningConstants out;
  out.b = z_r.order() / lrg.order();
  out.idx = zgr.order(); // Z_{r,sml} has trivial base part
  i64 prod = out.b * out.idx;
  i64 root = 0;
  while (root * root < prod) ++root;
  out.a = root;
  out.square_identity = (root * root == prod);
  return out;
}

} // namespace covrep::cover
