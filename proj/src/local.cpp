#include "covrep/local.hpp"

#include "covrep/error.hpp"

namespace covrep::local {

using zmat::umod;

namespace {

bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

i64 pow_mod(i64 b, i64 e, i64 m) {
  i64 r = 1;
  b = umod(b, m);
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

} // namespace

i64 LocalFieldSpec::primitive_root() const {
  // Factor p - 1, then test candidates in increasing order.
  std::vector<i64> primes;
  i64 m = p - 1;
  for (i64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) primes.push_back(m);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (i64 q : primes)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  fail(ErrorKind::Engine, "no primitive root found");
}

LocalFieldSpec make_spec(i64 p, i64 n) {
  if (!is_prime(p) || p == 2) fail(ErrorKind::Validation, "p must be an odd prime");
  if (n < 1) fail(ErrorKind::Validation, "n must be positive");
  if ((p - 1) % n != 0) fail(ErrorKind::Validation, "n must divide p - 1");
  return LocalFieldSpec{p, n};
}

UnitClass reduce_class(const LocalFieldSpec& spec, i64 v, i64 w) {
  return UnitClass{umod(v, spec.n), umod(w, spec.n)};
}

UnitClass class_mul(const LocalFieldSpec& spec, UnitClass a, UnitClass b) {
  return reduce_class(spec, a.v + b.v, a.w + b.w);
}

UnitClass class_pow(const LocalFieldSpec& spec, UnitClass a, i64 k) {
  return reduce_class(spec, k * a.v, k * a.w);
}

i64 hilbert_exp(const LocalFieldSpec& spec, UnitClass a, UnitClass b) {
  return umod(spec.eps_half() * a.v % spec.n * b.v + a.w * b.v - b.w * a.v, spec.n);
}

MuN hilbert(const LocalFieldSpec& spec, UnitClass a, UnitClass b) {
  return MuN{hilbert_exp(spec, a, b), spec.n};
}

bool power_class_equivalence(const LocalFieldSpec& spec, UnitClass x, i64 k) {
  // Left side: x pairs trivially with every class killed by k.
  bool lhs = true;
  for (i64 v = 0; v < spec.n && lhs; ++v)
    for (i64 w = 0; w < spec.n && lhs; ++w) {
      UnitClass y = reduce_class(spec, v, w);
      if (class_pow(spec, y, k).v == 0 && class_pow(spec, y, k).w == 0)
        if (hilbert_exp(spec, x, y) != 0) lhs = false;
    }
  // Right side: x lies in k * (Z/n)^2.
  bool rhs = false;
  for (i64 v = 0; v < spec.n && !rhs; ++v)
    for (i64 w = 0; w < spec.n && !rhs; ++w)
      if (umod(k * v, spec.n) == x.v && umod(k * w, spec.n) == x.w) rhs = true;
  return lhs == rhs;
}

} // namespace covrep::local
