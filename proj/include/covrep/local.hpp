#pragma once

#include <cstdint>
#include <vector>

#include "covrep/zmat.hpp"

// Tame Hilbert-symbol arithmetic for a non-archimedean local field of odd
// residue characteristic p with p not dividing n.  Everything is reduced to
// the finite quotient F^x / F^{xn} = <pi> x <g> with pi a uniformizer and g
// the smallest positive primitive root mod p; a class is a pair (v, w) in
// (Z/n)^2 meaning pi^v g^w modulo n-th powers.  The symbol takes values in
// mu_n realized as exponents of zeta = g^{(p-1)/n}, with eps(zeta^k) =
// exp(2 pi i k / n) as the fixed identification.

namespace covrep::local {

using zmat::i64;

struct LocalFieldSpec {
  i64 p = 0; // odd prime
  i64 n = 1; // divides p - 1

  i64 eps_half() const { return zmat::umod((p - 1) / 2, n); }
  i64 primitive_root() const; // smallest positive primitive root mod p
};

// Validates p prime and odd, n >= 1, n | p - 1.
LocalFieldSpec make_spec(i64 p, i64 n);

struct UnitClass {
  i64 v = 0; // valuation mod n
  i64 w = 0; // unit dlog mod n
};

// mu_n element as an exponent of zeta.
struct MuN {
  i64 exp = 0;
  i64 n = 1;
};

UnitClass reduce_class(const LocalFieldSpec& spec, i64 v, i64 w);
UnitClass class_mul(const LocalFieldSpec& spec, UnitClass a, UnitClass b);
UnitClass class_pow(const LocalFieldSpec& spec, UnitClass a, i64 k);

// (a, b)_n = zeta^{ eps_half * v_a v_b + w_a v_b - w_b v_a }.
MuN hilbert(const LocalFieldSpec& spec, UnitClass a, UnitClass b);

// Exponent form of the symbol, as a value in Z/n.
i64 hilbert_exp(const LocalFieldSpec& spec, UnitClass a, UnitClass b);

// Checks, by exhaustion over classes killed by k, the equivalence
//   (x, y) = 1 for all y with y^k trivial   <=>   x is a k-th power class.
// Returns true when the two sides agree for the given x (they always do;
// the function recomputes both sides rather than assuming).
bool power_class_equivalence(const LocalFieldSpec& spec, UnitClass x, i64 k);

} // namespace covrep::local
