#pragma once

#include <gmpxx.h>

#include <string>

namespace cnz {

// Arbitrary-precision integers and rationals. mpq_class keeps gcd(num,den)=1
// and den >= 1 after canonicalize(), which is exactly the invariant we need.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q);  // "p/q", or "p" when q == 1

// gcd of two rationals: gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d).  Result is
// non-negative; gcd(0,0) = 0.
Rat rat_gcd(const Rat& a, const Rat& b);

double rat_to_double(const Rat& q);

}  // namespace cnz
