#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cnz/poly.hpp"

namespace cnz {

// Rational function num/den over Q. The pair is not kept coprime (full gcd is
// opt-in via simplify); equality goes through cross-multiplication. The cheap
// normalization applied after every operation cancels the common integer
// content and pure-monomial factor and fixes the sign of den's lex-leading
// coefficient, which is enough to tame the monomial-heavy mutation formulas.
class RatFun {
 public:
  RatFun() : num_(0), den_(Poly::constant(0, Rat(1))) {}
  explicit RatFun(Poly num) : RatFun(num, Poly::constant(num.nvars(), Rat(1))) {}
  RatFun(Poly num, Poly den);

  static RatFun constant(int nvars, const Rat& c) { return RatFun(Poly::constant(nvars, c)); }
  static RatFun variable(int nvars, int i) { return RatFun(Poly::variable(nvars, i)); }
  static RatFun zero(int nvars) { return constant(nvars, Rat(0)); }
  static RatFun one(int nvars) { return constant(nvars, Rat(1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;  // throws division_by_zero
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  RatFun inv() const;
  RatFun pow(int64_t e) const;

  // Structural equality of the normalized pairs (mathematical equality is
  // eq_exact); used by generic matrix code for zero-skipping.
  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

  int max_total_degree() const;  // max of num/den total degrees

  std::string str() const;  // "(num)/(den)", den omitted when it is 1

 private:
  Poly num_, den_;
  void normalize();
};

// Exact equality by cross-multiplication (throws arity_mismatch).
bool eq_exact(const RatFun& a, const RatFun& b);

struct ModularEqResult {
  bool equal;
  int trials_run;
  int skipped_singular;
  uint64_t modulus;
  long degree_bound;          // max total degree of the cross-multiplied difference
  double failure_bound_per_trial;  // degree_bound / p
};

// Schwartz-Zippel equality check at `trials` uniform points of the prime
// field, skipping points where a denominator vanishes. Deterministic given
// the seed. Throws all_points_singular if no usable point was found.
ModularEqResult eq_modular_report(const RatFun& a, const RatFun& b, int trials, uint64_t seed);
bool eq_modular(const RatFun& a, const RatFun& b, int trials, uint64_t seed);

// Cancels the full multivariate gcd if both degrees are within the cap;
// otherwise returns the input unchanged.
RatFun simplify(const RatFun& a, int degree_cap);

// Cancels every factor from `factors` that divides both parts. Cheaper than
// a full gcd; the mutation formulas produce denominators that are products
// of known 1+Y numerators, so this recovers the reduced forms.
RatFun reduce_common_factors(const RatFun& a, const std::vector<Poly>& factors);

Rat eval_rat(const RatFun& a, const std::vector<Rat>& point);            // throws singular_point
std::complex<double> eval_complex(const RatFun& a, const std::vector<std::complex<double>>& point);
uint64_t eval_mod(const RatFun& a, const std::vector<uint64_t>& point, const PrimeField& F);

RatFun derivative(const RatFun& a, int var);

}  // namespace cnz
