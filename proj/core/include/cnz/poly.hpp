#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cnz/primefield.hpp"
#include "cnz/rational.hpp"

namespace cnz {

// Exponent vector of a monomial; entry i is the power of y_{i+1}.
using ExpVec = std::vector<uint32_t>;

struct LexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

// Sparse multivariate polynomial over Q. Terms are kept in a map ordered
// lexicographically on exponent vectors (y1 < y2 < ...), never storing zero
// coefficients, which makes iteration order and serialization deterministic.
class Poly {
 public:
  using TermMap = std::map<ExpVec, Rat, LexLess>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rat& c);
  static Poly variable(int nvars, int i);  // 1-based
  static Poly monomial(int nvars, ExpVec e, Rat c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  // Mathematical equality; canonical term maps make this exact.
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Rat& c) const;  // c * this
  Poly pow(uint32_t e) const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(int var) const;

  // Entrywise minimum of all exponent vectors (the pure-monomial content).
  ExpVec min_exponents() const;
  Poly shift_down(const ExpVec& m) const;  // divide by y^m (must divide every term)

  // Positive rational c such that this/c has coprime integer coefficients.
  Rat content() const;

  // Coefficient of the lex-greatest term (throws on zero polynomial).
  const Rat& leading_coeff() const;

  Poly derivative(int var) const;  // 1-based

  Rat eval_rat(const std::vector<Rat>& point) const;
  std::complex<double> eval_complex(const std::vector<std::complex<double>>& point) const;
  uint64_t eval_mod(const std::vector<uint64_t>& point, const PrimeField& F) const;

  // Canonical text form: lex-ordered sum of c*y1^e1*...*yn^en terms.
  std::string str() const;

  void add_term(const ExpVec& e, const Rat& c);  // accumulates, drops zeros

  // Exact division: returns a/b when b divides a, nullopt otherwise.
  static std::optional<Poly> div_exact(const Poly& a, const Poly& b);

  // Multivariate gcd over Q via primitive PRS; result is primitive with
  // positive leading coefficient (1 for coprime inputs).
  static Poly gcd(const Poly& a, const Poly& b);

 private:
  int nvars_;
  TermMap terms_;
};

}  // namespace cnz
