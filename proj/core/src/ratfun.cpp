#include "cnz/ratfun.hpp"

#include <algorithm>
#include <random>

#include "cnz/errors.hpp"

namespace cnz {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars() && (num_.nvars() == 0 || den_.nvars() == 0)) {
    // promote the bare-constant side
    int nv = std::max(num_.nvars(), den_.nvars());
    num_ = num_ + Poly(nv);
    den_ = den_ + Poly(nv);
  }
  require(num_.nvars() == den_.nvars(), errc::arity_mismatch, "num/den arity mismatch");
  require(!den_.is_zero(), errc::division_by_zero, "zero denominator");
  normalize();
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.nvars(), Rat(1));
    return;
  }
  // Common pure-monomial factor.
  ExpVec mn = num_.min_exponents(), md = den_.min_exponents();
  ExpVec m(num_.nvars());
  bool any = false;
  for (int i = 0; i < num_.nvars(); ++i) {
    m[i] = std::min(mn[i], md[i]);
    any = any || m[i] > 0;
  }
  if (any) {
    num_ = num_.shift_down(m);
    den_ = den_.shift_down(m);
  }
  // Common content: after this both parts have integer coefficients with
  // coprime contents.
  Rat c = rat_gcd(num_.content(), den_.content());
  if (den_.leading_coeff() < 0) c = -c;
  if (c != 1) {
    num_ = num_.scaled(1 / c);
    den_ = den_.scaled(1 / c);
  }
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
  return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }

RatFun RatFun::operator/(const RatFun& o) const {
  require(!o.is_zero(), errc::division_by_zero, "division by zero rational function");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::inv() const {
  require(!is_zero(), errc::division_by_zero, "inverse of zero rational function");
  return RatFun(den_, num_);
}

RatFun RatFun::pow(int64_t e) const {
  if (e == 0) return RatFun::one(nvars());
  if (e < 0) return inv().pow(-e);
  return RatFun(num_.pow(static_cast<uint32_t>(e)), den_.pow(static_cast<uint32_t>(e)));
}

int RatFun::max_total_degree() const {
  return std::max(num_.total_degree(), den_.total_degree());
}

std::string RatFun::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

bool eq_exact(const RatFun& a, const RatFun& b) {
  require(a.nvars() == b.nvars(), errc::arity_mismatch, "eq_exact arity mismatch");
  return a.num() * b.den() == b.num() * a.den();
}

ModularEqResult eq_modular_report(const RatFun& a, const RatFun& b, int trials, uint64_t seed) {
  require(a.nvars() == b.nvars(), errc::arity_mismatch, "eq_modular arity mismatch");
  require(trials >= 1, errc::domain_error, "trials must be >= 1");
  PrimeField F;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> dist(0, F.p() - 1);
  const int n = a.nvars();

  ModularEqResult res;
  res.equal = true;
  res.trials_run = 0;
  res.skipped_singular = 0;
  res.modulus = F.p();
  long da = a.num().total_degree() + b.den().total_degree();
  long db = b.num().total_degree() + a.den().total_degree();
  res.degree_bound = std::max({da, db, 0L});
  res.failure_bound_per_trial = static_cast<double>(res.degree_bound) / static_cast<double>(F.p());

  const int max_attempts = trials * 20 + 20;
  int attempts = 0;
  while (res.trials_run < trials && attempts < max_attempts) {
    ++attempts;
    std::vector<uint64_t> pt(n);
    for (auto& x : pt) x = dist(rng);
    uint64_t denA = a.den().eval_mod(pt, F);
    uint64_t denB = b.den().eval_mod(pt, F);
    if (denA == 0 || denB == 0) {
      ++res.skipped_singular;
      continue;
    }
    uint64_t va = F.mul(a.num().eval_mod(pt, F), F.inv(denA));
    uint64_t vb = F.mul(b.num().eval_mod(pt, F), F.inv(denB));
    ++res.trials_run;
    if (va != vb) {
      res.equal = false;
      break;
    }
  }
  require(res.trials_run > 0, errc::all_points_singular,
          "every sampled point hit a zero denominator");
  return res;
}

bool eq_modular(const RatFun& a, const RatFun& b, int trials, uint64_t seed) {
  return eq_modular_report(a, b, trials, seed).equal;
}

RatFun reduce_common_factors(const RatFun& a, const std::vector<Poly>& factors) {
  if (a.is_zero()) return a;
  Poly num = a.num(), den = a.den();
  bool changed = false;
  for (const Poly& f : factors) {
    if (f.total_degree() < 1 || f.nvars() != num.nvars()) continue;
    while (den.total_degree() >= f.total_degree()) {
      auto qd = Poly::div_exact(den, f);
      if (!qd) break;
      auto qn = Poly::div_exact(num, f);
      if (!qn) break;
      den = std::move(*qd);
      num = std::move(*qn);
      changed = true;
    }
  }
  return changed ? RatFun(std::move(num), std::move(den)) : a;
}

RatFun simplify(const RatFun& a, int degree_cap) {
  if (a.is_zero()) return a;
  if (a.num().total_degree() > degree_cap || a.den().total_degree() > degree_cap) return a;
  Poly g = Poly::gcd(a.num(), a.den());
  if (g.is_constant()) return a;
  auto qn = Poly::div_exact(a.num(), g);
  auto qd = Poly::div_exact(a.den(), g);
  require(qn.has_value() && qd.has_value(), errc::invariant_violation, "gcd does not divide");
  return RatFun(*qn, *qd);
}

Rat eval_rat(const RatFun& a, const std::vector<Rat>& point) {
  Rat d = a.den().eval_rat(point);
  require(d != 0, errc::singular_point, "denominator vanishes at point");
  return a.num().eval_rat(point) / d;
}

std::complex<double> eval_complex(const RatFun& a, const std::vector<std::complex<double>>& point) {
  std::complex<double> d = a.den().eval_complex(point);
  require(std::abs(d) != 0.0, errc::singular_point, "denominator vanishes at point");
  return a.num().eval_complex(point) / d;
}

uint64_t eval_mod(const RatFun& a, const std::vector<uint64_t>& point, const PrimeField& F) {
  uint64_t d = a.den().eval_mod(point, F);
  require(d != 0, errc::singular_point, "denominator vanishes at point mod p");
  return F.mul(a.num().eval_mod(point, F), F.inv(d));
}

RatFun derivative(const RatFun& a, int var) {
  // (n/d)' = (n'd - nd')/d^2
  Poly n = a.num(), d = a.den();
  return RatFun(n.derivative(var) * d - n * d.derivative(var), d * d);
}

}  // namespace cnz
