#include "cnz/poly.hpp"

#include <algorithm>
#include <sstream>

#include "cnz/errors.hpp"

namespace cnz {

bool LexLess::operator()(const ExpVec& a, const ExpVec& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

// A 0-variable polynomial is a bare constant; binary operations promote it
// to the other operand's arity.
Poly promote(const Poly& p, int nvars) {
  if (p.nvars() == nvars) return p;
  Rat c = p.is_zero() ? Rat(0) : p.terms().begin()->second;
  return Poly::constant(nvars, c);
}

void check_arity(const Poly& a, const Poly& b) {
  require(a.nvars() == b.nvars(), errc::arity_mismatch, "polynomial arity mismatch");
}

ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

Poly Poly::constant(int nvars, const Rat& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.emplace(ExpVec(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  require(i >= 1 && i <= nvars, errc::index_out_of_range, "variable index");
  Poly p(nvars);
  ExpVec e(nvars, 0);
  e[i - 1] = 1;
  p.terms_.emplace(std::move(e), Rat(1));
  return p;
}

Poly Poly::monomial(int nvars, ExpVec e, Rat c) {
  require(static_cast<int>(e.size()) == nvars, errc::arity_mismatch, "monomial arity");
  Poly p(nvars);
  if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const ExpVec& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

bool Poly::is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second == 1; }

void Poly::add_term(const ExpVec& e, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (nvars_ != o.nvars_ && (nvars_ == 0 || o.nvars_ == 0)) {
    int nv = std::max(nvars_, o.nvars_);
    return promote(*this, nv) + promote(o, nv);
  }
  check_arity(*this, o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (nvars_ != o.nvars_ && (nvars_ == 0 || o.nvars_ == 0)) {
    int nv = std::max(nvars_, o.nvars_);
    return promote(*this, nv) - promote(o, nv);
  }
  check_arity(*this, o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_ && (nvars_ == 0 || o.nvars_ == 0)) {
    int nv = std::max(nvars_, o.nvars_);
    return promote(*this, nv) * promote(o, nv);
  }
  check_arity(*this, o);
  Poly r(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(exp_add(ea, eb), ca * cb);
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

Poly Poly::pow(uint32_t e) const {
  Poly r = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (uint32_t x : e) s += static_cast<int>(x);
    d = std::max(d, s);
  }
  return d;
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var - 1]));
  return d;
}

ExpVec Poly::min_exponents() const {
  ExpVec m(nvars_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    }
  }
  return m;
}

Poly Poly::shift_down(const ExpVec& m) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    ExpVec f(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      require(e[i] >= m[i], errc::invariant_violation, "monomial does not divide term");
      f[i] = e[i] - m[i];
    }
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

Rat Poly::content() const {
  if (terms_.empty()) return Rat(0);
  Int g(0), l(1);
  for (const auto& [e, c] : terms_) {
    Int num = abs(c.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rat r(g, l);
  r.canonicalize();
  return r;
}

const Rat& Poly::leading_coeff() const {
  require(!terms_.empty(), errc::invariant_violation, "leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

Poly Poly::derivative(int var) const {
  require(var >= 1 && var <= nvars_, errc::index_out_of_range, "derivative variable");
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    uint32_t k = e[var - 1];
    if (k == 0) continue;
    ExpVec f = e;
    f[var - 1] = k - 1;
    r.add_term(f, c * Rat(static_cast<long>(k)));
  }
  return r;
}

Rat Poly::eval_rat(const std::vector<Rat>& point) const {
  require(static_cast<int>(point.size()) == nvars_, errc::arity_mismatch, "eval point arity");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Rat p;
      mpz_pow_ui(p.get_num().get_mpz_t(), point[i].get_num().get_mpz_t(), e[i]);
      mpz_pow_ui(p.get_den().get_mpz_t(), point[i].get_den().get_mpz_t(), e[i]);
      t *= p;
    }
    acc += t;
  }
  return acc;
}

std::complex<double> Poly::eval_complex(const std::vector<std::complex<double>>& point) const {
  require(static_cast<int>(point.size()) == nvars_, errc::arity_mismatch, "eval point arity");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    std::complex<double> t(rat_to_double(c), 0.0);
    for (int i = 0; i < nvars_; ++i)
      for (uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

uint64_t Poly::eval_mod(const std::vector<uint64_t>& point, const PrimeField& F) const {
  require(static_cast<int>(point.size()) == nvars_, errc::arity_mismatch, "eval point arity");
  uint64_t acc = 0;
  for (const auto& [e, c] : terms_) {
    uint64_t t = F.from_rat(c);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t = F.mul(t, F.pow(point[i], e[i]));
    acc = F.add(acc, t);
  }
  return acc;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat ac = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    std::string vars;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += "y" + std::to_string(i + 1);
      if (e[i] > 1) vars += "^" + std::to_string(e[i]);
    }
    if (vars.empty()) {
      out << rat_str(ac);
    } else if (ac == 1) {
      out << vars;
    } else {
      out << rat_str(ac) << "*" << vars;
    }
  }
  return out.str();
}

std::optional<Poly> Poly::div_exact(const Poly& a, const Poly& b) {
  check_arity(a, b);
  require(!b.is_zero(), errc::division_by_zero, "exact division by zero polynomial");
  const int nv = a.nvars();
  Poly q(nv);
  Poly r = a;
  const auto& [eb, cb] = *b.terms_.rbegin();
  ExpVec d(nv), e(nv);
  while (!r.is_zero()) {
    const auto& [er, cr] = *r.terms_.rbegin();
    for (int i = 0; i < nv; ++i) {
      if (er[i] < eb[i]) return std::nullopt;
      d[i] = er[i] - eb[i];
    }
    Rat qc = cr / cb;
    q.add_term(d, qc);
    // r -= qc * y^d * b, in place
    for (const auto& [ebt, cbt] : b.terms_) {
      for (int i = 0; i < nv; ++i) e[i] = ebt[i] + d[i];
      r.add_term(e, -cbt * qc);
    }
  }
  return q;
}

namespace {

// View of p as a univariate polynomial in y_var: degree -> coefficient poly.
std::map<uint32_t, Poly> coeffs_in(const Poly& p, int var) {
  std::map<uint32_t, Poly> out;
  for (const auto& [e, c] : p.terms()) {
    uint32_t d = e[var - 1];
    ExpVec f = e;
    f[var - 1] = 0;
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, Poly(p.nvars())).first;
    it->second.add_term(f, c);
  }
  return out;
}

Poly lead_coeff_in(const Poly& p, int var) {
  auto cs = coeffs_in(p, var);
  return cs.rbegin()->second;
}

// Divide by full rational content, fix the lex-leading sign to +.
Poly make_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Rat c = p.content();
  if (p.leading_coeff() < 0) c = -c;
  return p.scaled(1 / c);
}

Poly content_in(const Poly& p, int var) {
  Poly g(p.nvars());
  for (const auto& [d, c] : coeffs_in(p, var)) {
    g = Poly::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// Pseudo-remainder of a by b in y_var (both nonzero, deg(a) >= deg(b)).
Poly prem(Poly a, const Poly& b, int var) {
  const int db = b.degree_in(var);
  const Poly lb = lead_coeff_in(b, var);
  while (!a.is_zero()) {
    int da = a.degree_in(var);
    if (da < db) break;
    Poly la = lead_coeff_in(a, var);
    ExpVec shift(a.nvars(), 0);
    shift[var - 1] = static_cast<uint32_t>(da - db);
    a = a * lb - b * la * Poly::monomial(a.nvars(), shift, Rat(1));
  }
  return a;
}

int main_variable(const Poly& a, const Poly& b) {
  for (int v = a.nvars(); v >= 1; --v)
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
  return 0;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return make_primitive(b);
  if (b.is_zero()) return make_primitive(a);

  // Split off the common pure-monomial factor first.
  ExpVec ma = a.min_exponents(), mb = b.min_exponents();
  ExpVec m(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) m[i] = std::min(ma[i], mb[i]);
  Poly A = a.shift_down(ma), B = b.shift_down(mb);

  int var = main_variable(A, B);
  Poly g(a.nvars());
  if (var == 0) {
    g = Poly::constant(a.nvars(), Rat(1));
  } else {
    Poly ca = content_in(A, var), cb = content_in(B, var);
    Poly g0 = Poly::gcd(ca, cb);
    A = *div_exact(A, ca);
    B = *div_exact(B, cb);
    if (A.degree_in(var) < B.degree_in(var)) std::swap(A, B);
    // Primitive PRS.
    while (true) {
      if (B.is_zero()) {
        g = A;
        break;
      }
      if (B.degree_in(var) == 0) {
        g = Poly::constant(a.nvars(), Rat(1));  // primitive pair, unit gcd
        break;
      }
      Poly r = prem(A, B, var);
      A = B;
      if (r.is_zero()) {
        g = A;
        break;
      }
      B = *div_exact(r, content_in(r, var));
      B = make_primitive(B);
    }
    g = make_primitive(g) * g0;
  }
  g = make_primitive(g * Poly::monomial(a.nvars(), m, Rat(1)));
  return g;
}

}  // namespace cnz
