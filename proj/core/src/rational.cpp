#include "cnz/rational.hpp"

namespace cnz {

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Int g;
  Int x = a.get_num() * b.get_den();
  Int y = b.get_num() * a.get_den();
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  Rat r(g, a.get_den() * b.get_den());
  r.canonicalize();
  return r;
}

double rat_to_double(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }

}  // namespace cnz
