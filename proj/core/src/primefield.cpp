#include "cnz/primefield.hpp"

#include <cstdlib>

#include "cnz/errors.hpp"

namespace cnz {

uint64_t PrimeField::modulus_from_env() {
  if (const char* s = std::getenv("CLUSTER_NZ_MODULUS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 2 && v < (1ULL << 62)) return v;
  }
  return kDefaultModulus;
}

uint64_t PrimeField::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t PrimeField::inv(uint64_t a) const {
  require(a % p_ != 0, errc::division_by_zero, "inverse of 0 mod p");
  return pow(a % p_, p_ - 2);
}

uint64_t PrimeField::from_rat(const Rat& q) const {
  Int num = q.get_num(), den = q.get_den();
  Int p(static_cast<unsigned long>(0));
  mpz_import(p.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &p_);
  Int nm = num % p, dm = den % p;
  if (nm < 0) nm += p;
  uint64_t n64 = mpz_get_ui(nm.get_mpz_t());
  uint64_t d64 = mpz_get_ui(dm.get_mpz_t());
  require(d64 % p_ != 0, errc::singular_point, "denominator vanishes mod p");
  return mul(n64 % p_, inv(d64));
}

}  // namespace cnz
