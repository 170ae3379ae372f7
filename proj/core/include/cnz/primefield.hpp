#pragma once

#include <cstdint>

#include "cnz/rational.hpp"

namespace cnz {

// Arithmetic in Z/p for a prime p < 2^62, so that products fit in
// unsigned __int128. The default modulus is the largest prime below 2^62;
// CLUSTER_NZ_MODULUS overrides it (testing only).
class PrimeField {
 public:
  static constexpr uint64_t kDefaultModulus = 4611686018427387847ULL;  // 2^62 - 57

  PrimeField() : p_(modulus_from_env()) {}
  explicit PrimeField(uint64_t p) : p_(p) {}

  static uint64_t modulus_from_env();

  uint64_t p() const { return p_; }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const;  // throws division_by_zero on 0

  uint64_t from_int(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += static_cast<int64_t>(p_);
    return static_cast<uint64_t>(r);
  }
  uint64_t from_rat(const Rat& q) const;  // num * den^{-1}; throws if den = 0 mod p

 private:
  uint64_t p_;
};

}  // namespace cnz
