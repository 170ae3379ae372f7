#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cnz/matrix.hpp"
#include "cnz/primefield.hpp"
#include "cnz/ratfun.hpp"

namespace cnz {

// Skew-symmetrizable exchange matrix together with a minimal positive
// symmetrizer d (d_i B_ij = -d_j B_ji).
struct ExchangeMatrix {
  int n = 0;
  IMat b;
  std::vector<int64_t> d;

  bool skew_symmetric() const;
};

// Validates skew-symmetrizability and computes the symmetrizer by BFS
// propagation over the graph of nonzero entries, scaled to smallest
// positive integers (free components get d = 1).
ExchangeMatrix validate_exchange_matrix(const IMat& entries);

ExchangeMatrix matrix_mutate(const ExchangeMatrix& B, int k);  // 1-based, involutive

// Permutation of {1..n} in one-line notation (map(i) = sigma(i)).
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  static Permutation from_one_line(const std::vector<int>& map);  // validates bijection
  // Parses cycle notation like "(3 2 1)" or "(1 2)(3 4)"; "id" is allowed.
  static Permutation from_cycles(const std::string& s, int n);

  int n() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[i - 1]; }
  bool is_identity() const;
  Permutation inverse() const;
  Permutation compose(const Permutation& inner) const;  // this ∘ inner
  IMat matrix() const;  // P_sigma = (delta_{i,sigma(j)})
  const std::vector<int>& one_line() const { return map_; }
  bool operator==(const Permutation& o) const { return map_ == o.map_; }

 private:
  std::vector<int> map_;
};

struct YSeed {
  ExchangeMatrix B;
  std::vector<RatFun> Y;
};

YSeed initial_seed(const ExchangeMatrix& B);  // Y = (y1, ..., yn)
YSeed yseed_mutate(const YSeed& seed, int k);
YSeed apply_permutation(const YSeed& seed, const Permutation& sigma);
ExchangeMatrix apply_permutation_matrix(const ExchangeMatrix& B, const Permutation& sigma);

// The triple gamma = (B, m, sigma) driving all dynamics.
struct MutationSequence {
  ExchangeMatrix B;
  std::vector<int> m;                // 1-based mutation directions
  std::vector<Permutation> sigma;    // same length as m

  int n() const { return B.n; }
  int T() const { return static_cast<int>(m.size()); }
};

// Validates index ranges and permutation arities (sigma may be empty = all id).
MutationSequence make_sequence(ExchangeMatrix B, std::vector<int> m,
                               std::vector<Permutation> sigma = {});

struct Trajectory {
  std::vector<ExchangeMatrix> B;            // T+1 matrices
  std::vector<std::vector<RatFun>> Y;       // T+1 tuples; empty when matrices_only
  bool matrices_only = false;
};

Trajectory run_sequence(const MutationSequence& gamma, bool symbolic);
std::vector<RatFun> cluster_transformation(const MutationSequence& gamma);
bool is_mutation_loop(const MutationSequence& gamma);

// The non-monomial numerator factors of Y_{m_t} and Y_{m_t}+1 along the
// trajectory. Denominators produced by the mutation formulas are products
// of these, so trial division against the basis keeps expressions reduced.
std::vector<Poly> mutation_factor_basis(const MutationSequence& gamma, const Trajectory& tr);

// Quiver <-> skew-symmetric matrix dictionary. Edges are (from, to) pairs
// with multiplicity; Q_ij = [B_ij]_+.
using QuiverEdges = std::map<std::pair<int, int>, int64_t>;
QuiverEdges matrix_to_quiver(const ExchangeMatrix& B);  // throws not_skew_symmetric
ExchangeMatrix quiver_to_matrix(int n, const QuiverEdges& edges);  // throws illegal_quiver

// ---- numeric Y-seed dynamics ------------------------------------------------
//
// The same mutation formulas evaluated in C or in a prime field; used by the
// gluing-equation geometry and the Schwartz-Zippel verifier.

struct ComplexOps {
  using value_type = std::complex<double>;
  value_type one() const { return {1.0, 0.0}; }
  value_type from_int(int64_t v) const { return {static_cast<double>(v), 0.0}; }
  value_type add(value_type a, value_type b) const { return a + b; }
  value_type sub(value_type a, value_type b) const { return a - b; }
  value_type mul(value_type a, value_type b) const { return a * b; }
  value_type inv(value_type a) const { return one() / a; }
  bool is_zero(value_type a) const { return std::abs(a) < 1e-300; }
};

struct FpOps {
  PrimeField F;
  using value_type = uint64_t;
  value_type one() const { return 1; }
  value_type from_int(int64_t v) const { return F.from_int(v); }
  value_type add(value_type a, value_type b) const { return F.add(a, b); }
  value_type sub(value_type a, value_type b) const { return F.sub(a, b); }
  value_type mul(value_type a, value_type b) const { return F.mul(a, b); }
  value_type inv(value_type a) const { return F.inv(a); }
  bool is_zero(value_type a) const { return a == 0; }
};

template <class Ops>
struct NumericTrajectory {
  using V = typename Ops::value_type;
  std::vector<std::vector<V>> Y;  // T+1 tuples
  std::vector<V> y_at_mutation;   // Y_{m_t}(t-1) for t = 1..T
};

// Runs gamma on numeric values Y(0) = y0. Throws singular_point whenever a
// Y_{m_t} hits 0 or -1 (the mutation formulas degenerate there).
template <class Ops>
NumericTrajectory<Ops> run_numeric(const MutationSequence& gamma, const Ops& ops,
                                   const std::vector<typename Ops::value_type>& y0) {
  using V = typename Ops::value_type;
  const int n = gamma.n();
  require(static_cast<int>(y0.size()) == n, errc::arity_mismatch, "numeric seed arity");
  NumericTrajectory<Ops> out;
  out.Y.reserve(gamma.T() + 1);
  out.Y.push_back(y0);
  ExchangeMatrix B = gamma.B;
  std::vector<V> Y = y0;
  for (int t = 1; t <= gamma.T(); ++t) {
    const int k = gamma.m[t - 1];
    V yk = Y[k - 1];
    require(!ops.is_zero(yk), errc::singular_point, "Y at mutation point is 0");
    V u = ops.add(yk, ops.one());
    require(!ops.is_zero(u), errc::singular_point, "Y at mutation point is -1");
    out.y_at_mutation.push_back(yk);
    V zplus = ops.mul(yk, ops.inv(u));
    std::vector<V> next(n);
    for (int i = 1; i <= n; ++i) {
      if (i == k) {
        next[i - 1] = ops.inv(yk);
        continue;
      }
      int64_t b = B.b(k - 1, i - 1);
      V f = ops.one();
      for (int64_t j = 0; j < (b >= 0 ? b : -b); ++j) f = ops.mul(f, b >= 0 ? zplus : u);
      next[i - 1] = ops.mul(Y[i - 1], f);
    }
    B = matrix_mutate(B, k);
    const Permutation& s = gamma.sigma[t - 1];
    if (!s.is_identity()) {
      B = apply_permutation_matrix(B, s);
      Permutation inv = s.inverse();
      std::vector<V> perm(n);
      for (int i = 1; i <= n; ++i) perm[i - 1] = next[inv(i) - 1];
      next = std::move(perm);
    }
    Y = std::move(next);
    out.Y.push_back(Y);
  }
  return out;
}

}  // namespace cnz
