#include "doctest.h"
#include "test_util.hpp"

#include "cnz/matrix.hpp"
#include "cnz/tropical.hpp"

using namespace cnz;
using namespace cnz::testutil;

namespace {
const IMat kA2{{0, -1}, {1, 0}};
IMat minus_identity(int n) {
  IMat m = IMat::identity(n);
  for (int i = 0; i < n; ++i) m(i, i) = -1;
  return m;
}
}  // namespace

TEST_CASE("tropical mutation on A2") {
  ExchangeMatrix a2 = validate_exchange_matrix(kA2);
  IMat C1 = tropical_mutate(IMat::identity(2), a2, 1);
  CHECK(C1 == IMat{{-1, 0}, {0, 1}});
  ExchangeMatrix B1 = matrix_mutate(a2, 1);
  IMat C2 = tropical_mutate(C1, B1, 2);
  CHECK(C2 == minus_identity(2));
  // involution
  CHECK(tropical_mutate(tropical_mutate(IMat::identity(2), a2, 1), a2, 1) == IMat::identity(2));
}

TEST_CASE("sign of a c-vector") {
  CHECK(sign_of_cvector({0, 1, 2}) == 1);
  CHECK(sign_of_cvector({-1, 0}) == -1);
  CHECK_THROWS_AS((void)sign_of_cvector({1, -1}), error);
  CHECK_THROWS_AS((void)sign_of_cvector({0, 0}), error);
}

TEST_CASE("F matrices") {
  ExchangeMatrix a2 = validate_exchange_matrix(kA2);
  CHECK(f_matrix(a2, 1, 1) == IMat{{-1, 0}, {0, 1}});
  CHECK(f_matrix(a2, 1, -1) == IMat{{-1, 1}, {0, 1}});
  CHECK(f_matrix(a2, 1, 0) == IMat{{-1, 0}, {0, 1}});
  CHECK(f_matrix(a2, 2, 0) == IMat{{1, 0}, {0, -1}});
}

TEST_CASE("C-matrix run on A2") {
  MutationSequence gamma = make_sequence(validate_exchange_matrix(kA2), {1, 2});
  CMatrixTrace tr = c_matrix_run(gamma);
  CHECK(tr.C.back() == minus_identity(2));
  CHECK(tr.eps_trop == std::vector<int>{1, 1});

  CMatrixTrace empty = c_matrix_run(make_sequence(validate_exchange_matrix(kA2), {}));
  CHECK(empty.C.size() == 1);
  CHECK(empty.C[0] == IMat::identity(2));
}

TEST_CASE("C-matrix run on the figure-eight loop") {
  ExchangeMatrix B = validate_exchange_matrix(IMat{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  MutationSequence gamma =
      make_sequence(B, {2, 1}, {Permutation::identity(3), Permutation::from_cycles("(3 2 1)", 3)});
  CMatrixTrace tr = c_matrix_run(gamma);  // engine agreement asserted inside
  CHECK(tr.C.size() == 3);
  CHECK(tr.eps_trop.size() == 2);
}

TEST_CASE("tropical engines agree on random sequences") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> nn(2, 5), tt(1, 12);
  for (int i = 0; i < 500; ++i) {
    int n = nn(rng), T = tt(rng);
    ExchangeMatrix B =
        i % 2 ? random_skew_symmetric(rng, n, 2) : random_skew_symmetrizable(rng, n, 2);
    std::uniform_int_distribution<int> kk(1, n);
    std::vector<int> m(T);
    for (auto& k : m) k = kk(rng);
    std::vector<int> line(n);
    std::iota(line.begin(), line.end(), 1);
    std::vector<Permutation> sig;
    for (int t = 0; t < T; ++t) {
      std::shuffle(line.begin(), line.end(), rng);
      sig.push_back(Permutation::from_one_line(line));
    }
    // c_matrix_run recomputes every step with the direct tropical rule and
    // throws on disagreement or sign incoherence
    CMatrixTrace tr = c_matrix_run(make_sequence(B, m, sig));
    for (const IMat& C : tr.C) {
      Int d = det_int(C);
      CHECK((d == 1 || d == -1));
    }
  }
}

TEST_CASE("reddening and maximal green detection") {
  ExchangeMatrix a2 = validate_exchange_matrix(kA2);
  MutationSequence gamma = make_sequence(a2, {1, 2});
  CHECK(is_reddening(gamma));
  CHECK(is_maximal_green(gamma));
  CHECK_FALSE(is_reddening(make_sequence(a2, {})));
  CHECK_FALSE(is_reddening(make_sequence(a2, {1})));

  ExchangeMatrix skewable = validate_exchange_matrix(IMat{{0, 2}, {-1, 0}});
  CHECK_THROWS_AS((void)is_reddening(make_sequence(skewable, {1})), error);
}

TEST_CASE("normalize_reddening") {
  ExchangeMatrix a2 = validate_exchange_matrix(kA2);
  MutationSequence gamma = make_sequence(a2, {1, 2});
  MutationSequence norm = normalize_reddening(gamma);
  CHECK(norm.sigma.back().is_identity());  // already -I

  // (2,1,2) needs the final (1 2); with it built in, C(3) = -I
  MutationSequence gp = make_sequence(
      a2, {2, 1, 2},
      {Permutation::identity(2), Permutation::identity(2), Permutation::from_cycles("(1 2)", 2)});
  CHECK(c_matrix_run(gp).C.back() == minus_identity(2));
  CHECK(c_matrix_run(normalize_reddening(gp)).C.back() == minus_identity(2));

  // without the swap, normalize_reddening composes it in
  MutationSequence raw = make_sequence(a2, {2, 1, 2});
  MutationSequence fixed = normalize_reddening(raw);
  CHECK(c_matrix_run(fixed).C.back() == minus_identity(2));
  CHECK(fixed.sigma.back() == Permutation::from_cycles("(1 2)", 2));

  CHECK_THROWS_AS((void)normalize_reddening(make_sequence(a2, {1})), error);
}

TEST_CASE("reddening search") {
  ExchangeMatrix a2 = validate_exchange_matrix(kA2);
  ReddeningSearchResult found = search_reddening(a2, 2);
  CHECK(found.found);
  CHECK(found.m == std::vector<int>{1, 2});
  CHECK(found.maximal_green);

  ExchangeMatrix torus = validate_exchange_matrix(IMat{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  ReddeningSearchResult none = search_reddening(torus, 8);
  CHECK_FALSE(none.found);
}
