#pragma once

#include <cstdint>
#include <vector>

#include "cnz/cluster.hpp"
#include "cnz/matrix.hpp"

namespace cnz {

// Tropical Y-seed dynamics. A tropical Y-tuple is the integer matrix of
// exponents whose column j is the c-vector of Y_j.

// One tropical mutation at k (min-plus on exponents); B is the exchange
// matrix at the same time step.
IMat tropical_mutate(const IMat& C, const ExchangeMatrix& B, int k);

// +1 / -1 for an entrywise non-negative / non-positive vector. Mixed signs
// throw sign_incoherent (they would contradict sign coherence, i.e. a bug).
int sign_of_cvector(const std::vector<int64_t>& v);

// F_{k,eps}(B): identity except row k = (-1 at k, [eps*B_kj]_+ elsewhere).
IMat f_matrix(const ExchangeMatrix& B, int k, int eps);

struct CMatrixTrace {
  std::vector<IMat> C;        // C(0..T), C(0) = I
  std::vector<int> eps_trop;  // tropical sign sequence, entries +1/-1
};

// Runs the F/P recursion C(t) = C(t-1) F_{m_t,eps_t} P_{sigma_t^{-1}} and
// recomputes each step with tropical_mutate, asserting agreement.
CMatrixTrace c_matrix_run(const MutationSequence& gamma);

bool is_reddening(const MutationSequence& gamma);      // requires skew-symmetric B
bool is_maximal_green(const MutationSequence& gamma);  // reddening and all signs +

// Composes the last permutation with the nu of BDP Prop. 2.10 so that
// C(T) = -I exactly.
MutationSequence normalize_reddening(const MutationSequence& gamma);

struct ReddeningSearchResult {
  bool found = false;
  std::vector<int> m;         // the reddening sequence when found
  bool maximal_green = false;
  uint64_t states_visited = 0;
};

// Iterative deepening over mutation indices with (B, C) state hashing.
ReddeningSearchResult search_reddening(const ExchangeMatrix& B, int max_depth);

}  // namespace cnz
