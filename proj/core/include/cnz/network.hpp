#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cnz/cluster.hpp"
#include "cnz/matrix.hpp"

namespace cnz {

// Equivalence class of black vertices (i, t). Times are stored mod T, i.e.
// (i, T) is folded onto (i, 0); members are sorted by (t, i) and the first
// one is the canonical representative.
struct VertexClass {
  std::vector<std::pair<int, int>> members;  // (i, t), 1 <= i <= n, 0 <= t <= T-1
  std::pair<int, int> rep() const { return {members.front().second, members.front().first}; }
};

struct MutationNetwork {
  int n = 0, T = 0;
  std::vector<VertexClass> classes;
  IMat N0, Nplus, Nminus;  // |E| x T adjacency matrices
  bool fully_mutated = false;
  // class index of each vertex, flat (t * n + i - 1)
  std::vector<int> class_of;
  // B(0..T) trajectory, kept for the Lemma-based recomputations downstream
  std::vector<ExchangeMatrix> Bt;
};

// Builds classes by union-find over the two identification rules and fills
// the adjacency matrices from the edge-drawing rules; the Lemma formulas are
// recomputed independently and asserted equal. Rows follow the t -> [(m_t,
// t-1)] bijection when gamma is fully mutated, canonical (t, i) order
// otherwise.
MutationNetwork build_network(const MutationSequence& gamma);  // throws empty_sequence

struct NZMatrices {
  IMat Aplus, Aminus;
};

NZMatrices nz_matrices(const MutationNetwork& net);

// eps entries: +1, -1, or 0; column t of the result comes from A_+, A_-, or
// A_0 = N_0 accordingly.
IMat signed_nz(const MutationNetwork& net, const std::vector<int>& eps);

// Evaluates all four equivalent conditions of the nilpotency lemma and
// asserts they agree.
bool is_fully_mutated(const MutationSequence& gamma);

// (T n) x (T n) block matrices; vertex (i, t) sits at flat index t*n + i - 1
// with times mod T (the 0-th block of the paper is our block T-1 wrapped).
IMat alpha_matrix(const MutationSequence& gamma);
IMat l_matrix(const MutationSequence& gamma, const std::vector<int>& eps);
IMat x_matrix(const MutationSequence& gamma, const std::vector<int>& eps);  // needs nilpotent alpha

// True iff A_+ A_-^T is symmetric; must hold for every mutation loop.
bool check_symplectic(const MutationSequence& gamma);

// DOT export of the bipartite network: dashed broken edges, directed arrows.
std::string network_dot(const MutationNetwork& net);

}  // namespace cnz
