#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cnz/cluster.hpp"
#include "cnz/matrix.hpp"
#include "cnz/network.hpp"
#include "cnz/ratfun.hpp"

namespace cnz {

using RatMat = Mat<RatFun>;

// Jacobian of a single Y-seed mutation, as rational functions of the seed's
// base variables. Built from the z/F closed form and cross-checked entrywise
// against the derivative case table.
RatMat single_jacobian(const YSeed& seed, int k);

// J_gamma = P_{sigma_T} J_{m_T} ... P_{sigma_1} J_{m_1} along the trajectory.
RatMat chain_jacobian(const MutationSequence& gamma);

// K = diag(mu(y))^{-1} J_gamma diag(y).
RatMat k_matrix(const MutationSequence& gamma);

struct ZMatrices {
  std::vector<RatFun> zplus, zminus;  // diagonals of Z_+(y), Z_-(y)
};
ZMatrices z_matrices(const MutationSequence& gamma);

// Exact determinant: Laplace expansion up to 4x4, fraction-free Bareiss with
// row denominator clearing above that.
RatFun det_ratfun(const RatMat& m);

// tau_gamma = det(A_+ Z_- + A_- Z_+); an invariant of the cluster
// transformation. Throws not_fully_mutated.
RatFun tau(const MutationSequence& gamma);

enum class VerifyMode { exact, modular };

struct VerificationReport {
  VerifyMode mode = VerifyMode::exact;
  bool equal = false;
  std::string lhs, rhs;
  int trials = 0;
  int skipped = 0;
  uint64_t modulus = 0;
  long degree_bound = 0;
  double failure_bound = 0.0;  // per-trial Schwartz-Zippel bound
  std::string note;
};

// det(I - K_gamma) = det(A_+ Z_- + A_- Z_+). Exact mode compares the two
// rational functions by cross-multiplication; modular mode evaluates both
// sides of the identity at random prime-field points along numeric
// trajectories (same Schwartz-Zippel certificate, no expression swell).
VerificationReport verify_det_formula(const MutationSequence& gamma, VerifyMode mode,
                                      int trials = 8, uint64_t seed = 1);

// det(I_n - F_eps) = det X_eps = det A_eps, integer-exact three-route check.
VerificationReport verify_f_det(const MutationSequence& gamma, const std::vector<int>& eps);

// det(I_n - C(T)) = det A_{eps_trop}, plus a numeric probe of
// K(eps,...,eps)^T -> C(T) for eps in {1e-2, 1e-4, 1e-6}.
VerificationReport verify_tropical_limit(const MutationSequence& gamma);

// Product F_{m_1,eps_1} P_{sigma_1^{-1}} ... F_{m_T,eps_T} P_{sigma_T^{-1}}
// with each F taken at B(t-1).
IMat f_product(const MutationSequence& gamma, const std::vector<int>& eps);

// Conservative bound on the total degree of the cross-multiplied difference
// of the two sides of the determinant formula (used for failure bounds).
long det_formula_degree_bound(const MutationSequence& gamma);

}  // namespace cnz
