#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "cnz/cluster.hpp"
#include "cnz/matrix.hpp"
#include "cnz/rational.hpp"

namespace cnz {

using cplx = std::complex<double>;

// Ideal triangulation combinatorics: edges labeled 1..num_edges, triangles
// as clockwise-ordered edge triples.
struct Triangulation {
  int num_edges = 0;
  std::vector<std::array<int, 3>> triangles;
};

// B_Gamma = sum over triangles of the clockwise +-1 pattern. Throws
// self_folded_edge on repeated edges within a triangle and bad_incidence
// unless every edge lies in exactly two triangle slots.
ExchangeMatrix b_from_triangulation(const Triangulation& tri);

// The gluing equations z_+ + z_- = 1, z_+^{-A_+} z_-^{A_-} = 1 posed by the
// Neumann-Zagier matrices of a fully mutated sequence.
struct GluingSystem {
  IMat Aplus, Aminus;  // T x T
  int T() const { return Aplus.rows(); }
};

GluingSystem gluing_system(const MutationSequence& gamma);  // throws not_fully_mutated

struct GluingSolution {
  std::vector<cplx> zminus;  // z_{t,-}; z_{t,+} = 1 - z_{t,-}
  double residual = 0.0;     // max_e |prod z_+^{-a+} z_-^{a-} - 1|
  int iterations = 0;
};

double gluing_residual(const GluingSystem& sys, const std::vector<cplx>& zminus);

// Damped Newton in the unknowns z_{t,-} (multiplicative form).
GluingSolution solve_gluing_complex(const GluingSystem& sys, std::vector<cplx> init, double tol,
                                    int max_iter);

// Unique positive solution of a Dynkin-shaped system (A_+ = 2I): damped
// fixed-point iteration from (1/2,...,1/2) with a damped-Newton fallback.
GluingSolution solve_gluing_positive(const GluingSystem& sys, double tol);

struct FixedPoint {
  std::vector<cplx> eta;
};

// phi: fixed point -> gluing solution, evaluated along the numeric
// trajectory; phi_inverse reconstructs eta from the z-monomials along the
// paths of G_alpha. Both validate their input invariants within tol.
GluingSolution phi(const FixedPoint& eta, const MutationSequence& gamma, double tol = 1e-8);
FixedPoint phi_inverse(const GluingSolution& sol, const MutationSequence& gamma,
                       double tol = 1e-8);

// Hyperbolic volume Sum_t D(z_{t,-}) in the shape convention of the
// figure-eight example.
double volume(const GluingSolution& sol);

struct DynkinSpec {
  char type = 'A';  // A, D, or E
  int rank = 1;
  IMat cartan;
  long dim_g = 0;
  long dual_coxeter = 0;
};

DynkinSpec dynkin_spec(char type, int rank);  // throws domain_error on invalid (type, rank)

// The bipartite sinks-then-sources mutation loop on the Dynkin quiver; its
// NZ matrices are A_+ = 2I, A_- = Cartan.
MutationSequence dynkin_loop(const DynkinSpec& spec);

// Exact rational 2 dim(g) / (2 + h_vee) - n.
Rat central_charge(const DynkinSpec& spec);

struct DilogIdentityReport {
  std::vector<double> zeta;  // positive solution, z_- coordinates
  double lhs = 0.0;          // (6/pi^2) sum L(z_{i,+})
  Rat rhs;
  double abs_err = 0.0;
  double residual = 0.0;
};

DilogIdentityReport dilog_identity_check(const DynkinSpec& spec, double tol);

}  // namespace cnz
