#include <cmath>

#include "doctest.h"
#include "test_util.hpp"

#include "cnz/dilog.hpp"
#include "cnz/geometry.hpp"
#include "cnz/network.hpp"

using namespace cnz;
using namespace cnz::testutil;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const double kSqrt3 = std::sqrt(3.0);

MutationSequence figure_eight_loop() {
  ExchangeMatrix B = validate_exchange_matrix(IMat{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
  return make_sequence(B, {2, 1},
                       {Permutation::identity(3), Permutation::from_cycles("(3 2 1)", 3)});
}

}  // namespace

TEST_CASE("exchange matrix of the once-punctured torus") {
  Triangulation tri{3, {{1, 2, 3}, {1, 2, 3}}};
  CHECK(b_from_triangulation(tri).b == IMat{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});

  Triangulation folded{3, {{1, 1, 2}, {1, 2, 3}}};
  CHECK_THROWS_AS((void)b_from_triangulation(folded), error);

  Triangulation bad{4, {{1, 2, 3}, {1, 2, 4}}};
  CHECK_THROWS_AS((void)b_from_triangulation(bad), error);
}

TEST_CASE("relabeling edges conjugates the triangulation matrix") {
  // swap labels 1 <-> 2 in both triangles
  Triangulation tri{3, {{2, 1, 3}, {2, 1, 3}}};
  ExchangeMatrix B = b_from_triangulation(tri);
  IMat expect{{0, -2, 2}, {2, 0, -2}, {-2, 2, 0}};
  CHECK(B.b == expect);
}

TEST_CASE("gluing system of the figure-eight loop") {
  GluingSystem sys = gluing_system(figure_eight_loop());
  CHECK(sys.Aplus == IMat{{-1, -1}, {1, 1}});
  CHECK(sys.Aminus == IMat{{1, 1}, {-1, -1}});
  // z w (1-z)(1-w) = 1 at z = w = (1+sqrt(-3))/2
  cplx z(0.5, kSqrt3 / 2);
  CHECK(gluing_residual(sys, {z, z}) < 1e-14);
  CHECK_THROWS_AS((void)gluing_system(make_sequence(figure_eight_loop().B, {1, 1})), error);
}

TEST_CASE("complex Newton finds the complete structure of the figure-eight knot") {
  GluingSystem sys = gluing_system(figure_eight_loop());
  GluingSolution sol = solve_gluing_complex(sys, {{0.5, 0.8}, {0.5, 0.8}}, 1e-13, 100);
  cplx target(0.5, kSqrt3 / 2);
  CHECK(sol.residual < 1e-12);
  CHECK(std::abs(sol.zminus[0] - target) < 1e-10);
  CHECK(std::abs(sol.zminus[1] - target) < 1e-10);

  // starting at a solution returns immediately
  GluingSolution at = solve_gluing_complex(sys, {target, target}, 1e-12, 100);
  CHECK(at.iterations == 0);

  CHECK_THROWS_AS((void)solve_gluing_complex(sys, {{0.0, 0.0}, {0.0, 0.0}}, 1e-12, 100), error);
}

TEST_CASE("positive solver on Dynkin systems") {
  GluingSystem a2 = gluing_system(dynkin_loop(dynkin_spec('A', 2)));
  GluingSolution sol = solve_gluing_positive(a2, 1e-13);
  double zeta = (3.0 - std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(sol.zminus[0].real() - zeta) < 1e-12);
  CHECK(std::abs(sol.zminus[1].real() - zeta) < 1e-12);

  GluingSystem a1 = gluing_system(dynkin_loop(dynkin_spec('A', 1)));
  CHECK(std::abs(solve_gluing_positive(a1, 1e-13).zminus[0].real() - 0.5) < 1e-12);

  GluingSystem a3 = gluing_system(dynkin_loop(dynkin_spec('A', 3)));
  CHECK(solve_gluing_positive(a3, 1e-12).residual < 1e-12);

  CHECK_THROWS_AS((void)solve_gluing_positive(gluing_system(figure_eight_loop()), 1e-12), error);
}

TEST_CASE("dilogarithm basics") {
  CHECK(std::abs(dilog({0.0, 0.0})) == 0.0);
  CHECK(std::abs(dilog({1.0, 0.0}) - cplx(kPi * kPi / 6, 0)) < 1e-14);
  double li2_half = kPi * kPi / 12 - 0.5 * std::log(2.0) * std::log(2.0);
  CHECK(std::abs(dilog({0.5, 0.0}) - cplx(li2_half, 0)) < 1e-14);
}

TEST_CASE("dilogarithm reflection identity on random points") {
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> rad(0.05, 0.9), ang(0.15, 2 * kPi - 0.15);
  for (int i = 0; i < 100; ++i) {
    double r = rad(rng), a = ang(rng);
    cplx z(r * std::cos(a), r * std::sin(a));
    cplx lhs = dilog(z) + dilog(1.0 - z);
    cplx rhs = cplx(kPi * kPi / 6, 0) - std::log(z) * std::log(1.0 - z);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("dilogarithm inversion consistency for large arguments") {
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 3.0);
  for (int i = 0; i < 50; ++i) {
    cplx z(re(rng), im(rng));
    if (std::abs(z) <= 1.1) continue;
    cplx lhs = dilog(z);
    cplx rhs = -dilog(1.0 / z) - cplx(kPi * kPi / 6, 0) - 0.5 * std::pow(std::log(-z), 2);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("Bloch-Wigner function") {
  CHECK(bloch_wigner({0.7, 0.0}) == 0.0);
  cplx z(0.3, 0.8);
  CHECK(std::abs(bloch_wigner(z) + bloch_wigner(std::conj(z))) < 1e-14);
  CHECK_THROWS_AS((void)bloch_wigner({0.0, 0.0}), error);
  CHECK_THROWS_AS((void)bloch_wigner({1.0, 0.0}), error);
  // the figure-eight volume constant
  CHECK(std::abs(2 * bloch_wigner({0.5, kSqrt3 / 2}) - 2.02988321281931) < 1e-11);
}

TEST_CASE("Rogers dilogarithm ladder values") {
  CHECK(std::abs(rogers(0.5) - kPi * kPi / 12) < 1e-13);
  double golden = (std::sqrt(5.0) - 1) / 2;
  CHECK(std::abs(rogers(golden) - kPi * kPi / 10) < 1e-13);
  CHECK(std::abs(rogers(1 - golden) - kPi * kPi / 15) < 1e-13);
  CHECK_THROWS_AS((void)rogers(0.0), error);
  CHECK_THROWS_AS((void)rogers(1.5), error);
}

TEST_CASE("volume conventions") {
  GluingSystem sys = gluing_system(figure_eight_loop());
  GluingSolution sol = solve_gluing_complex(sys, {{0.5, 0.8}, {0.5, 0.8}}, 1e-13, 100);
  CHECK(std::abs(volume(sol) - 2.02988321281) < 1e-9);

  GluingSolution conj = sol;
  for (auto& z : conj.zminus) z = std::conj(z);
  CHECK(std::abs(volume(conj) + volume(sol)) < 1e-12);

  GluingSolution real_sol;
  real_sol.zminus = {{0.3, 0.0}, {0.9, 0.0}};
  CHECK(volume(real_sol) == 0.0);
}

TEST_CASE("phi maps the figure-eight fixed point to the gluing solution") {
  MutationSequence gamma = figure_eight_loop();
  FixedPoint eta;
  eta.eta = {{1.0, 0.0}, {-0.5, -kSqrt3 / 2}, {-0.5, kSqrt3 / 2}};
  GluingSolution sol = phi(eta, gamma);
  cplx target(0.5, kSqrt3 / 2);
  CHECK(std::abs(sol.zminus[0] - target) < 1e-12);
  CHECK(std::abs(sol.zminus[1] - target) < 1e-12);

  FixedPoint back = phi_inverse(sol, gamma);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(back.eta[i] - eta.eta[i]) < 1e-10);
  GluingSolution again = phi(back, gamma);
  for (int t = 0; t < 2; ++t) CHECK(std::abs(again.zminus[t] - sol.zminus[t]) < 1e-10);

  FixedPoint not_fixed;
  not_fixed.eta = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
  CHECK_THROWS_AS((void)phi(not_fixed, gamma), error);
}

TEST_CASE("positive fixed points map into the unit square") {
  // Dynkin loops have a unique positive gluing solution; pull it back
  MutationSequence gamma = dynkin_loop(dynkin_spec('A', 2));
  GluingSolution sol = solve_gluing_positive(gluing_system(gamma), 1e-13);
  FixedPoint eta = phi_inverse(sol, gamma);
  for (const cplx& e : eta.eta) {
    CHECK(e.real() > 0.0);
    CHECK(std::abs(e.imag()) < 1e-10);
  }
  GluingSolution round = phi(eta, gamma);
  for (int t = 0; t < 2; ++t) {
    CHECK(round.zminus[t].real() > 0.0);
    CHECK(round.zminus[t].real() < 1.0);
    CHECK(std::abs(round.zminus[t] - sol.zminus[t]) < 1e-10);
  }
}

TEST_CASE("Dynkin data tables") {
  DynkinSpec a2 = dynkin_spec('A', 2);
  CHECK(a2.dim_g == 8);
  CHECK(a2.dual_coxeter == 3);
  CHECK(a2.cartan == IMat{{2, -1}, {-1, 2}});
  CHECK(rat_str(central_charge(a2)) == "6/5");
  CHECK(rat_str(central_charge(dynkin_spec('A', 1))) == "1/2");
  CHECK(rat_str(central_charge(dynkin_spec('D', 4))) == "3");
  CHECK(rat_str(central_charge(dynkin_spec('E', 8))) == "15/2");
  CHECK_THROWS_AS((void)dynkin_spec('B', 2), error);
  CHECK_THROWS_AS((void)dynkin_spec('D', 3), error);
  CHECK_THROWS_AS((void)dynkin_spec('E', 9), error);
}

TEST_CASE("Dynkin loops have NZ matrices 2I and Cartan") {
  MutationSequence a2 = dynkin_loop(dynkin_spec('A', 2));
  CHECK(a2.B.b == IMat{{0, -1}, {1, 0}});
  CHECK(a2.m == std::vector<int>{1, 2});
  for (char type : {'A', 'D', 'E'}) {
    for (int rank : {2, 3, 4, 6}) {
      if (type == 'A' && rank > 3) continue;
      if (type == 'D' && rank != 4) continue;
      if (type == 'E' && rank != 6) continue;
      DynkinSpec spec = dynkin_spec(type, rank);
      MutationSequence gamma = dynkin_loop(spec);
      CHECK(is_mutation_loop(gamma));
      NZMatrices nz = nz_matrices(build_network(gamma));
      IMat twoI = IMat::identity(gamma.T());
      for (int i = 0; i < gamma.T(); ++i) twoI(i, i) = 2;
      CHECK(nz.Aplus == twoI);
      CHECK(nz.Aminus == spec.cartan);
    }
  }
}

TEST_CASE("dilogarithm identity across ADE") {
  for (auto [type, rank] : std::vector<std::pair<char, int>>{
           {'A', 1}, {'A', 2}, {'A', 3}, {'D', 4}, {'E', 6}}) {
    DilogIdentityReport rep = dilog_identity_check(dynkin_spec(type, rank), 1e-13);
    CHECK(rep.abs_err < 1e-10);
    CHECK(rep.residual < 1e-12);
  }
}

TEST_CASE("Dynkin positive solution is unique across starts") {
  // perturb the solve by solving A3 from scattered complex inits as well
  DynkinSpec spec = dynkin_spec('A', 3);
  GluingSystem sys = gluing_system(dynkin_loop(spec));
  GluingSolution ref = solve_gluing_positive(sys, 1e-13);
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.15, 0.85);
  int converged_same = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<cplx> init;
    for (int t = 0; t < sys.T(); ++t) init.push_back({u(rng), 0.0});
    try {
      GluingSolution sol = solve_gluing_complex(sys, init, 1e-12, 200);
      bool positive = true;
      for (const cplx& z : sol.zminus)
        positive = positive && std::abs(z.imag()) < 1e-8 && z.real() > 0 && z.real() < 1;
      if (!positive) continue;
      double dist = 0;
      for (int t = 0; t < sys.T(); ++t) dist = std::max(dist, std::abs(sol.zminus[t] - ref.zminus[t]));
      CHECK(dist < 1e-10);
      ++converged_same;
    } catch (const error&) {
      // a few starts may wander off; uniqueness is about the ones that land
    }
  }
  CHECK(converged_same >= 10);
}
