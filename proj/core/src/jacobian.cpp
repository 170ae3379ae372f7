#include "cnz/jacobian.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cnz/tropical.hpp"

namespace cnz {

namespace {

void push_factor(std::vector<Poly>& basis, const Poly& f) {
  if (f.term_count() < 2) return;
  if (std::find(basis.begin(), basis.end(), f) == basis.end()) basis.push_back(f);
}

RatMat rat_identity(int n, int nvars) {
  RatMat m(n, n, RatFun::zero(nvars));
  for (int i = 0; i < n; ++i) m(i, i) = RatFun::one(nvars);
  return m;
}

RatMat permute_rows(const Permutation& sigma, const RatMat& m) {
  Permutation inv = sigma.inverse();
  RatMat r = m;
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i - 1, j) = m(inv(i) - 1, j);
  return r;
}

}  // namespace

RatMat single_jacobian(const YSeed& seed, int k) {
  const int n = seed.B.n;
  require(k >= 1 && k <= n, errc::index_out_of_range, "jacobian mutation index");
  const int nv = seed.Y.front().nvars();
  const RatFun& yk = seed.Y[k - 1];
  require(!yk.is_zero(), errc::invariant_violation, "Y at mutation point is zero");

  RatFun u = yk + RatFun::one(nv);  // Y_k + 1
  RatFun zplus = yk / u;
  RatFun zminus = u.inv();

  YSeed mut = yseed_mutate(seed, k);
  IMat Fp = f_matrix(seed.B, k, 1), Fm = f_matrix(seed.B, k, -1);

  // J = diag(mu_k(Y)) (z_- F_+^T + z_+ F_-^T) diag(Y)^{-1}; the transposes
  // turn row k of F into column k.
  RatMat J(n, n, RatFun::zero(nv));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatFun f = zminus * RatFun::constant(nv, Rat(static_cast<long>(Fp(j, i)))) +
                 zplus * RatFun::constant(nv, Rat(static_cast<long>(Fm(j, i))));
      if (f.is_zero()) continue;
      J(i, j) = mut.Y[i] * f / seed.Y[j];
    }

  // Independent route: the derivative case table.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      RatFun expect = RatFun::zero(nv);
      if (i == k && j == k) {
        expect = -(yk * yk).inv();
      } else if (j != k) {
        if (i == j) expect = mut.Y[i - 1] / seed.Y[i - 1];
      } else {  // j == k, i != k
        int64_t b = seed.B.b(k - 1, i - 1);
        if (b >= 0)
          expect = mut.Y[i - 1] * RatFun::constant(nv, Rat(static_cast<long>(b))) * zminus / yk;
        else
          expect = mut.Y[i - 1] * RatFun::constant(nv, Rat(static_cast<long>(-b))) * zplus / yk;
      }
      require(eq_exact(J(i - 1, j - 1), expect), errc::invariant_violation,
              "jacobian case-table mismatch");
    }
  return J;
}

RatMat chain_jacobian(const MutationSequence& gamma) {
  const int n = gamma.n();
  Trajectory tr = run_sequence(gamma, true);
  std::vector<Poly> basis = mutation_factor_basis(gamma, tr);
  RatMat J = rat_identity(n, n);
  for (int t = 1; t <= gamma.T(); ++t) {
    YSeed seed{tr.B[t - 1], tr.Y[t - 1]};
    RatMat Jt = permute_rows(gamma.sigma[t - 1], single_jacobian(seed, gamma.m[t - 1]));
    RatMat next(n, n, RatFun::zero(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RatFun acc = RatFun::zero(n);
        for (int k = 0; k < n; ++k) {
          if (Jt(i, k).is_zero() || J(k, j).is_zero()) continue;
          acc += reduce_common_factors(Jt(i, k) * J(k, j), basis);
        }
        next(i, j) = reduce_common_factors(acc, basis);
      }
    J = std::move(next);
  }
  return J;
}

RatMat k_matrix(const MutationSequence& gamma) {
  // K_ij = y_j (d mu_i / d y_j) / mu_i, differentiating the reduced cluster
  // transformation directly (the chain-rule route is chain_jacobian).
  const int n = gamma.n();
  Trajectory tr = run_sequence(gamma, true);
  std::vector<Poly> basis = mutation_factor_basis(gamma, tr);
  const std::vector<RatFun>& mu = tr.Y.back();
  for (const RatFun& m : mu) {
    require(!m.is_zero(), errc::invariant_violation, "cluster transformation component is zero");
    push_factor(basis, m.num());
    push_factor(basis, m.den());
  }
  RatMat K(n, n, RatFun::zero(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatFun d = derivative(mu[i], j + 1);
      if (d.is_zero()) continue;
      RatFun e = reduce_common_factors(d * RatFun::variable(n, j + 1) / mu[i], basis);
      K(i, j) = simplify(e, 64);
    }
  return K;
}

ZMatrices z_matrices(const MutationSequence& gamma) {
  Trajectory tr = run_sequence(gamma, true);
  ZMatrices z;
  for (int t = 1; t <= gamma.T(); ++t) {
    const RatFun& y = tr.Y[t - 1][gamma.m[t - 1] - 1];
    RatFun u = y + RatFun::one(gamma.n());
    z.zplus.push_back(y / u);
    z.zminus.push_back(u.inv());
  }
  return z;
}

namespace {

RatFun det_laplace(const RatMat& m) {
  const int n = m.rows();
  const int nv = m(0, 0).nvars();
  if (n == 1) return m(0, 0);
  RatFun acc = RatFun::zero(nv);
  for (int j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    RatMat minor(n - 1, n - 1, RatFun::zero(nv));
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(i - 1, cc++) = m(i, c);
      }
    }
    RatFun term = m(0, j) * det_laplace(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Fraction-free Bareiss on the polynomial matrix obtained by clearing the
// denominators of each row against their lcm.
RatFun det_bareiss(const RatMat& m) {
  const int n = m.rows();
  const int nv = m(0, 0).nvars();
  Mat<Poly> a(n, n, Poly(nv));
  RatFun scale = RatFun::one(nv);  // product of row lcms
  for (int i = 0; i < n; ++i) {
    Poly l = Poly::constant(nv, Rat(1));
    for (int j = 0; j < n; ++j) {
      const Poly& d = m(i, j).den();
      if (d.is_one()) continue;
      Poly g = Poly::gcd(l, d);
      l *= *Poly::div_exact(d, g);
    }
    scale *= RatFun(l);
    for (int j = 0; j < n; ++j) {
      auto q = Poly::div_exact(l, m(i, j).den());
      require(q.has_value(), errc::invariant_violation, "row lcm not divisible by denominator");
      a(i, j) = m(i, j).num() * *q;
    }
  }

  Poly prev = Poly::constant(nv, Rat(1));
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k).is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a(i, k).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return RatFun::zero(nv);
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Poly num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        auto q = Poly::div_exact(num, prev);
        require(q.has_value(), errc::invariant_violation, "bareiss division not exact");
        a(i, j) = std::move(*q);
      }
    prev = a(k, k);
  }
  RatFun det = RatFun(a(n - 1, n - 1)) / scale;
  return sign > 0 ? det : -det;
}

}  // namespace

RatFun det_ratfun(const RatMat& m) {
  require(m.square(), errc::length_mismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return RatFun::one(0);
  if (m.rows() <= 4) return det_laplace(m);
  return det_bareiss(m);
}

RatFun tau(const MutationSequence& gamma) {
  require(is_fully_mutated(gamma), errc::not_fully_mutated, "tau needs a fully mutated sequence");
  const int T = gamma.T(), nv = gamma.n();
  NZMatrices nz = nz_matrices(build_network(gamma));
  ZMatrices z = z_matrices(gamma);
  RatMat M(T, T, RatFun::zero(nv));
  for (int s = 0; s < T; ++s)
    for (int t = 0; t < T; ++t) {
      M(s, t) = RatFun::constant(nv, Rat(static_cast<long>(nz.Aplus(s, t)))) * z.zminus[t] +
                RatFun::constant(nv, Rat(static_cast<long>(nz.Aminus(s, t)))) * z.zplus[t];
    }
  RatFun det = det_ratfun(M);
  std::vector<Poly> basis;
  for (int t = 0; t < T; ++t) {
    push_factor(basis, z.zminus[t].num());
    push_factor(basis, z.zminus[t].den());
  }
  return reduce_common_factors(det, basis);
}

IMat f_product(const MutationSequence& gamma, const std::vector<int>& eps) {
  require(static_cast<int>(eps.size()) == gamma.T(), errc::length_mismatch,
          "sign sequence length");
  Trajectory tr = run_sequence(gamma, false);
  IMat F = IMat::identity(gamma.n());
  for (int t = 1; t <= gamma.T(); ++t) {
    F = F * f_matrix(tr.B[t - 1], gamma.m[t - 1], eps[t - 1]) *
        gamma.sigma[t - 1].inverse().matrix();
  }
  return F;
}

long det_formula_degree_bound(const MutationSequence& gamma) {
  // Track per-component degree bounds through the mutations: one step at k
  // multiplies Y_i by (1 + Y_k^{+-1})^{|B_ki|}.
  const int n = gamma.n();
  std::vector<long> d(n, 1);
  ExchangeMatrix B = gamma.B;
  long sum_mut = 0, final_sum = 0;
  for (int t = 1; t <= gamma.T(); ++t) {
    const int k = gamma.m[t - 1];
    sum_mut += d[k - 1];
    std::vector<long> nd = d;
    for (int i = 1; i <= n; ++i)
      if (i != k) nd[i - 1] = d[i - 1] + std::abs(B.b(k - 1, i - 1)) * d[k - 1];
    B = apply_permutation_matrix(matrix_mutate(B, k), gamma.sigma[t - 1]);
    Permutation inv = gamma.sigma[t - 1].inverse();
    for (int i = 1; i <= n; ++i) d[i - 1] = nd[inv(i) - 1];
  }
  for (long x : d) final_sum += x;
  // lhs: det(I - K) entries built from derivatives of the final components;
  // rhs: det of T z-linear entries. Cross-multiplied difference degree.
  long lhs = 2 * n * (2 * final_sum + 1);
  long rhs = 2 * (2 * sum_mut + static_cast<long>(gamma.T()));
  return lhs + rhs;
}

namespace {

template <class Ops>
Mat<typename Ops::value_type> mat_mul(const Ops& ops, const Mat<typename Ops::value_type>& a,
                                      const Mat<typename Ops::value_type>& b) {
  using V = typename Ops::value_type;
  Mat<V> r(a.rows(), b.cols(), V());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == V()) continue;
      for (int j = 0; j < b.cols(); ++j)
        r(i, j) = ops.add(r(i, j), ops.mul(a(i, k), b(k, j)));
    }
  return r;
}

// Numeric K matrix via the derivative case table chained along a numeric
// trajectory; shares no code path with the N/Z route it gets compared to.
template <class Ops>
Mat<typename Ops::value_type> numeric_k_matrix(const MutationSequence& gamma, const Ops& ops,
                                               const std::vector<typename Ops::value_type>& y0,
                                               NumericTrajectory<Ops>* traj_out = nullptr) {
  using V = typename Ops::value_type;
  const int n = gamma.n();
  NumericTrajectory<Ops> traj = run_numeric(gamma, ops, y0);
  Trajectory bs = run_sequence(gamma, false);

  Mat<V> J(n, n, V());
  for (int i = 0; i < n; ++i) J(i, i) = ops.one();
  for (int t = 1; t <= gamma.T(); ++t) {
    const int k = gamma.m[t - 1];
    const auto& Y = traj.Y[t - 1];
    const ExchangeMatrix& B = bs.B[t - 1];
    V yk = Y[k - 1];
    V u = ops.add(yk, ops.one());
    V zminus = ops.inv(u);
    V zplus = ops.mul(yk, zminus);
    // Mutated values before the permutation.
    std::vector<V> mut(n);
    for (int i = 1; i <= n; ++i) {
      if (i == k) {
        mut[i - 1] = ops.inv(yk);
        continue;
      }
      int64_t b = B.b(k - 1, i - 1);
      V f = ops.one();
      for (int64_t j = 0; j < (b >= 0 ? b : -b); ++j) f = ops.mul(f, b >= 0 ? zplus : u);
      mut[i - 1] = ops.mul(Y[i - 1], f);
    }
    Mat<V> Jt(n, n, V());
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == k && j == k) {
          V inv2 = ops.inv(ops.mul(yk, yk));
          Jt(i - 1, j - 1) = ops.sub(V(), inv2);
        } else if (j != k) {
          if (i == j) Jt(i - 1, j - 1) = ops.mul(mut[i - 1], ops.inv(Y[i - 1]));
        } else {
          int64_t b = B.b(k - 1, i - 1);
          V base = ops.mul(mut[i - 1], ops.inv(yk));
          if (b >= 0)
            Jt(i - 1, j - 1) = ops.mul(ops.mul(ops.from_int(b), base), zminus);
          else
            Jt(i - 1, j - 1) = ops.mul(ops.mul(ops.from_int(-b), base), zplus);
        }
      }
    // Row permutation by sigma_t.
    const Permutation& s = gamma.sigma[t - 1];
    if (!s.is_identity()) {
      Permutation inv = s.inverse();
      Mat<V> P(n, n, V());
      for (int i = 1; i <= n; ++i)
        for (int j = 0; j < n; ++j) P(i - 1, j) = Jt(inv(i) - 1, j);
      Jt = std::move(P);
    }
    J = mat_mul(ops, Jt, J);
  }
  const auto& muv = traj.Y.back();
  Mat<V> K(n, n, V());
  for (int i = 0; i < n; ++i) {
    require(!ops.is_zero(muv[i]), errc::singular_point, "mu component vanishes at point");
    for (int j = 0; j < n; ++j) K(i, j) = ops.mul(ops.mul(ops.inv(muv[i]), J(i, j)), y0[j]);
  }
  if (traj_out) *traj_out = std::move(traj);
  return K;
}

uint64_t det_mod(Mat<uint64_t> a, const PrimeField& F) {
  const int n = a.rows();
  uint64_t det = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = F.neg(det);
    }
    det = F.mul(det, a(k, k));
    uint64_t inv = F.inv(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      uint64_t f = F.mul(a(i, k), inv);
      for (int j = k; j < n; ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(k, j)));
    }
  }
  return det;
}

}  // namespace

VerificationReport verify_det_formula(const MutationSequence& gamma, VerifyMode mode, int trials,
                                      uint64_t seed) {
  require(is_fully_mutated(gamma), errc::not_fully_mutated,
          "determinant formula needs a fully mutated sequence");
  const int n = gamma.n(), T = gamma.T();
  VerificationReport rep;
  rep.mode = mode;

  if (mode == VerifyMode::exact) {
    RatMat K = k_matrix(gamma);
    RatMat IK = rat_identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) IK(i, j) = IK(i, j) - K(i, j);
    std::vector<Poly> basis;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        push_factor(basis, IK(i, j).den());
        push_factor(basis, IK(i, j).num());
      }
    RatFun lhs = reduce_common_factors(det_ratfun(IK), basis);
    RatFun rhs = tau(gamma);
    rep.equal = eq_exact(lhs, rhs);
    rep.lhs = lhs.str();
    rep.rhs = rhs.str();
    return rep;
  }

  PrimeField F;
  FpOps ops{F};
  NZMatrices nz = nz_matrices(build_network(gamma));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> dist(1, F.p() - 1);
  rep.modulus = F.p();
  rep.degree_bound = det_formula_degree_bound(gamma);
  rep.failure_bound = static_cast<double>(rep.degree_bound) / static_cast<double>(F.p());
  rep.equal = true;

  const int max_attempts = trials * 20 + 20;
  int attempts = 0;
  while (rep.trials < trials && attempts < max_attempts) {
    ++attempts;
    std::vector<uint64_t> y0(n);
    for (auto& v : y0) v = dist(rng);
    try {
      NumericTrajectory<FpOps> traj;
      Mat<uint64_t> K = numeric_k_matrix(gamma, ops, y0, &traj);
      Mat<uint64_t> IK(n, n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) IK(i, j) = F.sub(i == j ? 1 : 0, K(i, j));
      uint64_t lhs = det_mod(IK, F);

      Mat<uint64_t> M(T, T, 0);
      for (int t = 0; t < T; ++t) {
        uint64_t yk = traj.y_at_mutation[t];
        uint64_t zm = F.inv(F.add(yk, 1));
        uint64_t zp = F.mul(yk, zm);
        for (int s = 0; s < T; ++s)
          M(s, t) = F.add(F.mul(F.from_int(nz.Aplus(s, t)), zm),
                          F.mul(F.from_int(nz.Aminus(s, t)), zp));
      }
      uint64_t rhs = det_mod(M, F);

      ++rep.trials;
      if (lhs != rhs) {
        rep.equal = false;
        rep.lhs = std::to_string(lhs);
        rep.rhs = std::to_string(rhs);
        break;
      }
    } catch (const error& e) {
      if (e.code() != errc::singular_point && e.code() != errc::division_by_zero) throw;
      ++rep.skipped;
    }
  }
  require(rep.trials > 0, errc::all_points_singular, "no usable sample point found");
  if (rep.equal) {
    rep.lhs = rep.rhs = "agreed on " + std::to_string(rep.trials) + " samples";
  }
  return rep;
}

VerificationReport verify_f_det(const MutationSequence& gamma, const std::vector<int>& eps) {
  require(is_fully_mutated(gamma), errc::not_fully_mutated,
          "F determinant formula needs a fully mutated sequence");
  VerificationReport rep;
  rep.mode = VerifyMode::exact;
  IMat F = f_product(gamma, eps);
  IMat IF = IMat::identity(gamma.n()) - F;
  Int det_f = det_int(IF);
  Int det_a = det_int(signed_nz(build_network(gamma), eps));
  Int det_x = det_int(x_matrix(gamma, eps));
  rep.equal = det_f == det_a && det_a == det_x;
  rep.lhs = det_f.get_str();
  rep.rhs = det_a.get_str();
  rep.note = "det X_eps = " + det_x.get_str();
  return rep;
}

VerificationReport verify_tropical_limit(const MutationSequence& gamma) {
  require(is_fully_mutated(gamma), errc::not_fully_mutated,
          "tropical limit needs a fully mutated sequence");
  const int n = gamma.n();
  VerificationReport rep;
  rep.mode = VerifyMode::exact;

  CMatrixTrace tr = c_matrix_run(gamma);
  const IMat& CT = tr.C.back();
  Int lhs = det_int(IMat::identity(n) - CT);
  Int rhs = det_int(signed_nz(build_network(gamma), tr.eps_trop));
  rep.equal = lhs == rhs;
  rep.lhs = lhs.get_str();
  rep.rhs = rhs.get_str();

  // Numeric probe: K(eps,...,eps)^T should approach C(T) entrywise. Guard the
  // dynamic range, since Y entries behave like eps^c.
  int64_t cmax = 0;
  for (const IMat& C : tr.C)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cmax = std::max(cmax, std::abs(C(i, j)));
  std::vector<double> errs;
  ComplexOps cops;
  for (double e : {1e-2, 1e-4, 1e-6}) {
    if (static_cast<double>(cmax + n) * -std::log10(e) > 220.0) continue;
    std::vector<std::complex<double>> y0(n, {e, 0.0});
    Mat<std::complex<double>> K = numeric_k_matrix(gamma, cops, y0);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        err = std::max(err, std::abs(K(j, i) - std::complex<double>(
                                                   static_cast<double>(CT(i, j)), 0.0)));
    errs.push_back(err);
  }
  std::ostringstream note;
  if (errs.size() >= 2) {
    bool decreasing = true;
    for (size_t i = 1; i < errs.size(); ++i) decreasing = decreasing && errs[i] <= errs[i - 1];
    bool close = errs.back() < 0.5;
    if (!(decreasing && close)) rep.equal = false;
    note << "probe errors:";
    for (double e : errs) note << " " << e;
  } else {
    note << "probe skipped (dynamic range)";
  }
  rep.note = note.str();
  return rep;
}

}  // namespace cnz
