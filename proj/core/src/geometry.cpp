#include "cnz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cnz/dilog.hpp"
#include "cnz/network.hpp"

namespace cnz {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

cplx ipow(cplx z, int64_t e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  cplx r(1.0, 0.0);
  while (e) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

// Complex linear solve with partial pivoting; falls back to Tikhonov-damped
// normal equations when the Jacobian is (numerically) rank deficient, which
// happens systematically for surface examples whose gluing equations are
// dependent.
std::optional<std::vector<cplx>> linear_solve(Mat<cplx> a, std::vector<cplx> b,
                                              double min_pivot = 1e-13) {
  const int n = a.rows();
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) < min_pivot) return std::nullopt;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      cplx f = a(i, k) / a(k, k);
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<cplx> x(n);
  for (int i = n - 1; i >= 0; --i) {
    cplx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

std::vector<cplx> solve_least_squares(const Mat<cplx>& J, const std::vector<cplx>& rhs) {
  const int n = J.rows();
  // (J^H J + lambda I) x = J^H rhs
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(J(i, j)));
  double lambda = std::max(1e-300, 1e-6 * scale * scale);
  Mat<cplx> A(n, n, cplx(0.0, 0.0));
  std::vector<cplx> b(n, cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s(0.0, 0.0);
      for (int k = 0; k < n; ++k) s += std::conj(J(k, i)) * J(k, j);
      A(i, j) = s + (i == j ? cplx(lambda, 0.0) : cplx(0.0, 0.0));
    }
  for (int i = 0; i < n; ++i) {
    cplx s(0.0, 0.0);
    for (int k = 0; k < n; ++k) s += std::conj(J(k, i)) * rhs[k];
    b[i] = s;
  }
  auto x = linear_solve(A, b, lambda * 1e-6);
  require(x.has_value(), errc::singular_jacobian, "regularized normal equations singular");
  return *x;
}

}  // namespace

ExchangeMatrix b_from_triangulation(const Triangulation& tri) {
  const int n = tri.num_edges;
  require(n >= 1, errc::bad_incidence, "triangulation needs at least one edge");
  std::vector<int> slots(n, 0);
  IMat b(n, n);
  for (const auto& t : tri.triangles) {
    require(t[0] != t[1] && t[1] != t[2] && t[0] != t[2], errc::self_folded_edge,
            "triangle repeats an edge (self-folded)");
    for (int s = 0; s < 3; ++s) {
      int i = t[s], j = t[(s + 1) % 3];
      require(i >= 1 && i <= n && j >= 1 && j <= n, errc::bad_incidence,
              "edge label out of range");
      // direction i -> j is clockwise in this triangle
      b(i - 1, j - 1) += 1;
      b(j - 1, i - 1) -= 1;
      slots[i - 1] += 1;
    }
  }
  for (int i = 0; i < n; ++i)
    require(slots[i] == 2, errc::bad_incidence,
            "edge " + std::to_string(i + 1) + " not in exactly two triangle slots");
  return validate_exchange_matrix(b);
}

GluingSystem gluing_system(const MutationSequence& gamma) {
  require(is_fully_mutated(gamma), errc::not_fully_mutated,
          "gluing equations need a fully mutated sequence");
  NZMatrices nz = nz_matrices(build_network(gamma));
  return GluingSystem{nz.Aplus, nz.Aminus};
}

double gluing_residual(const GluingSystem& sys, const std::vector<cplx>& zminus) {
  const int T = sys.T();
  require(static_cast<int>(zminus.size()) == T, errc::length_mismatch, "solution length");
  double res = 0.0;
  for (int e = 0; e < sys.Aplus.rows(); ++e) {
    cplx p(1.0, 0.0);
    for (int t = 0; t < T; ++t) {
      p *= ipow(1.0 - zminus[t], -sys.Aplus(e, t));
      p *= ipow(zminus[t], sys.Aminus(e, t));
    }
    res = std::max(res, std::abs(p - 1.0));
  }
  return res;
}

GluingSolution solve_gluing_complex(const GluingSystem& sys, std::vector<cplx> init, double tol,
                                    int max_iter) {
  const int T = sys.T();
  require(static_cast<int>(init.size()) == T, errc::length_mismatch, "init length");
  for (const cplx& z : init)
    require(std::abs(z) > 1e-12 && std::abs(1.0 - z) > 1e-12, errc::domain_error,
            "init must avoid {0, 1}");

  std::vector<cplx> x = init;
  double res = gluing_residual(sys, x);
  int stalls = 0;
  int it = 0;
  for (; it < max_iter && res > tol; ++it) {
    const int E = sys.Aplus.rows();
    std::vector<cplx> F(E);
    Mat<cplx> J(E, T, cplx(0.0, 0.0));
    for (int e = 0; e < E; ++e) {
      cplx p(1.0, 0.0);
      for (int t = 0; t < T; ++t)
        p *= ipow(1.0 - x[t], -sys.Aplus(e, t)) * ipow(x[t], sys.Aminus(e, t));
      F[e] = p - 1.0;
      for (int t = 0; t < T; ++t) {
        cplx am(static_cast<double>(sys.Aminus(e, t)), 0.0);
        cplx ap(static_cast<double>(sys.Aplus(e, t)), 0.0);
        J(e, t) = p * (am / x[t] + ap / (1.0 - x[t]));
      }
    }
    std::vector<cplx> rhs(E);
    for (int e = 0; e < E; ++e) rhs[e] = -F[e];
    auto step = linear_solve(J, rhs);
    std::vector<cplx> dx = step ? *step : solve_least_squares(J, rhs);

    // Halve the step until the residual decreases.
    double theta = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      std::vector<cplx> xn(T);
      bool ok = true;
      for (int t = 0; t < T; ++t) {
        xn[t] = x[t] + theta * dx[t];
        ok = ok && std::abs(xn[t]) > 1e-14 && std::abs(1.0 - xn[t]) > 1e-14;
      }
      if (ok) {
        double rn = gluing_residual(sys, xn);
        if (rn < res) {
          x = std::move(xn);
          res = rn;
          accepted = true;
          break;
        }
      }
      theta /= 2.0;
    }
    if (!accepted) {
      if (++stalls >= 3)
        fail(errc::singular_jacobian, "Newton stalled; try a different initial point");
    } else {
      stalls = 0;
    }
  }
  require(res <= tol, errc::no_convergence,
          "no convergence after " + std::to_string(max_iter) + " iterations");
  return GluingSolution{std::move(x), res, it};
}

GluingSolution solve_gluing_positive(const GluingSystem& sys, double tol) {
  const int T = sys.T();
  {
    IMat twoI = IMat::identity(T);
    for (int i = 0; i < T; ++i) twoI(i, i) = 2;
    require(sys.Aplus == twoI, errc::not_dynkin_shape, "system is not of Dynkin shape (A+ = 2I)");
  }
  const IMat& C = sys.Aminus;
  auto clamp = [](double v) { return std::min(std::max(v, 1e-15), 1.0 - 1e-15); };
  auto map = [&](const std::vector<double>& z) {
    std::vector<double> p(T, 1.0);
    for (int s = 0; s < T; ++s)
      for (int t = 0; t < T; ++t) p[s] *= std::pow(z[t], static_cast<double>(C(s, t)) / 2.0);
    return p;  // prod z_t^{C_st/2}
  };
  auto reduced_residual = [&](const std::vector<double>& z) {
    std::vector<double> p = map(z);
    double r = 0.0;
    for (int s = 0; s < T; ++s) r = std::max(r, std::abs(p[s] - (1.0 - z[s])));
    return r;
  };

  std::vector<double> z(T, 0.5);
  double res = reduced_residual(z);
  int it = 0;
  const int fp_cap = 20000;

  // Damped fixed-point z <- 1 - prod z^{C/2}; adequate for A-series.
  double theta = 1.0;
  for (; it < fp_cap && res > tol * 1e-2; ++it) {
    std::vector<double> p = map(z);
    std::vector<double> zn(T);
    for (int s = 0; s < T; ++s) zn[s] = clamp(z[s] + theta * ((1.0 - p[s]) - z[s]));
    double rn = reduced_residual(zn);
    if (rn < res) {
      z = std::move(zn);
      res = rn;
      theta = std::min(1.0, theta * 1.5);
    } else {
      theta /= 2.0;
      if (theta < 1e-6) break;  // stalled; branched diagrams land here
    }
  }

  // Damped Newton on G(z) = z - 1 + prod z^{C/2} finishes the job (and is
  // the only route that converges for D/E types).
  for (int nit = 0; nit < 200 && res > tol * 1e-2; ++nit, ++it) {
    std::vector<double> p = map(z);
    std::vector<double> G(T);
    for (int s = 0; s < T; ++s) G[s] = z[s] - 1.0 + p[s];
    Mat<cplx> J(T, T, cplx(0.0, 0.0));
    std::vector<cplx> rhs(T);
    for (int s = 0; s < T; ++s) {
      rhs[s] = -G[s];
      for (int t = 0; t < T; ++t)
        J(s, t) = cplx((s == t ? 1.0 : 0.0) +
                           p[s] * (static_cast<double>(C(s, t)) / 2.0) / z[t],
                       0.0);
    }
    auto step = linear_solve(J, rhs);
    require(step.has_value(), errc::singular_jacobian, "positive solver jacobian singular");
    double th = 1.0;
    for (int h = 0; h < 40; ++h) {
      std::vector<double> zn(T);
      for (int t = 0; t < T; ++t) zn[t] = clamp(z[t] + th * (*step)[t].real());
      double rn = reduced_residual(zn);
      if (rn < res) {
        z = std::move(zn);
        res = rn;
        break;
      }
      th /= 2.0;
    }
  }

  GluingSolution sol;
  sol.zminus.assign(z.begin(), z.end());
  sol.iterations = it;
  sol.residual = gluing_residual(sys, sol.zminus);
  require(sol.residual <= tol, errc::no_convergence, "positive solver did not reach tolerance");
  return sol;
}

GluingSolution phi(const FixedPoint& eta, const MutationSequence& gamma, double tol) {
  require(is_fully_mutated(gamma), errc::not_fully_mutated, "phi needs a fully mutated sequence");
  require(static_cast<int>(eta.eta.size()) == gamma.n(), errc::arity_mismatch, "eta arity");
  ComplexOps ops;
  NumericTrajectory<ComplexOps> traj = run_numeric(gamma, ops, eta.eta);
  for (const cplx& y : traj.y_at_mutation)
    require(std::abs(y) > tol && std::abs(y + 1.0) > tol, errc::invariant_violation,
            "Y at a mutation point is 0 or -1");
  double fixerr = 0.0;
  for (int i = 0; i < gamma.n(); ++i)
    fixerr = std::max(fixerr, std::abs(traj.Y.back()[i] - eta.eta[i]));
  require(fixerr < tol, errc::invariant_violation, "eta is not a fixed point of mu_gamma");

  GluingSolution sol;
  for (const cplx& y : traj.y_at_mutation) sol.zminus.push_back(1.0 / (y + 1.0));
  sol.residual = gluing_residual(gluing_system(gamma), sol.zminus);
  return sol;
}

FixedPoint phi_inverse(const GluingSolution& sol, const MutationSequence& gamma, double tol) {
  require(is_fully_mutated(gamma), errc::not_fully_mutated,
          "phi_inverse needs a fully mutated sequence");
  const int n = gamma.n(), T = gamma.T();
  require(static_cast<int>(sol.zminus.size()) == T, errc::length_mismatch, "solution length");
  GluingSystem sys = gluing_system(gamma);
  for (const cplx& z : sol.zminus)
    require(std::abs(z) > tol && std::abs(1.0 - z) > tol, errc::invariant_violation,
            "z hits {0,1}");
  require(gluing_residual(sys, sol.zminus) < std::max(tol, 1e-6), errc::invariant_violation,
          "input does not satisfy the gluing equations");

  Trajectory bs = run_sequence(gamma, false);
  auto flat = [&](int i, int t) { return t * n + (i - 1); };

  // Successor structure of G_alpha: (sigma_t(i), t) -> (i, t-1) carrying the
  // mutation monomial; sinks (sigma_t(m_t), t) carry z_{t,+}^{-1} z_{t,-}.
  std::vector<int> succ(n * T, -1);
  std::vector<cplx> edge(n * T, cplx(1.0, 0.0));
  std::vector<cplx> val(n * T, cplx(0.0, 0.0));
  std::vector<char> known(n * T, 0);
  for (int t = 1; t <= T; ++t) {
    const int k = gamma.m[t - 1];
    const Permutation& s = gamma.sigma[t - 1];
    cplx zm = sol.zminus[t - 1];
    cplx zp = 1.0 - zm;
    for (int i = 1; i <= n; ++i) {
      int src = flat(s(i), t % T);
      if (i == k) {
        val[src] = zm / zp;
        known[src] = 1;
        continue;
      }
      int64_t b = bs.B[t - 1].b(k - 1, i - 1);
      succ[src] = flat(i, t - 1);
      edge[src] = b >= 0 ? ipow(zp, b) : ipow(zm, b);
    }
  }
  // Walk each chain down to its sink once.
  for (int v = 0; v < n * T; ++v) {
    if (known[v]) continue;
    std::vector<int> chain;
    int x = v;
    while (!known[x]) {
      chain.push_back(x);
      x = succ[x];
      require(x != -1, errc::invariant_violation, "broken path in G_alpha");
    }
    for (auto r = chain.rbegin(); r != chain.rend(); ++r) {
      val[*r] = val[succ[*r]] * edge[*r];
      known[*r] = 1;
    }
  }

  FixedPoint eta;
  for (int j = 1; j <= n; ++j) eta.eta.push_back(val[flat(j, 0)]);

  // The reconstruction must actually be a fixed point.
  ComplexOps ops;
  NumericTrajectory<ComplexOps> traj = run_numeric(gamma, ops, eta.eta);
  double fixerr = 0.0;
  for (int i = 0; i < n; ++i) fixerr = std::max(fixerr, std::abs(traj.Y.back()[i] - eta.eta[i]));
  require(fixerr < std::max(tol, 1e-6), errc::invariant_violation,
          "reconstructed eta is not a fixed point");
  return eta;
}

double volume(const GluingSolution& sol) {
  double v = 0.0;
  for (const cplx& z : sol.zminus) v += bloch_wigner(z);
  return v;
}

DynkinSpec dynkin_spec(char type, int rank) {
  DynkinSpec spec;
  spec.type = type;
  spec.rank = rank;
  std::vector<std::pair<int, int>> edges;
  switch (type) {
    case 'A':
      require(rank >= 1, errc::domain_error, "A_n needs n >= 1");
      for (int i = 1; i < rank; ++i) edges.push_back({i, i + 1});
      spec.dim_g = static_cast<long>(rank) * (rank + 2);
      spec.dual_coxeter = rank + 1;
      break;
    case 'D':
      require(rank >= 4, errc::domain_error, "D_n needs n >= 4");
      for (int i = 1; i < rank - 1; ++i) edges.push_back({i, i + 1});
      edges.push_back({rank - 2, rank});
      spec.dim_g = static_cast<long>(rank) * (2 * rank - 1);
      spec.dual_coxeter = 2 * rank - 2;
      break;
    case 'E': {
      require(rank >= 6 && rank <= 8, errc::domain_error, "E_n needs n in {6,7,8}");
      edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
      if (rank >= 7) edges.push_back({6, 7});
      if (rank >= 8) edges.push_back({7, 8});
      spec.dim_g = rank == 6 ? 78 : (rank == 7 ? 133 : 248);
      spec.dual_coxeter = rank == 6 ? 12 : (rank == 7 ? 18 : 30);
      break;
    }
    default:
      fail(errc::domain_error, "Dynkin type must be A, D, or E");
  }
  spec.cartan = IMat(rank, rank);
  for (int i = 0; i < rank; ++i) spec.cartan(i, i) = 2;
  for (auto [a, b] : edges) {
    spec.cartan(a - 1, b - 1) = -1;
    spec.cartan(b - 1, a - 1) = -1;
  }
  return spec;
}

MutationSequence dynkin_loop(const DynkinSpec& spec) {
  const int n = spec.rank;
  // 2-color the tree; color 0 vertices become sinks (all arrows point in).
  std::vector<int> color(n, -1);
  std::vector<int> stack{0};
  color[0] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w) {
      if (spec.cartan(v, w) != -1 || color[w] != -1) continue;
      color[w] = 1 - color[v];
      stack.push_back(w);
    }
  }
  IMat b(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (spec.cartan(u, v) == -1 && color[u] == 1) {
        b(u, v) = 1;  // arrow source -> sink
        b(v, u) = -1;
      }
  std::vector<int> m;
  for (int v = 0; v < n; ++v)
    if (color[v] == 0) m.push_back(v + 1);  // sinks first
  for (int v = 0; v < n; ++v)
    if (color[v] == 1) m.push_back(v + 1);
  return make_sequence(validate_exchange_matrix(b), std::move(m));
}

Rat central_charge(const DynkinSpec& spec) {
  Rat r(2 * spec.dim_g, 2 + spec.dual_coxeter);
  r.canonicalize();
  return r - spec.rank;
}

DilogIdentityReport dilog_identity_check(const DynkinSpec& spec, double tol) {
  MutationSequence gamma = dynkin_loop(spec);
  GluingSystem sys = gluing_system(gamma);
  GluingSolution sol = solve_gluing_positive(sys, tol);

  DilogIdentityReport rep;
  double lhs = 0.0;
  for (const cplx& z : sol.zminus) {
    rep.zeta.push_back(z.real());
    lhs += rogers(1.0 - z.real());  // the identity lives in the z_+ coordinates
  }
  rep.lhs = lhs * 6.0 / (kPi * kPi);
  rep.rhs = central_charge(spec);
  rep.abs_err = std::abs(rep.lhs - rat_to_double(rep.rhs));
  rep.residual = sol.residual;
  return rep;
}

}  // namespace cnz
