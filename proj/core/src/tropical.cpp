#include "cnz/tropical.hpp"

#include <string>
#include <unordered_map>

namespace cnz {

IMat tropical_mutate(const IMat& C, const ExchangeMatrix& B, int k) {
  const int n = B.n;
  require(k >= 1 && k <= n, errc::index_out_of_range, "tropical mutation index");
  require(C.rows() == n && C.cols() == n, errc::length_mismatch, "C matrix shape");
  const int kc = k - 1;
  IMat r = C;
  // Column k: Y_k -> Y_k^{-1}.
  for (int i = 0; i < n; ++i) r(i, kc) = -C(i, kc);
  // Column i != k picks up B_ki * [±c_k]_+ from the tropical sums.
  for (int j = 0; j < n; ++j) {
    if (j == kc) continue;
    int64_t b = B.b(kc, j);
    if (b == 0) continue;
    for (int i = 0; i < n; ++i) {
      int64_t ck = C(i, kc);
      if (b > 0)
        r(i, j) += b * std::max<int64_t>(ck, 0);
      else
        r(i, j) += b * std::max<int64_t>(-ck, 0);
    }
  }
  return r;
}

int sign_of_cvector(const std::vector<int64_t>& v) {
  bool pos = false, neg = false;
  for (int64_t x : v) {
    pos = pos || x > 0;
    neg = neg || x < 0;
  }
  require(!(pos && neg), errc::sign_incoherent, "c-vector has mixed signs");
  require(pos || neg, errc::zero_vector, "zero c-vector");
  return pos ? 1 : -1;
}

IMat f_matrix(const ExchangeMatrix& B, int k, int eps) {
  require(k >= 1 && k <= B.n, errc::index_out_of_range, "f_matrix index");
  IMat F = IMat::identity(B.n);
  for (int j = 0; j < B.n; ++j) F(k - 1, j) = std::max<int64_t>(eps * B.b(k - 1, j), 0);
  F(k - 1, k - 1) = -1;
  return F;
}

CMatrixTrace c_matrix_run(const MutationSequence& gamma) {
  const int n = gamma.n();
  CMatrixTrace tr;
  tr.C.push_back(IMat::identity(n));
  ExchangeMatrix B = gamma.B;
  for (int t = 1; t <= gamma.T(); ++t) {
    const int k = gamma.m[t - 1];
    const IMat& C = tr.C.back();
    std::vector<int64_t> ck(n);
    for (int i = 0; i < n; ++i) ck[i] = C(i, k - 1);
    int eps = sign_of_cvector(ck);
    tr.eps_trop.push_back(eps);

    IMat next = C * f_matrix(B, k, eps) * gamma.sigma[t - 1].inverse().matrix();
    IMat check = tropical_mutate(C, B, k) * gamma.sigma[t - 1].inverse().matrix();
    require(next == check, errc::invariant_violation,
            "tropical engine disagreement (F/P recursion vs direct mutation)");

    B = apply_permutation_matrix(matrix_mutate(B, k), gamma.sigma[t - 1]);
    tr.C.push_back(std::move(next));
  }
  return tr;
}

bool is_reddening(const MutationSequence& gamma) {
  require(gamma.B.skew_symmetric(), errc::not_skew_symmetric,
          "reddening is defined for skew-symmetric B");
  CMatrixTrace tr = c_matrix_run(gamma);
  const IMat& C = tr.C.back();
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < C.cols(); ++j)
      if (C(i, j) > 0) return false;
  return true;
}

bool is_maximal_green(const MutationSequence& gamma) {
  require(gamma.B.skew_symmetric(), errc::not_skew_symmetric,
          "maximal green is defined for skew-symmetric B");
  CMatrixTrace tr = c_matrix_run(gamma);
  const IMat& C = tr.C.back();
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < C.cols(); ++j)
      if (C(i, j) > 0) return false;
  for (int e : tr.eps_trop)
    if (e != 1) return false;
  return true;
}

MutationSequence normalize_reddening(const MutationSequence& gamma) {
  require(is_reddening(gamma), errc::not_reddening, "input is not a reddening sequence");
  CMatrixTrace tr = c_matrix_run(gamma);
  const IMat& C = tr.C.back();
  const int n = gamma.n();
  // C(T) must be -(permutation matrix); nu(j) = row of the -1 in column j.
  std::vector<int> nu(n, 0);
  for (int j = 0; j < n; ++j) {
    int row = -1;
    for (int i = 0; i < n; ++i) {
      if (C(i, j) == 0) continue;
      require(C(i, j) == -1 && row < 0, errc::not_signed_permutation,
              "C(T) is not minus a permutation matrix");
      row = i;
    }
    require(row >= 0, errc::not_signed_permutation, "zero column in C(T)");
    nu[j] = row + 1;
  }
  Permutation v = Permutation::from_one_line(nu);
  MutationSequence out = gamma;
  out.sigma.back() = v.compose(out.sigma.back());
  // The composed loop must reach exactly -I.
  CMatrixTrace check = c_matrix_run(out);
  IMat minus_i = IMat::identity(n);
  for (int i = 0; i < n; ++i) minus_i(i, i) = -1;
  require(check.C.back() == minus_i, errc::invariant_violation, "normalization failed");
  return out;
}

namespace {

std::string state_key(const IMat& B, const IMat& C) {
  std::string s;
  s.reserve(static_cast<size_t>(B.rows()) * B.cols() * 6);
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) s += std::to_string(B(i, j)) + ",";
  s += "|";
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < C.cols(); ++j) s += std::to_string(C(i, j)) + ",";
  return s;
}

bool all_nonpositive(const IMat& C) {
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < C.cols(); ++j)
      if (C(i, j) > 0) return false;
  return true;
}

struct SearchCtx {
  int n;
  int depth_cap;
  uint64_t states = 0;
  std::unordered_map<std::string, int> seen;  // state -> shallowest depth reached
  std::vector<int> path;
  std::vector<int> found;
};

bool dfs(SearchCtx& ctx, const ExchangeMatrix& B, const IMat& C, int depth) {
  ++ctx.states;
  if (all_nonpositive(C)) {
    ctx.found = ctx.path;
    return true;
  }
  if (depth == ctx.depth_cap) return false;
  auto [it, inserted] = ctx.seen.try_emplace(state_key(B.b, C), depth);
  if (!inserted && it->second <= depth) return false;
  it->second = depth;
  for (int k = 1; k <= ctx.n; ++k) {
    if (!ctx.path.empty() && ctx.path.back() == k) continue;  // immediate undo
    ctx.path.push_back(k);
    if (dfs(ctx, matrix_mutate(B, k), tropical_mutate(C, B, k), depth + 1)) return true;
    ctx.path.pop_back();
  }
  return false;
}

}  // namespace

ReddeningSearchResult search_reddening(const ExchangeMatrix& B, int max_depth) {
  require(B.skew_symmetric(), errc::not_skew_symmetric,
          "reddening search is defined for skew-symmetric B");
  ReddeningSearchResult res;
  for (int cap = 1; cap <= max_depth; ++cap) {
    SearchCtx ctx;
    ctx.n = B.n;
    ctx.depth_cap = cap;
    if (dfs(ctx, B, IMat::identity(B.n), 0)) {
      res.found = true;
      res.m = ctx.found;
      res.states_visited += ctx.states;
      MutationSequence gamma = make_sequence(B, res.m);
      res.maximal_green = is_maximal_green(gamma);
      return res;
    }
    res.states_visited += ctx.states;
  }
  return res;
}

}  // namespace cnz
