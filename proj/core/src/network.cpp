#include "cnz/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cnz {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline int flat(int i, int t, int n) { return t * n + (i - 1); }

}  // namespace

MutationNetwork build_network(const MutationSequence& gamma) {
  const int n = gamma.n(), T = gamma.T();
  require(T >= 1, errc::empty_sequence, "mutation network needs T >= 1");

  MutationNetwork net;
  net.n = n;
  net.T = T;
  {
    Trajectory tr = run_sequence(gamma, false);
    net.Bt = std::move(tr.B);
  }

  // Classes: (i, t-1) ~ (sigma_t(i), t) for i != m_t, with times mod T.
  UnionFind uf(n * T);
  for (int t = 1; t <= T; ++t)
    for (int i = 1; i <= n; ++i) {
      if (i == gamma.m[t - 1]) continue;
      uf.unite(flat(i, t - 1, n), flat(gamma.sigma[t - 1](i), t % T, n));
    }

  std::map<int, std::vector<std::pair<int, int>>> groups;  // root -> members (t, i)
  for (int t = 0; t < T; ++t)
    for (int i = 1; i <= n; ++i) groups[uf.find(flat(i, t, n))].push_back({t, i});

  // Root -> provisional class, members sorted by (t, i).
  std::vector<VertexClass> classes;
  std::map<int, int> class_index;
  for (auto& [root, mem] : groups) {
    std::sort(mem.begin(), mem.end());
    VertexClass vc;
    for (auto [t, i] : mem) vc.members.push_back({i, t});
    class_index[root] = static_cast<int>(classes.size());
    classes.push_back(std::move(vc));
  }

  auto cls = [&](int i, int t) { return class_index.at(uf.find(flat(i, t, n))); };

  // Fully mutated iff t -> [(m_t, t-1)] hits every class (then it is a
  // bijection and |E| = T).
  std::vector<bool> hit(classes.size(), false);
  for (int t = 1; t <= T; ++t) hit[cls(gamma.m[t - 1], t - 1)] = true;
  net.fully_mutated =
      classes.size() == static_cast<size_t>(T) && std::ranges::all_of(hit, [](bool b) { return b; });

  // Row order.
  std::vector<int> order(classes.size());
  if (net.fully_mutated) {
    for (int t = 1; t <= T; ++t) order[t - 1] = cls(gamma.m[t - 1], t - 1);
  } else {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return classes[a].rep() < classes[b].rep(); });
  }
  std::vector<int> rank(classes.size());
  for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  net.classes.resize(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) net.classes[rank[c]] = std::move(classes[c]);
  net.class_of.resize(n * T);
  for (int t = 0; t < T; ++t)
    for (int i = 1; i <= n; ++i) net.class_of[flat(i, t, n)] = rank[cls(i, t)];

  auto row = [&](int i, int t) { return net.class_of[flat(i, t % T, n)]; };

  const int E = static_cast<int>(net.classes.size());
  net.N0 = IMat(E, T);
  net.Nplus = IMat(E, T);
  net.Nminus = IMat(E, T);

  // Direct drawing rules.
  for (int t = 1; t <= T; ++t) {
    const int k = gamma.m[t - 1];
    net.N0(row(k, t - 1), t - 1) += 1;
    net.N0(row(gamma.sigma[t - 1](k), t), t - 1) += 1;
    for (int i = 1; i <= n; ++i) {
      int64_t b = net.Bt[t - 1].b(k - 1, i - 1);
      if (b > 0) net.Nplus(row(i, t - 1), t - 1) += b;
      if (b < 0) net.Nminus(row(i, t - 1), t - 1) += -b;
    }
  }

  // Independent recomputation from the closed-form class sums.
  IMat n0(E, T), np(E, T), np2(E, T), nm(E, T), nm2(E, T);
  for (int e = 0; e < E; ++e)
    for (const auto& [i, u] : net.classes[e].members)
      for (int t = 1; t <= T; ++t) {
        const int k = gamma.m[t - 1];
        const Permutation& s = gamma.sigma[t - 1];
        if (i == k && u == t - 1) n0(e, t - 1) += 1;
        if (i == s(k) && u == t % T) n0(e, t - 1) += 1;
        int64_t b = net.Bt[t - 1].b(k - 1, i - 1);
        if (u == t - 1) {
          np(e, t - 1) += std::max<int64_t>(b, 0);
          nm(e, t - 1) += std::max<int64_t>(-b, 0);
        }
        int64_t bs = net.Bt[t - 1].b(k - 1, s.inverse()(i) - 1);
        if (u == t % T) {
          np2(e, t - 1) += std::max<int64_t>(bs, 0);
          nm2(e, t - 1) += std::max<int64_t>(-bs, 0);
        }
      }
  require(n0 == net.N0 && np == net.Nplus && nm == net.Nminus && np2 == net.Nplus &&
              nm2 == net.Nminus,
          errc::invariant_violation, "adjacency recomputation mismatch");

  return net;
}

NZMatrices nz_matrices(const MutationNetwork& net) {
  return NZMatrices{net.N0 - net.Nplus, net.N0 - net.Nminus};
}

IMat signed_nz(const MutationNetwork& net, const std::vector<int>& eps) {
  require(static_cast<int>(eps.size()) == net.T, errc::length_mismatch,
          "sign sequence length mismatch");
  NZMatrices nz = nz_matrices(net);
  IMat a(net.N0.rows(), net.T);
  for (int t = 0; t < net.T; ++t) {
    const IMat& src = eps[t] > 0 ? nz.Aplus : (eps[t] < 0 ? nz.Aminus : net.N0);
    for (int e = 0; e < a.rows(); ++e) a(e, t) = src(e, t);
  }
  return a;
}

IMat alpha_matrix(const MutationSequence& gamma) {
  const int n = gamma.n(), T = gamma.T();
  require(T >= 1, errc::empty_sequence, "alpha matrix needs T >= 1");
  IMat a(n * T, n * T);
  for (int t = 1; t <= T; ++t) {
    const int k = gamma.m[t - 1];
    const Permutation& s = gamma.sigma[t - 1];
    for (int j = 1; j <= n; ++j) {
      if (j == k) continue;
      a(flat(s(j), t % T, n), flat(j, t - 1, n)) = 1;
    }
  }
  return a;
}

IMat l_matrix(const MutationSequence& gamma, const std::vector<int>& eps) {
  const int n = gamma.n(), T = gamma.T();
  require(T >= 1, errc::empty_sequence, "L matrix needs T >= 1");
  require(static_cast<int>(eps.size()) == T, errc::length_mismatch, "sign sequence length");
  Trajectory tr = run_sequence(gamma, false);
  IMat L(n * T, n * T);
  for (int t = 1; t <= T; ++t) {
    const int k = gamma.m[t - 1];
    const Permutation& s = gamma.sigma[t - 1];
    const ExchangeMatrix& B = tr.B[t - 1];
    // Block P_{sigma_t} F_{m_t,eps_t}(B(t-1))^T: identity-like columns for
    // j != k, the k-th column carries the F data.
    for (int j = 1; j <= n; ++j) {
      if (j != k) {
        L(flat(s(j), t % T, n), flat(j, t - 1, n)) = 1;
        continue;
      }
      for (int i = 1; i <= n; ++i) {
        int64_t v;
        if (i == k)
          v = -1;
        else
          v = std::max<int64_t>(eps[t - 1] * B.b(k - 1, i - 1), 0);
        if (v != 0) L(flat(s(i), t % T, n), flat(k, t - 1, n)) = v;
      }
    }
  }
  return L;
}

IMat x_matrix(const MutationSequence& gamma, const std::vector<int>& eps) {
  const int n = gamma.n(), T = gamma.T();
  IMat alpha = alpha_matrix(gamma);
  const int N = n * T;
  // (I - alpha)^{-1} = sum alpha^k, a finite sum iff alpha is nilpotent.
  IMat inv = IMat::identity(N);
  IMat pw = alpha;
  for (int k = 1; k <= N && !pw.is_zero(); ++k) {
    inv = inv + pw;
    pw = pw * alpha;
  }
  require(pw.is_zero(), errc::not_nilpotent, "alpha is not nilpotent (not fully mutated)");
  IMat IL = IMat::identity(N) - l_matrix(gamma, eps);
  return inv * IL;
}

bool is_fully_mutated(const MutationSequence& gamma) {
  const int n = gamma.n(), T = gamma.T();
  if (T == 0) return false;

  MutationNetwork net = build_network(gamma);
  bool every_class_mutated = true;
  {
    std::vector<bool> hit(net.classes.size(), false);
    for (int t = 1; t <= T; ++t) hit[net.class_of[flat(gamma.m[t - 1], t - 1, n)]] = true;
    every_class_mutated = std::ranges::all_of(hit, [](bool b) { return b; });
  }
  bool class_count = net.classes.size() == static_cast<size_t>(T);

  IMat alpha = alpha_matrix(gamma);
  IMat pw = alpha;
  for (int k = 1; k < n * T && !pw.is_zero(); ++k) pw = pw * alpha;
  bool nilpotent = pw.is_zero();

  // G_alpha is a functional graph: each vertex has at most one successor.
  bool acyclic = true;
  {
    std::vector<int> succ(n * T, -1);
    for (int t = 1; t <= T; ++t) {
      const Permutation& s = gamma.sigma[t - 1];
      for (int j = 1; j <= n; ++j)
        if (j != gamma.m[t - 1]) succ[flat(s(j), t % T, n)] = flat(j, t - 1, n);
    }
    std::vector<int> state(n * T, 0);  // 0 new, 1 on stack, 2 done
    for (int v = 0; v < n * T && acyclic; ++v) {
      int x = v;
      std::vector<int> stack;
      while (x != -1 && state[x] == 0) {
        state[x] = 1;
        stack.push_back(x);
        x = succ[x];
      }
      if (x != -1 && state[x] == 1) acyclic = false;
      for (int y : stack) state[y] = 2;
    }
  }

  require(every_class_mutated == class_count && class_count == nilpotent && nilpotent == acyclic,
          errc::invariant_violation, "fully-mutated criteria disagree");
  return every_class_mutated;
}

bool check_symplectic(const MutationSequence& gamma) {
  require(gamma.B.skew_symmetric(), errc::not_skew_symmetric,
          "symplectic check needs skew-symmetric B");
  require(is_fully_mutated(gamma), errc::not_fully_mutated,
          "symplectic check needs a fully mutated sequence");
  NZMatrices nz = nz_matrices(build_network(gamma));
  IMat S = nz.Aplus * nz.Aminus.transpose();
  return S == S.transpose();
}

std::string network_dot(const MutationNetwork& net) {
  std::ostringstream out;
  out << "digraph mutation_network {\n";
  out << "  rankdir=TB;\n";
  for (size_t e = 0; e < net.classes.size(); ++e) {
    out << "  e" << e << " [shape=circle style=filled fillcolor=black label=\"\" xlabel=\"e"
        << e + 1 << "\"];\n";
  }
  for (int t = 1; t <= net.T; ++t) out << "  t" << t << " [shape=square label=\"" << t << "\"];\n";
  for (int e = 0; e < net.N0.rows(); ++e)
    for (int t = 1; t <= net.T; ++t) {
      for (int64_t c = 0; c < net.N0(e, t - 1); ++c)
        out << "  e" << e << " -> t" << t << " [style=dashed dir=none];\n";
      for (int64_t c = 0; c < net.Nplus(e, t - 1); ++c) out << "  t" << t << " -> e" << e << ";\n";
      for (int64_t c = 0; c < net.Nminus(e, t - 1); ++c) out << "  e" << e << " -> t" << t << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace cnz
