#include "cnz/cluster.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace cnz {

bool ExchangeMatrix::skew_symmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (b(i, j) != -b(j, i)) return false;
  return true;
}

ExchangeMatrix validate_exchange_matrix(const IMat& entries) {
  require(entries.square(), errc::not_skew_symmetrizable, "matrix is not square");
  const int n = entries.rows();
  for (int i = 0; i < n; ++i)
    require(entries(i, i) == 0, errc::not_skew_symmetrizable, "nonzero diagonal entry");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool zi = entries(i, j) == 0, zj = entries(j, i) == 0;
      require(zi == zj, errc::not_skew_symmetrizable, "B_ij = 0 but B_ji != 0");
      if (!zi)
        require((entries(i, j) > 0) != (entries(j, i) > 0), errc::not_skew_symmetrizable,
                "B_ij and B_ji have the same sign");
    }

  // d_j / d_i = -B_ij / B_ji propagated over the graph of nonzero entries.
  std::vector<Rat> d(n, Rat(0));
  std::vector<int64_t> dd(n, 0);
  for (int root = 0; root < n; ++root) {
    if (d[root] != 0) continue;
    std::vector<int> comp;
    d[root] = 1;
    std::queue<int> q;
    q.push(root);
    comp.push_back(root);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (entries(i, j) == 0) continue;
        Rat ratio(-entries(i, j), entries(j, i));
        ratio.canonicalize();
        Rat dj = d[i] * ratio;
        if (d[j] == 0) {
          d[j] = dj;
          q.push(j);
          comp.push_back(j);
        } else {
          require(d[j] == dj, errc::not_skew_symmetrizable, "inconsistent symmetrizer cycle");
        }
      }
    }
    // Scale the component to smallest positive integers.
    Int l(1);
    for (int i : comp) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d[i].get_den().get_mpz_t());
    Int g(0);
    for (int i : comp) {
      Int v = d[i].get_num() * (l / d[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    for (int i : comp) {
      Int v = d[i].get_num() * (l / d[i].get_den()) / g;
      require(v.fits_slong_p(), errc::not_skew_symmetrizable, "symmetrizer overflow");
      dd[i] = v.get_si();
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      require(dd[i] * entries(i, j) == -dd[j] * entries(j, i), errc::not_skew_symmetrizable,
              "symmetrizer check failed");
  return ExchangeMatrix{n, entries, std::move(dd)};
}

ExchangeMatrix matrix_mutate(const ExchangeMatrix& B, int k) {
  require(k >= 1 && k <= B.n, errc::index_out_of_range, "mutation index");
  const int n = B.n;
  const int ki = k - 1;
  IMat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == ki || j == ki) {
        r(i, j) = -B.b(i, j);
      } else if (B.b(i, ki) > 0 && B.b(ki, j) > 0) {
        r(i, j) = B.b(i, j) + B.b(i, ki) * B.b(ki, j);
      } else if (B.b(i, ki) < 0 && B.b(ki, j) < 0) {
        r(i, j) = B.b(i, j) - B.b(i, ki) * B.b(ki, j);
      } else {
        r(i, j) = B.b(i, j);
      }
    }
  return ExchangeMatrix{n, std::move(r), B.d};  // mutation preserves the symmetrizer
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.map_.resize(n);
  std::iota(p.map_.begin(), p.map_.end(), 1);
  return p;
}

Permutation Permutation::from_one_line(const std::vector<int>& map) {
  const int n = static_cast<int>(map.size());
  std::vector<bool> seen(n, false);
  for (int v : map) {
    require(v >= 1 && v <= n && !seen[v - 1], errc::parse_error, "not a permutation");
    seen[v - 1] = true;
  }
  Permutation p;
  p.map_ = map;
  return p;
}

Permutation Permutation::from_cycles(const std::string& s, int n) {
  Permutation p = identity(n);
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  size_t pos = 0;
  bool any = false;
  while (pos < t.size()) {
    if (std::isspace(static_cast<unsigned char>(t[pos]))) {
      ++pos;
      continue;
    }
    if (t.compare(pos, 2, "id") == 0) {
      pos += 2;
      any = true;
      continue;
    }
    require(t[pos] == '(', errc::parse_error, "expected '(' in cycle notation: " + s);
    size_t close = t.find(')', pos);
    require(close != std::string::npos, errc::parse_error, "unbalanced cycle: " + s);
    std::istringstream in(t.substr(pos + 1, close - pos - 1));
    std::vector<int> cyc;
    int v;
    while (in >> v) {
      require(v >= 1 && v <= n, errc::parse_error, "cycle entry out of range: " + s);
      cyc.push_back(v);
    }
    for (size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
      require(p.map_[from - 1] == from, errc::parse_error, "repeated entry in cycles: " + s);
      p.map_[from - 1] = to;
    }
    pos = close + 1;
    any = true;
  }
  require(any || s.empty(), errc::parse_error, "empty permutation spec");
  return from_one_line(p.map_);
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= n(); ++i)
    if (map_[i - 1] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.map_.resize(map_.size());
  for (int i = 1; i <= n(); ++i) p.map_[map_[i - 1] - 1] = i;
  return p;
}

Permutation Permutation::compose(const Permutation& inner) const {
  require(n() == inner.n(), errc::arity_mismatch, "composing permutations of different size");
  Permutation p;
  p.map_.resize(map_.size());
  for (int i = 1; i <= n(); ++i) p.map_[i - 1] = map_[inner.map_[i - 1] - 1];
  return p;
}

IMat Permutation::matrix() const {
  IMat m(n(), n());
  for (int j = 1; j <= n(); ++j) m(map_[j - 1] - 1, j - 1) = 1;
  return m;
}

YSeed initial_seed(const ExchangeMatrix& B) {
  YSeed s;
  s.B = B;
  s.Y.reserve(B.n);
  for (int i = 1; i <= B.n; ++i) s.Y.push_back(RatFun::variable(B.n, i));
  return s;
}

YSeed yseed_mutate(const YSeed& seed, int k) {
  const int n = seed.B.n;
  require(k >= 1 && k <= n, errc::index_out_of_range, "mutation index");
  const RatFun& yk = seed.Y[k - 1];
  require(!yk.is_zero(), errc::invariant_violation, "Y at mutation point is zero");
  RatFun u = yk + RatFun::one(n);       // Y_k + 1
  RatFun zplus = yk / u;                // (Y_k^{-1} + 1)^{-1}
  YSeed out;
  out.B = matrix_mutate(seed.B, k);
  out.Y.resize(n);
  for (int i = 1; i <= n; ++i) {
    if (i == k) {
      out.Y[i - 1] = yk.inv();
      continue;
    }
    int64_t b = seed.B.b(k - 1, i - 1);
    if (b >= 0)
      out.Y[i - 1] = seed.Y[i - 1] * zplus.pow(b);
    else
      out.Y[i - 1] = seed.Y[i - 1] * u.pow(-b);
  }
  return out;
}

ExchangeMatrix apply_permutation_matrix(const ExchangeMatrix& B, const Permutation& sigma) {
  Permutation inv = sigma.inverse();
  IMat r(B.n, B.n);
  std::vector<int64_t> d(B.n);
  for (int i = 1; i <= B.n; ++i) {
    d[i - 1] = B.d[inv(i) - 1];
    for (int j = 1; j <= B.n; ++j) r(i - 1, j - 1) = B.b(inv(i) - 1, inv(j) - 1);
  }
  return ExchangeMatrix{B.n, std::move(r), std::move(d)};
}

YSeed apply_permutation(const YSeed& seed, const Permutation& sigma) {
  require(sigma.n() == seed.B.n, errc::arity_mismatch, "permutation arity mismatch");
  YSeed out;
  out.B = apply_permutation_matrix(seed.B, sigma);
  Permutation inv = sigma.inverse();
  out.Y.resize(seed.Y.size());
  for (int i = 1; i <= seed.B.n; ++i) out.Y[i - 1] = seed.Y[inv(i) - 1];
  return out;
}

MutationSequence make_sequence(ExchangeMatrix B, std::vector<int> m,
                               std::vector<Permutation> sigma) {
  for (int k : m)
    require(k >= 1 && k <= B.n, errc::index_out_of_range, "mutation index out of range");
  if (sigma.empty()) sigma.assign(m.size(), Permutation::identity(B.n));
  require(sigma.size() == m.size(), errc::length_mismatch, "m and sigma length mismatch");
  for (const auto& s : sigma)
    require(s.n() == B.n, errc::arity_mismatch, "permutation size mismatch");
  return MutationSequence{std::move(B), std::move(m), std::move(sigma)};
}

namespace {

void push_factor(std::vector<Poly>& basis, const Poly& f) {
  if (f.term_count() < 2) return;  // monomials cancel in normalization already
  if (std::find(basis.begin(), basis.end(), f) == basis.end()) basis.push_back(f);
}

}  // namespace

Trajectory run_sequence(const MutationSequence& gamma, bool symbolic) {
  Trajectory tr;
  tr.matrices_only = !symbolic;
  tr.B.push_back(gamma.B);
  if (symbolic) tr.Y.push_back(initial_seed(gamma.B).Y);
  YSeed seed = symbolic ? initial_seed(gamma.B) : YSeed{gamma.B, {}};
  std::vector<Poly> basis;
  for (int t = 1; t <= gamma.T(); ++t) {
    int k = gamma.m[t - 1];
    const Permutation& s = gamma.sigma[t - 1];
    if (symbolic) {
      const RatFun& y = seed.Y[k - 1];
      push_factor(basis, y.num());
      push_factor(basis, (y + RatFun::one(gamma.n())).num());
      seed = apply_permutation(yseed_mutate(seed, k), s);
      for (RatFun& c : seed.Y) c = reduce_common_factors(c, basis);
      tr.B.push_back(seed.B);
      tr.Y.push_back(seed.Y);
    } else {
      seed.B = apply_permutation_matrix(matrix_mutate(seed.B, k), s);
      tr.B.push_back(seed.B);
    }
  }
  return tr;
}

std::vector<Poly> mutation_factor_basis(const MutationSequence& gamma, const Trajectory& tr) {
  require(!tr.matrices_only, errc::invariant_violation, "factor basis needs a symbolic trajectory");
  std::vector<Poly> basis;
  for (int t = 1; t <= gamma.T(); ++t) {
    const RatFun& y = tr.Y[t - 1][gamma.m[t - 1] - 1];
    push_factor(basis, y.num());
    push_factor(basis, y.den());
    push_factor(basis, (y + RatFun::one(gamma.n())).num());
  }
  return basis;
}

std::vector<RatFun> cluster_transformation(const MutationSequence& gamma) {
  return run_sequence(gamma, true).Y.back();
}

bool is_mutation_loop(const MutationSequence& gamma) {
  Trajectory tr = run_sequence(gamma, false);
  return tr.B.front().b == tr.B.back().b;
}

QuiverEdges matrix_to_quiver(const ExchangeMatrix& B) {
  require(B.skew_symmetric(), errc::not_skew_symmetric, "quiver needs a skew-symmetric matrix");
  QuiverEdges edges;
  for (int i = 1; i <= B.n; ++i)
    for (int j = 1; j <= B.n; ++j)
      if (B.b(i - 1, j - 1) > 0) edges[{i, j}] = B.b(i - 1, j - 1);
  return edges;
}

ExchangeMatrix quiver_to_matrix(int n, const QuiverEdges& edges) {
  IMat b(n, n);
  for (const auto& [e, c] : edges) {
    auto [from, to] = e;
    require(from >= 1 && from <= n && to >= 1 && to <= n, errc::illegal_quiver,
            "edge endpoint out of range");
    require(from != to, errc::illegal_quiver, "quiver has a 1-loop");
    require(c > 0, errc::illegal_quiver, "edge multiplicity must be positive");
    require(edges.find({to, from}) == edges.end(), errc::illegal_quiver, "quiver has a 2-cycle");
    b(from - 1, to - 1) += c;
    b(to - 1, from - 1) -= c;
  }
  return validate_exchange_matrix(b);
}

}  // namespace cnz
