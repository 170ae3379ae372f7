#include "cnz/dilog.hpp"

#include <cmath>
#include <vector>

#include "cnz/errors.hpp"
#include "cnz/rational.hpp"

namespace cnz {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// Coefficients B_n / (n+1)! of the expansion Li_2(z) = sum c_n u^{n+1},
// u = -log(1-z). Computed exactly once from the Bernoulli recurrence.
const std::vector<double>& bernoulli_coeffs() {
  static const std::vector<double> coeffs = [] {
    const int N = 64;
    std::vector<Rat> B(N + 1);
    B[0] = 1;
    for (int m = 1; m <= N; ++m) {
      // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
      Rat s(0);
      Int c(1);  // C(m+1, 0)
      for (int j = 0; j < m; ++j) {
        s += Rat(c) * B[j];
        c = c * (m + 1 - j) / (j + 1);
      }
      B[m] = -s / Rat(m + 1);
    }
    std::vector<double> out(N + 1);
    Int fact(1);
    for (int n = 0; n <= N; ++n) {
      fact *= (n + 1);
      Rat cn = B[n] / Rat(fact);
      out[n] = rat_to_double(cn);
    }
    return out;
  }();
  return coeffs;
}

std::complex<double> dilog_series(std::complex<double> z) {
  // Valid for |log(1-z)| < 2*pi; the callers keep |u| <= ~1.8.
  std::complex<double> u = -std::log(1.0 - z);
  const auto& c = bernoulli_coeffs();
  std::complex<double> acc(0.0, 0.0);
  std::complex<double> up = u;
  for (size_t n = 0; n < c.size(); ++n) {
    acc += c[n] * up;
    up *= u;
    if (std::abs(up) < 1e-20) break;
  }
  return acc;
}

}  // namespace

std::complex<double> dilog(std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
  if (z == std::complex<double>(1.0, 0.0)) return {kPi2Over6, 0.0};
  if (std::abs(z) > 1.0) {
    // Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
    std::complex<double> lg = std::log(-z);
    return -dilog(1.0 / z) - kPi2Over6 - 0.5 * lg * lg;
  }
  if (z.real() > 0.5) {
    // Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
    return kPi2Over6 - std::log(z) * std::log(1.0 - z) - dilog_series(1.0 - z);
  }
  return dilog_series(z);
}

double bloch_wigner(std::complex<double> z) {
  require(z != std::complex<double>(0.0, 0.0) && z != std::complex<double>(1.0, 0.0),
          errc::domain_error, "Bloch-Wigner undefined at 0 and 1");
  if (z.imag() == 0.0) return 0.0;
  return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

double rogers(double x) {
  require(x > 0.0 && x < 1.0, errc::domain_error, "Rogers dilogarithm needs x in (0,1)");
  return dilog(std::complex<double>(x, 0.0)).real() + 0.5 * std::log(x) * std::log1p(-x);
}

}  // namespace cnz
