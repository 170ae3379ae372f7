#include "cnz/matrix.hpp"

#include "cnz/rational.hpp"

namespace cnz {

Int det_int(const IMat& m) {
  require(m.square(), errc::length_mismatch, "determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return Int(1);
  Mat<Int> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Int(static_cast<long>(m(i, j)));

  // Fraction-free Bareiss; intermediate entries are exact minors.
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return Int(0);
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

}  // namespace cnz
