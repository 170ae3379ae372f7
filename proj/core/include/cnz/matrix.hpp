#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cnz/errors.hpp"
#include "cnz/rational.hpp"

namespace cnz {

// Small dense row-major matrix. The sizes in this project are tiny (n <= 8,
// block matrices up to a few dozen rows), so no effort is spent on layout.
template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols, T fill = T())
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      require(static_cast<int>(r.size()) == cols_, errc::length_mismatch, "ragged matrix rows");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static Mat identity(int n, T one = T(1), T zero = T()) {
    Mat m(n, n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Mat operator+(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, errc::length_mismatch, "matrix add shape");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, errc::length_mismatch, "matrix sub shape");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
    return r;
  }
  Mat operator*(const Mat& o) const {
    require(cols_ == o.rows_, errc::length_mismatch, "matrix mul shape");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& x = (*this)(i, k);
        if (x == T()) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + x * o(k, j);
      }
    return r;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!(x == T())) return false;
    return true;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

using IMat = Mat<int64_t>;

// Exact integer determinant (fraction-free Bareiss over mpz, no overflow).
Int det_int(const IMat& m);

}  // namespace cnz
