#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"
#include "oracle.hpp"

namespace snc {

// Just enough dense complex matrix to compare induced operators against
// ideal gates. Row major, indices are (row, col).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<cx> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, cx{0.0, 0.0}) {}

  cx& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  cx at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  Mat operator*(const Mat& o) const {
    if (cols != o.rows) fail(errc::invalid_argument, "matrix shape mismatch");
    Mat out(rows, o.cols);
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k < cols; ++k) {
        cx v = at(r, k);
        if (v == cx{0.0, 0.0}) continue;
        for (int c = 0; c < o.cols; ++c) out.at(r, c) += v * o.at(k, c);
      }
    return out;
  }

  Mat kron(const Mat& o) const {
    Mat out(rows * o.rows, cols * o.cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        for (int r2 = 0; r2 < o.rows; ++r2)
          for (int c2 = 0; c2 < o.cols; ++c2)
            out.at(r * o.rows + r2, c * o.cols + c2) = at(r, c) * o.at(r2, c2);
    return out;
  }

  double norm() const {
    double n2 = 0.0;
    for (const cx& v : a) n2 += std::norm(v);
    return std::sqrt(n2);
  }
};

inline cx frobenius_inner(const Mat& x, const Mat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    fail(errc::invalid_argument, "matrix shape mismatch");
  cx acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.a.size(); ++i) acc += std::conj(x.a[i]) * y.a[i];
  return acc;
}

// Equal up to a global phase (and zero matches only zero).
inline bool proportional(const Mat& x, const Mat& y, double tol) {
  double nx = x.norm(), ny = y.norm();
  if (nx < tol || ny < tol) return nx < tol && ny < tol;
  return std::abs(std::abs(frobenius_inner(x, y)) - nx * ny) <= tol * nx * ny;
}

// Largest deviation from phase-aligned equality, for error reporting.
inline double proportional_residual(const Mat& x, const Mat& y) {
  double nx = x.norm(), ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return std::abs(nx - ny);
  return std::abs(1.0 - std::abs(frobenius_inner(x, y)) / (nx * ny));
}

} // namespace snc
