#pragma once

// Test-side reference computations. They go through Eigen's general
// (non-Hermitian) eigensolver or plain loops, never through the library's
// SVD and Hermitian paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXcd;

// Singular values from eigenvalues of M*M (general complex eigensolver).
inline std::vector<double> singular_values(const Mat& m) {
  const Mat g = m.adjoint() * m;
  Eigen::ComplexEigenSolver<Mat> es(g);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.resize(static_cast<std::size_t>(std::min(m.rows(), m.cols())));
  return out;
}

// Eigenvalues of a Hermitian matrix, non-increasing, via the general solver.
inline std::vector<double> hermitian_eigenvalues(const Mat& h) {
  Eigen::ComplexEigenSolver<Mat> es(h);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// V f(L) V^-1 from the general eigensolver; fine for diagonalizable input.
inline Mat psd_function(const Mat& a, const std::function<double(double)>& f) {
  Eigen::ComplexEigenSolver<Mat> es(a);
  const Mat v = es.eigenvectors();
  Eigen::VectorXcd d(a.rows());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(std::max(0.0, es.eigenvalues()(i).real()));
  return v * d.asDiagonal() * v.inverse();
}

inline double ky_fan(std::vector<double> v, std::size_t k) {
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < k && i < v.size(); ++i) s += v[i];
  return s;
}

inline double op_norm(const Mat& m) { return singular_values(m).front(); }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    e = std::max(e, std::abs(x - y));
  }
  return e;
}

}  // namespace oracle
