#pragma once

// Dense complex matrices, their decompositions, and the PSD functional
// calculus. Everything here is a pure function of its arguments.

#include <complex>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "normforge/spectra.hpp"

namespace normforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class MatrixTag {
  General,
  Hermitian,
  PositiveSemidefinite,
  Normal,
  Expansive,
  Contraction,
  Unitary,
};

std::string_view to_string(MatrixTag tag);
/// Inverse of to_string; throws LookupError.
MatrixTag parse_matrix_tag(std::string_view name);

struct MatrixClass {
  MatrixTag tag = MatrixTag::General;
  double tolerance = 1e-8;
};

/// Row and column block sizes of a partitioned matrix.
struct BlockPartition {
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;

  Eigen::Index total_rows() const;
  Eigen::Index total_cols() const;
  Eigen::Index row_offset(std::size_t i) const;
  Eigen::Index col_offset(std::size_t j) const;

  static BlockPartition uniform(std::size_t grid, Eigen::Index block);
  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;
};

namespace linalg {

/// Two numerically independent routes to the same spectral quantities.
/// Primary: one-sided Jacobi SVD and a Hermitian eigensolver for f(A).
/// Alternate: Hermitian eigensolver on the dilation [[0,M],[M*,0]] for
/// singular values and |M|, and SVD factors for f(A).
enum class Path { Primary, Alternate };

/// Relative cutoff under which computed eigen/singular values are treated
/// as exact zeros before a scalar function is applied to them.
inline constexpr double kRankCutoff = 1e-12;

bool is_finite(const ComplexMatrix& m);
ComplexMatrix identity(Eigen::Index n);

/// min(rows, cols) singular values in non-increasing order.
Spectrum svd_spectrum(const ComplexMatrix& m, Path path = Path::Primary);

/// Largest singular value.
double op_norm(const ComplexMatrix& m);

/// |M| = (M*M)^{1/2}, a cols x cols PSD matrix, built from SVD factors.
ComplexMatrix abs_value(const ComplexMatrix& m, Path path = Path::Primary);

/// U f(Lambda) U* for PSD `a`. Eigenvalues below kRankCutoff * lambda_max
/// are mapped through f(0). Throws ClassError when `a` is not PSD within
/// `tolerance`.
ComplexMatrix apply_psd_function(const ComplexMatrix& a,
                                 const std::function<double(double)>& f,
                                 Path path = Path::Primary,
                                 double tolerance = 1e-8);

struct Polar {
  ComplexMatrix unitary;
  ComplexMatrix positive;
};

/// M = W P with P = |M| and W = U V* from the SVD.
Polar polar(const ComplexMatrix& m);

/// [[0, M], [M*, 0]] for square M.
ComplexMatrix hermitian_dilation(const ComplexMatrix& m);

/// Assembles a grid of blocks. Throws DimensionError on a ragged grid.
ComplexMatrix block_compose(const std::vector<std::vector<ComplexMatrix>>& grid);

/// The (i, j) window of `m` under `partition`.
ComplexMatrix extract_block(const ComplexMatrix& m, const BlockPartition& partition,
                            std::size_t i, std::size_t j);

/// Tolerance-relative class membership:
///   Hermitian    ||M - M*|| <= tol (1 + ||M||)
///   Normal       ||M*M - MM*|| <= tol (1 + ||M||^2)
///   PSD          Hermitian and lambda_min >= -tol (1 + ||M||)
///   Expansive    sigma_min >= 1 - tol
///   Contraction  sigma_max <= 1 + tol
///   Unitary      ||M*M - I|| <= tol
/// with ||.|| the operator norm.
bool classify(const ComplexMatrix& m, MatrixClass cls);

/// Z* A Z. Throws DimensionError on incompatible shapes.
ComplexMatrix congruence(const ComplexMatrix& z, const ComplexMatrix& a);

}  // namespace linalg
}  // namespace normforge
