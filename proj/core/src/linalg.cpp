#include "normforge/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "normforge/errors.hpp"

namespace normforge {

namespace {

constexpr std::array<std::pair<MatrixTag, std::string_view>, 7> kTagNames{{
    {MatrixTag::General, "General"},
    {MatrixTag::Hermitian, "Hermitian"},
    {MatrixTag::PositiveSemidefinite, "PositiveSemidefinite"},
    {MatrixTag::Normal, "Normal"},
    {MatrixTag::Expansive, "Expansive"},
    {MatrixTag::Contraction, "Contraction"},
    {MatrixTag::Unitary, "Unitary"},
}};

}  // namespace

std::string_view to_string(MatrixTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "General";
}

MatrixTag parse_matrix_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  throw LookupError("unknown matrix class '" + std::string(name) + "'");
}

Eigen::Index BlockPartition::total_rows() const {
  return std::accumulate(rows.begin(), rows.end(), Eigen::Index{0});
}

Eigen::Index BlockPartition::total_cols() const {
  return std::accumulate(cols.begin(), cols.end(), Eigen::Index{0});
}

Eigen::Index BlockPartition::row_offset(std::size_t i) const {
  return std::accumulate(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(i),
                         Eigen::Index{0});
}

Eigen::Index BlockPartition::col_offset(std::size_t j) const {
  return std::accumulate(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(j),
                         Eigen::Index{0});
}

BlockPartition BlockPartition::uniform(std::size_t grid, Eigen::Index block) {
  return BlockPartition{std::vector<Eigen::Index>(grid, block),
                        std::vector<Eigen::Index>(grid, block)};
}

namespace linalg {

namespace {

using Svd = Eigen::JacobiSVD<ComplexMatrix>;
using HermitianEigen = Eigen::SelfAdjointEigenSolver<ComplexMatrix>;

void require_finite_input(const ComplexMatrix& m) {
  if (!is_finite(m)) {
    throw DomainError("matrix has non-finite entries");
  }
}

Svd compute_svd(const ComplexMatrix& m, unsigned options) {
  Svd svd(m, options);
  if (!svd.singularValues().allFinite()) {
    throw DecompositionError("SVD produced non-finite singular values");
  }
  return svd;
}

HermitianEigen compute_hermitian_eigen(const ComplexMatrix& h, bool vectors) {
  HermitianEigen es(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw DecompositionError("Hermitian eigensolver did not converge");
  }
  return es;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

// Eigenvalues of the dilation come as +-sigma_i plus |rows - cols| zeros;
// the top min(rows, cols) are the singular values.
HermitianEigen dilation_eigen(const ComplexMatrix& m, bool vectors) {
  const Eigen::Index r = m.rows();
  const Eigen::Index c = m.cols();
  ComplexMatrix d = ComplexMatrix::Zero(r + c, r + c);
  d.topRightCorner(r, c) = m;
  d.bottomLeftCorner(c, r) = m.adjoint();
  return compute_hermitian_eigen(d, vectors);
}

double snap(double v, double top) {
  return (v < kRankCutoff * top) ? 0.0 : v;
}

}  // namespace

bool is_finite(const ComplexMatrix& m) { return m.allFinite(); }

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

Spectrum svd_spectrum(const ComplexMatrix& m, Path path) {
  require_finite_input(m);
  if (m.size() == 0) return Spectrum{};
  if (path == Path::Primary) {
    const Svd svd = compute_svd(m, 0);
    return Spectrum(to_vector(svd.singularValues()));
  }
  const Eigen::Index k = std::min(m.rows(), m.cols());
  const HermitianEigen es = dilation_eigen(m, false);
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::vector<double> values(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    values[static_cast<std::size_t>(i)] = std::max(0.0, ev(ev.size() - 1 - i));
  }
  return Spectrum(std::move(values));
}

double op_norm(const ComplexMatrix& m) { return svd_spectrum(m).largest(); }

ComplexMatrix abs_value(const ComplexMatrix& m, Path path) {
  require_finite_input(m);
  const Eigen::Index c = m.cols();
  if (path == Path::Primary) {
    const Svd svd = compute_svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const ComplexMatrix& v = svd.matrixV();
    const ComplexMatrix vk = v.leftCols(s.size());
    ComplexMatrix out = vk * s.cast<Complex>().asDiagonal() * vk.adjoint();
    return (out + out.adjoint()) * 0.5;
  }
  const Eigen::Index r = m.rows();
  const Eigen::Index k = std::min(r, c);
  const HermitianEigen es = dilation_eigen(m, true);
  const Eigen::Index total = r + c;
  ComplexMatrix out = ComplexMatrix::Zero(c, c);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double sigma = es.eigenvalues()(total - 1 - i);
    if (sigma <= 0.0) continue;
    const auto lower = es.eigenvectors().col(total - 1 - i).tail(c);
    out += (2.0 * sigma) * (lower * lower.adjoint());
  }
  return (out + out.adjoint()) * 0.5;
}

ComplexMatrix apply_psd_function(const ComplexMatrix& a,
                                 const std::function<double(double)>& f,
                                 Path path, double tolerance) {
  require_finite_input(a);
  if (!classify(a, {MatrixTag::PositiveSemidefinite, tolerance})) {
    throw ClassError("apply_psd_function: argument is not positive semidefinite");
  }
  const Eigen::Index n = a.rows();
  if (path == Path::Primary) {
    const ComplexMatrix h = (a + a.adjoint()) * 0.5;
    const HermitianEigen es = compute_hermitian_eigen(h, true);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double top = std::max(0.0, lam.maxCoeff());
    Eigen::VectorXcd mapped(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      mapped(i) = f(snap(std::max(0.0, lam(i)), top));
    }
    const ComplexMatrix& u = es.eigenvectors();
    ComplexMatrix out = u * mapped.asDiagonal() * u.adjoint();
    return (out + out.adjoint()) * 0.5;
  }
  // For PSD a the right singular vectors are eigenvectors of a (a^2 shares
  // them), kernel included.
  const Svd svd = compute_svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  Eigen::VectorXcd mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mapped(i) = f(snap(s(i), top));
  }
  const ComplexMatrix& v = svd.matrixV();
  ComplexMatrix out = v * mapped.asDiagonal() * v.adjoint();
  return (out + out.adjoint()) * 0.5;
}

Polar polar(const ComplexMatrix& m) {
  require_finite_input(m);
  if (m.rows() != m.cols()) {
    throw DimensionError("polar: matrix must be square");
  }
  const Svd svd = compute_svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix& u = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();
  ComplexMatrix p = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
  return Polar{u * v.adjoint(), (p + p.adjoint()) * 0.5};
}

ComplexMatrix hermitian_dilation(const ComplexMatrix& m) {
  require_finite_input(m);
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian_dilation: matrix must be square");
  }
  const Eigen::Index n = m.rows();
  ComplexMatrix d = ComplexMatrix::Zero(2 * n, 2 * n);
  d.topRightCorner(n, n) = m;
  d.bottomLeftCorner(n, n) = m.adjoint();
  return d;
}

ComplexMatrix block_compose(const std::vector<std::vector<ComplexMatrix>>& grid) {
  if (grid.empty() || grid.front().empty()) {
    throw DimensionError("block_compose: empty grid");
  }
  const std::size_t grid_cols = grid.front().size();
  BlockPartition part;
  for (const auto& row : grid) {
    if (row.size() != grid_cols) {
      throw DimensionError("block_compose: grid rows have different lengths");
    }
  }
  for (const auto& row : grid) part.rows.push_back(row.front().rows());
  for (const auto& blk : grid.front()) part.cols.push_back(blk.cols());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid_cols; ++j) {
      if (grid[i][j].rows() != part.rows[i] || grid[i][j].cols() != part.cols[j]) {
        throw DimensionError("block_compose: block (" + std::to_string(i) + "," +
                             std::to_string(j) + ") has inconsistent shape");
      }
    }
  }
  ComplexMatrix out(part.total_rows(), part.total_cols());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid_cols; ++j) {
      out.block(part.row_offset(i), part.col_offset(j), part.rows[i], part.cols[j]) =
          grid[i][j];
    }
  }
  return out;
}

ComplexMatrix extract_block(const ComplexMatrix& m, const BlockPartition& partition,
                            std::size_t i, std::size_t j) {
  if (partition.total_rows() != m.rows() || partition.total_cols() != m.cols() ||
      i >= partition.rows.size() || j >= partition.cols.size()) {
    throw DimensionError("extract_block: partition does not match matrix");
  }
  return m.block(partition.row_offset(i), partition.col_offset(j), partition.rows[i],
                 partition.cols[j]);
}

bool classify(const ComplexMatrix& m, MatrixClass cls) {
  if (!is_finite(m)) return false;
  const double tol = cls.tolerance;
  const bool square = m.rows() == m.cols();
  switch (cls.tag) {
    case MatrixTag::General:
      return true;
    case MatrixTag::Hermitian: {
      if (!square) return false;
      return op_norm(m - m.adjoint()) <= tol * (1.0 + op_norm(m));
    }
    case MatrixTag::Normal: {
      if (!square) return false;
      const double norm = op_norm(m);
      const ComplexMatrix comm = m.adjoint() * m - m * m.adjoint();
      return op_norm(comm) <= tol * (1.0 + norm * norm);
    }
    case MatrixTag::PositiveSemidefinite: {
      if (!classify(m, {MatrixTag::Hermitian, tol})) return false;
      if (m.size() == 0) return true;
      const ComplexMatrix h = (m + m.adjoint()) * 0.5;
      const HermitianEigen es = compute_hermitian_eigen(h, false);
      return es.eigenvalues().minCoeff() >= -tol * (1.0 + op_norm(m));
    }
    case MatrixTag::Expansive: {
      if (m.rows() < m.cols()) return false;
      const Spectrum s = svd_spectrum(m);
      return s.size() == 0 || s.values().back() >= 1.0 - tol;
    }
    case MatrixTag::Contraction:
      return op_norm(m) <= 1.0 + tol;
    case MatrixTag::Unitary: {
      if (!square) return false;
      return op_norm(m.adjoint() * m - identity(m.rows())) <= tol;
    }
  }
  return false;
}

ComplexMatrix congruence(const ComplexMatrix& z, const ComplexMatrix& a) {
  if (a.rows() != a.cols() || z.rows() != a.rows()) {
    throw DimensionError("congruence: need square A and Z with rows(Z) = dim(A)");
  }
  return z.adjoint() * a * z;
}

}  // namespace linalg
}  // namespace normforge
