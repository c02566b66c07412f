#include "normforge/gen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "normforge/errors.hpp"

namespace normforge {

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 5> kVariantNames{{
    {Variant::Standard, "standard"},
    {Variant::RankDeficient, "rank_deficient"},
    {Variant::Repeated, "repeated"},
    {Variant::Identity, "identity"},
    {Variant::Zero, "zero"},
}};

}  // namespace

std::string_view to_string(Variant v) {
  for (const auto& [k, name] : kVariantNames) {
    if (k == v) return name;
  }
  return "standard";
}

Variant parse_variant(std::string_view name) {
  for (const auto& [k, n] : kVariantNames) {
    if (n == name) return k;
  }
  throw LookupError("unknown generation variant '" + std::string(name) + "'");
}

namespace gen {

ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Stream& stream) {
  ComplexMatrix g(rows, cols);
  // Row-major fill so the layout of the stream is independent of storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = stream.complex_gaussian();
    }
  }
  return g;
}

ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Stream stream(seed);
  return random_ginibre(rows, cols, stream);
}

ComplexMatrix random_unitary(Eigen::Index n, Stream& stream) {
  const ComplexMatrix g = random_ginibre(n, n, stream);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
  Stream stream(seed);
  return random_unitary(n, stream);
}

namespace {

// Number of nonzero values kept by a rank-deficient variant.
Eigen::Index deficient_rank(Eigen::Index n, Stream& s) {
  return static_cast<Eigen::Index>(s.index(static_cast<std::size_t>(n)));
}

// Values with some duplicates: draw about half as many distinct values.
template <typename Draw>
Eigen::VectorXcd repeated_values(Eigen::Index n, Draw draw) {
  const Eigen::Index distinct = std::max<Eigen::Index>(1, (n + 1) / 2);
  Eigen::VectorXcd pool(distinct);
  for (Eigen::Index i = 0; i < distinct; ++i) pool(i) = draw();
  Eigen::VectorXcd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = pool(i % distinct);
  return out;
}

ComplexMatrix spectral(const ComplexMatrix& u, const Eigen::VectorXcd& values,
                       const ComplexMatrix& v) {
  return u * values.asDiagonal() * v.adjoint();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

ComplexMatrix random_in_class(const GenSpec& spec) {
  if (spec.dim < 1 || spec.columns() < 1) {
    throw DimensionError("random_in_class: dimensions must be positive");
  }
  if (spec.cls != MatrixTag::General && spec.columns() != spec.dim) {
    throw DimensionError("random_in_class: only General matrices may be rectangular");
  }
  Stream s(spec.seed);
  const Eigen::Index n = spec.dim;
  const Eigen::Index m = spec.columns();
  const double scale = spec.scale;

  if (spec.variant == Variant::Zero) {
    return ComplexMatrix::Zero(n, m);
  }
  if (spec.variant == Variant::Identity) {
    switch (spec.cls) {
      case MatrixTag::Expansive:
      case MatrixTag::Contraction:
      case MatrixTag::Unitary:
      case MatrixTag::Normal:
      case MatrixTag::Hermitian:
      case MatrixTag::PositiveSemidefinite:
        return ComplexMatrix::Identity(n, n);
      case MatrixTag::General:
        return ComplexMatrix::Identity(n, m);
    }
  }

  switch (spec.cls) {
    case MatrixTag::General: {
      if (spec.variant == Variant::RankDeficient) {
        const Eigen::Index r = deficient_rank(std::min(n, m), s);
        const ComplexMatrix left = random_ginibre(n, r, s);
        const ComplexMatrix right = random_ginibre(r, m, s);
        return left * right * (scale / std::sqrt(std::max<double>(1.0, static_cast<double>(r))));
      }
      return random_ginibre(n, m, s) * scale;
    }
    case MatrixTag::Hermitian: {
      if (spec.variant == Variant::RankDeficient || spec.variant == Variant::Repeated) {
        const ComplexMatrix u = random_unitary(n, s);
        Eigen::VectorXcd lam(n);
        if (spec.variant == Variant::Repeated) {
          lam = repeated_values(n, [&] { return Complex(s.gaussian() * scale, 0.0); });
        } else {
          const Eigen::Index r = deficient_rank(n, s);
          for (Eigen::Index i = 0; i < n; ++i) {
            lam(i) = i < r ? Complex(s.gaussian() * scale, 0.0) : Complex(0.0, 0.0);
          }
        }
        return hermitian_part(spectral(u, lam, u));
      }
      return hermitian_part(random_ginibre(n, n, s)) * scale;
    }
    case MatrixTag::PositiveSemidefinite: {
      if (spec.variant == Variant::Repeated) {
        const ComplexMatrix u = random_unitary(n, s);
        const Eigen::VectorXcd lam =
            repeated_values(n, [&] { return Complex(std::abs(s.gaussian()) * scale, 0.0); });
        return hermitian_part(spectral(u, lam, u));
      }
      const Eigen::Index rows = spec.variant == Variant::RankDeficient ? deficient_rank(n, s) : n;
      const ComplexMatrix g = random_ginibre(rows, n, s);
      return hermitian_part(g.adjoint() * g) * (scale / static_cast<double>(n));
    }
    case MatrixTag::Normal: {
      const ComplexMatrix u = random_unitary(n, s);
      Eigen::VectorXcd lam(n);
      if (spec.variant == Variant::Repeated) {
        lam = repeated_values(n, [&] { return s.complex_gaussian() * scale; });
      } else {
        const Eigen::Index r = spec.variant == Variant::RankDeficient ? deficient_rank(n, s) : n;
        for (Eigen::Index i = 0; i < n; ++i) {
          lam(i) = i < r ? s.complex_gaussian() * scale : Complex(0.0, 0.0);
        }
      }
      return spectral(u, lam, u);
    }
    case MatrixTag::Expansive: {
      const ComplexMatrix u = random_unitary(n, s);
      const ComplexMatrix v = random_unitary(n, s);
      Eigen::VectorXcd sig(n);
      if (spec.variant == Variant::Repeated) {
        sig = repeated_values(n,
                              [&] { return Complex(1.0 + std::abs(s.gaussian()) * scale, 0.0); });
      } else {
        for (Eigen::Index i = 0; i < n; ++i) {
          sig(i) = Complex(1.0 + std::abs(s.gaussian()) * scale, 0.0);
        }
      }
      return spectral(u, sig, v);
    }
    case MatrixTag::Contraction: {
      const ComplexMatrix u = random_unitary(n, s);
      const ComplexMatrix v = random_unitary(n, s);
      Eigen::VectorXd raw(n);
      for (Eigen::Index i = 0; i < n; ++i) raw(i) = std::abs(s.gaussian());
      if (spec.variant == Variant::RankDeficient) {
        const Eigen::Index r = deficient_rank(n, s);
        for (Eigen::Index i = r; i < n; ++i) raw(i) = 0.0;
      }
      const double denom = raw.maxCoeff() + 1e-3;
      return spectral(u, (raw / denom).cast<Complex>(), v);
    }
    case MatrixTag::Unitary:
      return random_unitary(n, s);
  }
  return ComplexMatrix::Zero(n, m);
}

BlockPowerFixture block_power_fixture() {
  const double r2 = std::sqrt(2.0);
  ComplexMatrix a(2, 2);
  a << 2.0, 0.0, 0.0, 1.0;
  ComplexMatrix c(2, 2);
  c << 1.0, 0.0, 0.0, 2.0;
  ComplexMatrix b(2, 2);
  b << 0.0, r2, r2, 0.0;
  ComplexMatrix z = linalg::block_compose({{a, b}, {b, c}});
  return {a, b, c, z};
}

}  // namespace gen
}  // namespace normforge
