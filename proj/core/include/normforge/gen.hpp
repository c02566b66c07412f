#pragma once

// Seeded matrix generators. Every output is a pure function of its
// arguments: the same GenSpec yields the same matrix bit for bit.

#include <cstdint>
#include <string_view>

#include "normforge/linalg.hpp"
#include "normforge/rng.hpp"

namespace normforge {

/// Degenerate shapes mixed into sampling on purpose.
enum class Variant {
  Standard,
  RankDeficient,
  Repeated,  // repeated eigen/singular values
  Identity,
  Zero,
};

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

struct GenSpec {
  Eigen::Index dim = 1;   // rows
  Eigen::Index cols = 0;  // 0 means square; only General may be rectangular
  MatrixTag cls = MatrixTag::General;
  double scale = 1.0;
  std::uint64_t seed = 0;
  Variant variant = Variant::Standard;

  Eigen::Index columns() const { return cols > 0 ? cols : dim; }
  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

namespace gen {

/// iid standard complex Gaussian entries (E|z|^2 = 1).
ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Stream& stream);
ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Haar unitary: QR of a Ginibre sample, columns rephased so that the
/// triangular factor has a positive diagonal.
ComplexMatrix random_unitary(Eigen::Index n, Stream& stream);
ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed);

/// Matrix of class spec.cls:
///   General      G * scale
///   Hermitian    (G + G*) / 2 * scale
///   PSD          G* G / dim * scale
///   Normal       U diag(z_i * scale) U*
///   Expansive    U diag(1 + |d_i|) V*, d_i ~ N(0,1) * scale
///   Contraction  U diag(s_i / (max s + eps)) V*
///   Unitary      Haar
/// with the variant applied on top (rank deficiency, repeated values,
/// identity, zero) where it makes sense for the class.
ComplexMatrix random_in_class(const GenSpec& spec);

struct BlockPowerFixture {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  ComplexMatrix z;  // [[a, b], [b, c]]
};

/// The 4x4 Hermitian block matrix whose squared operator norm is 6 + 4 sqrt(2)
/// while ||a^2 + 2 b^2 + c^2|| is 9.
BlockPowerFixture block_power_fixture();

}  // namespace gen
}  // namespace normforge
