#pragma once

// A concrete input to one inequality: its matrices (each tagged with the
// class it must belong to), an optional scalar function, optional
// exponents, and the lineage needed to regenerate it.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normforge/funcs.hpp"
#include "normforge/gen.hpp"
#include "normforge/linalg.hpp"

namespace normforge {

/// Matrix layout of an instance. The comment gives `matrices` in order.
enum class Signature {
  PsdCongruence,        // A (PSD), Z (expansive)
  NormalCongruence,     // A (normal), Z (expansive)
  PsdPair,              // A, B (PSD)
  PsdCongruenceSum,     // A_1, Z_1, ..., A_m, Z_m; A_i PSD, Z_i expansive
  NormalCongruenceSum,  // A_1, Z_1, ..., A_m, Z_m; A_i normal, Z_i expansive
  HermitianParts,       // H, K (Hermitian); the matrix under test is H + iK
  NormalPair,           // A, B (normal)
  PsdPairExponents,     // A, B (PSD) with exponents
  BlockGeneral,         // general blocks in row-major order, arbitrary sizes
  BlockNormalEntries,   // g*g normal blocks in row-major order, equal sizes
  BlockHermitian,       // full Hermitian matrix, g x g equal square blocks
  BlockNormalFull,      // full normal matrix, g x g equal square blocks
  TriangularNormal,     // A (general), N (normal), B (general): [[A, N], [0, B]]
  IdentityOffDiagonal,  // A, B (general): [[A, I], [I, B]]
  EntrywiseSchatten,    // A (general) with one Schatten index
  ShrunkPsdPairs,       // X, Y (PSD), C, D (contractions)
  PsdBlock,             // full PSD matrix, 2-4 diagonal blocks of mixed sizes
};

std::string_view to_string(Signature s);
Signature parse_signature(std::string_view name);

/// Which scalar functions a statement accepts.
enum class FunctionGate {
  None,            // statement takes no function
  Concave,         // non-negative and concave
  ConcaveEConvex,  // non-negative, concave and e-convex
  PowerUpToOne,    // t^p with 0 < p <= 1
  SqrtConcave,     // f(sqrt t) concave and f(0) >= 0
  FixedSquare,     // exactly t^2
};

std::string_view to_string(FunctionGate g);
bool gate_accepts(FunctionGate gate, const ScalarFunction& f);

/// How exponents are drawn and which values are legal.
enum class ExponentRule {
  None,
  AtLeastOne,      // p in [1, 4]
  Pair,            // p, q log-uniform in [0.1, 4]
  FactorPairs,     // m in {2, 3} pairs (p_i, q_i), log-uniform in [0.1, 4]
  SchattenIndex,   // p in [1, 50]
};

struct ExponentRange {
  double lo;
  double hi;
};
ExponentRange exponent_range(ExponentRule rule);

/// Where instances come from.
enum class Source { Random, BlockPowerFixture };

struct SamplingRule {
  Signature signature = Signature::PsdPair;
  FunctionGate gate = FunctionGate::None;
  ExponentRule exponents = ExponentRule::None;
  Source source = Source::Random;
  std::size_t grid = 0;  // fixed g x g block grid; 0 lets the sampler choose 2 or 3
};

struct Instance {
  std::string statement;
  Signature signature = Signature::PsdPair;
  std::vector<ComplexMatrix> matrices;
  std::vector<MatrixTag> classes;  // one per matrix
  std::vector<GenSpec> specs;      // one per matrix when freshly sampled, else empty
  BlockPartition partition;        // block signatures only
  std::optional<ScalarFunction> function;
  std::vector<double> exponents;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  Eigen::Index dim = 0;
  bool perturbed = false;
};

/// Probability that a sampled matrix uses a degenerate variant, and the
/// share of expansive samples that are exactly the identity.
inline constexpr double kDegenerateRate = 0.05;
inline constexpr double kExpansiveIdentityRate = 0.01;

/// Draws an instance for `rule` at size `dim` from the stream keyed by
/// `key`. Functions come from `pool` filtered by the rule's gate (the
/// standard registry when `pool` is empty); PowerUpToOne draws p directly.
Instance sample_with_rule(const SamplingRule& rule, Eigen::Index dim, std::uint64_t key,
                          const std::vector<ScalarFunction>& pool = {});

/// Rebuilds an instance's matrices from its GenSpecs; used to confirm that
/// a serialized witness is regenerable.
std::vector<ComplexMatrix> regenerate(const Instance& instance);

}  // namespace normforge
