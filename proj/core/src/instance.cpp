#include "normforge/instance.hpp"

#include <array>
#include <string>

#include "normforge/errors.hpp"

namespace normforge {

namespace {

constexpr std::array<std::pair<Signature, std::string_view>, 17> kSignatureNames{{
    {Signature::PsdCongruence, "psd_congruence"},
    {Signature::NormalCongruence, "normal_congruence"},
    {Signature::PsdPair, "psd_pair"},
    {Signature::PsdCongruenceSum, "psd_congruence_sum"},
    {Signature::NormalCongruenceSum, "normal_congruence_sum"},
    {Signature::HermitianParts, "hermitian_parts"},
    {Signature::NormalPair, "normal_pair"},
    {Signature::PsdPairExponents, "psd_pair_exponents"},
    {Signature::BlockGeneral, "block_general"},
    {Signature::BlockNormalEntries, "block_normal_entries"},
    {Signature::BlockHermitian, "block_hermitian"},
    {Signature::BlockNormalFull, "block_normal_full"},
    {Signature::TriangularNormal, "triangular_normal"},
    {Signature::IdentityOffDiagonal, "identity_off_diagonal"},
    {Signature::EntrywiseSchatten, "entrywise_schatten"},
    {Signature::ShrunkPsdPairs, "shrunk_psd_pairs"},
    {Signature::PsdBlock, "psd_block"},
}};

constexpr std::array<double, 6> kSchattenIndices{1.0, 1.5, 2.0, 3.0, 7.0, 50.0};

Variant choose_variant(MatrixTag cls, Stream& s) {
  const double u = s.uniform();
  const std::size_t pick = s.index(3);
  if (cls == MatrixTag::Expansive) {
    if (u < kExpansiveIdentityRate) return Variant::Identity;
    return u < kDegenerateRate ? Variant::Repeated : Variant::Standard;
  }
  if (u >= kDegenerateRate) return Variant::Standard;
  switch (cls) {
    case MatrixTag::General:
      return pick == 0 ? Variant::Zero : Variant::RankDeficient;
    case MatrixTag::Hermitian:
    case MatrixTag::PositiveSemidefinite:
    case MatrixTag::Normal: {
      constexpr std::array<Variant, 3> v{Variant::RankDeficient, Variant::Repeated, Variant::Zero};
      return v[pick];
    }
    case MatrixTag::Contraction: {
      constexpr std::array<Variant, 3> v{Variant::RankDeficient, Variant::Identity, Variant::Zero};
      return v[pick];
    }
    case MatrixTag::Unitary:
      return Variant::Identity;
    case MatrixTag::Expansive:
      break;
  }
  return Variant::Standard;
}

}  // namespace

std::string_view to_string(Signature s) {
  for (const auto& [k, name] : kSignatureNames) {
    if (k == s) return name;
  }
  return "psd_pair";
}

Signature parse_signature(std::string_view name) {
  for (const auto& [k, n] : kSignatureNames) {
    if (n == name) return k;
  }
  throw LookupError("unknown signature '" + std::string(name) + "'");
}

std::string_view to_string(FunctionGate g) {
  switch (g) {
    case FunctionGate::None: return "none";
    case FunctionGate::Concave: return "concave";
    case FunctionGate::ConcaveEConvex: return "concave+e_convex";
    case FunctionGate::PowerUpToOne: return "power(p<=1)";
    case FunctionGate::SqrtConcave: return "sqrt_concave+f0_nonneg";
    case FunctionGate::FixedSquare: return "power(2)";
  }
  return "none";
}

bool gate_accepts(FunctionGate gate, const ScalarFunction& f) {
  const FunctionFlags& fl = f.flags();
  const bool power_type = f.family() == Family::Power || f.family() == Family::Sqrt ||
                          f.family() == Family::Identity;
  switch (gate) {
    case FunctionGate::None:
      return false;
    case FunctionGate::Concave:
      return fl.nonneg && fl.concave;
    case FunctionGate::ConcaveEConvex:
      return fl.nonneg && fl.concave && fl.e_convex;
    case FunctionGate::PowerUpToOne:
      return power_type && f.exponent() <= 1.0;
    case FunctionGate::SqrtConcave:
      return fl.sqrt_concave && fl.f0_nonneg;
    case FunctionGate::FixedSquare:
      return power_type && f.exponent() == 2.0;
  }
  return false;
}

ExponentRange exponent_range(ExponentRule rule) {
  switch (rule) {
    case ExponentRule::None: return {0.0, 0.0};
    case ExponentRule::AtLeastOne: return {1.0, 4.0};
    case ExponentRule::Pair: return {0.1, 4.0};
    case ExponentRule::FactorPairs: return {0.1, 4.0};
    case ExponentRule::SchattenIndex: return {1.0, 50.0};
  }
  return {0.0, 0.0};
}

Instance sample_with_rule(const SamplingRule& rule, Eigen::Index dim, std::uint64_t key,
                          const std::vector<ScalarFunction>& pool) {
  if (dim < 1) throw DimensionError("sample: dimension must be positive");
  Instance inst;
  inst.signature = rule.signature;
  inst.dim = dim;

  if (rule.source == Source::BlockPowerFixture) {
    const auto fx = gen::block_power_fixture();
    inst.matrices = {fx.z};
    inst.classes = {MatrixTag::Hermitian};
    inst.partition = BlockPartition::uniform(2, 2);
    inst.function = ScalarFunction::power(2.0);
    inst.dim = 2;
    return inst;
  }

  Stream s(derive_key(key, 0));
  std::uint64_t next_index = 0;
  auto draw = [&](MatrixTag cls, Eigen::Index rows, Eigen::Index cols = 0) {
    GenSpec spec;
    spec.dim = rows;
    spec.cols = (cols == rows) ? 0 : cols;
    spec.cls = cls;
    spec.scale = s.log_uniform(1e-3, 1e3);
    spec.variant = choose_variant(cls, s);
    spec.seed = derive_key(key, 1, next_index++);
    inst.matrices.push_back(gen::random_in_class(spec));
    inst.classes.push_back(cls);
    inst.specs.push_back(spec);
  };
  auto size_in = [&](Eigen::Index hi) {
    return static_cast<Eigen::Index>(1 + s.index(static_cast<std::size_t>(hi)));
  };

  const Eigen::Index n = dim;
  switch (rule.signature) {
    case Signature::PsdCongruence:
      draw(MatrixTag::PositiveSemidefinite, n);
      draw(MatrixTag::Expansive, n);
      break;
    case Signature::NormalCongruence:
      draw(MatrixTag::Normal, n);
      draw(MatrixTag::Expansive, n);
      break;
    case Signature::PsdPair:
    case Signature::PsdPairExponents:
      draw(MatrixTag::PositiveSemidefinite, n);
      draw(MatrixTag::PositiveSemidefinite, n);
      break;
    case Signature::PsdCongruenceSum:
    case Signature::NormalCongruenceSum: {
      const auto cls = rule.signature == Signature::PsdCongruenceSum
                           ? MatrixTag::PositiveSemidefinite
                           : MatrixTag::Normal;
      const std::size_t terms = 1 + s.index(3);
      for (std::size_t i = 0; i < terms; ++i) {
        draw(cls, n);
        draw(MatrixTag::Expansive, n);
      }
      break;
    }
    case Signature::HermitianParts:
      draw(MatrixTag::Hermitian, n);
      draw(MatrixTag::Hermitian, n);
      break;
    case Signature::NormalPair:
      draw(MatrixTag::Normal, n);
      draw(MatrixTag::Normal, n);
      break;
    case Signature::BlockGeneral: {
      const std::size_t grid_rows = 1 + s.index(3);
      const bool symmetric = s.bernoulli(0.5);
      const std::size_t grid_cols = symmetric ? grid_rows : 1 + s.index(3);
      for (std::size_t i = 0; i < grid_rows; ++i) inst.partition.rows.push_back(size_in(n));
      if (symmetric) {
        inst.partition.cols = inst.partition.rows;
      } else {
        for (std::size_t j = 0; j < grid_cols; ++j) inst.partition.cols.push_back(size_in(n));
      }
      for (auto r : inst.partition.rows) {
        for (auto c : inst.partition.cols) draw(MatrixTag::General, r, c);
      }
      break;
    }
    case Signature::BlockNormalEntries: {
      const std::size_t g = rule.grid != 0 ? rule.grid : 2 + s.index(2);
      inst.partition = BlockPartition::uniform(g, n);
      for (std::size_t i = 0; i < g * g; ++i) draw(MatrixTag::Normal, n);
      break;
    }
    case Signature::BlockHermitian:
    case Signature::BlockNormalFull: {
      const std::size_t g = rule.grid != 0 ? rule.grid : 2 + s.index(2);
      inst.partition = BlockPartition::uniform(g, n);
      draw(rule.signature == Signature::BlockHermitian ? MatrixTag::Hermitian : MatrixTag::Normal,
           static_cast<Eigen::Index>(g) * n);
      break;
    }
    case Signature::TriangularNormal:
      draw(MatrixTag::General, n);
      draw(MatrixTag::Normal, n);
      draw(MatrixTag::General, n);
      break;
    case Signature::IdentityOffDiagonal:
      draw(MatrixTag::General, n);
      draw(MatrixTag::General, n);
      break;
    case Signature::EntrywiseSchatten:
      draw(MatrixTag::General, n);
      break;
    case Signature::ShrunkPsdPairs:
      draw(MatrixTag::PositiveSemidefinite, n);
      draw(MatrixTag::PositiveSemidefinite, n);
      draw(MatrixTag::Contraction, n);
      draw(MatrixTag::Contraction, n);
      break;
    case Signature::PsdBlock: {
      const std::size_t blocks = 2 + s.index(3);
      for (std::size_t i = 0; i < blocks; ++i) inst.partition.rows.push_back(size_in(n));
      inst.partition.cols = inst.partition.rows;
      draw(MatrixTag::PositiveSemidefinite, inst.partition.total_rows());
      break;
    }
  }

  switch (rule.gate) {
    case FunctionGate::None:
      break;
    case FunctionGate::PowerUpToOne:
      inst.function = ScalarFunction::power(s.uniform(0.05, 1.0));
      break;
    case FunctionGate::FixedSquare:
      inst.function = ScalarFunction::power(2.0);
      break;
    default: {
      const auto& source = pool.empty() ? FunctionRegistry::standard().entries() : pool;
      std::vector<ScalarFunction> candidates;
      for (const auto& f : source) {
        if (gate_accepts(rule.gate, f)) candidates.push_back(f);
      }
      if (candidates.empty()) {
        throw LookupError("no function in the pool satisfies gate " +
                          std::string(to_string(rule.gate)));
      }
      inst.function = candidates[s.index(candidates.size())];
      break;
    }
  }

  const ExponentRange range = exponent_range(rule.exponents);
  switch (rule.exponents) {
    case ExponentRule::None:
      break;
    case ExponentRule::AtLeastOne:
      inst.exponents = {s.uniform(range.lo, range.hi)};
      break;
    case ExponentRule::Pair:
      inst.exponents = {s.log_uniform(range.lo, range.hi), s.log_uniform(range.lo, range.hi)};
      break;
    case ExponentRule::FactorPairs: {
      const std::size_t factors = 2 + s.index(2);
      for (std::size_t i = 0; i < 2 * factors; ++i) {
        inst.exponents.push_back(s.log_uniform(range.lo, range.hi));
      }
      break;
    }
    case ExponentRule::SchattenIndex:
      if (s.bernoulli(0.3)) {
        inst.exponents = {kSchattenIndices[s.index(kSchattenIndices.size())]};
      } else {
        inst.exponents = {s.log_uniform(range.lo, range.hi)};
      }
      break;
  }
  return inst;
}

std::vector<ComplexMatrix> regenerate(const Instance& instance) {
  if (instance.specs.empty() || instance.specs.size() != instance.classes.size()) {
    throw LookupError("instance carries no complete generation lineage");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(instance.specs.size());
  for (const auto& spec : instance.specs) out.push_back(gen::random_in_class(spec));
  return out;
}

}  // namespace normforge
