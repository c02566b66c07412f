#pragma once

// The executable registry of inequalities. Each statement reduces to a
// comparison of two value lists (spectra or trace terms) in one of a few
// modes; the verdict logic and the independent recheck live here too.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normforge/instance.hpp"
#include "normforge/spectra.hpp"

namespace normforge {

enum class Status { Proven, Conjecture, Question, CounterexampleDemo };

enum class Mode {
  AllNorms,      // weak majorization of spectra (Fan dominance)
  OpNorm,        // largest values only
  Trace,         // sums of trace terms
  WeakLog,       // weak log-majorization
  Majorization,  // weak majorization plus equal traces
  Scalar,        // one norm value against another
};

enum class Verdict { Holds, Violated, Inconclusive };

std::string_view to_string(Status s);
std::string_view to_string(Mode m);
std::string_view to_string(Verdict v);
Status parse_status(std::string_view name);
Mode parse_mode(std::string_view name);
Verdict parse_verdict(std::string_view name);

/// Left and right sides of a comparison. For spectral modes both are
/// spectra (non-negative, non-increasing); for Trace they are the terms
/// whose sums are compared and may be negative.
struct Sides {
  std::vector<double> lhs;
  std::vector<double> rhs;
};

using Evaluator = Sides (*)(const Instance&, linalg::Path);

struct Statement {
  std::string_view id;
  Status status;
  Mode mode;
  SamplingRule rule;
  std::string_view hypotheses;  // human-readable hypothesis signature
  std::string_view formula;     // the inequality, lhs <= rhs
  Evaluator evaluate;
};

struct CheckOptions {
  TolerancePolicy tol{};
  double threshold = kAntiNoiseThreshold;
  double class_tolerance = 1e-8;
};

struct CheckResult {
  std::string statement;
  Mode mode = Mode::AllNorms;
  Verdict verdict = Verdict::Holds;
  double margin = 0.0;
  std::optional<double> recheck_margin;
  std::vector<double> lhs;
  std::vector<double> rhs;
  Instance instance;
};

namespace catalog {

const std::vector<Statement>& registry();

/// Throws LookupError for an unknown id.
const Statement& find(std::string_view id);

/// Random instance for `id` at size `dim`, keyed by (seed, id, trial).
/// The BlockPowerFixture source ignores dim and seed.
Instance sample_instance(std::string_view id, Eigen::Index dim, std::uint64_t seed,
                         std::uint64_t trial, const std::vector<ScalarFunction>& pool = {});

/// Throws PreconditionError naming the first failed hypothesis.
void validate(const Statement& st, const Instance& inst, double class_tolerance = 1e-8);

double margin(Mode mode, const Sides& sides);
bool holds(Mode mode, const Sides& sides, const TolerancePolicy& tol);

/// Margin along the primary path without validation; the hunter's objective.
double objective(const Statement& st, const Instance& inst);

/// Validates, evaluates on the primary path and decides:
///   holds         the comparison holds under `tol`;
///   violated      margin > threshold and the alternate path, after scaling
///                 both sides to unit size, also exceeds threshold;
///   inconclusive  otherwise, unless the alternate path holds under `tol`.
CheckResult check(const Statement& st, const Instance& inst, const CheckOptions& opts = {});
CheckResult check(std::string_view id, const Instance& inst, const CheckOptions& opts = {});

/// Mode-specific entry points; each throws PreconditionError when the
/// statement is of another mode.
CheckResult check_all_norms(std::string_view id, const Instance& inst,
                            const CheckOptions& opts = {});
CheckResult check_op_norm(std::string_view id, const Instance& inst,
                          const CheckOptions& opts = {});
CheckResult check_trace(std::string_view id, const Instance& inst,
                        const CheckOptions& opts = {});
CheckResult check_wlog(std::string_view id, const Instance& inst,
                       const CheckOptions& opts = {});
/// lemma_1, lemma_2, lemma_3.
CheckResult check_structural(std::string_view id, const Instance& inst,
                             const CheckOptions& opts = {});

/// The squared-block counterexample: reports `violated`.
CheckResult demo_block_power_counterexample(const CheckOptions& opts = {});

/// Spectrum of [[0,M],[M*,0]] against the singular values of M, each
/// repeated twice.
struct DilationCheck {
  Spectrum dilation;
  Spectrum duplicated;
  double max_error = 0.0;
  bool holds = false;
};
DilationCheck check_dilation_identity(const ComplexMatrix& m, double rel_tol = 1e-10);

}  // namespace catalog
}  // namespace normforge
