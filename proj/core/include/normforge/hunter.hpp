#pragma once

// Seeded random-restart hill climbing on violation margins.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "normforge/catalog.hpp"

namespace normforge {

struct HuntConfig {
  std::string statement;
  Eigen::Index dim_lo = 2;
  Eigen::Index dim_hi = 4;
  std::size_t restarts = 1;
  std::size_t steps = 0;
  double step_size = 0.1;
  double step_decay = 0.5;
  std::uint64_t seed = 0;
  std::vector<ScalarFunction> pool;  // empty: the standard registry
  double report_threshold = kAntiNoiseThreshold;
  bool self_test = false;  // allow proven statements
  std::size_t workers = 1;
  TolerancePolicy tol{};
};

/// Consecutive rejected steps after which the step size decays.
inline constexpr std::size_t kRejectionStreak = 20;

/// Upper edges of the margin histogram bins; the last bin is open.
inline constexpr std::array<double, 7> kHistogramEdges{-1.0, -1e-1, -1e-3, -1e-6,
                                                       1e-6, 1e-3,  1e-1};

struct RestartResult {
  std::size_t restart = 0;
  Eigen::Index dim = 0;
  double initial_margin = -std::numeric_limits<double>::infinity();
  double best_margin = -std::numeric_limits<double>::infinity();
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<double> trajectory;        // best margin after each step
  std::optional<Verdict> verdict;        // set when best_margin > report_threshold
  std::optional<double> recheck_margin;  // alternate-path margin of that check
  Instance best;
};

struct HuntReport {
  HuntConfig config;
  Status status = Status::Conjecture;
  Mode mode = Mode::AllNorms;
  double best_margin = -std::numeric_limits<double>::infinity();
  std::size_t best_restart = 0;
  std::optional<CheckResult> witness;  // best instance checked through the catalog
  std::vector<RestartResult> restarts;
  std::array<std::size_t, kHistogramEdges.size() + 1> histogram{};
  std::size_t trials = 0;
  std::size_t violations = 0;  // restarts confirmed violated by the recheck
  double wall_clock_seconds = 0.0;
};

/// Class-preserving random move of size `step`, keyed by `seed`. Matrices
/// move through a parameterization of their class; the function and the
/// exponents move within their legal ranges. step = 0 returns a copy.
/// Throws ClassError when the result fails to classify.
Instance perturb_in_class(const Instance& instance, double step, std::uint64_t seed);

/// Throws PreconditionError for a proven statement without self_test, and
/// for restarts < 1 or an empty dimension range.
HuntReport hunt(const HuntConfig& config);

}  // namespace normforge
