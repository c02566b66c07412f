#pragma once

// Scalar functions on [0, inf) together with the hypothesis flags the
// inequalities are gated on. Declared flags are authoritative for which
// statements a function may be used with; measure_flags checks them
// numerically.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace normforge {

enum class Family {
  Power,     // t^p, p > 0
  Log1p,     // log(1 + t)
  Clamp,     // min(t, c), c > 0
  Affine,    // a + b t, a, b >= 0
  Identity,  // t
  Sqrt,      // t^{1/2}
  Hump,      // t (2c - t), c > 0: concave, sign-changing, non-monotone
};

struct FunctionFlags {
  bool nonneg = false;
  bool concave = false;
  bool e_convex = false;      // s -> f(e^s) convex
  bool sqrt_concave = false;  // t -> f(sqrt t) concave
  bool f0_nonneg = false;
  bool convex = false;

  friend bool operator==(const FunctionFlags&, const FunctionFlags&) = default;
};

class ScalarFunction {
 public:
  static ScalarFunction power(double p);
  static ScalarFunction log1p();
  static ScalarFunction clamp(double c);
  static ScalarFunction affine(double a, double b);
  static ScalarFunction identity();
  static ScalarFunction sqrt();
  static ScalarFunction hump(double c);

  /// Builds a member of `family` from raw parameters, validating ranges.
  static ScalarFunction make(Family family, std::vector<double> params);

  /// Parses "name" or "name(x[,y])"; names are power, log1p, clamp, affine,
  /// identity, sqrt, hump. Throws LookupError on anything else.
  static ScalarFunction parse(std::string_view text);

  /// Throws DomainError for x < 0 or NaN.
  double operator()(double x) const;

  /// Canonical "id(params)" string; parse(id()) reproduces this function
  /// bit-exactly.
  std::string id() const;

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  const FunctionFlags& flags() const { return flags_; }

  /// Exponent for the power-type families (Power, Sqrt, Identity), else 0.
  double exponent() const;

  friend bool operator==(const ScalarFunction& a, const ScalarFunction& b) {
    return a.family_ == b.family_ && a.params_ == b.params_;
  }

 private:
  ScalarFunction(Family family, std::vector<double> params);

  Family family_;
  std::vector<double> params_;
  FunctionFlags flags_;
};

struct FlagReport {
  FunctionFlags declared;
  FunctionFlags measured;
  bool matches() const { return declared == measured; }
  std::vector<std::string> mismatches() const;
};

/// Midpoint tests: concavity on a log-spaced grid over [1e-6, 1e6],
/// e-convexity on a linear grid over [-14, 14] in log-space, and
/// sqrt-concavity on the squared grid. `tol` is relative to the local
/// magnitude of f.
FlagReport measure_flags(const ScalarFunction& f, std::size_t grid_size = 1024,
                         double tol = 1e-9);

/// measure_flags, throwing RegistryIntegrityError on any mismatch.
FlagReport verify_flags(const ScalarFunction& f, std::size_t grid_size = 1024,
                        double tol = 1e-9);

class FunctionRegistry {
 public:
  explicit FunctionRegistry(std::vector<ScalarFunction> entries);

  /// The built-in set used by sampling and the CLI.
  static const FunctionRegistry& standard();

  const std::vector<ScalarFunction>& entries() const { return entries_; }

  /// Entries that are non-negative and concave on [0, inf).
  std::vector<ScalarFunction> concave() const;

 private:
  std::vector<ScalarFunction> entries_;
};

}  // namespace normforge
