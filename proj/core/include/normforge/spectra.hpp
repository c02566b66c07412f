#pragma once

// Symmetric norms and majorization orders on singular-value spectra.
//
// "For all symmetric norms" reduces to the Ky Fan partial sums (Fan
// dominance), so every all-norms comparison in the library ends in
// weak_majorize or violation_margin below.

#include <cstddef>
#include <span>
#include <vector>

namespace normforge {

/// Non-increasing sequence of non-negative reals. Index past the end reads
/// as zero, so spectra of different lengths compare as zero-padded.
class Spectrum {
 public:
  Spectrum() = default;

  /// Sorts into non-increasing order. Throws DomainError on negative or
  /// non-finite entries.
  explicit Spectrum(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Zero-padded access.
  double operator[](std::size_t k) const {
    return k < values_.size() ? values_[k] : 0.0;
  }

  double largest() const { return (*this)[0]; }
  double sum() const;

  /// Concatenation as multisets; the spectrum of a direct sum.
  static Spectrum direct_sum(const Spectrum& a, const Spectrum& b);

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> values_;
};

/// A comparison lhs <= rhs holds iff lhs <= rhs + rel*(1+|rhs|) + abs_floor.
struct TolerancePolicy {
  double rel = 1e-9;
  double abs_floor = 1e-12;

  bool holds(double lhs, double rhs) const;
};

/// Margins above this are candidate violations; between the tolerance band
/// and this value a comparison is inconclusive.
inline constexpr double kAntiNoiseThreshold = 1e-6;

/// Values below this are exact zeros in log-space products.
inline constexpr double kLogZero = 1e-300;

/// Sum of the k largest values (k past the end pads with zeros).
double ky_fan(const Spectrum& s, std::size_t k);

/// Schatten p-norm; p = +infinity gives the largest value. p < 1 throws
/// DomainError.
double schatten(const Spectrum& s, double p);

bool weak_majorize(const Spectrum& a, const Spectrum& b,
                   const TolerancePolicy& tol = {});

bool weak_log_majorize(const Spectrum& a, const Spectrum& b,
                       const TolerancePolicy& tol = {});

/// Weak majorization plus equal totals.
bool majorize(const Spectrum& a, const Spectrum& b,
              const TolerancePolicy& tol = {});

/// max_k (ky_fan(lhs,k) - ky_fan(rhs,k)) / (1 + ky_fan(rhs,k)). Positive
/// means some symmetric norm of lhs exceeds the same norm of rhs.
double violation_margin(const Spectrum& lhs, const Spectrum& rhs);

/// Log-majorization analogue of violation_margin, on leading geometric
/// means: max_k (G_k(lhs) - G_k(rhs)) / (1 + G_k(rhs)).
double log_violation_margin(const Spectrum& lhs, const Spectrum& rhs);

}  // namespace normforge
