#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace normforge {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Order-sensitive combination of a key with further coordinates; used to
/// derive independent streams from (master seed, trial, stream index, ...).
std::uint64_t derive_key(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0);

/// 64-bit FNV-1a; stable across platforms.
std::uint64_t hash_name(std::string_view s);

/// Counter-based generator: the i-th output is mix64(key + i * golden).
/// Outputs depend only on (key, i), so streams are splittable and the
/// sequence is identical on every platform. Gaussians use Box-Muller.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }
  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  bool bernoulli(double p);
  double gaussian();
  /// Standard complex Gaussian, E|z|^2 = 1.
  std::complex<double> complex_gaussian();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace normforge
