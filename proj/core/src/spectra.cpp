#include "normforge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "normforge/errors.hpp"

namespace normforge {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("spectrum entries must be finite and non-negative");
    }
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

double Spectrum::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

Spectrum Spectrum::direct_sum(const Spectrum& a, const Spectrum& b) {
  std::vector<double> merged(a.values_);
  merged.insert(merged.end(), b.values_.begin(), b.values_.end());
  return Spectrum(std::move(merged));
}

bool TolerancePolicy::holds(double lhs, double rhs) const {
  return lhs <= rhs + rel * (1.0 + std::abs(rhs)) + abs_floor;
}

double ky_fan(const Spectrum& s, std::size_t k) {
  const auto v = s.values();
  const std::size_t n = std::min(k, v.size());
  return std::accumulate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
}

double schatten(const Spectrum& s, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw DomainError("Schatten index must satisfy p >= 1");
  }
  const double top = s.largest();
  if (std::isinf(p) || top == 0.0) {
    return top;
  }
  double acc = 0.0;
  for (double v : s.values()) {
    acc += std::pow(v / top, p);
  }
  return top * std::pow(acc, 1.0 / p);
}

namespace {

std::size_t comparison_length(const Spectrum& a, const Spectrum& b) {
  return std::max<std::size_t>({a.size(), b.size(), 1});
}

}  // namespace

bool weak_majorize(const Spectrum& a, const Spectrum& b,
                   const TolerancePolicy& tol) {
  double sa = 0.0;
  double sb = 0.0;
  const std::size_t n = comparison_length(a, b);
  for (std::size_t k = 0; k < n; ++k) {
    sa += a[k];
    sb += b[k];
    if (!tol.holds(sa, sb)) {
      return false;
    }
  }
  return true;
}

bool weak_log_majorize(const Spectrum& a, const Spectrum& b,
                       const TolerancePolicy& tol) {
  const double log_slack = std::log(tol.rel + tol.abs_floor);
  const double log_rel = std::log1p(tol.rel);
  double la = 0.0;
  double lb = 0.0;
  const std::size_t n = comparison_length(a, b);
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] < kLogZero) {
      // Every further leading product of a vanishes.
      return true;
    }
    if (b[k] < kLogZero) {
      return false;
    }
    la += std::log(a[k]);
    lb += std::log(b[k]);
    // log(prod_b * (1 + rel) + rel + abs) without leaving log-space.
    const double x = lb + log_rel;
    const double hi = std::max(x, log_slack);
    const double allowed = hi + std::log1p(std::exp(std::min(x, log_slack) - hi));
    if (la > allowed) {
      return false;
    }
  }
  return true;
}

bool majorize(const Spectrum& a, const Spectrum& b, const TolerancePolicy& tol) {
  const double ta = a.sum();
  const double tb = b.sum();
  return weak_majorize(a, b, tol) &&
         std::abs(ta - tb) <= tol.rel * (1.0 + std::abs(tb));
}

double violation_margin(const Spectrum& lhs, const Spectrum& rhs) {
  double sl = 0.0;
  double sr = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  const std::size_t n = comparison_length(lhs, rhs);
  for (std::size_t k = 0; k < n; ++k) {
    sl += lhs[k];
    sr += rhs[k];
    worst = std::max(worst, (sl - sr) / (1.0 + sr));
  }
  return worst;
}

double log_violation_margin(const Spectrum& lhs, const Spectrum& rhs) {
  double ll = 0.0;
  double lr = 0.0;
  bool lhs_zero = false;
  bool rhs_zero = false;
  double worst = -std::numeric_limits<double>::infinity();
  const std::size_t n = comparison_length(lhs, rhs);
  for (std::size_t k = 0; k < n; ++k) {
    lhs_zero = lhs_zero || lhs[k] < kLogZero;
    rhs_zero = rhs_zero || rhs[k] < kLogZero;
    if (!lhs_zero) ll += std::log(lhs[k]);
    if (!rhs_zero) lr += std::log(rhs[k]);
    const double kk = static_cast<double>(k + 1);
    const double gl = lhs_zero ? 0.0 : std::exp(ll / kk);
    const double gr = rhs_zero ? 0.0 : std::exp(lr / kk);
    worst = std::max(worst, (gl - gr) / (1.0 + gr));
  }
  return worst;
}

}  // namespace normforge
