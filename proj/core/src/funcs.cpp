#include "normforge/funcs.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>

#include "normforge/errors.hpp"

namespace normforge {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FamilyInfo, 7> kFamilies{{
    {Family::Power, "power", 1},
    {Family::Log1p, "log1p", 0},
    {Family::Clamp, "clamp", 1},
    {Family::Affine, "affine", 2},
    {Family::Identity, "identity", 0},
    {Family::Sqrt, "sqrt", 0},
    {Family::Hump, "hump", 1},
}};

const FamilyInfo& info(Family family) {
  for (const auto& fi : kFamilies) {
    if (fi.family == family) return fi;
  }
  return kFamilies.front();
}

FunctionFlags power_flags(double p) {
  return FunctionFlags{.nonneg = true,
                       .concave = p <= 1.0,
                       .e_convex = true,
                       .sqrt_concave = p <= 2.0,
                       .f0_nonneg = true,
                       .convex = p >= 1.0};
}

FunctionFlags declared_flags(Family family, const std::vector<double>& params) {
  switch (family) {
    case Family::Power:
      return power_flags(params[0]);
    case Family::Identity:
      return power_flags(1.0);
    case Family::Sqrt:
      return power_flags(0.5);
    case Family::Log1p:
      return {.nonneg = true, .concave = true, .e_convex = true,
              .sqrt_concave = true, .f0_nonneg = true, .convex = false};
    case Family::Clamp:
      return {.nonneg = true, .concave = true, .e_convex = false,
              .sqrt_concave = true, .f0_nonneg = true, .convex = false};
    case Family::Affine:
      return {.nonneg = true, .concave = true, .e_convex = true,
              .sqrt_concave = true, .f0_nonneg = true, .convex = true};
    case Family::Hump:
      return {.nonneg = false, .concave = true, .e_convex = false,
              .sqrt_concave = true, .f0_nonneg = true, .convex = false};
  }
  return {};
}

void validate(Family family, const std::vector<double>& params) {
  const FamilyInfo& fi = info(family);
  if (params.size() != fi.arity) {
    throw DomainError(std::string(fi.name) + " takes " + std::to_string(fi.arity) +
                      " parameter(s)");
  }
  for (double v : params) {
    if (!std::isfinite(v)) throw DomainError("function parameters must be finite");
  }
  switch (family) {
    case Family::Power:
      if (params[0] <= 0.0) throw DomainError("power(p) requires p > 0");
      break;
    case Family::Clamp:
      if (params[0] <= 0.0) throw DomainError("clamp(c) requires c > 0");
      break;
    case Family::Hump:
      if (params[0] <= 0.0) throw DomainError("hump(c) requires c > 0");
      break;
    case Family::Affine:
      if (params[0] < 0.0 || params[1] < 0.0) {
        throw DomainError("affine(a,b) requires a, b >= 0");
      }
      break;
    default:
      break;
  }
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

}  // namespace

ScalarFunction::ScalarFunction(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  validate(family_, params_);
  flags_ = declared_flags(family_, params_);
}

ScalarFunction ScalarFunction::power(double p) { return {Family::Power, {p}}; }
ScalarFunction ScalarFunction::log1p() { return {Family::Log1p, {}}; }
ScalarFunction ScalarFunction::clamp(double c) { return {Family::Clamp, {c}}; }
ScalarFunction ScalarFunction::affine(double a, double b) { return {Family::Affine, {a, b}}; }
ScalarFunction ScalarFunction::identity() { return {Family::Identity, {}}; }
ScalarFunction ScalarFunction::sqrt() { return {Family::Sqrt, {}}; }
ScalarFunction ScalarFunction::hump(double c) { return {Family::Hump, {c}}; }

ScalarFunction ScalarFunction::make(Family family, std::vector<double> params) {
  return {family, std::move(params)};
}

ScalarFunction ScalarFunction::parse(std::string_view text) {
  const auto open = text.find('(');
  const std::string_view name = text.substr(0, open);
  const FamilyInfo* fi = nullptr;
  for (const auto& candidate : kFamilies) {
    if (candidate.name == name) fi = &candidate;
  }
  if (fi == nullptr) {
    throw LookupError("unknown function '" + std::string(text) + "'");
  }
  std::vector<double> params;
  if (open != std::string_view::npos) {
    if (text.back() != ')') {
      throw LookupError("malformed function id '" + std::string(text) + "'");
    }
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    while (true) {
      const auto comma = body.find(',');
      const std::string_view tok = body.substr(0, comma);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
        throw LookupError("malformed parameter in '" + std::string(text) + "'");
      }
      params.push_back(v);
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
  }
  if (params.size() != fi->arity) {
    throw LookupError("wrong parameter count in '" + std::string(text) + "'");
  }
  try {
    return {fi->family, std::move(params)};
  } catch (const DomainError& e) {
    throw LookupError(e.what());
  }
}

double ScalarFunction::operator()(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("scalar functions are defined on [0, inf)");
  }
  switch (family_) {
    case Family::Power:
      return std::pow(x, params_[0]);
    case Family::Log1p:
      return std::log1p(x);
    case Family::Clamp:
      return std::min(x, params_[0]);
    case Family::Affine:
      return params_[0] + params_[1] * x;
    case Family::Identity:
      return x;
    case Family::Sqrt:
      return std::sqrt(x);
    case Family::Hump:
      return x * (2.0 * params_[0] - x);
  }
  return 0.0;
}

std::string ScalarFunction::id() const {
  std::string out(info(family_).name);
  if (params_.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(params_[i]);
  }
  out += ')';
  return out;
}

double ScalarFunction::exponent() const {
  switch (family_) {
    case Family::Power:
      return params_[0];
    case Family::Sqrt:
      return 0.5;
    case Family::Identity:
      return 1.0;
    default:
      return 0.0;
  }
}

std::vector<std::string> FlagReport::mismatches() const {
  std::vector<std::string> out;
  auto cmp = [&](const char* name, bool d, bool m) {
    if (d != m) {
      out.push_back(std::string(name) + ": declared " + (d ? "true" : "false") +
                    ", measured " + (m ? "true" : "false"));
    }
  };
  cmp("nonneg", declared.nonneg, measured.nonneg);
  cmp("concave", declared.concave, measured.concave);
  cmp("e_convex", declared.e_convex, measured.e_convex);
  cmp("sqrt_concave", declared.sqrt_concave, measured.sqrt_concave);
  cmp("f0_nonneg", declared.f0_nonneg, measured.f0_nonneg);
  cmp("convex", declared.convex, measured.convex);
  return out;
}

namespace {

// Midpoint test of g over every pair (x_i, x_{i+d}), d a power of two.
// sign = +1 tests concavity, -1 convexity.
bool midpoint_test(const std::vector<double>& xs, const std::function<double(double)>& g,
                   double sign, double tol) {
  const std::size_t n = xs.size();
  for (std::size_t d = 1; d < n; d *= 2) {
    for (std::size_t i = 0; i + d < n; ++i) {
      const double x = xs[i];
      const double y = xs[i + d];
      const double gx = g(x);
      const double gy = g(y);
      const double gm = g(0.5 * (x + y));
      const double slack = tol * (std::abs(gx) + std::abs(gy) + std::abs(gm)) + 1e-300;
      if (sign * (gm - 0.5 * (gx + gy)) < -slack) return false;
    }
  }
  return true;
}

}  // namespace

FlagReport measure_flags(const ScalarFunction& f, std::size_t grid_size, double tol) {
  if (grid_size < 3) {
    throw DomainError("measure_flags: grid_size must be at least 3");
  }
  std::vector<double> log_grid(grid_size);
  std::vector<double> lin_grid(grid_size);
  const double step = 1.0 / static_cast<double>(grid_size - 1);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double u = static_cast<double>(i) * step;
    log_grid[i] = std::pow(10.0, -6.0 + 12.0 * u);
    lin_grid[i] = -14.0 + 28.0 * u;
  }
  auto fx = [&](double x) { return f(x); };
  auto f_exp = [&](double s) { return f(std::exp(s)); };
  auto f_sqrt = [&](double t) { return f(std::sqrt(t)); };

  FunctionFlags m;
  m.f0_nonneg = f(0.0) >= 0.0;
  m.nonneg = m.f0_nonneg && std::all_of(log_grid.begin(), log_grid.end(), [&](double x) {
               return f(x) >= -tol * (1.0 + std::abs(f(x)));
             });
  m.concave = midpoint_test(log_grid, fx, +1.0, tol);
  m.convex = midpoint_test(log_grid, fx, -1.0, tol);
  m.e_convex = midpoint_test(lin_grid, f_exp, -1.0, tol);
  m.sqrt_concave = midpoint_test(log_grid, f_sqrt, +1.0, tol);
  return FlagReport{f.flags(), m};
}

FlagReport verify_flags(const ScalarFunction& f, std::size_t grid_size, double tol) {
  FlagReport report = measure_flags(f, grid_size, tol);
  if (!report.matches()) {
    std::string msg = "flag mismatch for " + f.id() + ":";
    for (const auto& m : report.mismatches()) msg += " [" + m + "]";
    throw RegistryIntegrityError(msg);
  }
  return report;
}

FunctionRegistry::FunctionRegistry(std::vector<ScalarFunction> entries)
    : entries_(std::move(entries)) {}

const FunctionRegistry& FunctionRegistry::standard() {
  static const FunctionRegistry registry({
      ScalarFunction::identity(),
      ScalarFunction::sqrt(),
      ScalarFunction::power(0.25),
      ScalarFunction::power(0.75),
      ScalarFunction::log1p(),
      ScalarFunction::clamp(0.5),
      ScalarFunction::clamp(4.0),
      ScalarFunction::affine(1.0, 0.5),
      ScalarFunction::affine(0.2, 2.0),
      ScalarFunction::power(1.5),
      ScalarFunction::power(2.0),
      ScalarFunction::hump(1.0),
  });
  return registry;
}

std::vector<ScalarFunction> FunctionRegistry::concave() const {
  std::vector<ScalarFunction> out;
  for (const auto& f : entries_) {
    if (f.flags().nonneg && f.flags().concave) out.push_back(f);
  }
  return out;
}

}  // namespace normforge
