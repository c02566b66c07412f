#include "normforge/hunter.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "normforge/errors.hpp"
#include "normforge/rng.hpp"

namespace normforge {

namespace {

constexpr std::uint64_t kPerturbSalt = 0x70657274ULL;

double scale_of(const ComplexMatrix& m) { return std::max(linalg::op_norm(m), 1e-3); }

ComplexMatrix direction(Eigen::Index rows, Eigen::Index cols, Stream& s) {
  const double n = static_cast<double>(std::max<Eigen::Index>(rows, cols));
  return gen::random_ginibre(rows, cols, s) / std::sqrt(n);
}

ComplexMatrix hermitian_direction(Eigen::Index n, Stream& s) {
  const ComplexMatrix g = direction(n, n, s);
  return (g + g.adjoint()) / 2.0;
}

// exp(i t H) for a random Hermitian H; unitary to rounding.
ComplexMatrix rotation(Eigen::Index n, double t, Stream& s) {
  const ComplexMatrix h = hermitian_direction(n, s);
  const ComplexMatrix arg = Complex(0.0, t) * h;
  return arg.exp();
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

ComplexMatrix perturb_normal(const ComplexMatrix& a, double step, Stream& s) {
  const Eigen::Index n = a.rows();
  const double sc = scale_of(a);
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success) throw DecompositionError("perturb: Schur failed");
  const ComplexMatrix u = schur.matrixU() * rotation(n, step, s);
  Eigen::VectorXcd lambda = schur.matrixT().diagonal();
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) += step * sc * s.complex_gaussian();
  return u * lambda.asDiagonal() * u.adjoint();
}

template <typename SigmaMap>
ComplexMatrix perturb_singular(const ComplexMatrix& a, double step, Stream& s, SigmaMap remap) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index k = svd.singularValues().size();
  const ComplexMatrix u = svd.matrixU() * rotation(k, step, s);
  const ComplexMatrix v = svd.matrixV() * rotation(k, step, s);
  Eigen::VectorXd sigma = svd.singularValues();
  for (Eigen::Index i = 0; i < k; ++i) sigma(i) = remap(sigma(i), step * s.gaussian());
  return u * sigma.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix perturb_matrix(const ComplexMatrix& a, MatrixTag cls, double step, Stream& s) {
  switch (cls) {
    case MatrixTag::General:
      return a + step * scale_of(a) * direction(a.rows(), a.cols(), s);
    case MatrixTag::Hermitian:
      return hermitize(a + step * scale_of(a) * hermitian_direction(a.rows(), s));
    case MatrixTag::PositiveSemidefinite: {
      const ComplexMatrix f = linalg::apply_psd_function(
          a, [](double x) { return std::sqrt(x); }, linalg::Path::Primary);
      const ComplexMatrix g = f + step * scale_of(f) * direction(a.rows(), a.cols(), s);
      return hermitize(g.adjoint() * g);
    }
    case MatrixTag::Normal:
      return perturb_normal(a, step, s);
    case MatrixTag::Expansive:
      return perturb_singular(a, step, s, [](double sigma, double g) {
        const double d = std::max(sigma - 1.0, 0.0);
        return 1.0 + std::abs(d + (1.0 + d) * g);
      });
    case MatrixTag::Contraction:
      return perturb_singular(a, step, s, [](double sigma, double g) {
        return std::min(1.0, std::abs(sigma + g));
      });
    case MatrixTag::Unitary:
      return a * rotation(a.cols(), step, s);
  }
  return a;
}

std::optional<ScalarFunction> perturb_function(const ScalarFunction& f, FunctionGate gate,
                                               double step, Stream& s) {
  if (f.params().empty() || gate == FunctionGate::None || gate == FunctionGate::FixedSquare) {
    return std::nullopt;
  }
  std::vector<double> p = f.params();
  for (double& x : p) {
    const double g = s.gaussian();
    x = x > 0.0 ? x * std::exp(step * g) : step * std::abs(g);
  }
  if (f.family() == Family::Power && p[0] > 1.0 && f.exponent() <= 1.0) p[0] = 1.0;
  try {
    ScalarFunction out = ScalarFunction::make(f.family(), std::move(p));
    if (gate_accepts(gate, out)) return out;
  } catch (const Error&) {
  }
  return std::nullopt;
}

double clamp_to(double x, ExponentRange r) { return std::clamp(x, r.lo, r.hi); }

}  // namespace

Instance perturb_in_class(const Instance& instance, double step, std::uint64_t seed) {
  if (step == 0.0) return instance;
  Stream s(derive_key(seed, kPerturbSalt));
  Instance out = instance;
  for (std::size_t i = 0; i < out.matrices.size(); ++i) {
    out.matrices[i] = perturb_matrix(out.matrices[i], out.classes.at(i), step, s);
  }

  const Statement* st = nullptr;
  if (!out.statement.empty()) st = &catalog::find(out.statement);
  if (st != nullptr && out.function) {
    if (auto f = perturb_function(*out.function, st->rule.gate, step, s)) out.function = *f;
  }
  if (st != nullptr && !out.exponents.empty()) {
    const ExponentRange r = exponent_range(st->rule.exponents);
    for (double& e : out.exponents) e = clamp_to(e * std::exp(step * s.gaussian()), r);
  }

  for (std::size_t i = 0; i < out.matrices.size(); ++i) {
    if (!linalg::is_finite(out.matrices[i]) ||
        !linalg::classify(out.matrices[i], MatrixClass{out.classes[i]})) {
      throw ClassError("perturb: matrix " + std::to_string(i) + " left class " +
                       std::string(to_string(out.classes[i])));
    }
  }
  out.perturbed = true;
  out.specs.clear();
  return out;
}

namespace {

std::size_t histogram_bin(double m) {
  std::size_t b = 0;
  while (b < kHistogramEdges.size() && m > kHistogramEdges[b]) ++b;
  return b;
}

struct RestartOutcome {
  RestartResult result;
  std::array<std::size_t, kHistogramEdges.size() + 1> histogram{};
};

double safe_objective(const Statement& st, const Instance& inst) {
  try {
    const double m = catalog::objective(st, inst);
    return std::isfinite(m) ? m : -std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

RestartOutcome run_restart(const Statement& st, const HuntConfig& cfg, std::size_t r) {
  RestartOutcome out;
  auto& res = out.result;
  res.restart = r;
  const auto span = static_cast<std::size_t>(cfg.dim_hi - cfg.dim_lo + 1);
  res.dim = cfg.dim_lo + static_cast<Eigen::Index>(r % span);

  Instance current = catalog::sample_instance(st.id, res.dim, cfg.seed, r, cfg.pool);
  double current_margin = safe_objective(st, current);
  res.initial_margin = current_margin;
  ++out.histogram[histogram_bin(current_margin)];

  double step = cfg.step_size;
  std::size_t streak = 0;
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    double m = -std::numeric_limits<double>::infinity();
    std::optional<Instance> candidate;
    try {
      candidate = perturb_in_class(current, step, derive_key(cfg.seed, r, k + 1));
      m = safe_objective(st, *candidate);
    } catch (const Error&) {
      candidate.reset();
    }
    ++out.histogram[histogram_bin(m)];
    if (candidate && m > current_margin) {
      current = std::move(*candidate);
      current_margin = m;
      ++res.accepted;
      streak = 0;
    } else {
      ++res.rejected;
      if (++streak == kRejectionStreak) {
        step *= cfg.step_decay;
        streak = 0;
      }
    }
    res.trajectory.push_back(current_margin);
  }
  res.best_margin = current_margin;
  res.best = std::move(current);

  if (res.best_margin > cfg.report_threshold) {
    CheckOptions opts;
    opts.tol = cfg.tol;
    opts.threshold = cfg.report_threshold;
    try {
      const CheckResult c = catalog::check(st, res.best, opts);
      res.verdict = c.verdict;
      res.recheck_margin = c.recheck_margin;
    } catch (const Error&) {
      res.verdict = Verdict::Inconclusive;
    }
  }
  return out;
}

}  // namespace

HuntReport hunt(const HuntConfig& config) {
  const Statement& st = catalog::find(config.statement);
  if (st.status == Status::Proven && !config.self_test) {
    throw PreconditionError(config.statement + " is proven; hunting it requires self-test mode");
  }
  if (config.restarts < 1) throw PreconditionError("hunt: restarts must be at least 1");
  if (config.dim_lo < 1 || config.dim_hi < config.dim_lo) {
    throw PreconditionError("hunt: empty dimension range");
  }
  if (!(config.step_decay > 0.0 && config.step_decay < 1.0)) {
    throw PreconditionError("hunt: step decay must lie in (0, 1)");
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<RestartOutcome> outcomes(config.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < config.restarts; r = next++) {
      outcomes[r] = run_restart(st, config, r);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(config.workers, 1, config.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  HuntReport report;
  report.config = config;
  report.status = st.status;
  report.mode = st.mode;
  for (auto& o : outcomes) {
    for (std::size_t b = 0; b < o.histogram.size(); ++b) report.histogram[b] += o.histogram[b];
    report.trials += 1 + config.steps;
    if (o.result.verdict == Verdict::Violated) ++report.violations;
    if (o.result.best_margin > report.best_margin) {
      report.best_margin = o.result.best_margin;
      report.best_restart = o.result.restart;
    }
    report.restarts.push_back(std::move(o.result));
  }

  CheckOptions opts;
  opts.tol = config.tol;
  opts.threshold = config.report_threshold;
  try {
    report.witness = catalog::check(st, report.restarts[report.best_restart].best, opts);
  } catch (const Error&) {
    report.witness.reset();
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace normforge
