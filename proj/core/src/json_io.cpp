#include "normforge/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "normforge/errors.hpp"

namespace normforge::json_io {

Json real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw DomainError("json: not a real number: '" + s + "'");
  }
  return j.get<double>();
}

namespace {

Json reals(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real(x));
  return out;
}

std::vector<double> reals_from(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(real_from(x));
  return out;
}

Json to_json(const BlockPartition& p) { return {{"rows", p.rows}, {"cols", p.cols}}; }

BlockPartition partition_from_json(const Json& j) {
  BlockPartition p;
  p.rows = j.at("rows").get<std::vector<Eigen::Index>>();
  p.cols = j.at("cols").get<std::vector<Eigen::Index>>();
  return p;
}

Json to_json(const TolerancePolicy& t) { return {{"rel", t.rel}, {"abs", t.abs_floor}}; }

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(real(m(i, j).real()));
      im.push_back(real(m(i, j).imag()));
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows * cols) ||
      im.size() != re.size()) {
    throw DimensionError("json: matrix entry count does not match its shape");
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) m(i, c) = Complex(real_from(re[k]), real_from(im[k]));
  }
  return m;
}

Json to_json(const Spectrum& s) {
  return reals(std::vector<double>(s.values().begin(), s.values().end()));
}

Spectrum spectrum_from_json(const Json& j) { return Spectrum(reals_from(j)); }

Json to_json(const GenSpec& spec) {
  return {{"dim", spec.dim},
          {"cols", spec.columns()},
          {"class", std::string(to_string(spec.cls))},
          {"scale", real(spec.scale)},
          {"seed", spec.seed},
          {"variant", std::string(to_string(spec.variant))}};
}

GenSpec genspec_from_json(const Json& j) {
  GenSpec s;
  s.dim = j.at("dim").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  s.cols = cols == s.dim ? 0 : cols;
  s.cls = parse_matrix_tag(j.at("class").get<std::string>());
  s.scale = real_from(j.at("scale"));
  s.seed = j.at("seed").get<std::uint64_t>();
  s.variant = parse_variant(j.at("variant").get<std::string>());
  return s;
}

Json to_json(const Instance& inst, bool embed_matrices) {
  Json classes = Json::array();
  for (auto c : inst.classes) classes.push_back(std::string(to_string(c)));
  Json specs = Json::array();
  for (const auto& s : inst.specs) specs.push_back(to_json(s));
  Json out = {{"statement", inst.statement},
              {"signature", std::string(to_string(inst.signature))},
              {"classes", classes},
              {"specs", specs},
              {"partition", to_json(inst.partition)},
              {"function", inst.function ? Json(inst.function->id()) : Json(nullptr)},
              {"exponents", reals(inst.exponents)},
              {"seed", inst.seed},
              {"trial", inst.trial},
              {"dim", inst.dim},
              {"perturbed", inst.perturbed}};
  if (embed_matrices) {
    Json ms = Json::array();
    for (const auto& m : inst.matrices) ms.push_back(to_json(m));
    out["matrices"] = ms;
  }
  return out;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.statement = j.at("statement").get<std::string>();
  inst.signature = parse_signature(j.at("signature").get<std::string>());
  for (const auto& c : j.at("classes")) inst.classes.push_back(parse_matrix_tag(c.get<std::string>()));
  for (const auto& s : j.at("specs")) inst.specs.push_back(genspec_from_json(s));
  inst.partition = partition_from_json(j.at("partition"));
  if (!j.at("function").is_null()) {
    inst.function = ScalarFunction::parse(j.at("function").get<std::string>());
  }
  inst.exponents = reals_from(j.at("exponents"));
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.trial = j.at("trial").get<std::uint64_t>();
  inst.dim = j.at("dim").get<Eigen::Index>();
  inst.perturbed = j.at("perturbed").get<bool>();
  if (j.contains("matrices")) {
    for (const auto& m : j.at("matrices")) inst.matrices.push_back(matrix_from_json(m));
  } else {
    inst.matrices = regenerate(inst);
  }
  if (inst.classes.size() != inst.matrices.size()) {
    throw DimensionError("json: one class tag per matrix expected");
  }
  return inst;
}

Json to_json(const CheckResult& r) {
  Json out = {{"statement", r.statement},
              {"mode", std::string(to_string(r.mode))},
              {"verdict", std::string(to_string(r.verdict))},
              {"margin", real(r.margin)},
              {"recheck_margin", r.recheck_margin ? real(*r.recheck_margin) : Json(nullptr)},
              {"lhs", reals(r.lhs)},
              {"rhs", reals(r.rhs)},
              {"instance", to_json(r.instance, r.verdict != Verdict::Holds)}};
  return out;
}

Json to_json(const HuntConfig& cfg) {
  Json pool = Json::array();
  for (const auto& f : cfg.pool) pool.push_back(f.id());
  return {{"statement", cfg.statement},
          {"dims", {cfg.dim_lo, cfg.dim_hi}},
          {"restarts", cfg.restarts},
          {"steps", cfg.steps},
          {"step_size", real(cfg.step_size)},
          {"step_decay", real(cfg.step_decay)},
          {"seed", cfg.seed},
          {"pool", pool},
          {"report_threshold", real(cfg.report_threshold)},
          {"self_test", cfg.self_test},
          {"tol", to_json(cfg.tol)}};
}

Json to_json(const HuntReport& report, bool include_wall_clock) {
  Json restarts = Json::array();
  for (const auto& r : report.restarts) {
    restarts.push_back({{"restart", r.restart},
                        {"dim", r.dim},
                        {"initial_margin", real(r.initial_margin)},
                        {"best_margin", real(r.best_margin)},
                        {"accepted", r.accepted},
                        {"rejected", r.rejected},
                        {"verdict", r.verdict ? Json(std::string(to_string(*r.verdict))) : Json(nullptr)},
                        {"recheck_margin", r.recheck_margin ? real(*r.recheck_margin) : Json(nullptr)}});
  }
  Json edges = Json::array();
  for (double e : kHistogramEdges) edges.push_back(real(e));
  Json witness = nullptr;
  if (report.witness) {
    witness = to_json(*report.witness);
    witness["instance"] = to_json(report.witness->instance, true);
  }
  Json out = {{"statement", report.config.statement},
              {"status", std::string(to_string(report.status))},
              {"mode", std::string(to_string(report.mode))},
              {"best_margin", real(report.best_margin)},
              {"best_restart", report.best_restart},
              {"witness", witness},
              {"restarts", restarts},
              {"histogram", {{"upper_edges", edges}, {"counts", report.histogram}}},
              {"trials", report.trials},
              {"violations", report.violations}};
  if (include_wall_clock) out["wall_clock_seconds"] = report.wall_clock_seconds;
  return out;
}

}  // namespace normforge::json_io
