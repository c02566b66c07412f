#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "normforge/errors.hpp"
#include "normforge/hunter.hpp"

namespace normforge::cli {

using json_io::Json;

namespace {

struct TrialRecord {
  std::size_t trial = 0;
  Eigen::Index dim = 0;
  std::optional<CheckResult> result;
  std::string error;
};

Eigen::Index trial_dim(const RunConfig& cfg, std::size_t t) {
  const auto span = static_cast<std::size_t>(cfg.dim_hi - cfg.dim_lo + 1);
  return cfg.dim_lo + static_cast<Eigen::Index>(t % span);
}

// Runs body(i) for i in [0, n) on `workers` threads; results must be
// written to per-index slots.
template <typename Body>
void parallel_for(std::size_t n, std::size_t workers, Body body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
}

std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::filesystem::path csv_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".csv");
  return p;
}

// Writes to the --out file, or to `fallback` when none was given.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : os_(&fallback) {
    if (cfg.out) {
      file_.open(*cfg.out, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file '" + *cfg.out + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::runtime_error("failed writing output file");
    }
  }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::List: return "list";
    case Command::Verify: return "verify";
    case Command::Hunt: return "hunt";
    case Command::Demo: return "demo";
  }
  return "list";
}

Json header(const RunConfig& cfg) {
  std::ostringstream dims;
  dims << cfg.dim_lo << ".." << cfg.dim_hi;
  return {{"type", "header"},
          {"command", std::string(to_string(cfg.command))},
          {"statement", cfg.statement},
          {"trials", cfg.trials},
          {"dims", dims.str()},
          {"seed", cfg.seed},
          {"tol_rel", cfg.tol.rel},
          {"tol_abs", cfg.tol.abs_floor},
          {"restarts", cfg.restarts},
          {"steps", cfg.steps},
          {"step_size", cfg.step_size},
          {"self_test", cfg.self_test},
          {"threshold", kAntiNoiseThreshold}};
}

std::pair<Eigen::Index, Eigen::Index> parse_dims(const std::string& text) {
  auto number = [&](std::string_view s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw PreconditionError("bad --dims value '" + text + "'; expected a..b");
    }
    return static_cast<Eigen::Index>(v);
  };
  const auto sep = text.find("..");
  const std::string_view all(text);
  const Eigen::Index lo = number(sep == std::string::npos ? all : all.substr(0, sep));
  const Eigen::Index hi = sep == std::string::npos ? lo : number(all.substr(sep + 2));
  if (lo < 1 || hi < lo) throw PreconditionError("--dims needs 1 <= a <= b, got '" + text + "'");
  return {lo, hi};
}

std::vector<const Statement*> resolve(const std::string& selector) {
  std::vector<const Statement*> out;
  std::optional<Status> status;
  try {
    status = parse_status(selector);
  } catch (const LookupError&) {
  }
  for (const auto& st : catalog::registry()) {
    if (selector == "all" || st.id == selector || (status && st.status == *status)) {
      out.push_back(&st);
    }
  }
  if (out.empty()) throw LookupError("no statement matches '" + selector + "'");
  return out;
}

int run_list(std::ostream& out) {
  for (const auto& st : catalog::registry()) {
    out << st.id << ' ' << to_string(st.status) << ' ' << to_string(st.mode) << " | "
        << to_string(st.rule.signature) << ", f: " << to_string(st.rule.gate) << " | "
        << st.hypotheses << " | " << st.formula << '\n';
  }
  out << catalog::registry().size() << " statements\n";
  return kExitOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<const Statement*> statements;
  try {
    statements = resolve(cfg.statement);
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::optional<Sink> sink;
  std::ofstream csv;
  try {
    sink.emplace(cfg, out);
    if (cfg.out) {
      csv.open(csv_path(*cfg.out), std::ios::binary | std::ios::trunc);
      if (!csv) throw std::runtime_error("cannot open CSV summary next to '" + *cfg.out + "'");
      csv << "statement_id,trial,dim,function,margin,verdict\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::ostream& os = sink->stream();
  os << header(cfg).dump() << '\n';

  CheckOptions opts;
  opts.tol = cfg.tol;
  bool proven_violated = false;
  for (const Statement* st : statements) {
    std::vector<TrialRecord> records(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
      TrialRecord& rec = records[t];
      rec.trial = t;
      rec.dim = trial_dim(cfg, t);
      try {
        const Instance inst = catalog::sample_instance(st->id, rec.dim, cfg.seed, t);
        rec.dim = inst.dim;
        rec.result = catalog::check(*st, inst, opts);
      } catch (const Error& e) {
        rec.error = e.what();
      }
    });

    std::size_t counts[3] = {0, 0, 0};
    std::size_t errors = 0;
    double max_margin = -std::numeric_limits<double>::infinity();
    for (const auto& rec : records) {
      Json line = {{"type", "trial"},
                   {"statement", std::string(st->id)},
                   {"trial", rec.trial},
                   {"dim", rec.dim}};
      std::string function;
      std::string verdict = "error";
      double margin = std::numeric_limits<double>::quiet_NaN();
      if (rec.result) {
        const auto& r = *rec.result;
        function = r.instance.function ? r.instance.function->id() : "";
        verdict = std::string(to_string(r.verdict));
        margin = r.margin;
        max_margin = std::max(max_margin, margin);
        ++counts[static_cast<int>(r.verdict)];
        line["result"] = json_io::to_json(r);
      } else {
        ++errors;
        line["error"] = rec.error;
      }
      line["verdict"] = verdict;
      line["margin"] = json_io::real(margin);
      os << line.dump() << '\n';
      if (csv.is_open()) {
        csv << st->id << ',' << rec.trial << ',' << rec.dim << ',' << function << ','
            << csv_number(margin) << ',' << verdict << '\n';
      }
      if (rec.result && rec.result->verdict == Verdict::Violated &&
          st->status != Status::CounterexampleDemo) {
        Json v = {{"type", "VIOLATION"},
                  {"statement", std::string(st->id)},
                  {"status", std::string(to_string(st->status))},
                  {"trial", rec.trial},
                  {"margin", json_io::real(rec.result->margin)},
                  {"witness", json_io::to_json(rec.result->instance, true)}};
        os << v.dump() << '\n';
        err << "VIOLATION: " << st->id << " (" << to_string(st->status) << ") trial "
            << rec.trial << " margin " << rec.result->margin << '\n';
        if (st->status == Status::Proven) proven_violated = true;
      }
    }
    Json summary = {{"type", "summary"},
                    {"statement", std::string(st->id)},
                    {"status", std::string(to_string(st->status))},
                    {"mode", std::string(to_string(st->mode))},
                    {"trials", cfg.trials},
                    {"holds", counts[0]},
                    {"violated", counts[1]},
                    {"inconclusive", counts[2]},
                    {"errors", errors},
                    {"max_margin", json_io::real(max_margin)}};
    os << summary.dump() << '\n';
  }
  try {
    os.flush();
    sink->close();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return proven_violated ? kExitProvenViolated : kExitOk;
}

int run_hunt(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<const Statement*> statements;
  try {
    statements = resolve(cfg.statement);
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const Statement* st : statements) {
    if (st->status == Status::Proven && !cfg.self_test) {
      err << "error: " << st->id << " is proven; hunting it requires --self-test\n";
      return kExitUsage;
    }
  }

  Json reports = Json::array();
  bool proven_violated = false;
  for (const Statement* st : statements) {
    HuntConfig hc;
    hc.statement = std::string(st->id);
    hc.dim_lo = cfg.dim_lo;
    hc.dim_hi = cfg.dim_hi;
    hc.restarts = cfg.restarts;
    hc.steps = cfg.steps;
    hc.step_size = cfg.step_size;
    hc.seed = cfg.seed;
    hc.self_test = cfg.self_test;
    hc.workers = cfg.workers;
    hc.tol = cfg.tol;
    HuntReport report;
    try {
      report = hunt(hc);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    err << st->id << ": best margin " << report.best_margin << " over " << report.trials
        << " trials in " << report.wall_clock_seconds << " s\n";
    if (report.violations > 0 && st->status != Status::CounterexampleDemo) {
      err << "VIOLATION: " << st->id << " (" << to_string(st->status) << ") confirmed in "
          << report.violations << " restart(s)\n";
      if (st->status == Status::Proven) proven_violated = true;
    }
    reports.push_back(json_io::to_json(report, false));
  }

  try {
    Sink sink(cfg, out);
    sink.stream() << Json{{"header", header(cfg)}, {"reports", reports}}.dump(2) << '\n';
    sink.close();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return proven_violated ? kExitProvenViolated : kExitOk;
}

int run_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CheckOptions opts;
  opts.tol = cfg.tol;
  const CheckResult r = catalog::demo_block_power_counterexample(opts);
  Json j = {{"header", header(cfg)},
            {"lhs_op_norm", r.lhs.empty() ? 0.0 : r.lhs.front()},
            {"rhs_op_norm", r.rhs.empty() ? 0.0 : r.rhs.front()},
            {"result", json_io::to_json(r)}};
  try {
    Sink sink(cfg, out);
    sink.stream() << j.dump(2) << '\n';
    sink.close();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (r.verdict != Verdict::Violated) {
    err << "ex_2_8 did not report a violation\n";
    return kExitProvenViolated;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification and counterexample search for norm inequalities", "normforge"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string dims = "1..8";
  std::optional<std::uint64_t> seed;

  app.add_option("--statement", cfg.statement, "Statement id, 'all', or a status name");
  app.add_option("--trials", cfg.trials, "Trials per statement (verify)");
  app.add_option("--dims", dims, "Inclusive dimension range a..b");
  app.add_option("--seed", seed, "Master seed (default: $NORMFORGE_SEED, else 0)");
  app.add_option("--tol-rel", cfg.tol.rel, "Relative tolerance");
  app.add_option("--tol-abs", cfg.tol.abs_floor, "Absolute tolerance floor");
  app.add_option("--restarts", cfg.restarts, "Hunt restarts")->check(CLI::PositiveNumber);
  app.add_option("--steps", cfg.steps, "Hunt steps per restart");
  app.add_option("--step-size", cfg.step_size, "Initial hunt step size")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output path (JSONL for verify, JSON otherwise)");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--self-test", cfg.self_test, "Allow hunting proven statements");

  auto* list = app.add_subcommand("list", "List the statement registry");
  auto* verify = app.add_subcommand("verify", "Check random instances");
  auto* hunt_cmd = app.add_subcommand("hunt", "Search for violations");
  auto* demo = app.add_subcommand("demo", "Reproduce the squared-block counterexample");
  for (auto* sub : {list, verify, hunt_cmd, demo}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::tie(cfg.dim_lo, cfg.dim_hi) = parse_dims(dims);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (seed) {
    cfg.seed = *seed;
  } else if (const char* env = std::getenv("NORMFORGE_SEED")) {
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cfg.seed);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      err << "error: NORMFORGE_SEED is not an unsigned integer\n";
      return kExitUsage;
    }
  }

  if (list->parsed()) {
    cfg.command = Command::List;
    return run_list(out);
  }
  if (verify->parsed()) {
    cfg.command = Command::Verify;
    return run_verify(cfg, out, err);
  }
  if (hunt_cmd->parsed()) {
    cfg.command = Command::Hunt;
    return run_hunt(cfg, out, err);
  }
  cfg.command = Command::Demo;
  return run_demo(cfg, out, err);
}

}  // namespace normforge::cli
