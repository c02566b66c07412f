#pragma once

// The normforge command line: list, verify, hunt, demo. All file and
// stream output of the project goes through here.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "normforge/catalog.hpp"
#include "normforge/json_io.hpp"

namespace normforge::cli {

enum class Command { List, Verify, Hunt, Demo };

std::string_view to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitProvenViolated = 2;

struct RunConfig {
  Command command = Command::List;
  std::string statement = "all";  // id, "all", or a status name
  std::size_t trials = 100;
  Eigen::Index dim_lo = 1;
  Eigen::Index dim_hi = 8;
  std::uint64_t seed = 0;
  TolerancePolicy tol{};
  std::size_t restarts = 10;
  std::size_t steps = 100;
  double step_size = 0.1;
  std::optional<std::string> out;  // JSONL/JSON path; stdout when absent
  std::size_t workers = 1;
  bool self_test = false;
};

/// Everything that determines a run's output. Worker count and output
/// path are left out so that reports compare byte for byte across them.
json_io::Json header(const RunConfig& cfg);

/// Parses "a..b" or "a" into an inclusive range; throws PreconditionError.
std::pair<Eigen::Index, Eigen::Index> parse_dims(const std::string& text);

/// Statements named by a selector. Throws LookupError when none match.
std::vector<const Statement*> resolve(const std::string& selector);

int run_list(std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_hunt(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (NORMFORGE_SEED is the fallback seed) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace normforge::cli
