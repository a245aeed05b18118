#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qfsplit::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitBudget = 2,
  /// A certificate failed re-verification, a verify-* check rejected its
  /// input, or an rdp-table row disagreed with its closed form.
  kExitCheckFailed = 3,
};

struct Job {
  std::string command;
  std::uint32_t p = 0;
  std::vector<std::string> variables;
  std::vector<std::string> polys;
  /// Rows separated by '|' (or ';'), entries by ','.
  std::optional<std::string> grading;
  std::optional<std::string> weights;

  /// verify-chain: g_1, ..., g_n. verify-infty: generators of J.
  std::vector<std::string> extra;
  /// product: the second factor.
  std::vector<std::string> variables2;
  std::vector<std::string> polys2;

  unsigned n_max = 10;
  bool n_max_explicit = false;
  std::optional<std::uint64_t> budget;
  std::string format = "text";
  bool verify = false;
  bool timing = true;

  /// strata / search.
  unsigned degree = 3;
  unsigned h_max = 3;
  unsigned target = 1;
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  bool smoothness_check = true;
  bool restricted = false;
  std::optional<std::string> point;
  std::optional<std::string> rows_csv;

  /// rdp-table.
  std::vector<std::uint32_t> primes{2, 3, 5};
  unsigned n_bound = 8;
};

struct Report {
  int exit_code = kExitOk;
  std::string text;
  nlohmann::json json;
  std::string error;

  /// Rendering chosen by the job's format.
  std::string render(const std::string& format) const;
};

/// Commands understood by run().
const std::vector<std::string>& command_names();

/// Validates and executes one job. Never throws: input errors become exit
/// code 1 with the message in `error`.
Report run(const Job& job);

/// Reads a job record: {"command", "p", "vars", "polys", ...}; "vars" may be
/// an array or a comma-separated string. Throws InputError.
Job job_from_json(const nlohmann::json& j);

/// Runs the jobs on a small thread pool; output order follows input order
/// and the exit code is the maximum over the jobs.
Report run_batch(const std::vector<Job>& jobs, bool timing, unsigned threads = 0);

/// Parses a batch file: either a JSON array of jobs or {"jobs": [...]}.
std::vector<Job> load_batch(const std::string& path);

}  // namespace qfsplit::tools
