#pragma once
/*
Command-line front end.

  bandit sim    run a Monte-Carlo batch and emit a summary table plus CSV
  bandit bound  evaluate one confidence bound from explicit statistics
  bandit table  re-render a results CSV as an aligned text table

Exit codes: 0 success, 2 usage error, 1 runtime error.
*/

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bandit/simulator.hpp"

namespace bandit::cli {

/// args excludes the program name. Data goes to `out`, progress and
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Comma-separated policy list, each item name[:key=value...]; names
/// ucb-large | ucb-agrawal | ucb-bk | thompson, keys chi, alpha,
/// schedule in {chi-log, log-sqrt, log-alpha}, q. Defaults: schedule
/// chi-log with chi=1, q=0. Throws std::invalid_argument on bad grammar.
std::vector<PolicySpec> parse_policies(const std::string& flag, Family family);

/// CSV rows for summaries: fixed header, reals at 6 significant digits.
std::vector<std::string> csv_lines(const std::vector<RunSummary>& summaries);

/// Writes csv_lines atomically (temp file + rename); on failure returns
/// false with *error set and leaves no partial file behind.
bool write_csv(const std::vector<RunSummary>& summaries,
               const std::filesystem::path& path, std::string* error);

extern const char* const kCsvHeader;

}  // namespace bandit::cli
