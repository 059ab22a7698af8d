#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

namespace bandit::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_real(double v, int precision) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw UsageError("invalid value for " + what + ": '" + text + "'");
  return v;
}

PriorSpec prior_for_example(const std::string& example) {
  PriorSpec prior;
  if (example == "normal-known")
    prior.kind = PriorKind::NormalMeansUnitVar;
  else if (example == "normal-unknown")
    prior.kind = PriorKind::NormalMeansExpVar;
  else if (example == "bernoulli")
    prior.kind = PriorKind::UniformBernoulli;
  else
    throw UsageError("unknown --example '" + example + "'");
  return prior;
}

}  // namespace

const char* const kCsvHeader =
    "example,policy,params,K,N,runs,seed,mean_regret,se_regret,"
    "mean_tilde_regret,lower_bound_r,wall_seconds";

std::vector<PolicySpec> parse_policies(const std::string& flag, Family family) {
  if (flag.empty()) throw UsageError("--policies must name at least one policy");
  std::vector<PolicySpec> specs;
  for (const std::string& item : split(flag, ',')) {
    const std::vector<std::string> parts = split(item, ':');
    const std::string& name = parts[0];
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto eq = parts[i].find('=');
      if (eq == std::string::npos || eq == 0)
        throw UsageError("bad policy parameter '" + parts[i] + "' in '" + item + "'");
      if (!kv.emplace(parts[i].substr(0, eq), parts[i].substr(eq + 1)).second)
        throw UsageError("duplicate policy parameter in '" + item + "'");
    }
    auto take = [&kv](const std::string& key) {
      auto it = kv.find(key);
      if (it == kv.end()) return std::string();
      std::string v = it->second;
      kv.erase(it);
      return v;
    };

    if (name == "thompson" || name == "ucb-bk") {
      if (!kv.empty())
        throw UsageError("policy '" + name + "' accepts no parameters (got '" + item + "')");
      if (name == "ucb-bk") {
        if (family != Family::NormalUnknownVar)
          throw UsageError("ucb-bk requires --example normal-unknown");
        specs.push_back(PolicySpec::ucb_bk());
      } else {
        specs.push_back(PolicySpec::thompson(family));
      }
      continue;
    }
    if (name != "ucb-large" && name != "ucb-agrawal")
      throw UsageError("unknown policy '" + name + "'");

    std::string sched_name = take("schedule");
    const std::string chi_text = take("chi");
    const std::string alpha_text = take("alpha");
    const std::string q_text = take("q");
    if (!kv.empty())
      throw UsageError("unknown policy parameter '" + kv.begin()->first + "' in '" + item + "'");
    if (sched_name.empty()) sched_name = "chi-log";

    Schedule schedule;
    try {
      if (sched_name == "chi-log") {
        if (!alpha_text.empty())
          throw UsageError("alpha only applies to schedule=log-alpha ('" + item + "')");
        schedule = Schedule::chi_log(chi_text.empty() ? 1.0 : parse_real(chi_text, "chi"));
      } else if (sched_name == "log-sqrt") {
        if (!chi_text.empty() || !alpha_text.empty())
          throw UsageError("schedule=log-sqrt takes no chi/alpha ('" + item + "')");
        schedule = Schedule::log_minus_sqrt_log();
      } else if (sched_name == "log-alpha") {
        if (!chi_text.empty())
          throw UsageError("chi only applies to schedule=chi-log ('" + item + "')");
        schedule = Schedule::log_plus_alpha_loglog(
            alpha_text.empty() ? 2.0 : parse_real(alpha_text, "alpha"));
      } else {
        throw UsageError("unknown schedule '" + sched_name + "' in '" + item + "'");
      }

      if (name == "ucb-large") {
        const double q = q_text.empty() ? 0.0 : parse_real(q_text, "q");
        specs.push_back(PolicySpec::ucb_large(family, schedule, q));
      } else {
        if (!q_text.empty())
          throw UsageError("q only applies to ucb-large ('" + item + "')");
        specs.push_back(PolicySpec::ucb_agrawal(family, schedule));
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string(e.what()) + " ('" + item + "')");
    }
  }
  return specs;
}

std::vector<std::string> csv_lines(const std::vector<RunSummary>& summaries) {
  std::vector<std::string> lines;
  lines.reserve(summaries.size() + 1);
  lines.emplace_back(kCsvHeader);
  for (const RunSummary& s : summaries) {
    std::string row = s.example;
    row += ',' + s.policy;
    row += ',' + s.params;
    row += ',' + std::to_string(s.num_arms);
    row += ',' + std::to_string(s.horizon);
    row += ',' + std::to_string(s.num_runs);
    row += ',' + std::to_string(s.base_seed);
    row += ',' + format_real(s.mean_regret, 6);
    row += ',' + format_real(s.se_regret, 6);
    row += ',' + format_real(s.mean_tilde_regret, 6);
    row += ',' + format_real(s.mean_lower_bound, 6);
    row += ',' + format_real(s.wall_seconds, 6);
    lines.push_back(std::move(row));
  }
  return lines;
}

bool write_csv(const std::vector<RunSummary>& summaries,
               const std::filesystem::path& path, std::string* error) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream ofs(tmp, std::ios::trunc);
    if (!ofs) {
      if (error) *error = "cannot open '" + tmp.string() + "' for writing";
      return false;
    }
    for (const std::string& line : csv_lines(summaries)) ofs << line << '\n';
    ofs.flush();
    if (!ofs) {
      ofs.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      if (error) *error = "write failed for '" + tmp.string() + "'";
      return false;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    if (error) *error = "cannot rename temp file onto '" + path.string() + "'";
    return false;
  }
  return true;
}

namespace {

// Aligned text table from CSV cells, one block per example, cells verbatim.
void render_table(const std::vector<std::vector<std::string>>& rows,
                  std::ostream& out) {
  static const std::vector<std::string> header = split(kCsvHeader, ',');
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<const std::vector<std::string>*>> groups;
  for (const auto& row : rows) {
    const std::string& example = row[0];
    if (groups.find(example) == groups.end()) group_order.push_back(example);
    groups[example].push_back(&row);
  }
  bool first = true;
  for (const std::string& example : group_order) {
    if (!first) out << '\n';
    first = false;
    out << "example: " << example << '\n';
    const auto& members = groups[example];
    std::vector<std::size_t> width(header.size() - 1, 0);
    for (std::size_t c = 1; c < header.size(); ++c) {
      width[c - 1] = header[c].size();
      for (const auto* row : members)
        width[c - 1] = std::max(width[c - 1], (*row)[c].size());
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 1; c < header.size(); ++c) {
        out << cells[c] << std::string(width[c - 1] - cells[c].size(), ' ');
        out << (c + 1 < header.size() ? "  " : "");
      }
      out << '\n';
    };
    emit(header);
    for (const auto* row : members) emit(*row);
  }
}

std::vector<std::vector<std::string>> parse_csv_rows(std::istream& in,
                                                     std::string* error) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  const std::size_t columns = split(kCsvHeader, ',').size();
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      if (line != kCsvHeader) {
        if (error) *error = "unrecognized CSV header";
        return {};
      }
      have_header = true;
      continue;
    }
    std::vector<std::string> cells = split(line, ',');
    if (cells.size() != columns) {
      if (error) *error = "CSV row has wrong column count";
      return {};
    }
    rows.push_back(std::move(cells));
  }
  if (!have_header && error) *error = "empty CSV";
  return rows;
}

int cmd_sim(const std::string& example, int num_arms, long long horizon,
            int runs, std::uint64_t seed, const std::string& policies_flag,
            const std::string& out_path, int threads, std::ostream& out,
            std::ostream& err) {
  RunConfig config;
  config.prior = prior_for_example(example);
  config.num_arms = num_arms;
  config.horizon = horizon;
  config.num_runs = runs;
  config.base_seed = seed;
  config.policies = parse_policies(policies_flag, config.prior.family());

  for (const PolicySpec& p : config.policies)
    if (horizon < static_cast<long long>(num_arms) * p.init_per_arm)
      throw UsageError("N must be at least K times the initial allocation");

  err << "sim: " << example << " K=" << num_arms << " N=" << horizon
      << " runs=" << runs << " policies=" << config.policies.size()
      << " threads=" << (threads > 0 ? std::to_string(threads) : "auto") << '\n';
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<RunSummary> summaries = run_batch(config, threads);
  const auto t1 = std::chrono::steady_clock::now();
  err << "sim: done in " << format_real(std::chrono::duration<double>(t1 - t0).count(), 4)
      << "s\n";

  if (!out_path.empty()) {
    std::string error;
    if (!write_csv(summaries, out_path, &error)) {
      err << "error: " << error << '\n';
      return 1;
    }
  }
  const std::vector<std::string> lines = csv_lines(summaries);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) rows.push_back(split(lines[i], ','));
  render_table(rows, out);
  return 0;
}

int cmd_bound(const std::string& family_name, double xbar, double sigma_hat,
              bool have_sigma, long long t, double b, bool bk_variant,
              std::ostream& out) {
  Family family;
  if (family_name == "normal-known") {
    family = Family::NormalKnownVar;
  } else if (family_name == "normal-unknown") {
    family = Family::NormalUnknownVar;
    if (!have_sigma) throw UsageError("--family normal-unknown requires --sigma-hat");
    if (!bk_variant && t < 2)
      throw UsageError("--family normal-unknown requires --t >= 2");
  } else if (family_name == "bernoulli") {
    family = Family::Bernoulli;
  } else {
    throw UsageError("unknown --family '" + family_name + "'");
  }
  double value = 0.0;
  try {
    value = evaluate_bound(family, BoundQuery{xbar, sigma_hat, t, b}, bk_variant);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  out << format_real(value, 7) << '\n';
  return 0;
}

int cmd_table(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream ifs(path);
  if (!ifs) {
    err << "error: cannot open '" << path << "'\n";
    return 1;
  }
  std::string error;
  const auto rows = parse_csv_rows(ifs, &error);
  if (!error.empty()) {
    err << "error: " << error << " in '" << path << "'\n";
    return 1;
  }
  render_table(rows, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"multi-armed bandit simulation harness"};
  app.require_subcommand(1);

  std::string example = "normal-known";
  int num_arms = 10;
  long long horizon = 20000;
  int runs = 1000;
  std::uint64_t seed = 1;
  std::string policies_flag = "ucb-large";
  std::string out_path;
  int threads = 0;

  CLI::App* sim = app.add_subcommand("sim", "run a simulation batch");
  sim->add_option("--example", example, "experiment family: normal-known, normal-unknown or bernoulli")
      ->check(CLI::IsMember({"normal-known", "normal-unknown", "bernoulli"}));
  sim->add_option("--K", num_arms, "number of arms")->check(CLI::PositiveNumber);
  sim->add_option("--N", horizon, "rewards per run")->check(CLI::PositiveNumber);
  sim->add_option("--runs", runs, "number of Monte-Carlo runs")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "base seed");
  sim->add_option("--policies", policies_flag,
                  "comma-separated list, e.g. ucb-large:chi=0.5,ucb-agrawal,thompson");
  sim->add_option("--out", out_path, "CSV output path");
  sim->add_option("--threads", threads, "worker threads (0 = auto)")
      ->check(CLI::NonNegativeNumber);

  std::string family;
  double xbar = 0.0, sigma_hat = 0.0, b = 0.0;
  long long t = 1;
  bool bk_variant = false;
  CLI::App* bound = app.add_subcommand("bound", "evaluate one confidence bound");
  bound->add_option("--family", family, "normal-known, normal-unknown or bernoulli")
      ->required();
  bound->add_option("--xbar", xbar, "sample mean")->required();
  auto* sigma_opt = bound->add_option("--sigma-hat", sigma_hat, "biased sample s.d.");
  bound->add_option("--t", t, "per-arm sample count")->required();
  bound->add_option("--b", b, "confidence coefficient")->required();
  bound->add_flag("--bk", bk_variant, "use the divisor-t unknown-variance bound");

  std::string table_path;
  CLI::App* table = app.add_subcommand("table", "render a results CSV as text");
  table->add_option("csv", table_path, "CSV file written by sim")->required();

  std::vector<const char*> argv;
  argv.push_back("bandit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (sim->parsed())
      return cmd_sim(example, num_arms, horizon, runs, seed, policies_flag,
                     out_path, threads, out, err);
    if (bound->parsed())
      return cmd_bound(family, xbar, sigma_hat, sigma_opt->count() > 0, t, b,
                       bk_variant, out);
    if (table->parsed()) return cmd_table(table_path, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace bandit::cli
