// bergman-lab: command-line front end for sampling, quadrature and Monte-Carlo runs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bergman/errors.hpp"
#include "bergman/experiments.hpp"
#include "bergman/gaf.hpp"
#include "bergman/moments.hpp"

namespace {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kNumerical = 2, kIo = 3, kInvalidConfig = 4 };

struct Overrides {
  std::string config_path;
  std::optional<double> s;
  std::string z;
  std::string n_list;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> eps;
  std::string out;
  std::string format = "csv";
};

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw bergman::DomainError("not a number: " + item);
    out.push_back(v);
  }
  return out;
}

bergman::RunConfig build_config(const Overrides& o) {
  bergman::RunConfig c;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw bergman::IoError("cannot open configuration " + o.config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw bergman::DomainError(std::string("malformed configuration: ") + e.what());
    }
    c = j.get<bergman::RunConfig>();
  }
  if (o.s) c.s = *o.s;
  if (!o.z.empty()) {
    const auto parts = split_numbers(o.z);
    if (parts.size() == 1) {
      c.z = {parts[0], 0.0};
    } else if (parts.size() == 2) {
      c.z = {parts[0], parts[1]};
    } else {
      throw bergman::DomainError("--z expects RE or RE,IM");
    }
  }
  if (!o.n_list.empty()) {
    c.n_list.clear();
    for (double v : split_numbers(o.n_list)) {
      if (v != static_cast<int>(v)) throw bergman::DomainError("--n-list expects integers");
      c.n_list.push_back(static_cast<int>(v));
    }
  }
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.master_seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.eps) c.eps_truncation = *o.eps;
  if (!o.out.empty()) c.output_path = o.out;
  c.validate();
  return c;
}

bergman::ReportFormat parse_format(const std::string& f) {
  return f == "json" ? bergman::ReportFormat::json : bergman::ReportFormat::csv;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw bergman::IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw bergman::IoError("cannot open " + path + " for writing");
  file << text;
  file.close();
  if (!file) throw bergman::IoError("failed writing " + path);
}

int cmd_sample(const bergman::RunConfig& c) {
  const bergman::StatisticParams params(c.s, c.z, c.n_list.back());
  const bergman::Configuration conf = bergman::sample_configuration(params, c.eps_truncation, c.master_seed);
  const nlohmann::json j = conf;
  write_text(j.dump(2) + "\n", c.output_path);
  return kOk;
}

int cmd_moments(const bergman::RunConfig& c, bergman::ReportFormat format) {
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "N,expectation_S_N1,I_N1,I_N2,expected_S_N,abs_error_estimate,asymptotic_S_N1,bracket_lower,bracket_upper\n";
  for (int n : c.n_list) {
    const bergman::StatisticParams params(c.s, c.z, n);
    const auto s1 = bergman::expectation_S_N1(params);
    const auto i1 = bergman::integral_I_N1(params);
    const auto i2 = bergman::integral_I_N2(params);
    const auto total = bergman::expected_S_N(params);
    const double asym = bergman::asymptotic_S_N1(params);
    const auto bracket = bergman::expectation_bracket(params);
    rows.push_back({{"N", n},
                    {"expectation_S_N1", s1},
                    {"I_N1", i1},
                    {"I_N2", i2},
                    {"expected_S_N", total},
                    {"asymptotic_S_N1", asym},
                    {"bracket_lower", bracket.lower},
                    {"bracket_upper", bracket.upper}});
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, s1.value, i1.value,
                  i2.value, total.value, total.abs_error_estimate, asym, bracket.lower, bracket.upper);
    csv << buf;
  }
  if (format == bergman::ReportFormat::json) {
    const nlohmann::json j{{"s", c.s}, {"z", {c.z.real(), c.z.imag()}}, {"rows", rows}};
    write_text(j.dump(2) + "\n", c.output_path);
  } else {
    write_text(csv.str(), c.output_path);
  }
  return kOk;
}

int cmd_report(const bergman::ExperimentReport& report, const bergman::RunConfig& c, bergman::ReportFormat format) {
  bergman::emit(report, format, c.output_path);
  if (report.slopes && format == bergman::ReportFormat::csv) {
    const auto& s = *report.slopes;
    std::fprintf(stderr, "slope of log ||Theta_N||: mean %.6g, stderr %.3g, expected center %.6g (%d trials used, %d excluded)\n",
                 s.mean, s.std_error, s.expected_center, s.trials_used, s.trials_excluded);
  }
  if (!report.ok()) {
    std::fprintf(stderr, "%s\n", report.status.c_str());
    return kNumerical;
  }
  return kOk;
}

int cmd_check(const bergman::RunConfig& c, bergman::ReportFormat format) {
  const bergman::CheckReport report = bergman::run_checks(c);
  if (format == bergman::ReportFormat::json) {
    const nlohmann::json j = report;
    write_text(j.dump(2) + "\n", c.output_path);
  } else {
    std::ostringstream text;
    for (const auto& r : report.results) text << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    write_text(text.str(), c.output_path);
  }
  return report.all_passed() ? kOk : kCheckFailed;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--s", o.s, "Exponent s in (1, 1.5)");
  cmd->add_option("--z", o.z, "Center as RE or RE,IM");
  cmd->add_option("--n-list", o.n_list, "Comma-separated ascending N values");
  cmd->add_option("--trials", o.trials, "Monte-Carlo trials");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  cmd->add_option("--eps", o.eps, "Truncation tolerance of the series");
  cmd->add_option("--out", o.out, "Output file (default: standard output)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman point process lab: sampling, moment quadrature and Monte-Carlo experiments"};
  app.require_subcommand(1);
  Overrides o;
  auto* sample = app.add_subcommand("sample", "Sample a point configuration covering U_N(z) for the largest N");
  auto* moments = app.add_subcommand("moments", "Quadrature of E[S_N] and its parts for each N");
  auto* lln = app.add_subcommand("lln", "Monte-Carlo mean and variance of S_N against quadrature");
  auto* divergence = app.add_subcommand("divergence", "Per-trial growth of ||Theta_N|| in N");
  auto* check = app.add_subcommand("check", "Run the invariant suites");
  for (auto* cmd : {sample, moments, lln, divergence, check}) add_common(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidConfig;
  }

  try {
    const bergman::RunConfig config = build_config(o);
    const auto format = parse_format(o.format);
    if (*sample) return cmd_sample(config);
    if (*moments) return cmd_moments(config, format);
    if (*lln) return cmd_report(bergman::run_lln(config), config, format);
    if (*divergence) return cmd_report(bergman::run_divergence(config), config, format);
    if (*check) return cmd_check(config, format);
  } catch (const bergman::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  } catch (const bergman::NonConvergenceError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const bergman::CoverageError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kInvalidConfig;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kInvalidConfig;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return kInvalidConfig;
  }
  return kOk;
}
