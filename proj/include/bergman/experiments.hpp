#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bergman/gaf.hpp"
#include "bergman/hyperbolic.hpp"
#include "bergman/variance_identities.hpp"

namespace bergman {

/// Parameters shared by every experiment. JSON keys: s, z ([re, im]), N_list,
/// trials, eps_truncation, master_seed, threads, output_path.
struct RunConfig {
  double s = 1.25;
  DiskPoint z{0.0, 0.0};
  std::vector<int> n_list{2, 3, 4};
  int trials = 2000;
  double eps_truncation = 1e-6;
  std::uint64_t master_seed = 20240901;
  int threads = 0;  // 0: available parallelism
  std::string output_path;

  /// Throws DomainError unless 1 < s < 1.5, |z| < 1, trials >= 1, eps in (0, 1)
  /// and N_list is nonempty, positive and strictly ascending.
  void validate() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
/// Missing keys keep their defaults; the result is validated.
void from_json(const nlohmann::json& j, RunConfig& c);

/// One row per N. `std_error` and `ratio_std` are NaN when only one trial succeeded.
struct ReportRow {
  int n = 0;
  int trials = 0;
  double mc_mean = 0.0;
  double mc_var = 0.0;
  double std_error = 0.0;
  double quad_expectation = 0.0;
  double ratio = 0.0;
  double ratio_std = 0.0;
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
};

/// Distribution of per-trial growth slopes of log ||Theta_N|| against N.
struct SlopeSummary {
  double expected_center = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;
  double std_error = 0.0;
  int trials_used = 0;
  int trials_excluded = 0;  // fewer than two N with a nonzero norm
  std::vector<double> slopes;
};

struct ReportMetadata {
  std::uint64_t seed = 0;
  int trials = 0;
  std::string truncation_policy;
  double eps_truncation = 0.0;
  int threads = 0;
  int resampled_trials = 0;  // trials that needed a fresh stream after root-finder failure
  double wall_time_seconds = 0.0;
};

struct ExperimentReport {
  std::string kind;  // "lln" or "divergence"
  double s = 0.0;
  DiskPoint z{0.0, 0.0};
  std::vector<ReportRow> rows;
  ReportMetadata metadata;
  std::optional<SlopeSummary> slopes;
  std::string status = "ok";  // otherwise a description of the failure
  [[nodiscard]] bool ok() const { return status == "ok"; }
};

void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, ExperimentReport& r);

/// Monte-Carlo mean and variance of S_N for each N in the list, alongside the
/// quadrature expectation and the two-sided bound. Per-trial randomness comes from
/// stream_seed(master_seed, trial), so reports do not depend on the thread count.
/// Failures leave the rows computed so far and set `status`.
[[nodiscard]] ExperimentReport run_lln(const RunConfig& config);

/// As run_lln, plus the per-trial slope of log ||Theta_N|| over N_list.
[[nodiscard]] ExperimentReport run_divergence(const RunConfig& config);

/// ||Theta_N|| for each N, evaluated on a single configuration.
[[nodiscard]] std::vector<double> norm_trajectory(const Configuration& config, double s, DiskPoint z,
                                                  const std::vector<int>& n_list);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> results;
  [[nodiscard]] bool all_passed() const;
};

struct CheckOptions {
  int random_tuples = 1000;
  int root_samples = 20;
  J3Expansion j3{};  // altered only to exercise the failure path
};

/// Invariant suites: Moebius geometry, kernel and Gram bounds, the J2/J3/J4
/// expansions, the r1 r2 inequality, quadrature refinement, root-count agreement
/// and the mean point count at N = 2 (config.trials samples).
[[nodiscard]] CheckReport run_checks(const RunConfig& config, const CheckOptions& options = {});

void to_json(nlohmann::json& j, const CheckReport& r);

enum class ReportFormat { csv, json };

/// Header `N,trials,mc_mean,mc_var,stderr,quad_expectation,ratio,bracket_lower,bracket_upper`
/// and one row per N; floats use 17 significant digits.
void write_csv(const ExperimentReport& report, std::ostream& out);
void write_json(const ExperimentReport& report, std::ostream& out);

/// Writes to `path`, or to standard output when `path` is empty or "-". Throws IoError.
void emit(const ExperimentReport& report, ReportFormat format, const std::string& path);

}  // namespace bergman
