#include "bergman/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/kernel.hpp"
#include "bergman/linear_statistics.hpp"
#include "bergman/moments.hpp"
#include "bergman/parallel.hpp"
#include "bergman/rng.hpp"

namespace bergman {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kSamplingAttempts = 4;
constexpr std::uint64_t kCountStream = 0x5EED0C0DE0F1A2B3ULL;

double json_number(const nlohmann::json& j) { return j.is_null() ? kNaN : j.get<double>(); }

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::string format_point(DiskPoint w) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", w.real(), w.imag());
  return buf;
}

std::string truncation_policy_text() {
  return "smallest M with rho^(2(M+1)) / (1 - rho^2) < eps^2 at rho = tanh(N'/2)";
}

struct TrialOutcome {
  std::vector<double> s_values;  // S_N for each N in the list
  bool resampled = false;
  std::string error;
  bool nonconvergence = false;
};

TrialOutcome run_trial(const RunConfig& config, const StatisticParams& largest, std::size_t trial) {
  TrialOutcome out;
  std::uint64_t seed = stream_seed(config.master_seed, trial);
  Configuration sample;
  bool sampled = false;
  for (int attempt = 0; attempt < kSamplingAttempts && !sampled; ++attempt) {
    try {
      sample = sample_configuration(largest, config.eps_truncation, seed);
      sampled = true;
    } catch (const NonConvergenceError& e) {
      out.resampled = true;
      out.error = e.what();
      seed = stream_seed(seed, static_cast<std::uint64_t>(attempt) + 1);
    }
  }
  if (!sampled) {
    out.nonconvergence = true;
    out.error = "trial " + std::to_string(trial) + ": " + out.error;
    return out;
  }
  out.error.clear();
  try {
    for (int n : config.n_list) {
      const StatisticParams params(config.s, config.z, n);
      out.s_values.push_back(norm_squared(build_theta(sample, params)));
    }
  } catch (const NonConvergenceError& e) {
    out.nonconvergence = true;
    out.error = "trial " + std::to_string(trial) + ": " + e.what();
  } catch (const std::exception& e) {
    out.error = "trial " + std::to_string(trial) + ": " + e.what();
  }
  return out;
}

struct Simulation {
  ExperimentReport report;
  std::vector<TrialOutcome> trials;
};

void set_failure(ExperimentReport& report, bool nonconvergence, const std::string& what) {
  if (!report.ok()) return;
  report.status = (nonconvergence ? "nonconvergence: " : "error: ") + what;
}

Simulation simulate(const RunConfig& config, const std::string& kind) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Simulation sim;
  ExperimentReport& report = sim.report;
  report.kind = kind;
  report.s = config.s;
  report.z = config.z;
  report.metadata.seed = config.master_seed;
  report.metadata.trials = config.trials;
  report.metadata.truncation_policy = truncation_policy_text();
  report.metadata.eps_truncation = config.eps_truncation;
  report.metadata.threads = resolve_threads(config.threads);

  const StatisticParams largest(config.s, config.z, config.n_list.back());
  sim.trials.resize(static_cast<std::size_t>(config.trials));
  parallel_for(sim.trials.size(), config.threads,
               [&](std::size_t t) { sim.trials[t] = run_trial(config, largest, t); });

  std::vector<std::size_t> good;
  for (std::size_t t = 0; t < sim.trials.size(); ++t) {
    const TrialOutcome& outcome = sim.trials[t];
    if (outcome.resampled) ++report.metadata.resampled_trials;
    if (outcome.error.empty()) {
      good.push_back(t);
    } else {
      set_failure(report, outcome.nonconvergence, outcome.error);
    }
  }

  const double count = static_cast<double>(good.size());
  std::vector<double> values(good.size());
  for (std::size_t k = 0; k < config.n_list.size(); ++k) {
    ReportRow row;
    row.n = config.n_list[k];
    row.trials = static_cast<int>(good.size());
    for (std::size_t i = 0; i < good.size(); ++i) values[i] = sim.trials[good[i]].s_values[k];
    row.mc_mean = good.empty() ? kNaN : pairwise_sum(values) / count;
    if (good.size() >= 2) {
      std::vector<double> dev(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - row.mc_mean) * (values[i] - row.mc_mean);
      row.mc_var = pairwise_sum(dev) / (count - 1.0);
      row.std_error = std::sqrt(row.mc_var / count);
    } else {
      row.mc_var = kNaN;
      row.std_error = kNaN;
    }
    row.quad_expectation = kNaN;
    row.bracket_lower = kNaN;
    row.bracket_upper = kNaN;
    try {
      const StatisticParams params(config.s, config.z, row.n);
      const ExpectationBracket bracket = expectation_bracket(params);
      row.bracket_lower = bracket.lower;
      row.bracket_upper = bracket.upper;
      if (row.n <= kMaxQuadratureShells) row.quad_expectation = expected_S_N(params).value;
    } catch (const NonConvergenceError& e) {
      set_failure(report, true, "quadrature at N = " + std::to_string(row.n) + ": " + e.what());
    }
    row.ratio = row.mc_mean / row.quad_expectation;
    row.ratio_std = std::sqrt(row.mc_var) / row.quad_expectation;
    report.rows.push_back(row);
  }
  report.metadata.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sim;
}

}  // namespace

void RunConfig::validate() const {
  if (!(s > 1.0 && s < 1.5)) throw DomainError("s must lie in (1, 1.5), got " + std::to_string(s));
  if (!(std::abs(z) < 1.0)) throw DomainError("z must lie in the open unit disk, got " + format_point(z));
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (!(eps_truncation > 0.0 && eps_truncation < 1.0)) throw DomainError("eps_truncation must lie in (0, 1)");
  if (threads < 0) throw DomainError("threads must be nonnegative");
  if (n_list.empty()) throw DomainError("N_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw DomainError("N_list entries must be at least 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw DomainError("N_list must be strictly ascending");
  }
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"s", c.s},
                     {"z", {c.z.real(), c.z.imag()}},
                     {"N_list", c.n_list},
                     {"trials", c.trials},
                     {"eps_truncation", c.eps_truncation},
                     {"master_seed", c.master_seed},
                     {"threads", c.threads},
                     {"output_path", c.output_path}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  if (!j.is_object()) throw DomainError("run configuration must be a JSON object");
  if (j.contains("s")) c.s = j.at("s").get<double>();
  if (j.contains("z")) {
    const auto& z = j.at("z");
    if (!z.is_array() || z.size() != 2) throw DomainError("z must be a two-element array [re, im]");
    c.z = DiskPoint(z[0].get<double>(), z[1].get<double>());
  }
  if (j.contains("N_list")) c.n_list = j.at("N_list").get<std::vector<int>>();
  if (j.contains("trials")) c.trials = j.at("trials").get<int>();
  if (j.contains("eps_truncation")) c.eps_truncation = j.at("eps_truncation").get<double>();
  if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
  c.validate();
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : r.rows) {
    rows.push_back({{"N", row.n},
                    {"trials", row.trials},
                    {"mc_mean", number_or_null(row.mc_mean)},
                    {"mc_var", number_or_null(row.mc_var)},
                    {"stderr", number_or_null(row.std_error)},
                    {"quad_expectation", number_or_null(row.quad_expectation)},
                    {"ratio", number_or_null(row.ratio)},
                    {"ratio_std", number_or_null(row.ratio_std)},
                    {"bracket_lower", number_or_null(row.bracket_lower)},
                    {"bracket_upper", number_or_null(row.bracket_upper)}});
  }
  const ReportMetadata& m = r.metadata;
  j = nlohmann::json{{"kind", r.kind},
                     {"s", r.s},
                     {"z", {r.z.real(), r.z.imag()}},
                     {"status", r.status},
                     {"rows", rows},
                     {"metadata",
                      {{"seed", m.seed},
                       {"trials", m.trials},
                       {"truncation_policy", m.truncation_policy},
                       {"eps_truncation", m.eps_truncation},
                       {"threads", m.threads},
                       {"resampled_trials", m.resampled_trials},
                       {"wall_time_seconds", m.wall_time_seconds}}}};
  if (r.slopes) {
    const SlopeSummary& s = *r.slopes;
    j["slopes"] = {{"expected_center", s.expected_center},
                   {"mean", number_or_null(s.mean)},
                   {"std_dev", number_or_null(s.std_dev)},
                   {"stderr", number_or_null(s.std_error)},
                   {"trials_used", s.trials_used},
                   {"trials_excluded", s.trials_excluded},
                   {"per_trial", s.slopes}};
  }
}

void from_json(const nlohmann::json& j, ExperimentReport& r) {
  r = ExperimentReport{};
  r.kind = j.at("kind").get<std::string>();
  r.s = j.at("s").get<double>();
  r.z = DiskPoint(j.at("z")[0].get<double>(), j.at("z")[1].get<double>());
  r.status = j.at("status").get<std::string>();
  for (const auto& row : j.at("rows")) {
    ReportRow out;
    out.n = row.at("N").get<int>();
    out.trials = row.at("trials").get<int>();
    out.mc_mean = json_number(row.at("mc_mean"));
    out.mc_var = json_number(row.at("mc_var"));
    out.std_error = json_number(row.at("stderr"));
    out.quad_expectation = json_number(row.at("quad_expectation"));
    out.ratio = json_number(row.at("ratio"));
    out.ratio_std = json_number(row.at("ratio_std"));
    out.bracket_lower = json_number(row.at("bracket_lower"));
    out.bracket_upper = json_number(row.at("bracket_upper"));
    r.rows.push_back(out);
  }
  const auto& m = j.at("metadata");
  r.metadata.seed = m.at("seed").get<std::uint64_t>();
  r.metadata.trials = m.at("trials").get<int>();
  r.metadata.truncation_policy = m.at("truncation_policy").get<std::string>();
  r.metadata.eps_truncation = m.at("eps_truncation").get<double>();
  r.metadata.threads = m.at("threads").get<int>();
  r.metadata.resampled_trials = m.at("resampled_trials").get<int>();
  r.metadata.wall_time_seconds = m.at("wall_time_seconds").get<double>();
  if (j.contains("slopes")) {
    const auto& s = j.at("slopes");
    SlopeSummary out;
    out.expected_center = s.at("expected_center").get<double>();
    out.mean = json_number(s.at("mean"));
    out.std_dev = json_number(s.at("std_dev"));
    out.std_error = json_number(s.at("stderr"));
    out.trials_used = s.at("trials_used").get<int>();
    out.trials_excluded = s.at("trials_excluded").get<int>();
    out.slopes = s.at("per_trial").get<std::vector<double>>();
    r.slopes = out;
  }
}

ExperimentReport run_lln(const RunConfig& config) { return simulate(config, "lln").report; }

ExperimentReport run_divergence(const RunConfig& config) {
  Simulation sim = simulate(config, "divergence");
  SlopeSummary summary;
  summary.expected_center = (3.0 - 2.0 * config.s) / 2.0;
  for (const TrialOutcome& outcome : sim.trials) {
    if (!outcome.error.empty()) continue;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < config.n_list.size(); ++k) {
      if (outcome.s_values[k] > 0.0) {
        xs.push_back(config.n_list[k]);
        ys.push_back(0.5 * std::log(outcome.s_values[k]));
      }
    }
    if (xs.size() < 2) {
      ++summary.trials_excluded;
      continue;
    }
    summary.slopes.push_back(least_squares_slope(xs, ys));
  }
  summary.trials_used = static_cast<int>(summary.slopes.size());
  const double count = static_cast<double>(summary.slopes.size());
  summary.mean = summary.slopes.empty() ? kNaN : pairwise_sum(summary.slopes) / count;
  if (summary.slopes.size() >= 2) {
    std::vector<double> dev(summary.slopes.size());
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = (summary.slopes[i] - summary.mean) * (summary.slopes[i] - summary.mean);
    summary.std_dev = std::sqrt(pairwise_sum(dev) / (count - 1.0));
    summary.std_error = summary.std_dev / std::sqrt(count);
  } else {
    summary.std_dev = kNaN;
    summary.std_error = kNaN;
  }
  sim.report.slopes = std::move(summary);
  return sim.report;
}

std::vector<double> norm_trajectory(const Configuration& config, double s, DiskPoint z, const std::vector<int>& n_list) {
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) out.push_back(std::sqrt(norm_squared(build_theta(config, StatisticParams(s, z, n)))));
  return out;
}

// ---------------------------------------------------------------------------
// Invariant checks

bool CheckReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json::array();
  for (const CheckResult& c : r.results) j.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
}

namespace {

class PointSource {
 public:
  explicit PointSource(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Uniform in the disk of radius `radius`.
  DiskPoint uniform(double radius) {
    const double r = radius * std::sqrt(unit_(engine_));
    const double a = 2.0 * std::numbers::pi * unit_(engine_);
    return std::polar(r, a);
  }

  // Radius 1 - 10^{-3U}: spread over [0, 0.999] with many points near the edge.
  DiskPoint graded() {
    const double r = 1.0 - std::pow(10.0, -3.0 * unit_(engine_));
    const double a = 2.0 * std::numbers::pi * unit_(engine_);
    return std::polar(r, a);
  }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::uint64_t seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

class CheckCollector {
 public:
  // Records the worst violation seen; the check fails if any tuple violates.
  void observe(bool ok, double excess, const std::string& inputs) {
    ++count_;
    if (!ok) {
      ++failures_;
      if (excess > worst_) {
        worst_ = excess;
        worst_inputs_ = inputs;
      }
    }
  }
  CheckResult result(const std::string& name) const {
    CheckResult r{name, failures_ == 0, ""};
    std::ostringstream detail;
    detail.precision(6);
    if (failures_ == 0) {
      detail << count_ << " cases";
    } else {
      detail << failures_ << " of " << count_ << " cases fail; worst excess " << worst_ << " at " << worst_inputs_;
    }
    r.detail = detail.str();
    return r;
  }

 private:
  int count_ = 0;
  int failures_ = 0;
  double worst_ = -1.0;
  std::string worst_inputs_;
};

std::string points_text(std::initializer_list<DiskPoint> pts) {
  std::string s = "[";
  for (DiskPoint p : pts) {
    if (s.size() > 1) s += ", ";
    s += format_point(p);
  }
  return s + "]";
}

void geometry_checks(PointSource& src, int n, std::vector<CheckResult>& out) {
  CheckCollector involution;
  CheckCollector symmetry;
  CheckCollector standard;
  CheckCollector triangle;
  CheckCollector membership;
  for (int i = 0; i < n; ++i) {
    const DiskPoint z = src.uniform(0.99);
    const DiskPoint w = src.uniform(0.99);
    const DiskPoint v = src.uniform(0.99);
    const std::string in = points_text({z, w});

    const double inv = std::abs(mobius_phi(z, mobius_phi(z, w)) - w);
    involution.observe(inv <= 1e-12, inv, in);

    const double sym = std::abs(hyperbolic_distance(z, w) - hyperbolic_distance(w, z));
    symmetry.observe(sym <= 1e-12, sym, in);

    const DiskPoint a = 0.95 / 0.99 * z;
    const DiskPoint b = 0.95 / 0.99 * w;
    const double lhs = 1.0 / (1.0 - std::norm(mobius_phi(a, b)));
    const double rhs = std::norm(1.0 - std::conj(a) * b) / ((1.0 - std::norm(a)) * (1.0 - std::norm(b)));
    const double rel = std::abs(lhs - rhs) / rhs;
    standard.observe(rel <= 1e-12, rel, points_text({a, b}));

    const double excess = hyperbolic_distance(z, v) - hyperbolic_distance(z, w) - hyperbolic_distance(w, v);
    triangle.observe(excess <= 1e-12, excess, points_text({z, w, v}));

    const double d = hyperbolic_distance(z, w);
    const double level = std::floor(d) + 0.5;
    if (std::abs(d - level) > 1e-6) {
      const bool agree = (d < level) == (std::abs(mobius_phi(z, w)) < shell_radius(level));
      membership.observe(agree, 1.0, in);
    }
  }
  out.push_back(involution.result("mobius_involution"));
  out.push_back(symmetry.result("distance_symmetry"));
  out.push_back(standard.result("standard_equality"));
  out.push_back(triangle.result("triangle_inequality"));
  out.push_back(membership.result("ball_membership"));
}

void kernel_checks(PointSource& src, int n, std::vector<CheckResult>& out) {
  CheckCollector cauchy;
  CheckCollector hadamard;
  for (int i = 0; i < n; ++i) {
    const DiskPoint x = src.graded();
    const DiskPoint y = src.graded();
    const double bound = std::sqrt(kernel(x, x).real() * kernel(y, y).real());
    const double excess = std::abs(kernel(x, y)) / bound - 1.0;
    cauchy.observe(excess <= 1e-12, excess, points_text({x, y}));

    const int k = src.integer(1, 6);
    std::vector<DiskPoint> pts;
    double product = 1.0;
    for (int m = 0; m < k; ++m) {
      pts.push_back(src.graded());
      product *= kernel(pts.back(), pts.back()).real();
    }
    const double det = determinant(gram(pts)).real();
    const double ratio = det / product - 1.0;
    std::string in = "[";
    for (const DiskPoint& p : pts) in += format_point(p) + " ";
    hadamard.observe(ratio <= 1e-12, ratio, in + "]");
  }
  out.push_back(cauchy.result("kernel_cauchy_schwarz"));
  out.push_back(hadamard.result("hadamard_inequality"));
}

void identity_checks(PointSource& src, int n, const J3Expansion& j3, std::vector<CheckResult>& out) {
  constexpr double kTol = 1e-10;
  auto discrepancy = [](const CancellationForms& f) {
    return std::abs(f.expanded - f.from_determinants) / std::max(std::abs(f.from_determinants), f.magnitude);
  };
  CheckCollector c2;
  CheckCollector c3;
  CheckCollector c4;
  CheckCollector majorant;
  for (int i = 0; i < n; ++i) {
    const DiskPoint x1 = src.uniform(0.99);
    const DiskPoint x2 = src.uniform(0.99);
    const DiskPoint x3 = src.uniform(0.99);
    const DiskPoint x4 = src.uniform(0.99);
    const CancellationForms f2 = jhat2_forms(x1, x2);
    const double e2 = discrepancy(f2);
    c2.observe(e2 <= kTol, e2, points_text({x1, x2}));
    const double e3 = discrepancy(jhat3_forms(x1, x2, x3, j3));
    c3.observe(e3 <= kTol, e3, points_text({x1, x2, x3}));
    const double e4 = discrepancy(jhat4_forms(x1, x2, x3, x4));
    c4.observe(e4 <= kTol, e4, points_text({x1, x2, x3, x4}));
    const double m = std::abs(f2.expanded) / jhat2_majorant(x1, x2) - 1.0;
    majorant.observe(m <= 1e-12, m, points_text({x1, x2}));
  }
  out.push_back(c2.result("identity_J2"));
  out.push_back(c3.result("identity_J3"));
  out.push_back(c4.result("identity_J4"));
  out.push_back(majorant.result("J2_majorant"));
}

CheckResult r1r2_check() {
  CheckCollector grid;
  constexpr int kGrid = 200;
  for (int i = 0; i < kGrid; ++i) {
    for (int k = 0; k < kGrid; ++k) {
      const double r1 = static_cast<double>(i) / kGrid;
      const double r2 = static_cast<double>(k) / kGrid;
      const double excess = std::sqrt((1.0 - r1) * (1.0 - r2)) - (1.0 - r1 * r1 * r2 * r2);
      grid.observe(excess <= 1e-15, excess, "r1 = " + std::to_string(r1) + ", r2 = " + std::to_string(r2));
    }
  }
  return grid.result("r1r2_inequality");
}

CheckResult refinement_check(const RunConfig& config) {
  const double n = std::min<double>(config.n_list.back(), kMaxQuadratureShells);
  QuadratureOptions refined;
  refined.extra_doublings = 1;
  CheckResult result{"quadrature_refinement", true, ""};
  std::ostringstream detail;
  detail.precision(6);
  auto compare = [&](const char* label, const MomentReport& coarse, const MomentReport& fine) {
    const double change = std::abs(fine.value - coarse.value);
    const bool ok = change <= coarse.abs_error_estimate;
    result.passed = result.passed && ok;
    detail << label << ": change " << change << " vs estimate " << coarse.abs_error_estimate << (ok ? "; " : " FAIL; ");
  };
  try {
    compare("E[S_N1]", expectation_S_N1(config.s, config.z, n), expectation_S_N1(config.s, config.z, n, refined));
    compare("I_N1", integral_I_N1(config.s, config.z, n), integral_I_N1(config.s, config.z, n, refined));
    compare("I_N2", integral_I_N2(config.s, config.z, n), integral_I_N2(config.s, config.z, n, refined));
  } catch (const std::exception& e) {
    result.passed = false;
    detail << e.what();
  }
  result.detail = detail.str() + "N = " + std::to_string(n) + ", s = " + std::to_string(config.s) + ", z = " + format_point(config.z);
  return result;
}

CheckResult root_count_check(PointSource& src, int samples) {
  const std::array<double, 3> radii{0.5, 0.8, shell_radius(3.0)};
  CheckCollector agree;
  for (int i = 0; i < samples; ++i) {
    const int degree = src.integer(10, 500);
    const std::uint64_t seed = src.seed();
    const double rho = radii[static_cast<std::size_t>(i) % radii.size()];
    const std::string in = "degree " + std::to_string(degree) + ", seed " + std::to_string(seed) + ", rho " + std::to_string(rho);
    try {
      const GafSample g = draw_gaf(degree, seed);
      const auto roots = find_roots(g, rho);
      const int winding = count_zeros_winding(g, rho);
      const int diff = std::abs(static_cast<int>(roots.size()) - winding);
      agree.observe(diff == 0, diff, in);
    } catch (const std::exception& e) {
      agree.observe(false, 0.0, in + ": " + e.what());
    }
  }
  return agree.result("root_count_agreement");
}

CheckResult mean_count_check(const RunConfig& config) {
  constexpr double kShells = 2.0;
  const double expected = std::pow(std::sinh(kShells / 2.0), 2);
  std::vector<double> counts(static_cast<std::size_t>(config.trials));
  const std::uint64_t master = config.master_seed ^ kCountStream;
  CheckResult result{"mean_count_N2", false, ""};
  try {
    parallel_for(counts.size(), config.threads, [&](std::size_t t) {
      const Configuration c = sample_disk(kShells, config.eps_truncation, stream_seed(master, t));
      counts[t] = static_cast<double>(c.points.size());
    });
  } catch (const std::exception& e) {
    result.detail = e.what();
    return result;
  }
  const double n = static_cast<double>(counts.size());
  const double mean = pairwise_sum(counts) / n;
  std::vector<double> dev(counts.size());
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = (counts[i] - mean) * (counts[i] - mean);
  const double se = counts.size() > 1 ? std::sqrt(pairwise_sum(dev) / (n - 1.0) / n) : kNaN;
  result.passed = std::abs(mean - expected) <= 3.0 * se;
  std::ostringstream detail;
  detail.precision(8);
  detail << "mean " << mean << " vs sinh^2(1) = " << expected << ", stderr " << se << ", trials " << counts.size();
  result.detail = detail.str();
  return result;
}

}  // namespace

CheckReport run_checks(const RunConfig& config, const CheckOptions& options) {
  config.validate();
  CheckReport report;
  PointSource src(config.master_seed);
  geometry_checks(src, options.random_tuples, report.results);
  kernel_checks(src, options.random_tuples, report.results);
  identity_checks(src, options.random_tuples, options.j3, report.results);
  report.results.push_back(r1r2_check());
  report.results.push_back(refinement_check(config));
  report.results.push_back(root_count_check(src, options.root_samples));
  report.results.push_back(mean_count_check(config));
  return report;
}

// ---------------------------------------------------------------------------
// Output

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "N,trials,mc_mean,mc_var,stderr,quad_expectation,ratio,bracket_lower,bracket_upper\n";
  char buf[512];
  for (const ReportRow& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.n, r.trials, r.mc_mean,
                  r.mc_var, r.std_error, r.quad_expectation, r.ratio, r.bracket_lower, r.bracket_upper);
    out << buf;
  }
}

void write_json(const ExperimentReport& report, std::ostream& out) {
  const nlohmann::json j = report;
  out << j.dump(2) << '\n';
}

void emit(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  auto write = [&](std::ostream& out) {
    if (format == ReportFormat::csv) {
      write_csv(report, out);
    } else {
      write_json(report, out);
    }
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing report to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path + " for writing");
  write(file);
  file.close();
  if (!file) throw IoError("failed writing report to " + path);
}

}  // namespace bergman
