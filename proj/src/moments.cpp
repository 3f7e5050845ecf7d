#include "bergman/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

void validate(double s, DiskPoint z, double shells) {
  if (!(s > 1.0 && s < 1.5)) throw DomainError("exponent s must lie in (1, 3/2)");
  require_in_disk(z, "center z");
  if (!(shells >= 0.0)) throw DomainError("shell count must be nonnegative");
}

// (1 - |z|^2)^{-2}
double center_factor(DiskPoint z) {
  const double a = std::abs(z);
  const double g = (1.0 - a) * (1.0 + a);
  return 1.0 / (g * g);
}

double angular_factor(DiskPoint z) {
  const double a2 = std::norm(z);
  return a2 * a2 + 4.0 * a2 + 1.0;
}

MomentReport empty_report(std::optional<StatisticParams> params) {
  return MomentReport{0.0, 0.0, GradedMesh{1.0, 1.0, 0.5, 0, 16}, params};
}

// int_0^{r_N} (1-r)^{s-2} (1+r)^{-(s+2)} r dr, in the gap variable.
QuadratureResult first_moment_integral(double s, double u_min, const QuadratureOptions& options) {
  return integrate_gap([s](double u) { return std::pow(u, s - 2.0) * std::pow(2.0 - u, -(s + 2.0)) * (1.0 - u); },
                       s - 2.0, u_min, options);
}

MomentReport squared_report(const QuadratureResult& q, double prefactor, std::optional<StatisticParams> params) {
  const double v = q.value;
  const double e = q.abs_error_estimate;
  return MomentReport{prefactor * v * v, prefactor * (2.0 * std::abs(v) * e + e * e), q.mesh, params};
}

}  // namespace

void to_json(nlohmann::json& j, const MomentReport& r) {
  j = nlohmann::json{{"value", r.value}, {"abs_error_estimate", r.abs_error_estimate}, {"mesh", r.mesh}};
  if (r.params) {
    j["params"] = {{"s", r.params->s()},
                   {"z", {r.params->z().real(), r.params->z().imag()}},
                   {"N", r.params->shells()}};
  }
}

MomentReport expectation_S_N1(double s, DiskPoint z, double shells, const QuadratureOptions& options) {
  validate(s, z, shells);
  if (shells == 0.0) return empty_report(std::nullopt);
  const double a2 = std::norm(z);
  const auto g = [s, a2](double u) {
    const double r = 1.0 - u;
    const double r2 = r * r;
    return std::pow(u, 2.0 * s - 4.0) * std::pow(2.0 - u, -(2.0 * s + 4.0)) * r * (a2 * a2 * r2 * r2 + 4.0 * a2 * r2 + 1.0);
  };
  const QuadratureResult q = integrate_gap(g, 2.0 * s - 4.0, shell_gap(shells), options);
  const double pref = 2.0 * center_factor(z);
  return MomentReport{pref * q.value, pref * q.abs_error_estimate, q.mesh, std::nullopt};
}

MomentReport expectation_S_N1(const StatisticParams& params, const QuadratureOptions& options) {
  MomentReport r = expectation_S_N1(params.s(), params.z(), params.shells(), options);
  r.params = params;
  return r;
}

double asymptotic_S_N1(double s, DiskPoint z, double shells) {
  validate(s, z, shells);
  const double constant = angular_factor(z) * center_factor(z) / (64.0 * (3.0 - 2.0 * s));
  return constant * std::pow(std::exp(shells) + 1.0, 3.0 - 2.0 * s);
}

double asymptotic_S_N1(const StatisticParams& params) {
  return asymptotic_S_N1(params.s(), params.z(), params.shells());
}

MomentReport integral_I_N1(double s, DiskPoint z, double shells, const QuadratureOptions& options) {
  validate(s, z, shells);
  if (shells == 0.0) return empty_report(std::nullopt);
  return squared_report(first_moment_integral(s, shell_gap(shells), options), 4.0 * center_factor(z), std::nullopt);
}

MomentReport integral_I_N1(const StatisticParams& params, const QuadratureOptions& options) {
  MomentReport r = integral_I_N1(params.s(), params.z(), params.shells(), options);
  r.params = params;
  return r;
}

MomentReport integral_I_N1_limit(double s, DiskPoint z, const QuadratureOptions& options) {
  validate(s, z, 0.0);
  return squared_report(first_moment_integral(s, 0.0, options), 4.0 * center_factor(z), std::nullopt);
}

double radial_R(double z_abs, double r1, double r2) {
  const double a2 = z_abs * z_abs;
  const double a4 = a2 * a2;
  const double t = r1 * r1 * r2 * r2;
  return ((a4 * t + (3.0 * a4 + 8.0 * a2)) * t + (8.0 * a2 + 3.0)) * t + 1.0;
}

MomentReport integral_I_N2(double s, DiskPoint z, double shells, const QuadratureOptions& options) {
  validate(s, z, shells);
  if (shells > kMaxQuadratureShells) {
    throw DomainError("I_{N,2} quadrature supports N <= " + std::to_string(kMaxQuadratureShells));
  }
  if (shells == 0.0) return empty_report(std::nullopt);
  const double a = std::abs(z);
  const auto g = [s, a](double u1, double u2) {
    const double r1 = 1.0 - u1;
    const double r2 = 1.0 - u2;
    const double p = r1 * r2;
    // 1 - r1^2 r2^2 = (1 - p)(1 + p) with 1 - p = u1 + u2 - u1 u2.
    const double gap = (u1 + u2 - u1 * u2) * (1.0 + p);
    const double g2 = gap * gap;
    const double t1 = std::pow(u1 / (2.0 - u1), s);
    const double t2 = std::pow(u2 / (2.0 - u2), s);
    return t1 * t2 * p / (g2 * g2 * gap) * radial_R(a, r1, r2);
  };
  QuadratureOptions opts = options;
  opts.max_doublings = std::min(opts.max_doublings, 5);
  const QuadratureResult q = integrate_gap_2d(g, shell_gap(shells), opts);
  const double pref = 4.0 * center_factor(z);
  return MomentReport{pref * q.value, pref * q.abs_error_estimate, q.mesh, std::nullopt};
}

MomentReport integral_I_N2(const StatisticParams& params, const QuadratureOptions& options) {
  MomentReport r = integral_I_N2(params.s(), params.z(), params.shells(), options);
  r.params = params;
  return r;
}

MomentReport expected_S_N(double s, DiskPoint z, double shells, const QuadratureOptions& options) {
  const MomentReport s1 = expectation_S_N1(s, z, shells, options);
  const MomentReport i1 = integral_I_N1(s, z, shells, options);
  const MomentReport i2 = integral_I_N2(s, z, shells, options);
  return MomentReport{s1.value + i1.value - i2.value,
                      s1.abs_error_estimate + i1.abs_error_estimate + i2.abs_error_estimate, i2.mesh, std::nullopt};
}

MomentReport expected_S_N(const StatisticParams& params, const QuadratureOptions& options) {
  MomentReport r = expected_S_N(params.s(), params.z(), params.shells(), options);
  r.params = params;
  return r;
}

ExpectationBracket bracket_constants(double s, DiskPoint z) {
  validate(s, z, 0.0);
  const double common = angular_factor(z) * center_factor(z) / (3.0 - 2.0 * s);
  const double lower = (12.0 - 3.0 * s - 5.0 * std::pow(2.0, s - 1.0)) * common / (512.0 * (4.0 - s));
  const double upper = 5.0 * common / 128.0;
  return {lower, upper};
}

ExpectationBracket expectation_bracket(double s, DiskPoint z, double shells) {
  const ExpectationBracket c = bracket_constants(s, z);
  validate(s, z, shells);
  const double growth = std::exp((3.0 - 2.0 * s) * shells);
  return {c.lower * growth, c.upper * growth};
}

ExpectationBracket expectation_bracket(const StatisticParams& params) {
  return expectation_bracket(params.s(), params.z(), params.shells());
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw InsufficientDataError("slope fit needs matching data of size >= 2");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw InsufficientDataError("slope fit needs at least two distinct abscissae");
  return sxy / sxx;
}

double variance_rate(std::span<const std::pair<int, double>> n_and_variance) {
  if (n_and_variance.size() < 3) throw InsufficientDataError("variance rate needs at least three values of N");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [n, var] : n_and_variance) {
    if (!(var > 0.0)) throw InsufficientDataError("variance must be positive to take its logarithm");
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log(var));
  }
  return least_squares_slope(xs, ys);
}

}  // namespace bergman
