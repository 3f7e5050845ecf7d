#pragma once

#include <optional>
#include <span>
#include <utility>

#include "bergman/hyperbolic.hpp"
#include "bergman/quadrature.hpp"
#include "json.hpp"

namespace bergman {

/// A quadrature value with its refinement error and the mesh that produced it.
struct MomentReport {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  GradedMesh mesh;
  std::optional<StatisticParams> params;
};

void to_json(nlohmann::json& j, const MomentReport& r);

/// Largest N accepted by the two-dimensional integral I_{N,2}.
inline constexpr double kMaxQuadratureShells = 12.0;

// The overloads taking (s, z, shells) accept real shells >= 0 so that the N -> 0
// limit can be probed; shells = 0 gives an empty domain and value 0.

/// E[S_{N,1}] = 2(1-|z|^2)^{-2} int_0^{r_N} (1-r)^{2s-4}(1+r)^{-(2s+4)} r (|z|^4 r^4 + 4|z|^2 r^2 + 1) dr.
[[nodiscard]] MomentReport expectation_S_N1(const StatisticParams& params, const QuadratureOptions& options = {});
[[nodiscard]] MomentReport expectation_S_N1(double s, DiskPoint z, double shells, const QuadratureOptions& options = {});

/// (|z|^4 + 4|z|^2 + 1) / (2^6 (3-2s) (1-|z|^2)^2) * (e^N + 1)^{3-2s}.
[[nodiscard]] double asymptotic_S_N1(const StatisticParams& params);
[[nodiscard]] double asymptotic_S_N1(double s, DiskPoint z, double shells);

/// I_{N,1} = 4(1-|z|^2)^{-2} (int_0^{r_N} (1-r)^{s-2}(1+r)^{-(s+2)} r dr)^2.
[[nodiscard]] MomentReport integral_I_N1(const StatisticParams& params, const QuadratureOptions& options = {});
[[nodiscard]] MomentReport integral_I_N1(double s, DiskPoint z, double shells, const QuadratureOptions& options = {});
/// The N -> infinity limit of I_{N,1}.
[[nodiscard]] MomentReport integral_I_N1_limit(double s, DiskPoint z, const QuadratureOptions& options = {});

/// R(r1, r2) = |z|^4 t^3 + (3|z|^4 + 8|z|^2) t^2 + (8|z|^2 + 3) t + 1 with t = r1^2 r2^2.
[[nodiscard]] double radial_R(double z_abs, double r1, double r2);

/// I_{N,2} = 4(1-|z|^2)^{-2} int int T(r1)^s T(r2)^s r1 r2 (1 - r1^2 r2^2)^{-5} R(r1, r2) dr1 dr2
/// with T(r) = (1-r)/(1+r), over [0, r_N]^2. Throws DomainError for N > kMaxQuadratureShells.
[[nodiscard]] MomentReport integral_I_N2(const StatisticParams& params, const QuadratureOptions& options = {});
[[nodiscard]] MomentReport integral_I_N2(double s, DiskPoint z, double shells, const QuadratureOptions& options = {});

/// E[S_N] = E[S_{N,1}] + I_{N,1} - I_{N,2}.
[[nodiscard]] MomentReport expected_S_N(const StatisticParams& params, const QuadratureOptions& options = {});
[[nodiscard]] MomentReport expected_S_N(double s, DiskPoint z, double shells, const QuadratureOptions& options = {});

struct ExpectationBracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// Constants multiplying e^{(3-2s)N} in the large-N two-sided bound on E[S_N].
[[nodiscard]] ExpectationBracket bracket_constants(double s, DiskPoint z);
[[nodiscard]] ExpectationBracket expectation_bracket(const StatisticParams& params);
[[nodiscard]] ExpectationBracket expectation_bracket(double s, DiskPoint z, double shells);

/// Ordinary least-squares slope of ys against xs.
[[nodiscard]] double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

/// Slope of log Var against N. Needs at least three (N, Var) pairs with Var > 0.
[[nodiscard]] double variance_rate(std::span<const std::pair<int, double>> n_and_variance);

}  // namespace bergman
