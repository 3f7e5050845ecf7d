#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bergman/hyperbolic.hpp"
#include "bergman/kernel.hpp"
#include "json.hpp"

namespace bergman {

/// Coefficients g_0..g_M of a truncated hyperbolic GAF sum_n g_n w^n.
struct GafSample {
  std::vector<Complex> coefficients;
  std::uint64_t seed = 0;

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
};

/// Zeros of one truncated GAF inside |w| < validity_radius.
struct Configuration {
  std::vector<DiskPoint> points;
  double validity_radius = 0.0;
  /// Hyperbolic radius N' of the sampled disk U_{N'}(0); validity_radius = r_{N'}.
  double shells = 0.0;
  int truncation_degree = 0;
  std::uint64_t seed = 0;
  /// sqrt(E|tail|^2) of the dropped series terms on |w| = validity_radius.
  double tail_bound = 0.0;
};

void to_json(nlohmann::json& j, const Configuration& c);
void from_json(const nlohmann::json& j, Configuration& c);

/// Default truncation accuracy eps used by the experiment harness.
inline constexpr double kDefaultTruncationEps = 1e-6;

/// Smallest M >= 1 with rho^{2(M+1)} / (1 - rho^2) < eps^2.
[[nodiscard]] int truncation_degree(double rho, double eps);

/// sqrt(rho^{2(M+1)} / (1 - rho^2)).
[[nodiscard]] double truncation_tail_bound(double rho, int degree);

/// i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)); g_M != 0.
[[nodiscard]] GafSample draw_gaf(int degree, std::uint64_t seed);

struct RootFinderOptions {
  int max_iterations = 200;
  double tolerance = 1e-13;
};

/// All roots of sum_k c_k w^k by Aberth-Ehrlich iteration. Zero low-order
/// coefficients give exact roots at the origin; zero top coefficients are dropped.
/// Throws NonConvergenceError when the iteration cap is hit.
[[nodiscard]] std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients,
                                                    const RootFinderOptions& options = {});

/// Roots with |w| < rho, each with root_residual <= 1e-10.
[[nodiscard]] std::vector<DiskPoint> find_roots(std::span<const Complex> coefficients, double rho,
                                                const RootFinderOptions& options = {});
[[nodiscard]] std::vector<DiskPoint> find_roots(const GafSample& sample, double rho,
                                                const RootFinderOptions& options = {});

/// Backward error |p(x)| / sum_k |c_k| |x|^k.
[[nodiscard]] double root_residual(std::span<const Complex> coefficients, Complex x);

/// Number of zeros in |w| < rho from the winding of p along |w| = rho, tracked by
/// adaptive subdivision. Throws NonConvergenceError if a zero sits too close to the circle.
[[nodiscard]] int count_zeros_winding(std::span<const Complex> coefficients, double rho);
[[nodiscard]] int count_zeros_winding(const GafSample& sample, double rho);

/// Hyperbolic radius N' of the origin-centered disk sampled for params: N itself
/// when z = 0, else ceil(N + d_h(0, z) + 1).
[[nodiscard]] int sampling_shells(const StatisticParams& params);

/// Zeros of a truncated GAF restricted to U_{shells}(0).
[[nodiscard]] Configuration sample_disk(double shells, double eps, std::uint64_t seed);

/// Configuration whose validity disk contains U_N(z).
[[nodiscard]] Configuration sample_configuration(const StatisticParams& params, double eps, std::uint64_t seed);

}  // namespace bergman
