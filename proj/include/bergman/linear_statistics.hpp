#pragma once

#include <vector>

#include "bergman/gaf.hpp"
#include "bergman/hyperbolic.hpp"
#include "bergman/kernel.hpp"

namespace bergman {

/// Theta = sum_i c_i K(., x_i) with c_i = T_z(x_i)^s over the nodes x_i in U_N(z).
struct WeightedKernelSum {
  std::vector<DiskPoint> nodes;
  std::vector<double> coefficients;
  StatisticParams params;
};

/// A Bergman function sum_n a_n e_n in the orthonormal basis e_n(w) = sqrt(n+1) w^n.
struct FunctionCoefficients {
  std::vector<Complex> coeffs;
};

/// Throws CoverageError unless U_N(z) lies inside the configuration's validity disk.
void require_coverage(const Configuration& config, const StatisticParams& params);

[[nodiscard]] WeightedKernelSum build_theta(const Configuration& config, const StatisticParams& params);

/// S_N = ||Theta||^2 = sum_{i,j} c_i c_j K(x_i, x_j).
[[nodiscard]] double norm_squared(const WeightedKernelSum& theta);

[[nodiscard]] Complex evaluate_function(const FunctionCoefficients& f, DiskPoint x);

/// K(., w) truncated to degree D: a_n = sqrt(n+1) conj(w)^n.
[[nodiscard]] FunctionCoefficients truncated_kernel(DiskPoint w, int degree);

/// <f, Theta> written as sum_i c_i f(x_i).
[[nodiscard]] Complex pair(const WeightedKernelSum& theta, const FunctionCoefficients& f);

/// Entry k = sum over points with k <= d_h(z, x) < k+1 of e^{-s d_h(z, x)} f(x), k < N.
[[nodiscard]] std::vector<Complex> shell_sums(const Configuration& config, const StatisticParams& params,
                                              const FunctionCoefficients& f);

}  // namespace bergman
