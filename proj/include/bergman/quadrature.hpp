#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bergman {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

[[nodiscard]] QuadratureRule gauss_legendre(int n);

/// Geometric cells in the gap variable u = 1 - r, from u_max down to u_min.
/// Cell endpoints are u_max * ratio^k, the last one clipped at u_min.
struct GradedMesh {
  double u_min = 0.0;
  double u_max = 1.0;
  double ratio = 0.5;
  int levels = 0;
  int nodes_per_cell = 16;

  [[nodiscard]] std::vector<std::pair<double, double>> cells() const;
};

void to_json(nlohmann::json& j, const GradedMesh& m);
void from_json(const nlohmann::json& j, GradedMesh& m);

[[nodiscard]] GradedMesh make_graded_mesh(double u_min, double u_max, double ratio, int nodes_per_cell);

struct QuadratureOptions {
  double tol = 1e-8;
  int max_doublings = 12;
  int nodes_per_cell = 16;
  /// Further doublings performed after the tolerance is met (refinement studies).
  int extra_doublings = 0;
};

struct QuadratureResult {
  double value = 0.0;
  /// max(|fine - coarse|, rounding floor) between the last two mesh doublings.
  double abs_error_estimate = 0.0;
  GradedMesh mesh;
};

/// Integral of g(u) over [u_min, 1] on geometrically graded cells. g may blow up
/// like u^alpha at u = 0; u_min = 0 is allowed when alpha > -1, in which case the
/// mesh stops at a cutoff chosen from alpha and the u^alpha tail is added analytically.
[[nodiscard]] QuadratureResult integrate_gap(const std::function<double(double)>& g, double alpha, double u_min,
                                             const QuadratureOptions& options = {});

/// Integral of f(r) over [0, r_upper] where f ~ (1-r)^alpha near r = 1.
[[nodiscard]] QuadratureResult integrate_graded(const std::function<double(double)>& f, double alpha,
                                                double r_upper, double tol = 1e-8);

/// Tensor-product version of integrate_gap over [u_min, 1]^2.
[[nodiscard]] QuadratureResult integrate_gap_2d(const std::function<double(double, double)>& g, double u_min,
                                                const QuadratureOptions& options = {.tol = 1e-8,
                                                                                   .max_doublings = 5,
                                                                                   .nodes_per_cell = 16});

}  // namespace bergman
