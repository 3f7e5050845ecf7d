#include "bergman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInitialRatio = 0.5;
constexpr double kMinCutoff = 1e-8;

struct Samples {
  std::vector<double> u;
  std::vector<double> w;
};

Samples mesh_samples(const GradedMesh& mesh, const QuadratureRule& rule) {
  Samples s;
  for (const auto& [lo, hi] : mesh.cells()) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      s.u.push_back(mid + half * rule.nodes[k]);
      s.w.push_back(half * rule.weights[k]);
    }
  }
  return s;
}

struct Pass {
  double value;
  double magnitude;  // sum |g w|, for the rounding floor
};

void require_finite(double v) {
  if (!std::isfinite(v)) throw NonConvergenceError("integrand is not finite on the quadrature mesh");
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = rule.weights[hi] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::vector<std::pair<double, double>> GradedMesh::cells() const {
  std::vector<std::pair<double, double>> out;
  double hi = u_max;
  while (hi > u_min) {
    const double lo = std::max(hi * ratio, u_min);
    out.emplace_back(lo, hi);
    hi = lo;
  }
  return out;
}

GradedMesh make_graded_mesh(double u_min, double u_max, double ratio, int nodes_per_cell) {
  if (!(u_min > 0.0) || !(u_max > u_min)) throw DomainError("graded mesh needs 0 < u_min < u_max");
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("graded mesh ratio must lie in (0, 1)");
  GradedMesh mesh{u_min, u_max, ratio, 0, nodes_per_cell};
  mesh.levels = static_cast<int>(mesh.cells().size());
  return mesh;
}

void to_json(nlohmann::json& j, const GradedMesh& m) {
  j = nlohmann::json{{"u_min", m.u_min},
                     {"u_max", m.u_max},
                     {"ratio", m.ratio},
                     {"levels", m.levels},
                     {"nodes_per_cell", m.nodes_per_cell}};
}

void from_json(const nlohmann::json& j, GradedMesh& m) {
  m.u_min = j.at("u_min").get<double>();
  m.u_max = j.at("u_max").get<double>();
  m.ratio = j.at("ratio").get<double>();
  m.levels = j.at("levels").get<int>();
  m.nodes_per_cell = j.at("nodes_per_cell").get<int>();
}

QuadratureResult integrate_gap(const std::function<double(double)>& g, double alpha, double u_min,
                               const QuadratureOptions& options) {
  if (!(alpha > -2.0 && alpha < 1.0)) throw DomainError("endpoint exponent alpha must lie in (-2, 1)");
  if (!(u_min >= 0.0 && u_min < 1.0)) throw DomainError("lower gap must lie in [0, 1)");

  // Integrable endpoint: stop the mesh at a small cutoff and add the u^alpha tail in
  // closed form. The tail formula is exact up to a relative O(cutoff) term, and the
  // floor keeps r = 1 - u distinguishable from 1 for integrands written in r.
  double cutoff = u_min;
  if (u_min == 0.0) {
    if (!(alpha > -1.0)) throw DomainError("integral to r = 1 diverges unless alpha > -1");
    cutoff = std::min(0.25, std::max(std::pow(1e-3 * options.tol, 1.0 / (alpha + 1.0)), kMinCutoff));
  }
  const QuadratureRule rule = gauss_legendre(options.nodes_per_cell);

  auto run = [&](double ratio) -> std::pair<Pass, GradedMesh> {
    const GradedMesh mesh = make_graded_mesh(cutoff, 1.0, ratio, options.nodes_per_cell);
    const Samples s = mesh_samples(mesh, rule);
    Pass p{0.0, 0.0};
    for (std::size_t k = 0; k < s.u.size(); ++k) {
      const double v = g(s.u[k]) * s.w[k];
      require_finite(v);
      p.value += v;
      p.magnitude += std::abs(v);
    }
    return {p, mesh};
  };

  double tail = 0.0;
  if (u_min == 0.0) {
    tail = g(cutoff) * cutoff / (alpha + 1.0);
    require_finite(tail);
  }

  double ratio = kInitialRatio;
  Pass coarse = run(ratio).first;
  int remaining = -1;
  for (int d = 0;; ++d) {
    if (remaining < 0 && d >= options.max_doublings) {
      throw NonConvergenceError("graded quadrature did not converge within the refinement cap");
    }
    ratio = std::sqrt(ratio);
    const auto [fine, mesh] = run(ratio);
    const double diff = std::abs(fine.value - coarse.value);
    const double floor = 32.0 * kEps * fine.magnitude;
    const double value = fine.value + tail;
    if (remaining < 0 && (diff <= options.tol * std::abs(value) || diff <= floor)) remaining = options.extra_doublings;
    if (remaining == 0) return {value, std::max(diff, floor) + std::abs(tail) * cutoff, mesh};
    if (remaining > 0) --remaining;
    coarse = fine;
  }
}

QuadratureResult integrate_graded(const std::function<double(double)>& f, double alpha, double r_upper, double tol) {
  if (!(r_upper >= 0.0 && r_upper <= 1.0)) throw DomainError("upper radius must lie in [0, 1]");
  if (r_upper == 0.0) return {0.0, 0.0, GradedMesh{1.0, 1.0, kInitialRatio, 0, 16}};
  return integrate_gap([&](double u) { return f(1.0 - u); }, alpha, 1.0 - r_upper, {.tol = tol});
}

QuadratureResult integrate_gap_2d(const std::function<double(double, double)>& g, double u_min,
                                  const QuadratureOptions& options) {
  if (!(u_min > 0.0 && u_min < 1.0)) throw DomainError("2D graded quadrature needs 0 < u_min < 1");
  const QuadratureRule rule = gauss_legendre(options.nodes_per_cell);

  auto run = [&](double ratio) -> std::pair<Pass, GradedMesh> {
    const GradedMesh mesh = make_graded_mesh(u_min, 1.0, ratio, options.nodes_per_cell);
    const Samples s = mesh_samples(mesh, rule);
    Pass p{0.0, 0.0};
    // Per-row partial sums keep the accumulation order fixed and the error small.
    for (std::size_t a = 0; a < s.u.size(); ++a) {
      double row = 0.0;
      double row_mag = 0.0;
      for (std::size_t b = 0; b < s.u.size(); ++b) {
        const double v = g(s.u[a], s.u[b]) * s.w[b];
        require_finite(v);
        row += v;
        row_mag += std::abs(v);
      }
      p.value += row * s.w[a];
      p.magnitude += row_mag * s.w[a];
    }
    return {p, mesh};
  };

  double ratio = kInitialRatio;
  Pass coarse = run(ratio).first;
  int remaining = -1;
  for (int d = 0;; ++d) {
    if (remaining < 0 && d >= options.max_doublings) {
      throw NonConvergenceError("2D graded quadrature did not converge within the refinement cap");
    }
    ratio = std::sqrt(ratio);
    const auto [fine, mesh] = run(ratio);
    const double diff = std::abs(fine.value - coarse.value);
    const double floor = 32.0 * kEps * fine.magnitude;
    if (remaining < 0 && (diff <= options.tol * std::abs(fine.value) || diff <= floor)) remaining = options.extra_doublings;
    if (remaining == 0) return {fine.value, std::max(diff, floor), mesh};
    if (remaining > 0) --remaining;
    coarse = fine;
  }
}

}  // namespace bergman
