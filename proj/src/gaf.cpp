#include "bergman/gaf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/rng.hpp"

namespace bergman {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRootResidualLimit = 1e-10;

// Hot loops use explicit real arithmetic: std::complex products go through the
// NaN-recovering libgcc helpers, which dominates the O(M^2) Aberth sweeps.
struct C {
  double re;
  double im;
};

inline C mul(C a, C b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline C add(C a, C b) { return {a.re + b.re, a.im + b.im}; }
inline double abs2(C a) { return a.re * a.re + a.im * a.im; }
inline C from(Complex z) { return {z.real(), z.imag()}; }
inline Complex to(C z) { return {z.re, z.im}; }

struct NewtonEval {
  Complex ratio;    // p / p'
  double residual;  // |p| / sum |c_k| |z|^k
  bool flat;        // p' vanished
};

// Horner for p and p' (reversed polynomial in 1/z outside the unit circle).
NewtonEval newton_eval(std::span<const C> c, std::span<const double> absc, Complex zc) {
  const std::size_t n = c.size() - 1;
  const C z = from(zc);
  const double az = std::abs(zc);
  if (az <= 1.0) {
    C p = c[n];
    C dp{0.0, 0.0};
    double s = absc[n];
    for (std::size_t k = n; k-- > 0;) {
      dp = add(mul(dp, z), p);
      p = add(mul(p, z), c[k]);
      s = s * az + absc[k];
    }
    const double res = s > 0.0 ? std::sqrt(abs2(p)) / s : 0.0;
    if (abs2(dp) == 0.0) return {Complex{}, res, true};
    return {to(p) / to(dp), res, false};
  }
  const Complex yc = 1.0 / zc;
  const C y = from(yc);
  const double ay = 1.0 / az;
  C q = c[0];
  C dq{0.0, 0.0};
  double s = absc[0];
  for (std::size_t k = 1; k <= n; ++k) {
    dq = add(mul(dq, y), q);
    q = add(mul(q, y), c[k]);
    s = s * ay + absc[k];
  }
  const Complex qq = to(q);
  const Complex denom = static_cast<double>(n) * qq - yc * to(dq);
  const double res = s > 0.0 ? std::sqrt(abs2(q)) / s : 0.0;
  if (std::norm(denom) == 0.0) return {Complex{}, res, true};
  return {zc * qq / denom, res, false};
}

// Starting points on circles read off the upper convex hull of (k, log|c_k|).
std::vector<Complex> initial_guesses(std::span<const Complex> c) {
  const std::size_t n = c.size() - 1;
  std::vector<std::pair<double, double>> hull;
  for (std::size_t k = 0; k <= n; ++k) {
    if (c[k] == Complex{}) continue;
    const std::pair<double, double> pt{static_cast<double>(k), std::log(std::abs(c[k]))};
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  std::vector<Complex> z;
  z.reserve(n);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const auto m = static_cast<std::size_t>(hull[h + 1].first - hull[h].first);
    const double radius = std::exp((hull[h].second - hull[h + 1].second) / static_cast<double>(m));
    const double offset = kTwoPi * hull[h].first / static_cast<double>(n) + 0.7;
    for (std::size_t t = 0; t < m; ++t) {
      z.push_back(std::polar(radius, offset + kTwoPi * static_cast<double>(t) / static_cast<double>(m)));
    }
  }
  return z;
}

std::vector<Complex> aberth(std::span<const Complex> coeffs, const RootFinderOptions& options) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<C> c(coeffs.size());
  std::vector<double> absc(coeffs.size());
  for (std::size_t k = 0; k <= n; ++k) {
    c[k] = from(coeffs[k]);
    absc[k] = std::abs(coeffs[k]);
  }
  if (n == 1) return {-coeffs[0] / coeffs[1]};

  std::vector<Complex> z = initial_guesses(coeffs);
  std::vector<double> zr(n);
  std::vector<double> zi(n);
  for (std::size_t i = 0; i < n; ++i) {
    zr[i] = z[i].real();
    zi[i] = z[i].imag();
  }
  std::vector<char> done(n, 0);
  // Horner's rounding error is bounded by about 2n eps times sum |c_k||z|^k.
  const double residual_floor = 4.0 * static_cast<double>(n) * kEps;

  for (int it = 0; it < options.max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Complex zc{zr[i], zi[i]};
      NewtonEval ev = newton_eval(c, absc, zc);
      if (ev.residual <= residual_floor) {
        done[i] = 1;
        continue;
      }
      all_done = false;
      if (ev.flat) {
        // p' = 0 off a root: nudge and retry next sweep.
        zr[i] += 1e-3 * (1.0 + std::abs(zc));
        continue;
      }
      double sr = 0.0;
      double si = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double dr = zr[i] - zr[j];
        const double di = zi[i] - zi[j];
        const double inv = 1.0 / (dr * dr + di * di);
        sr += dr * inv;
        si -= di * inv;
      }
      const Complex ratio = ev.ratio;
      const Complex w = ratio / (1.0 - ratio * Complex{sr, si});
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        throw NonConvergenceError("Aberth iteration produced a non-finite correction");
      }
      zr[i] -= w.real();
      zi[i] -= w.imag();
      if (std::abs(w) <= options.tolerance * std::hypot(zr[i], zi[i])) done[i] = 1;
    }
    if (all_done) {
      std::vector<Complex> roots(n);
      for (std::size_t i = 0; i < n; ++i) roots[i] = {zr[i], zi[i]};
      return roots;
    }
  }
  throw NonConvergenceError("Aberth iteration did not converge within " + std::to_string(options.max_iterations) +
                            " sweeps (degree " + std::to_string(n) + ")");
}

}  // namespace

void to_json(nlohmann::json& j, const Configuration& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const DiskPoint& p : c.points) pts.push_back({p.real(), p.imag()});
  j = nlohmann::json{{"seed", c.seed},
                     {"N", c.shells},
                     {"truncation_degree", c.truncation_degree},
                     {"tail_bound", c.tail_bound},
                     {"validity_radius", c.validity_radius},
                     {"points", std::move(pts)}};
}

void from_json(const nlohmann::json& j, Configuration& c) {
  c.seed = j.at("seed").get<std::uint64_t>();
  c.shells = j.at("N").get<double>();
  c.truncation_degree = j.at("truncation_degree").get<int>();
  c.tail_bound = j.at("tail_bound").get<double>();
  c.validity_radius = j.contains("validity_radius") ? j.at("validity_radius").get<double>() : shell_radius(c.shells);
  c.points.clear();
  for (const auto& p : j.at("points")) c.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
}

int truncation_degree(double rho, double eps) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("truncation radius must lie in (0, 1)");
  if (!(eps > 0.0)) throw DomainError("truncation eps must be positive");
  // rho^{2(M+1)} < eps^2 (1 - rho^2), solved in logs then nudged for rounding.
  const double rhs = 2.0 * std::log(eps) + std::log1p(-rho * rho);
  const double lr2 = 2.0 * std::log(rho);
  auto holds = [&](int m) { return static_cast<double>(m + 1) * lr2 < rhs; };
  int m = std::max(1, static_cast<int>(std::ceil(rhs / lr2)) - 1);
  while (m > 1 && holds(m - 1)) --m;
  while (!holds(m)) ++m;
  return m;
}

double truncation_tail_bound(double rho, int degree) {
  return std::sqrt(std::exp(2.0 * static_cast<double>(degree + 1) * std::log(rho)) / (1.0 - rho * rho));
}

GafSample draw_gaf(int degree, std::uint64_t seed) {
  if (degree < 1) throw DomainError("GAF truncation degree must be positive");
  std::mt19937_64 gen(splitmix64(seed));
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  GafSample sample;
  sample.seed = seed;
  sample.coefficients.resize(static_cast<std::size_t>(degree) + 1);
  for (Complex& g : sample.coefficients) {
    const double re = normal(gen);
    const double im = normal(gen);
    g = {re, im};
  }
  while (sample.coefficients.back() == Complex{}) {
    const double re = normal(gen);
    const double im = normal(gen);
    sample.coefficients.back() = {re, im};
  }
  return sample;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients, const RootFinderOptions& options) {
  std::size_t top = coefficients.size();
  while (top > 0 && coefficients[top - 1] == Complex{}) --top;
  if (top < 2) throw DomainError("polynomial must have degree at least 1");
  std::size_t low = 0;
  while (coefficients[low] == Complex{}) ++low;

  std::vector<Complex> roots(low, Complex{});
  if (top - low >= 2) {
    const std::vector<Complex> rest = aberth(coefficients.subspan(low, top - low), options);
    roots.insert(roots.end(), rest.begin(), rest.end());
  }
  return roots;
}

double root_residual(std::span<const Complex> coefficients, Complex x) {
  Complex p{};
  double s = 0.0;
  const double ax = std::abs(x);
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    p = p * x + coefficients[k];
    s = s * ax + std::abs(coefficients[k]);
  }
  const double ap = std::abs(p);
  return ap == 0.0 ? 0.0 : ap / s;
}

std::vector<DiskPoint> find_roots(std::span<const Complex> coefficients, double rho, const RootFinderOptions& options) {
  std::vector<DiskPoint> inside;
  for (const Complex& r : polynomial_roots(coefficients, options)) {
    if (std::abs(r) >= rho) continue;
    if (root_residual(coefficients, r) > kRootResidualLimit) {
      throw NonConvergenceError("root inside the sampling disk failed the residual check");
    }
    inside.push_back(r);
  }
  return inside;
}

std::vector<DiskPoint> find_roots(const GafSample& sample, double rho, const RootFinderOptions& options) {
  return find_roots(sample.coefficients, rho, options);
}

namespace {

struct WindingTracker {
  std::span<const Complex> c;
  double rho;
  static constexpr int kMaxDepth = 48;

  [[nodiscard]] Complex eval(double theta) const {
    const Complex w = std::polar(rho, theta);
    Complex p{};
    for (std::size_t k = c.size(); k-- > 0;) p = p * w + c[k];
    if (p == Complex{}) throw NonConvergenceError("polynomial vanishes on the counting contour");
    return p;
  }

  // Phase increment of p between two contour angles.
  [[nodiscard]] double phase(double ta, Complex pa, double tb, Complex pb, int depth) const {
    const double step = std::arg(pb / pa);
    const bool resolved = std::abs(pb - pa) <= 0.5 * std::min(std::abs(pa), std::abs(pb));
    if (resolved) return step;
    if (depth >= kMaxDepth) {
      if (std::abs(step) > 0.5 * std::numbers::pi) {
        throw NonConvergenceError("phase step exceeds pi/2 after maximal refinement; zero too close to contour");
      }
      return step;
    }
    const double tm = 0.5 * (ta + tb);
    const Complex pm = eval(tm);
    return phase(ta, pa, tm, pm, depth + 1) + phase(tm, pm, tb, pb, depth + 1);
  }
};

}  // namespace

int count_zeros_winding(std::span<const Complex> coefficients, double rho) {
  if (!(rho > 0.0)) throw DomainError("contour radius must be positive");
  std::size_t top = coefficients.size();
  while (top > 0 && coefficients[top - 1] == Complex{}) --top;
  if (top == 0) throw DomainError("zero polynomial has no finite zero count");
  const WindingTracker tracker{coefficients.first(top), rho};
  const std::size_t samples = std::max<std::size_t>(64, 8 * top);
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(samples);
  double total = 0.0;
  Complex prev = tracker.eval(0.0);
  const Complex first = prev;
  for (std::size_t k = 1; k <= samples; ++k) {
    const double t = dt * static_cast<double>(k);
    const Complex cur = k == samples ? first : tracker.eval(t);
    total += tracker.phase(t - dt, prev, t, cur, 0);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

int count_zeros_winding(const GafSample& sample, double rho) { return count_zeros_winding(sample.coefficients, rho); }

int sampling_shells(const StatisticParams& params) {
  if (params.z() == DiskPoint{}) return params.shells();
  return static_cast<int>(std::ceil(params.shells() + hyperbolic_distance(DiskPoint{}, params.z()) + 1.0));
}

Configuration sample_disk(double shells, double eps, std::uint64_t seed) {
  if (!(shells > 0.0)) throw DomainError("sampling disk needs a positive hyperbolic radius");
  Configuration config;
  config.shells = shells;
  config.validity_radius = shell_radius(shells);
  config.truncation_degree = truncation_degree(config.validity_radius, eps);
  config.seed = seed;
  config.tail_bound = truncation_tail_bound(config.validity_radius, config.truncation_degree);
  const GafSample sample = draw_gaf(config.truncation_degree, seed);
  config.points = find_roots(sample, config.validity_radius);
  return config;
}

Configuration sample_configuration(const StatisticParams& params, double eps, std::uint64_t seed) {
  return sample_disk(static_cast<double>(sampling_shells(params)), eps, seed);
}

}  // namespace bergman
