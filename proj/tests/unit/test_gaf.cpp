#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/gaf.hpp"
#include "bergman/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using bergman::Complex;
using bergman::DiskPoint;

namespace {

// Smallest M >= 1 with rho^(2(M+1)) / (1 - rho^2) < eps^2, by linear search in long double.
int truncation_reference(long double rho, long double eps) {
  for (int m = 1;; ++m) {
    if (std::pow(rho, 2.0L * (m + 1)) / (1.0L - rho * rho) < eps * eps) return m;
  }
}

struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

Stats mean_and_se(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (xs.size() - 1) / xs.size())};
}

std::vector<Complex> from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = next;
  }
  return c;
}

}  // namespace

TEST_SUITE("gaf") {
  TEST_CASE("truncation_degree matches a brute-force search") {
    CHECK(bergman::truncation_degree(0.5, 1e-8) == 26);
    CHECK(bergman::truncation_degree(0.5, 1e-8) == truncation_reference(0.5L, 1e-8L));
    const double r4 = bergman::shell_radius(4.0);
    CHECK(bergman::truncation_degree(r4, 1e-6) == 413);
    CHECK(bergman::truncation_degree(r4, 1e-6) == truncation_reference(r4, 1e-6L));
    CHECK(bergman::truncation_degree(1e-9, 1e-6) == 1);
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
      const double rho = 0.01 + 0.98 * u(g);
      const double eps = std::pow(10.0, -1.0 - 9.0 * u(g));
      CHECK(bergman::truncation_degree(rho, eps) == truncation_reference(rho, eps));
    }
  }

  TEST_CASE("truncation_degree is monotone in eps and rho") {
    int previous = 0;
    for (double eps = 1e-1; eps >= 1e-12; eps /= 10.0) {
      const int m = bergman::truncation_degree(0.8, eps);
      CHECK(m >= previous);
      previous = m;
    }
    previous = 0;
    for (double rho = 0.05; rho < 0.99; rho += 0.05) {
      const int m = bergman::truncation_degree(rho, 1e-6);
      CHECK(m >= previous);
      previous = m;
    }
  }

  TEST_CASE("truncation_tail_bound brackets eps at the chosen degree") {
    for (double rho : {0.3, 0.76, 0.964}) {
      const int m = bergman::truncation_degree(rho, 1e-6);
      CHECK(bergman::truncation_tail_bound(rho, m) < 1e-6);
      if (m > 1) CHECK(bergman::truncation_tail_bound(rho, m - 1) >= 1e-6);
    }
  }

  TEST_CASE("draw_gaf is deterministic and standard complex Gaussian") {
    const auto a = bergman::draw_gaf(50, 42);
    const auto b = bergman::draw_gaf(50, 42);
    const auto c = bergman::draw_gaf(50, 43);
    CHECK(a.coefficients == b.coefficients);
    CHECK(a.coefficients != c.coefficients);
    CHECK(a.degree() == 50);
    CHECK(a.seed == 42);

    const auto big = bergman::draw_gaf(199999, 9);
    double re2 = 0.0;
    double im2 = 0.0;
    double reim = 0.0;
    double re = 0.0;
    for (const Complex& g : big.coefficients) {
      re += g.real();
      re2 += g.real() * g.real();
      im2 += g.imag() * g.imag();
      reim += g.real() * g.imag();
    }
    const double n = static_cast<double>(big.coefficients.size());
    // standard errors: mean 0.0016, variance 0.0016
    CHECK(std::abs(re / n) < 0.008);
    CHECK(std::abs(re2 / n - 0.5) < 0.008);
    CHECK(std::abs(im2 / n - 0.5) < 0.008);
    CHECK(std::abs(reim / n) < 0.008);
    CHECK_THROWS_AS((void)bergman::draw_gaf(0, 1), bergman::DomainError);
  }

  TEST_CASE("polynomial_roots on known polynomials") {
    const std::vector<Complex> quadratic{-0.25, 0.0, 1.0};
    auto roots = bergman::polynomial_roots(quadratic);
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(roots[0] + 0.5) < 1e-14);
    CHECK(std::abs(roots[1] - 0.5) < 1e-14);

    std::vector<Complex> monomial(31);
    monomial.back() = 1.0;
    const auto zeros = bergman::polynomial_roots(monomial);
    CHECK(zeros.size() == 30);
    for (const Complex& z : zeros) CHECK(z == Complex(0.0, 0.0));

    const std::vector<Complex> known{Complex(0.3, 0.1), Complex(-0.7, 0.2), Complex(0.0, -0.9), Complex(1.5, 0.0),
                                     Complex(-0.2, -0.2), Complex(2.0, 1.0)};
    const auto coeffs = from_roots(known);
    const auto found = bergman::polynomial_roots(coeffs);
    REQUIRE(found.size() == known.size());
    for (const Complex& r : known) {
      double best = 1e300;
      for (const Complex& f : found) best = std::min(best, std::abs(f - r));
      CHECK(best < 1e-12);
    }
  }

  TEST_CASE("polynomial_roots reproduces the coefficients of random polynomials") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto sample = bergman::draw_gaf(30, seed);
      const auto roots = bergman::polynomial_roots(sample.coefficients);
      REQUIRE(roots.size() == 30);
      auto rebuilt = from_roots(roots);
      const Complex lead = sample.coefficients.back();
      double scale = 0.0;
      for (const Complex& c : sample.coefficients) scale = std::max(scale, std::abs(c));
      for (std::size_t k = 0; k < rebuilt.size(); ++k) {
        CHECK(std::abs(rebuilt[k] * lead - sample.coefficients[k]) < 1e-9 * scale * std::pow(2.0, 10));
      }
    }
  }

  TEST_CASE("find_roots filters by radius and meets the residual bound") {
    const std::vector<Complex> quadratic{-0.25, 0.0, 1.0};
    CHECK(bergman::find_roots(std::span<const Complex>(quadratic), 0.9).size() == 2);
    CHECK(bergman::find_roots(std::span<const Complex>(quadratic), 0.4).empty());
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      const auto sample = bergman::draw_gaf(400, seed);
      const auto roots = bergman::find_roots(sample, 0.95);
      for (const DiskPoint& r : roots) {
        CHECK(std::abs(r) < 0.95);
        CHECK(bergman::root_residual(sample.coefficients, r) <= 1e-10);
      }
    }
  }

  TEST_CASE("count_zeros_winding examples") {
    const std::vector<Complex> quadratic{-0.25, 0.0, 1.0};
    CHECK(bergman::count_zeros_winding(std::span<const Complex>(quadratic), 0.9) == 2);
    CHECK(bergman::count_zeros_winding(std::span<const Complex>(quadratic), 0.4) == 0);
    const std::vector<Complex> on_circle{-0.5, 1.0};
    CHECK_THROWS_AS((void)bergman::count_zeros_winding(std::span<const Complex>(on_circle), 0.5),
                    bergman::NonConvergenceError);
    // a zero just inside the contour is still counted
    const std::vector<Complex> close{-(0.5 - 1e-7), 1.0};
    CHECK(bergman::count_zeros_winding(std::span<const Complex>(close), 0.5) == 1);
  }

  TEST_CASE("root count agrees with the winding count on random samples") {
    struct Case {
      int degree;
      double rho;
    };
    for (const Case c : {Case{100, 0.8}, Case{200, 0.9}, Case{500, 0.97}}) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto sample = bergman::draw_gaf(c.degree, bergman::stream_seed(77, seed));
        CHECK(bergman::find_roots(sample, c.rho).size() ==
              static_cast<std::size_t>(bergman::count_zeros_winding(sample, c.rho)));
      }
    }
  }

  TEST_CASE("sampling_shells") {
    CHECK(bergman::sampling_shells(bergman::StatisticParams(1.25, 0.0, 4)) == 4);
    const DiskPoint z(0.3, 0.2);
    const double d = bergman::hyperbolic_distance(0.0, z);
    CHECK(bergman::sampling_shells(bergman::StatisticParams(1.25, z, 2)) == static_cast<int>(std::ceil(2 + d + 1)));
  }

  TEST_CASE("sample_configuration is deterministic and covers U_N(z)") {
    const bergman::StatisticParams params(1.25, DiskPoint(0.3, 0.2), 2);
    const auto a = bergman::sample_configuration(params, 1e-6, 5);
    const auto b = bergman::sample_configuration(params, 1e-6, 5);
    CHECK(a.points == b.points);
    CHECK(a.seed == 5);
    CHECK(a.validity_radius >= bergman::max_modulus_of_ball(params.z(), 2.0));
    CHECK(a.truncation_degree == bergman::truncation_degree(a.validity_radius, 1e-6));
    CHECK(a.tail_bound < 1e-6);
    for (const DiskPoint& p : a.points) CHECK(std::abs(p) < a.validity_radius);
  }

  TEST_CASE("configuration JSON round trip") {
    const auto c = bergman::sample_disk(2.0, 1e-6, 31);
    const nlohmann::json j = c;
    CHECK(j.contains("seed"));
    CHECK(j.contains("N"));
    CHECK(j.contains("truncation_degree"));
    CHECK(j.contains("tail_bound"));
    CHECK(j.contains("points"));
    const auto back = nlohmann::json::parse(j.dump()).get<bergman::Configuration>();
    CHECK(back.points == c.points);
    CHECK(back.validity_radius == c.validity_radius);
    CHECK(back.truncation_degree == c.truncation_degree);
    CHECK(back.tail_bound == c.tail_bound);
    CHECK(back.seed == c.seed);
  }

  TEST_CASE("mean point count matches sinh^2(N/2)") {
    for (double n : {1.0, 2.0}) {
      std::vector<double> counts;
      for (std::uint64_t t = 0; t < 2000; ++t) {
        counts.push_back(static_cast<double>(bergman::sample_disk(n, 1e-6, bergman::stream_seed(123, t)).points.size()));
      }
      const Stats st = mean_and_se(counts);
      const double expected = std::pow(std::sinh(n / 2.0), 2);
      CHECK(std::abs(st.mean - expected) <= 3.0 * st.se);
    }
  }

  TEST_CASE("two-point correlation of points in |x| < 1/2") {
    // E sum over ordered distinct pairs = integral of rho_2 over the product of disks.
    const oracle::PolarGrid grid(0.5, 24, 32);
    double integral = 0.0;
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
      for (std::size_t k = 0; k < grid.points.size(); ++k) {
        const DiskPoint pair[2] = {grid.points[i], grid.points[k]};
        integral += grid.weights[i] * grid.weights[k] * bergman::correlation(pair);
      }
    }
    CHECK(integral == doctest::Approx(2.0 / 45.0).epsilon(1e-10));

    std::vector<double> pairs;
    for (std::uint64_t t = 0; t < 4000; ++t) {
      const auto c = bergman::sample_disk(2.0, 1e-6, bergman::stream_seed(555, t));
      const double k = static_cast<double>(std::count_if(c.points.begin(), c.points.end(),
                                                         [](DiskPoint p) { return std::abs(p) < 0.5; }));
      pairs.push_back(k * (k - 1.0));
    }
    const Stats st = mean_and_se(pairs);
    CHECK(std::abs(st.mean - integral) <= 3.0 * st.se);
  }
}
