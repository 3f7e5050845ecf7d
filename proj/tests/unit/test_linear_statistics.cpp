#include <cmath>
#include <random>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/linear_statistics.hpp"
#include "doctest.h"
#include "oracles.hpp"

using bergman::Complex;
using bergman::DiskPoint;

namespace {

bergman::Configuration manual(std::vector<DiskPoint> points, double shells) {
  bergman::Configuration c;
  c.points = std::move(points);
  c.shells = shells;
  c.validity_radius = bergman::shell_radius(shells);
  return c;
}

bergman::Configuration random_configuration(std::mt19937_64& g, int count, double shells) {
  std::vector<DiskPoint> pts;
  for (int i = 0; i < count; ++i) pts.push_back(oracle::uniform_disk(g, bergman::shell_radius(shells)));
  return manual(pts, shells);
}

// sum_{i,j} c_i c_j K(x_i, x_j) in naive order.
double double_sum(const bergman::WeightedKernelSum& t) {
  Complex s{};
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (std::size_t j = 0; j < t.nodes.size(); ++j)
      s += t.coefficients[i] * t.coefficients[j] * bergman::kernel(t.nodes[i], t.nodes[j]);
  return s.real();
}

}  // namespace

TEST_SUITE("linear_statistics") {
  TEST_CASE("build_theta examples") {
    const bergman::StatisticParams params(1.25, 0.0, 2);
    const auto empty = bergman::build_theta(manual({}, 2.0), params);
    CHECK(empty.nodes.empty());
    CHECK(bergman::norm_squared(empty) == 0.0);

    const auto outside = bergman::build_theta(manual({std::tanh(2.5 / 2.0)}, 3.0), params);
    CHECK(outside.nodes.empty());

    const auto single = bergman::build_theta(manual({0.5}, 2.0), params);
    REQUIRE(single.nodes.size() == 1);
    CHECK(single.coefficients[0] == doctest::Approx(std::pow(1.0 / 3.0, 1.25)).epsilon(1e-14));
    CHECK(single.coefficients[0] == doctest::Approx(0.25321).epsilon(1e-4));
  }

  TEST_CASE("build_theta requires coverage of U_N(z)") {
    const bergman::StatisticParams params(1.25, DiskPoint(0.5, 0.0), 2);
    CHECK_THROWS_AS((void)bergman::build_theta(manual({0.1}, 2.0), params), bergman::CoverageError);
    CHECK_NOTHROW((void)bergman::build_theta(manual({0.1}, 4.0), params));
  }

  TEST_CASE("build_theta keeps exactly the points of U_N(z)") {
    std::mt19937_64 g(8);
    const DiskPoint z(0.2, -0.3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto config = random_configuration(g, 40, 5.0);
      const bergman::StatisticParams params(1.3, z, 3);
      const auto theta = bergman::build_theta(config, params);
      std::size_t inside = 0;
      for (const DiskPoint& x : config.points) inside += bergman::shell_index(z, x) < 3;
      CHECK(theta.nodes.size() == inside);
      for (std::size_t i = 0; i < theta.nodes.size(); ++i) {
        CHECK(bergman::shell_index(z, theta.nodes[i]) < 3);
        CHECK(theta.coefficients[i] > 0.0);
        CHECK(theta.coefficients[i] ==
              doctest::Approx(std::pow(bergman::weight_T(z, theta.nodes[i]), 1.3)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("norm_squared examples") {
    const bergman::StatisticParams params(1.25, 0.0, 2);
    const auto single = bergman::build_theta(manual({0.5}, 2.0), params);
    const double expected = std::pow(1.0 / 3.0, 2.5) * 16.0 / 9.0;
    CHECK(bergman::norm_squared(single) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(bergman::norm_squared(single) == doctest::Approx(0.11397).epsilon(1e-4));

    const auto two = bergman::build_theta(manual({0.5, DiskPoint(-0.2, 0.4)}, 2.0), params);
    CHECK(bergman::norm_squared(two) == doctest::Approx(double_sum(two)).epsilon(1e-13));
  }

  TEST_CASE("property: norm_squared is nonnegative, zero only when empty, and matches the double sum") {
    std::mt19937_64 g(21);
    std::uniform_int_distribution<int> count(0, 30);
    for (int trial = 0; trial < 200; ++trial) {
      const auto config = random_configuration(g, count(g), 4.0);
      const bergman::StatisticParams params(1.1 + 0.35 * (trial % 5) / 4.0, oracle::uniform_disk(g, 0.3), 2);
      const auto theta = bergman::build_theta(config, params);
      const double s = bergman::norm_squared(theta);
      CHECK(s >= 0.0);
      CHECK((s == 0.0) == theta.nodes.empty());
      CHECK(s == doctest::Approx(double_sum(theta)).epsilon(1e-10));
    }
  }

  TEST_CASE("shell additivity: S_{N+1} - S_N is the new-shell part of the double sum") {
    std::mt19937_64 g(33);
    const DiskPoint z(0.1, 0.1);
    for (int trial = 0; trial < 30; ++trial) {
      const auto config = random_configuration(g, 25, 6.0);
      for (int n = 1; n <= 3; ++n) {
        const auto small = bergman::build_theta(config, bergman::StatisticParams(1.25, z, n));
        const auto large = bergman::build_theta(config, bergman::StatisticParams(1.25, z, n + 1));
        Complex cross{};
        for (std::size_t i = 0; i < large.nodes.size(); ++i) {
          for (std::size_t j = 0; j < large.nodes.size(); ++j) {
            const bool new_i = bergman::shell_index(z, large.nodes[i]) == n;
            const bool new_j = bergman::shell_index(z, large.nodes[j]) == n;
            if (new_i || new_j) {
              cross += large.coefficients[i] * large.coefficients[j] * bergman::kernel(large.nodes[i], large.nodes[j]);
            }
          }
        }
        CHECK(bergman::norm_squared(large) - bergman::norm_squared(small) ==
              doctest::Approx(cross.real()).epsilon(1e-10).scale(bergman::norm_squared(large)));
      }
    }
  }

  TEST_CASE("evaluate_function examples") {
    const bergman::FunctionCoefficients e0{{1.0}};
    CHECK(bergman::evaluate_function(e0, DiskPoint(0.3, -0.7)) == Complex(1.0, 0.0));
    const bergman::FunctionCoefficients e1{{0.0, 1.0}};
    CHECK(bergman::evaluate_function(e1, 0.5).real() == doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-15));
    CHECK_THROWS_AS((void)bergman::evaluate_function(e0, 1.0), bergman::DomainError);
  }

  TEST_CASE("truncated kernel converges geometrically to the kernel") {
    const DiskPoint w(0.5, 0.0);
    const DiskPoint x(0.3, 0.4);
    const double q = std::abs(x * std::conj(w));
    for (int degree : {5, 10, 20, 40}) {
      const Complex approx = bergman::evaluate_function(bergman::truncated_kernel(w, degree), x);
      const double err = std::abs(approx - bergman::kernel(x, w));
      // tail of sum (n+1) q^n beyond D
      const double tail = std::pow(q, degree + 1) * ((degree + 2) - (degree + 1) * q) / ((1 - q) * (1 - q));
      CHECK(err <= tail * (1.0 + 1e-9) + 1e-15);
    }
  }

  TEST_CASE("pair examples and reproducing consistency") {
    std::mt19937_64 g(44);
    const auto config = random_configuration(g, 20, 3.0);
    const auto theta = bergman::build_theta(config, bergman::StatisticParams(1.25, 0.0, 3));
    double sum_c = 0.0;
    for (double c : theta.coefficients) sum_c += c;
    CHECK(bergman::pair(theta, bergman::FunctionCoefficients{{1.0}}).real() == doctest::Approx(sum_c).epsilon(1e-14));

    const bergman::WeightedKernelSum empty{{}, {}, bergman::StatisticParams(1.25, 0.0, 3)};
    CHECK(bergman::pair(empty, bergman::FunctionCoefficients{{1.0, 2.0}}) == Complex(0.0, 0.0));

    // <K(., w), Theta> -> conj(Theta(w)) = sum c_i K(x_i, w)
    const DiskPoint w(-0.2, 0.3);
    Complex exact{};
    for (std::size_t i = 0; i < theta.nodes.size(); ++i) exact += theta.coefficients[i] * bergman::kernel(theta.nodes[i], w);
    double previous = 1e300;
    for (int degree : {10, 40, 160, 640}) {
      const double err = std::abs(bergman::pair(theta, bergman::truncated_kernel(w, degree)) - exact);
      CHECK(err <= previous);
      previous = err;
    }
    CHECK(previous <= 1e-10 * std::abs(exact));
  }

  TEST_CASE("pair equals a reordered Kahan summation") {
    std::mt19937_64 g(45);
    const auto config = random_configuration(g, 50, 3.0);
    const auto theta = bergman::build_theta(config, bergman::StatisticParams(1.4, 0.0, 3));
    bergman::FunctionCoefficients f;
    std::normal_distribution<double> normal;
    for (int n = 0; n < 12; ++n) f.coeffs.emplace_back(normal(g), normal(g));
    Complex sum{};
    Complex comp{};
    for (std::size_t i = theta.nodes.size(); i-- > 0;) {
      const Complex y = theta.coefficients[i] * bergman::evaluate_function(f, theta.nodes[i]) - comp;
      const Complex t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    const Complex p = bergman::pair(theta, f);
    CHECK(std::abs(p - sum) <= 1e-12 * std::max(1.0, std::abs(sum)));
  }

  TEST_CASE("shell_sums examples and prefix consistency") {
    const bergman::FunctionCoefficients f{{1.0, Complex(0.5, -0.5), 0.25}};
    const bergman::StatisticParams params(1.25, 0.0, 3);
    const auto empty = bergman::shell_sums(manual({}, 3.0), params, f);
    CHECK(empty.size() == 3);
    for (const Complex& v : empty) CHECK(v == Complex(0.0, 0.0));

    const DiskPoint in_shell_1 = std::tanh(1.5 / 2.0);
    const auto one = bergman::shell_sums(manual({in_shell_1}, 3.0), params, f);
    CHECK(one[0] == Complex(0.0, 0.0));
    CHECK(std::abs(one[1]) > 0.0);
    CHECK(one[2] == Complex(0.0, 0.0));

    std::mt19937_64 g(46);
    const DiskPoint z(0.2, 0.1);
    const auto config = random_configuration(g, 60, 6.0);
    const auto sums = bergman::shell_sums(config, bergman::StatisticParams(1.25, z, 4), f);
    Complex prefix{};
    for (int n = 1; n <= 4; ++n) {
      prefix += sums[static_cast<std::size_t>(n - 1)];
      const Complex direct = bergman::pair(bergman::build_theta(config, bergman::StatisticParams(1.25, z, n)), f);
      CHECK(std::abs(prefix - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}
