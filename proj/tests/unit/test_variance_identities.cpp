#include <algorithm>
#include <cmath>
#include <random>

#include "bergman/variance_identities.hpp"
#include "doctest.h"
#include "oracles.hpp"

using bergman::Complex;
using bergman::DiskPoint;

namespace {

double discrepancy(const bergman::CancellationForms& f) {
  return std::abs(f.expanded - f.from_determinants) / std::max(std::abs(f.from_determinants), f.magnitude);
}

}  // namespace

TEST_SUITE("variance_identities") {
  TEST_CASE("J2 at the origin") {
    const auto f = bergman::jhat2_forms(0.0, 0.0);
    CHECK(f.expanded == Complex(-1.0, 0.0));
    CHECK(f.from_determinants == Complex(-1.0, 0.0));
    CHECK(bergman::jhat2_integrand(0.0, 0.0) == -1.0);
  }

  TEST_CASE("J3 with a repeated point") {
    const DiskPoint x1(0.2, -0.5);
    const DiskPoint x2(-0.4, 0.3);
    const auto f = bergman::jhat3_forms(x1, x2, x2);
    CHECK(std::abs(f.expanded) <= 1e-12 * f.magnitude);
    CHECK(std::abs(f.from_determinants) <= 1e-12 * f.magnitude);
  }

  TEST_CASE("property: expansions equal the determinant differences") {
    std::mt19937_64 g(1234);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const DiskPoint x1 = oracle::uniform_disk(g, 0.99);
      const DiskPoint x2 = oracle::uniform_disk(g, 0.99);
      const DiskPoint x3 = oracle::uniform_disk(g, 0.99);
      const DiskPoint x4 = oracle::uniform_disk(g, 0.99);
      worst = std::max({worst, discrepancy(bergman::jhat2_forms(x1, x2)), discrepancy(bergman::jhat3_forms(x1, x2, x3)),
                        discrepancy(bergman::jhat4_forms(x1, x2, x3, x4))});
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("a wrong J3 sign is detected") {
    bergman::J3Expansion broken;
    broken.signs[1] = -1.0;
    std::mt19937_64 g(9);
    int detected = 0;
    for (int i = 0; i < 50; ++i) {
      const auto f = bergman::jhat3_forms(oracle::uniform_disk(g, 0.9), oracle::uniform_disk(g, 0.9),
                                          oracle::uniform_disk(g, 0.9), broken);
      detected += discrepancy(f) > 1e-6;
    }
    CHECK(detected == 50);
  }

  TEST_CASE("swapping the symmetric arguments conjugates the integrands") {
    std::mt19937_64 g(10);
    for (int i = 0; i < 100; ++i) {
      const DiskPoint x1 = oracle::uniform_disk(g, 0.9);
      const DiskPoint x2 = oracle::uniform_disk(g, 0.9);
      const DiskPoint x3 = oracle::uniform_disk(g, 0.9);
      const DiskPoint x4 = oracle::uniform_disk(g, 0.9);
      const auto a = bergman::jhat2_forms(x1, x2).expanded;
      const auto b = bergman::jhat2_forms(x2, x1).expanded;
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * bergman::jhat2_forms(x1, x2).magnitude);
      const auto c = bergman::jhat3_forms(x1, x2, x3);
      const auto d = bergman::jhat3_forms(x1, x3, x2);
      CHECK(std::abs(c.expanded - std::conj(d.expanded)) <= 1e-12 * c.magnitude);
      const auto e = bergman::jhat4_forms(x1, x2, x3, x4);
      const auto f = bergman::jhat4_forms(x2, x1, x4, x3);
      CHECK(std::abs(e.expanded - std::conj(f.expanded)) <= 1e-12 * e.magnitude);
      CHECK(bergman::jhat4_integrand(x1, x2, x3, x4) == e.expanded.real());
      CHECK(bergman::jhat3_integrand(x1, x2, x3) == c.expanded.real());
      CHECK(bergman::jhat2_integrand(x1, x2) == a.real());
    }
  }

  TEST_CASE("property: |J2| is bounded by 3 (K11 K22)^{3/2} |K12|") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 1000; ++i) {
      const DiskPoint x1 = oracle::uniform_disk(g, 0.999);
      const DiskPoint x2 = oracle::uniform_disk(g, 0.999);
      CHECK(std::abs(bergman::jhat2_forms(x1, x2).expanded) <= bergman::jhat2_majorant(x1, x2) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("1 - r1^2 r2^2 >= sqrt((1 - r1)(1 - r2)) on a grid") {
    for (int i = 0; i < 200; ++i) {
      for (int k = 0; k < 200; ++k) {
        const double r1 = i / 200.0;
        const double r2 = k / 200.0;
        CHECK(1.0 - r1 * r1 * r2 * r2 >= std::sqrt((1.0 - r1) * (1.0 - r2)) - 1e-15);
      }
    }
  }
}
