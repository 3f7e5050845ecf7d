#include "bergman/hyperbolic.hpp"

#include <cmath>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// Below this modulus of phi the atanh form is used; above it the gap form.
constexpr double kGapSwitch = 0.5;

double one_minus_abs2(DiskPoint w) {
  const double a = std::abs(w);
  return (1.0 - a) * (1.0 + a);
}

}  // namespace

StatisticParams::StatisticParams(double s, DiskPoint z, int shells) : s_(s), z_(z), shells_(shells) {
  if (!(s > 1.0 && s < 1.5)) {
    throw DomainError("exponent s must lie in the open interval (1, 3/2), got " + std::to_string(s));
  }
  require_in_disk(z, "center z");
  if (shells < 1) {
    throw DomainError("shell count N must be positive, got " + std::to_string(shells));
  }
}

void require_in_disk(DiskPoint w, const char* what) {
  if (!(std::abs(w) < 1.0)) {
    throw DomainError(std::string(what) + " must lie in the open unit disk");
  }
}

DiskPoint mobius_phi(DiskPoint z, DiskPoint x) {
  require_in_disk(z, "z");
  require_in_disk(x, "x");
  return (z - x) / (1.0 - std::conj(z) * x);
}

double pseudo_hyperbolic_gap(DiskPoint z, DiskPoint x) {
  require_in_disk(z, "z");
  require_in_disk(x, "x");
  return one_minus_abs2(z) * one_minus_abs2(x) / std::norm(1.0 - std::conj(z) * x);
}

double hyperbolic_distance(DiskPoint z, DiskPoint x) {
  const double a = std::abs(mobius_phi(z, x));
  if (a < kGapSwitch) {
    return std::log1p(a) - std::log1p(-a);
  }
  return 2.0 * std::log1p(a) - std::log(pseudo_hyperbolic_gap(z, x));
}

double weight_T(DiskPoint z, DiskPoint x) {
  const double a = std::abs(mobius_phi(z, x));
  if (a < kGapSwitch) {
    return (1.0 - a) / (1.0 + a);
  }
  return pseudo_hyperbolic_gap(z, x) / ((1.0 + a) * (1.0 + a));
}

double shell_radius(double n) {
  if (!(n >= 0.0)) {
    throw DomainError("shell count must be nonnegative");
  }
  return std::tanh(0.5 * n);
}

double shell_gap(double n) {
  if (!(n >= 0.0)) {
    throw DomainError("shell count must be nonnegative");
  }
  return 2.0 / (std::exp(n) + 1.0);
}

int shell_index(DiskPoint z, DiskPoint x) {
  return static_cast<int>(std::floor(hyperbolic_distance(z, x)));
}

double max_modulus_of_ball(DiskPoint z, double n) {
  const double dz = z == DiskPoint{} ? 0.0 : hyperbolic_distance(DiskPoint{}, z);
  return shell_radius(n + dz);
}

}  // namespace bergman
