#pragma once

#include <complex>

namespace bergman {

/// A point of the complex plane; configuration points and centers live in the open unit disk.
using DiskPoint = std::complex<double>;

/// Parameters (s, z, N) of the weighted statistic: 1 < s < 3/2, |z| < 1, N >= 1 shells.
class StatisticParams {
 public:
  StatisticParams(double s, DiskPoint z, int shells);

  [[nodiscard]] double s() const noexcept { return s_; }
  [[nodiscard]] DiskPoint z() const noexcept { return z_; }
  [[nodiscard]] int shells() const noexcept { return shells_; }

 private:
  double s_;
  DiskPoint z_;
  int shells_;
};

/// Throws DomainError unless |w| < 1.
void require_in_disk(DiskPoint w, const char* what);

/// Disk automorphism phi_z(x) = (z - x) / (1 - conj(z) x).
[[nodiscard]] DiskPoint mobius_phi(DiskPoint z, DiskPoint x);

/// 1 - |phi_z(x)|^2, computed from (1-|z|^2)(1-|x|^2)/|1-conj(z)x|^2 so that it
/// keeps full relative accuracy when phi_z(x) approaches the unit circle.
[[nodiscard]] double pseudo_hyperbolic_gap(DiskPoint z, DiskPoint x);

/// Hyperbolic distance log((1+|phi|)/(1-|phi|)).
[[nodiscard]] double hyperbolic_distance(DiskPoint z, DiskPoint x);

/// T_z(x) = exp(-d_h(z, x)) = (1-|phi|)/(1+|phi|).
[[nodiscard]] double weight_T(DiskPoint z, DiskPoint x);

/// r_N = (e^N - 1)/(e^N + 1) = tanh(N/2); accepts real N >= 0.
[[nodiscard]] double shell_radius(double n);

/// 1 - r_N = 2/(e^N + 1), without the cancellation of 1 - tanh(N/2).
[[nodiscard]] double shell_gap(double n);

/// floor(d_h(z, x)); shells are half-open, so d_h == k lands in shell k.
[[nodiscard]] int shell_index(DiskPoint z, DiskPoint x);

/// Largest Euclidean modulus of a point of U_N(z): tanh((N + d_h(0, z))/2).
[[nodiscard]] double max_modulus_of_ball(DiskPoint z, double n);

}  // namespace bergman
