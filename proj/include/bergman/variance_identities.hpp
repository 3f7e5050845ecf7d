#pragma once

#include <array>

#include "bergman/hyperbolic.hpp"
#include "bergman/kernel.hpp"

namespace bergman {

// Pointwise integrands of the cancelled variance terms. Each comes in two forms:
// the expanded polynomial in K_ij = K(x_i, x_j), and the defining difference of
// Gram determinants. Swapping the symmetric arguments conjugates both forms, so the
// real part equals the symmetrized integrand that enters the variance.

/// Both forms of one integrand, plus a bound on the modulus of every monomial that
/// either form adds up (the scale against which their agreement is judged).
struct CancellationForms {
  Complex expanded;
  Complex from_determinants;
  double magnitude = 0.0;
};

/// J2 = K11 K22 K12^2 - K12^3 K21 - K12^2 K21^2
///    = [K11 K22 + K12^2 + K12 K21] det[K]_{12} - K11^2 K22^2.
[[nodiscard]] CancellationForms jhat2_forms(DiskPoint x1, DiskPoint x2);

/// Signs of the four monomials of det[K]_{123} - K11 det[K]_{23}:
/// -K12 K21 K33, +K12 K23 K31, +K13 K21 K32, -K13 K22 K31.
struct J3Expansion {
  std::array<double, 4> signs{-1.0, 1.0, 1.0, -1.0};
};

/// J3 = K11 K23 (det[K]_{123} - K11 det[K]_{23}).
[[nodiscard]] CancellationForms jhat3_forms(DiskPoint x1, DiskPoint x2, DiskPoint x3, const J3Expansion& expansion = {});

/// J4 = K12 K34 (det[K]_{1234} - det[K]_{12} det[K]_{34}); expanded through W1 + W2 + W3 + W4.
[[nodiscard]] CancellationForms jhat4_forms(DiskPoint x1, DiskPoint x2, DiskPoint x3, DiskPoint x4);

[[nodiscard]] double jhat2_integrand(DiskPoint x1, DiskPoint x2);
[[nodiscard]] double jhat3_integrand(DiskPoint x1, DiskPoint x2, DiskPoint x3);
[[nodiscard]] double jhat4_integrand(DiskPoint x1, DiskPoint x2, DiskPoint x3, DiskPoint x4);

/// 3 K11^{3/2} K22^{3/2} |K12|, an upper bound for |J2|.
[[nodiscard]] double jhat2_majorant(DiskPoint x1, DiskPoint x2);

}  // namespace bergman
