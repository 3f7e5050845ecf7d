#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bergman/hyperbolic.hpp"

namespace bergman {

using Complex = std::complex<double>;

/// Bergman kernel K(x, y) = (1 - x conj(y))^{-2}.
[[nodiscard]] Complex kernel(DiskPoint x, DiskPoint y);

/// Dense row-major k x k complex matrix. Gram matrices built by gram() are Hermitian.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(std::size_t k) : k_(k), entries_(k * k) {}

  [[nodiscard]] std::size_t size() const noexcept { return k_; }
  [[nodiscard]] Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * k_ + j]; }
  [[nodiscard]] const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }

  /// Principal submatrix on the given (ordered) index list.
  [[nodiscard]] GramMatrix principal(std::span<const std::size_t> idx) const;

 private:
  std::size_t k_ = 0;
  std::vector<Complex> entries_;
};

/// entries (i, j) = K(x_i, x_j); upper triangle evaluated, lower mirrored by conjugation.
[[nodiscard]] GramMatrix gram(std::span<const DiskPoint> points);

/// Complex determinant by LU with partial pivoting.
[[nodiscard]] Complex determinant(const GramMatrix& m);

/// Largest point count accepted by correlation().
inline constexpr std::size_t kMaxCorrelationOrder = 8;

/// rho_k(x_1..x_k) = det[K(x_i, x_j)]; exactly 0 when two inputs coincide.
[[nodiscard]] double correlation(std::span<const DiskPoint> points);

}  // namespace bergman
