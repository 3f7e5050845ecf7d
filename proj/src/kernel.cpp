#include "bergman/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bergman/errors.hpp"

namespace bergman {

Complex kernel(DiskPoint x, DiskPoint y) {
  require_in_disk(x, "x");
  require_in_disk(y, "y");
  const Complex d = 1.0 - x * std::conj(y);
  return 1.0 / (d * d);
}

GramMatrix GramMatrix::principal(std::span<const std::size_t> idx) const {
  GramMatrix sub(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      sub(i, j) = (*this)(idx[i], idx[j]);
    }
  }
  return sub;
}

GramMatrix gram(std::span<const DiskPoint> points) {
  GramMatrix g(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    g(i, i) = kernel(points[i], points[i]);
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      g(i, j) = kernel(points[i], points[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

Complex determinant(const GramMatrix& m) {
  const std::size_t k = m.size();
  GramMatrix a = m;
  Complex det{1.0, 0.0};
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < k; ++row) {
      if (std::abs(a(row, col)) > std::abs(a(pivot, col))) pivot = row;
    }
    if (a(pivot, col) == Complex{}) return Complex{};
    if (pivot != col) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t row = col + 1; row < k; ++row) {
      const Complex f = a(row, col) / a(col, col);
      for (std::size_t j = col + 1; j < k; ++j) a(row, j) -= f * a(col, j);
    }
  }
  return det;
}

double correlation(std::span<const DiskPoint> points) {
  if (points.empty() || points.size() > kMaxCorrelationOrder) {
    throw SizeError("correlation supports 1 to 8 points");
  }
  for (const DiskPoint& p : points) require_in_disk(p, "correlation point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) return 0.0;
    }
  }
  const GramMatrix g = gram(points);
  const Complex det = determinant(g);
  // Hermitian => real determinant. The residue is judged against the Hadamard
  // bound as well, since near-coincident points make |det| itself tiny.
  double hadamard = 1.0;
  for (std::size_t i = 0; i < g.size(); ++i) hadamard *= g(i, i).real();
  if (std::abs(det.imag()) > 1e-10 * std::max(std::abs(det), hadamard)) {
    throw NonConvergenceError("Gram determinant has a non-negligible imaginary part");
  }
  return det.real();
}

}  // namespace bergman
