#include "bergman/variance_identities.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace bergman {

namespace {

// 1-based view of a Gram matrix, matching the K_ij notation.
class KernelTable {
 public:
  explicit KernelTable(std::initializer_list<DiskPoint> pts) : pts_(pts), g_(gram(pts_)) {}

  [[nodiscard]] Complex operator()(int i, int j) const {
    return g_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }

  // Every monomial of a principal minor is bounded by this, since |K_ij|^2 <= K_ii K_jj.
  [[nodiscard]] double diagonal_product() const {
    double p = 1.0;
    for (std::size_t i = 0; i < g_.size(); ++i) p *= g_(i, i).real();
    return p;
  }

  [[nodiscard]] Complex det(std::initializer_list<std::size_t> one_based) const {
    std::vector<std::size_t> idx;
    for (std::size_t i : one_based) idx.push_back(i - 1);
    return determinant(g_.principal(idx));
  }

 private:
  std::vector<DiskPoint> pts_;
  GramMatrix g_;
};

// Accumulates signed monomials and the sum of their moduli.
struct Expansion {
  Complex value{};
  double magnitude = 0.0;

  void add(double sign, Complex term) {
    value += sign * term;
    magnitude += std::abs(term);
  }
};

}  // namespace

CancellationForms jhat2_forms(DiskPoint x1, DiskPoint x2) {
  const KernelTable K{x1, x2};
  const Complex k11 = K(1, 1), k22 = K(2, 2), k12 = K(1, 2), k21 = K(2, 1);

  Expansion e;
  e.add(1.0, k11 * k22 * k12 * k12);
  e.add(-1.0, k12 * k12 * k12 * k21);
  e.add(-1.0, k12 * k12 * k21 * k21);

  const Complex def = (k11 * k22 + k12 * k12 + k12 * k21) * K.det({1, 2}) - k11 * k11 * k22 * k22;
  return {e.value, def, std::max(e.magnitude, 7.0 * K.diagonal_product() * K.diagonal_product())};
}

CancellationForms jhat3_forms(DiskPoint x1, DiskPoint x2, DiskPoint x3, const J3Expansion& expansion) {
  const KernelTable K{x1, x2, x3};
  const Complex prefix = K(1, 1) * K(2, 3);

  Expansion e;
  e.add(expansion.signs[0], prefix * K(1, 2) * K(2, 1) * K(3, 3));
  e.add(expansion.signs[1], prefix * K(1, 2) * K(2, 3) * K(3, 1));
  e.add(expansion.signs[2], prefix * K(1, 3) * K(2, 1) * K(3, 2));
  e.add(expansion.signs[3], prefix * K(1, 3) * K(2, 2) * K(3, 1));

  const Complex def = prefix * (K.det({1, 2, 3}) - K(1, 1) * K.det({2, 3}));
  return {e.value, def, std::max(e.magnitude, 8.0 * std::abs(prefix) * K.diagonal_product())};
}

CancellationForms jhat4_forms(DiskPoint x1, DiskPoint x2, DiskPoint x3, DiskPoint x4) {
  const KernelTable K{x1, x2, x3, x4};
  const Complex prefix = K(1, 2) * K(3, 4);
  Expansion e;
  auto term = [&](double sign, int a, int b, int c, int d, int f, int g, int h, int i) {
    e.add(sign, prefix * K(a, b) * K(c, d) * K(f, g) * K(h, i));
  };
  // W1
  term(-1, 1, 1, 2, 3, 3, 2, 4, 4);
  term(+1, 1, 1, 2, 3, 3, 4, 4, 2);
  term(+1, 1, 2, 2, 3, 3, 1, 4, 4);
  term(-1, 1, 2, 2, 3, 3, 4, 4, 1);
  // W2
  term(+1, 1, 1, 2, 4, 3, 2, 4, 3);
  term(-1, 1, 1, 2, 4, 3, 3, 4, 2);
  term(-1, 1, 2, 2, 4, 3, 1, 4, 3);
  term(+1, 1, 2, 2, 4, 3, 3, 4, 1);
  // W3
  term(+1, 1, 3, 2, 1, 3, 2, 4, 4);
  term(-1, 1, 3, 2, 1, 3, 4, 4, 2);
  term(-1, 1, 3, 2, 2, 3, 1, 4, 4);
  term(+1, 1, 3, 2, 2, 3, 4, 4, 1);
  term(+1, 1, 3, 2, 4, 3, 1, 4, 2);
  term(-1, 1, 3, 2, 4, 3, 2, 4, 1);
  // W4
  term(-1, 1, 4, 2, 1, 3, 2, 4, 3);
  term(+1, 1, 4, 2, 1, 3, 3, 4, 2);
  term(+1, 1, 4, 2, 2, 3, 1, 4, 3);
  term(-1, 1, 4, 2, 2, 3, 3, 4, 1);
  term(-1, 1, 4, 2, 3, 3, 1, 4, 2);
  term(+1, 1, 4, 2, 3, 3, 2, 4, 1);

  const Complex def = prefix * (K.det({1, 2, 3, 4}) - K.det({1, 2}) * K.det({3, 4}));
  return {e.value, def, std::max(e.magnitude, 28.0 * std::abs(prefix) * K.diagonal_product())};
}

double jhat2_integrand(DiskPoint x1, DiskPoint x2) { return jhat2_forms(x1, x2).expanded.real(); }

double jhat3_integrand(DiskPoint x1, DiskPoint x2, DiskPoint x3) { return jhat3_forms(x1, x2, x3).expanded.real(); }

double jhat4_integrand(DiskPoint x1, DiskPoint x2, DiskPoint x3, DiskPoint x4) {
  return jhat4_forms(x1, x2, x3, x4).expanded.real();
}

double jhat2_majorant(DiskPoint x1, DiskPoint x2) {
  const double k11 = kernel(x1, x1).real();
  const double k22 = kernel(x2, x2).real();
  return 3.0 * std::pow(k11 * k22, 1.5) * std::abs(kernel(x1, x2));
}

}  // namespace bergman
