#include "bergman/linear_statistics.hpp"

#include <cmath>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

void require_coverage(const Configuration& config, const StatisticParams& params) {
  const double needed = max_modulus_of_ball(params.z(), params.shells());
  if (needed > config.validity_radius * (1.0 + 1e-15)) {
    throw CoverageError("configuration valid up to |w| < " + std::to_string(config.validity_radius) +
                        " but U_N(z) reaches " + std::to_string(needed));
  }
}

WeightedKernelSum build_theta(const Configuration& config, const StatisticParams& params) {
  require_coverage(config, params);
  WeightedKernelSum theta{{}, {}, params};
  for (const DiskPoint& x : config.points) {
    const double d = hyperbolic_distance(params.z(), x);
    if (d < params.shells()) {
      theta.nodes.push_back(x);
      theta.coefficients.push_back(std::pow(weight_T(params.z(), x), params.s()));
    }
  }
  return theta;
}

double norm_squared(const WeightedKernelSum& theta) {
  CompensatedSum re;
  CompensatedSum im;
  const std::size_t n = theta.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex term = theta.coefficients[i] * theta.coefficients[j] * kernel(theta.nodes[i], theta.nodes[j]);
      re.add(term.real());
      im.add(term.imag());
    }
  }
  const double value = re.value();
  if (std::abs(im.value()) > 1e-10 * std::abs(value)) {
    throw NonConvergenceError("Gram quadratic form has a non-negligible imaginary part");
  }
  return value;
}

Complex evaluate_function(const FunctionCoefficients& f, DiskPoint x) {
  require_in_disk(x, "evaluation point");
  Complex acc{};
  for (std::size_t n = f.coeffs.size(); n-- > 0;) {
    acc = acc * x + f.coeffs[n] * std::sqrt(static_cast<double>(n + 1));
  }
  return acc;
}

FunctionCoefficients truncated_kernel(DiskPoint w, int degree) {
  require_in_disk(w, "kernel center");
  FunctionCoefficients f;
  f.coeffs.resize(static_cast<std::size_t>(degree) + 1);
  Complex power{1.0, 0.0};
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    f.coeffs[n] = std::sqrt(static_cast<double>(n + 1)) * power;
    power *= std::conj(w);
  }
  return f;
}

Complex pair(const WeightedKernelSum& theta, const FunctionCoefficients& f) {
  CompensatedSum re;
  CompensatedSum im;
  for (std::size_t i = 0; i < theta.nodes.size(); ++i) {
    const Complex v = theta.coefficients[i] * evaluate_function(f, theta.nodes[i]);
    re.add(v.real());
    im.add(v.imag());
  }
  return {re.value(), im.value()};
}

std::vector<Complex> shell_sums(const Configuration& config, const StatisticParams& params,
                                const FunctionCoefficients& f) {
  require_coverage(config, params);
  std::vector<Complex> sums(static_cast<std::size_t>(params.shells()));
  for (const DiskPoint& x : config.points) {
    const double d = hyperbolic_distance(params.z(), x);
    if (!(d < params.shells())) continue;
    const auto k = static_cast<std::size_t>(std::floor(d));
    sums[k] += std::exp(-params.s() * d) * evaluate_function(f, x);
  }
  return sums;
}

}  // namespace bergman
