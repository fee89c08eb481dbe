#pragma once

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace testing_util {

inline Eigen::VectorXd random_state(Eigen::Index n, std::mt19937& gen) {
  std::normal_distribution<double> d;
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = d(gen);
  return w;
}

/// dE/dt along dw/dt = d for a quadratic E: (E(w + s d) - E(w - s d)) / (2 s) is exact;
/// s only balances the magnitudes.
inline double energy_rate(const std::function<double(const Eigen::VectorXd&)>& energy, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& d) {
  const double s = d.norm() > 0 ? w.norm() / d.norm() : 1.0;
  return (energy(w + s * d) - energy(w - s * d)) / (2.0 * s);
}

/// <x, y> in the energy inner product: E(x + y) - E(x) - E(y).
inline double energy_product(const std::function<double(const Eigen::VectorXd&)>& energy,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return energy(x + y) - energy(x) - energy(y);
}

}  // namespace testing_util
