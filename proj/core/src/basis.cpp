#include "wavedg/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavedg {

namespace {

double clamp_unit(double x) {
  if (x > 1.0) return 1.0;
  if (x < -1.0) return -1.0;
  return x;
}

// P_m(x) and P_m'(x) for the Newton iteration on Gauss nodes.
void legendre_and_derivative(int m, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (m == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int n = 1; n < m; ++n) {
    const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // m (x P_m - P_{m-1}) / (x^2 - 1); only used strictly inside (-1, 1).
  dp = m * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

double legendre_eval(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("legendre_eval: negative degree");
  if (std::abs(x) > 1.0 + 1e-12) throw std::domain_error("legendre_eval: |x| > 1");
  x = clamp_unit(x);
  if (degree == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int n = 1; n < degree; ++n) {
    const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void legendre_all(int degree, double x, std::span<double> p, std::span<double> dp,
                  std::span<double> ddp) {
  x = clamp_unit(x);
  const std::size_t n1 = static_cast<std::size_t>(degree) + 1;
  std::vector<double> pv(n1), dv(n1), ddv(n1);
  pv[0] = 1.0;
  dv[0] = 0.0;
  ddv[0] = 0.0;
  if (degree >= 1) {
    pv[1] = x;
    dv[1] = 1.0;
    ddv[1] = 0.0;
  }
  // P'_{n+1} = P'_{n-1} + (2n+1) P_n, and the same recurrence one derivative up.
  for (int n = 1; n < degree; ++n) {
    pv[n + 1] = ((2.0 * n + 1.0) * x * pv[n] - n * pv[n - 1]) / (n + 1.0);
    dv[n + 1] = dv[n - 1] + (2.0 * n + 1.0) * pv[n];
    ddv[n + 1] = ddv[n - 1] + (2.0 * n + 1.0) * dv[n];
  }
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = pv[i];
  for (std::size_t i = 0; i < dp.size(); ++i) dp[i] = dv[i];
  for (std::size_t i = 0; i < ddp.size(); ++i) ddp[i] = ddv[i];
}

GaussRule gauss_rule(int m) {
  if (m < 1) throw std::invalid_argument("gauss_rule: m must be >= 1");
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, descending order; flipped below.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_and_derivative(m, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_and_derivative(m, x, p, dp);
    rule.nodes[m - 1 - i] = x;
    rule.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

std::vector<double> eval_at(std::span<const double> coeffs, std::span<const double> points) {
  std::vector<double> out(points.size(), 0.0);
  if (coeffs.empty()) return out;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  std::vector<double> p(coeffs.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    legendre_all(degree, points[i], p, {}, {});
    double s = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) s += coeffs[n] * p[n];
    out[i] = s;
  }
  return out;
}

ReferenceBasis::ReferenceBasis(int degree, int quad_points)
    : degree_(degree), rule_(gauss_rule(quad_points > 0 ? quad_points : degree + 2)) {
  if (degree < 0) throw std::invalid_argument("ReferenceBasis: negative degree");
  const int m = static_cast<int>(rule_.size());
  vandermonde_.resize(m, degree + 1);
  vandermonde_deriv_.resize(m, degree + 1);
  std::vector<double> p(degree + 1), dp(degree + 1);
  for (int i = 0; i < m; ++i) {
    legendre_all(degree, rule_.nodes[i], p, dp, {});
    for (int n = 0; n <= degree; ++n) {
      vandermonde_(i, n) = p[n];
      vandermonde_deriv_(i, n) = dp[n];
    }
  }
  edge_left_.resize(degree + 1);
  edge_right_.resize(degree + 1);
  mass_diagonal_.resize(degree + 1);
  for (int n = 0; n <= degree; ++n) {
    edge_left_(n) = (n % 2 == 0) ? 1.0 : -1.0;
    edge_right_(n) = 1.0;
    mass_diagonal_(n) = 2.0 / (2.0 * n + 1.0);
  }
}

std::vector<double> ReferenceBasis::eval_at(std::span<const double> coeffs,
                                            std::span<const double> points) const {
  return wavedg::eval_at(coeffs, points);
}

}  // namespace wavedg
