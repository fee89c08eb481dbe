#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wavedg {

/// Legendre polynomial P_n(x) by the three-term recurrence (P_n(1) = 1).
/// Arguments within 1e-12 outside [-1, 1] are clamped.
double legendre_eval(int degree, double x);

/// Values, first and second derivatives of P_0..P_degree at x.
/// Any of the output spans may be empty; non-empty spans must have degree+1 entries.
void legendre_all(int degree, double x, std::span<double> p, std::span<double> dp,
                  std::span<double> ddp);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// m-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2m-1.
GaussRule gauss_rule(int m);

/// Sum_n coeffs[n] * P_n(x) for each x.
std::vector<double> eval_at(std::span<const double> coeffs, std::span<const double> points);

/// Modal Legendre machinery on the reference interval for a fixed degree.
class ReferenceBasis {
 public:
  /// Uses a Gauss rule with `quad_points` nodes; 0 selects degree + 2.
  explicit ReferenceBasis(int degree, int quad_points = 0);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }

  const GaussRule& quadrature() const { return rule_; }
  /// vandermonde()(i, n) = P_n(node_i).
  const Eigen::MatrixXd& vandermonde() const { return vandermonde_; }
  const Eigen::MatrixXd& vandermonde_deriv() const { return vandermonde_deriv_; }
  const Eigen::VectorXd& edge_values_left() const { return edge_left_; }
  const Eigen::VectorXd& edge_values_right() const { return edge_right_; }
  /// Diagonal of the modal mass matrix, 2 / (2n + 1).
  const Eigen::VectorXd& mass_diagonal() const { return mass_diagonal_; }

  std::vector<double> eval_at(std::span<const double> coeffs,
                              std::span<const double> points) const;

 private:
  int degree_;
  GaussRule rule_;
  Eigen::MatrixXd vandermonde_;
  Eigen::MatrixXd vandermonde_deriv_;
  Eigen::VectorXd edge_left_;
  Eigen::VectorXd edge_right_;
  Eigen::VectorXd mass_diagonal_;
};

}  // namespace wavedg
