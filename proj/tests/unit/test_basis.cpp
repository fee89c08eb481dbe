#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dense_oracle.hpp"
#include "wavedg/basis.hpp"

using doctest::Approx;

namespace {

// Largest generalized eigenvalue of K against the diagonal Legendre mass.
double max_ratio(const Eigen::MatrixXd& k, const Eigen::VectorXd& mass) {
  const Eigen::VectorXd s = mass.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = s.asDiagonal() * k * s.asDiagonal();
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(scaled).eigenvalues().maxCoeff();
}

Eigen::VectorXd legendre_mass(int k) {
  Eigen::VectorXd m(k + 1);
  for (int n = 0; n <= k; ++n) m(n) = 2.0 / (2.0 * n + 1.0);
  return m;
}

// Gram matrix of derivatives over [a, b].
Eigen::MatrixXd derivative_gram(int k, double a, double b) {
  const auto rule = wavedg::gauss_rule(k + 2);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k + 1, k + 1);
  std::vector<double> dp(k + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
    const double w = 0.5 * (b - a) * rule.weights[i];
    wavedg::legendre_all(k, x, {}, dp, {});
    const Eigen::Map<Eigen::VectorXd> d(dp.data(), k + 1);
    g += w * d * d.transpose();
  }
  return g;
}

}  // namespace

TEST_CASE("legendre_eval examples") {
  CHECK(wavedg::legendre_eval(0, 0.37) == 1.0);
  CHECK(wavedg::legendre_eval(1, 0.5) == 0.5);
  CHECK(wavedg::legendre_eval(5, 1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(wavedg::legendre_eval(4, -1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(wavedg::legendre_eval(3, 1.0 + 1e-13) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("legendre_eval agrees with the monomial form") {
  for (int n = 0; n <= 12; ++n) {
    const auto c = oracle::legendre_monomial(n);
    for (double x : {-0.9, -0.31, 0.0, 0.42, 0.77}) {
      double v = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
      CHECK(wavedg::legendre_eval(n, x) == Approx(v).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss_rule examples") {
  const auto r1 = wavedg::gauss_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == Approx(0.0));
  CHECK(r1.weights[0] == Approx(2.0));

  const auto r2 = wavedg::gauss_rule(2);
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(r2.nodes[0]) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(std::abs(r2.nodes[1]) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.nodes[0] * r2.nodes[1] < 0.0);
  CHECK(r2.weights[0] == Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == Approx(1.0).epsilon(1e-15));

  const auto r8 = wavedg::gauss_rule(8);
  double s = 0.0;
  for (std::size_t i = 0; i < r8.size(); ++i) s += r8.weights[i] * std::pow(r8.nodes[i], 14);
  CHECK(std::abs(s - 2.0 / 15.0) < 1e-14);
}

TEST_CASE("gauss_rule exactness and weights") {
  for (int m = 1; m <= 32; ++m) {
    const auto r = wavedg::gauss_rule(m);
    double total = 0.0;
    for (double w : r.weights) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(std::abs(total - 2.0) < 1e-14);
    // Monomials get large cancellations at high degree; stop at 2m - 1 <= 25.
    if (m > 13) continue;
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1.0);
      CHECK(std::abs(s - exact) < 1e-14);
    }
  }
}

TEST_CASE("Legendre orthogonality up to degree 30") {
  for (int n = 0; n <= 30; ++n) {
    const auto r = wavedg::gauss_rule(n + 1);
    for (int m = 0; m <= n; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i)
        s += r.weights[i] * wavedg::legendre_eval(n, r.nodes[i]) * wavedg::legendre_eval(m, r.nodes[i]);
      const double exact = n == m ? 2.0 / (2.0 * n + 1.0) : 0.0;
      CHECK(std::abs(s - exact) < 1e-12);
    }
  }
}

TEST_CASE("ReferenceBasis data") {
  const wavedg::ReferenceBasis b(6);
  CHECK(b.size() == 7);
  for (int n = 0; n <= 6; ++n) {
    CHECK(std::abs(b.mass_diagonal()(n) - 2.0 / (2.0 * n + 1.0)) < 1e-13);
    CHECK(b.edge_values_right()(n) == Approx(1.0).epsilon(1e-15));
    CHECK(b.edge_values_left()(n) == Approx(n % 2 ? -1.0 : 1.0).epsilon(1e-15));
  }
  // Mass from the basis' own quadrature is diagonal.
  const auto& v = b.vandermonde();
  const Eigen::Map<const Eigen::VectorXd> w(b.quadrature().weights.data(), b.quadrature().size());
  const Eigen::MatrixXd mass = v.transpose() * w.asDiagonal() * v;
  const Eigen::MatrixXd expected = b.mass_diagonal().asDiagonal();
  CHECK((mass - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("eval_at examples") {
  const std::vector<double> c1{1.0, 0.0, 0.0}, p1{0.3};
  CHECK(wavedg::eval_at(c1, p1)[0] == Approx(1.0));
  const std::vector<double> c2{0.0, 1.0}, p2{-1.0};
  CHECK(wavedg::eval_at(c2, p2)[0] == Approx(-1.0));

  std::mt19937 gen(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> c(7);
  for (double& x : c) x = dist(gen);
  const wavedg::ReferenceBasis b(6);
  const auto& nodes = b.quadrature().nodes;
  const auto got = b.eval_at(c, nodes);
  const Eigen::VectorXd expect = b.vandermonde() * Eigen::Map<const Eigen::VectorXd>(c.data(), 7);
  for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(std::abs(got[i] - expect(i)) < 1e-14);
}

TEST_CASE("modal differentiation of x^k is exact") {
  const int degree = 8;
  const wavedg::ReferenceBasis b(degree);
  const auto& r = b.quadrature();
  for (int k = 0; k <= degree; ++k) {
    Eigen::VectorXd coeff(degree + 1);
    for (int n = 0; n <= degree; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i)
        s += r.weights[i] * std::pow(r.nodes[i], k) * b.vandermonde()(i, n);
      coeff(n) = s / b.mass_diagonal()(n);
    }
    const Eigen::VectorXd d = b.vandermonde_deriv() * coeff;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double exact = k == 0 ? 0.0 : k * std::pow(r.nodes[i], k - 1);
      CHECK(std::abs(d(i) - exact) < 1e-12);
    }
  }
}

TEST_CASE("inverse inequalities on the reference interval") {
  const double c1 = std::sqrt(3.0);
  const double c2 = std::sqrt(2.0) / 2.0;
  const double c3_half = (4.0 * std::sqrt(3.0) + 2.0) / 3.0;
  const double c4_half = std::sqrt(32.0 / (std::sqrt(3.0) * M_PI));
  for (int k = 1; k <= 20; ++k) {
    CAPTURE(k);
    const Eigen::VectorXd mass = legendre_mass(k);
    // Worst case over Q^k is a generalized eigenvalue.
    CHECK(std::sqrt(max_ratio(derivative_gram(k, -1.0, 1.0), mass)) <= c1 * k * k);
    CHECK(std::sqrt(max_ratio(derivative_gram(k, -0.5, 0.5), mass)) <= c3_half * k);
    // max p(x)^2 / |p|^2 = sum_n P_n(x)^2 / mass_n.
    auto point_sup = [&](double x) {
      double s = 0.0;
      for (int n = 0; n <= k; ++n) s += std::pow(wavedg::legendre_eval(n, x), 2) / mass(n);
      return std::sqrt(s);
    };
    CHECK(point_sup(1.0) <= c2 * (k + 1));
    CHECK(point_sup(-1.0) <= c2 * (k + 1));
    CHECK(point_sup(0.5) <= c4_half * std::sqrt(k + 1.0));
    CHECK(point_sup(-0.5) <= c4_half * std::sqrt(k + 1.0));
  }

  // Random members as a sanity check of the sup computation above.
  std::mt19937 gen(11);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + trial % 12;
    Eigen::VectorXd p(k + 1);
    for (int n = 0; n <= k; ++n) p(n) = dist(gen);
    const double norm = std::sqrt(p.dot(legendre_mass(k).asDiagonal() * p));
    const double dnorm = std::sqrt(p.dot(derivative_gram(k, -1.0, 1.0) * p));
    const double dhalf = std::sqrt(p.dot(derivative_gram(k, -0.5, 0.5) * p));
    CHECK(dnorm <= c1 * k * k * norm);
    CHECK(dhalf <= c3_half * k * norm);
  }
}
