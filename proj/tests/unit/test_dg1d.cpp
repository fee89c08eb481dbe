#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "helpers.hpp"
#include "wavedg/analysis.hpp"
#include "wavedg/dg1d.hpp"
#include "wavedg/dg2d.hpp"

using doctest::Approx;
using testing_util::energy_rate;
using testing_util::random_state;

namespace {

struct Case {
  bool staggered = true;
  oracle::Setup1D s;
};

wavedg::Operator1D build(const Case& c) {
  const auto mesh = wavedg::StaggeredMesh1D::build(c.s.x_left, c.s.x_right, c.s.n, c.s.periodic);
  const wavedg::BoundaryPair bcs{c.s.left, c.s.right};
  return c.staggered ? wavedg::assemble_staggered_1d(mesh, c.s.qu, c.s.qv, c.s.flux, c.s.c, bcs)
                     : wavedg::assemble_nonstaggered_1d(mesh, c.s.qu, c.s.qv, c.s.flux, c.s.c, bcs);
}

std::vector<Case> energy_cases() {
  std::vector<Case> out;
  for (bool staggered : {true, false})
    for (bool periodic : {true, false})
      for (double xi : {0.0, 1.0}) {
        if (periodic && xi > 0) continue;
        Case c;
        c.staggered = staggered;
        c.s.periodic = periodic;
        c.s.n = 6;
        c.s.qu = 3;
        c.s.qv = staggered ? 2 : 3;
        c.s.c = 1.3;
        c.s.flux = {0.5, 0.1 / c.s.c, 0.1 * c.s.c, xi};
        c.s.left = wavedg::BoundaryCondition(0.8, 0.6);
        c.s.right = wavedg::BoundaryCondition(0.3, 0.9);
        out.push_back(c);
      }
  return out;
}

}  // namespace

TEST_CASE("1D constant state has zero derivative") {
  for (bool staggered : {true, false})
    for (bool periodic : {true, false}) {
      Case c;
      c.staggered = staggered;
      c.s.periodic = periodic;
      c.s.flux = {0.3, 0.2, 0.4, 1.0};
      c.s.left = wavedg::BoundaryCondition::neumann();
      const auto op = build(c);
      Eigen::VectorXd w = Eigen::VectorXd::Zero(op.size());
      for (auto i : op.layout().w0_indices()) w(i) = 1.0;
      CHECK(op.apply(w, 0.0).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(op.energy(w) < 1e-28);
      CHECK(op.apply(Eigen::VectorXd::Zero(op.size()), 0.0).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("1D apply matches the dense oracle product and is pure") {
  Case c;
  c.s.n = 4;
  c.s.qu = 2;
  c.s.qv = 1;
  const auto op = build(c);
  const Eigen::MatrixXd dense = oracle::staggered_1d(c.s).op();
  std::mt19937 gen(3);
  const Eigen::VectorXd w = random_state(op.size(), gen);
  const Eigen::VectorXd a = op.apply(w, 0.0), b = op.apply(w, 0.0);
  CHECK((a - dense * w).cwiseAbs().maxCoeff() < 1e-13 * (dense * w).cwiseAbs().maxCoeff());
  CHECK((a.array() == b.array()).all());
}

TEST_CASE("1D energy identity on random states") {
  std::mt19937 gen(17);
  for (const auto& c : energy_cases()) {
    CAPTURE(c.staggered);
    CAPTURE(c.s.periodic);
    CAPTURE(c.s.flux.boundary_upwind);
    const auto op = build(c);
    auto energy = [&](const Eigen::VectorXd& w) { return op.energy(w); };
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXd w = random_state(op.size(), gen);
      const double rate = energy_rate(energy, w, op.apply(w, 0.0));
      const double lib = op.scheme().energy_rate_penalty(w);
      const double ref = c.staggered ? oracle::penalty_staggered_1d(c.s, w) : oracle::penalty_nonstaggered_1d(c.s, w);
      CHECK(ref <= 0.0);
      CHECK(std::abs(rate - ref) <= 1e-11 * std::abs(ref));
      CHECK(std::abs(lib - ref) <= 1e-11 * std::abs(ref));
      const double e_ref = c.staggered ? oracle::energy_staggered_1d(c.s, w) : oracle::energy_nonstaggered_1d(c.s, w);
      CHECK(std::abs(op.energy(w) - e_ref) <= 1e-12 * e_ref);
    }
  }
}

TEST_CASE("1D central fluxes conserve energy") {
  std::mt19937 gen(5);
  for (bool staggered : {true, false}) {
    Case c;
    c.staggered = staggered;
    c.s.n = 6;
    c.s.qu = 4;
    c.s.qv = staggered ? 3 : 4;
    c.s.periodic = false;
    c.s.left = wavedg::BoundaryCondition::dirichlet();
    c.s.right = wavedg::BoundaryCondition::neumann();
    const auto op = build(c);
    auto energy = [&](const Eigen::VectorXd& w) { return op.energy(w); };
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd w = random_state(op.size(), gen);
      const Eigen::VectorXd d = op.apply(w, 0.0);
      // Scale: the rate of a single term of the identity is about |d| |w| in the energy norm.
      const double scale = std::sqrt(op.energy(w) * op.energy(d));
      CHECK(std::abs(energy_rate(energy, w, d)) < 1e-12 * scale);
    }
  }
}

TEST_CASE("1D central fluxes: W1 block is skew-adjoint in the energy product") {
  std::mt19937 gen(23);
  for (bool staggered : {true, false}) {
    Case c;
    c.staggered = staggered;
    c.s.n = 5;
    c.s.qu = 3;
    c.s.qv = 2;
    c.s.c = 0.7;
    const auto op = build(c);
    auto energy = [&](const Eigen::VectorXd& w) { return op.energy(w); };
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x = random_state(op.size(), gen), y = random_state(op.size(), gen);
      for (auto i : op.layout().w0_indices()) x(i) = y(i) = 0.0;
      const Eigen::VectorXd lx = op.apply(x, 0.0), ly = op.apply(y, 0.0);
      const double a = testing_util::energy_product(energy, x, ly);
      const double b = testing_util::energy_product(energy, y, lx);
      const double scale = std::sqrt(op.energy(x) * op.energy(ly)) + std::sqrt(op.energy(y) * op.energy(lx));
      CHECK(std::abs(a + b) < 1e-12 * scale);
    }
  }
}

TEST_CASE("1D W1 derivative does not depend on W0") {
  std::mt19937 gen(29);
  for (const auto& c : energy_cases()) {
    const auto op = build(c);
    const Eigen::VectorXd w = random_state(op.size(), gen);
    Eigen::VectorXd w2 = w;
    for (auto i : op.layout().w0_indices()) w2(i) += 3.0 * (i + 1);
    const Eigen::VectorXd d1 = op.apply(w, 0.0), d2 = op.apply(w2, 0.0);
    double diff = 0.0;
    for (auto i : op.layout().w1_indices()) diff = std::max(diff, std::abs(d1(i) - d2(i)));
    CHECK(diff <= 1e-14 * d1.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("1D energy of a projected sine") {
  const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.0, 4, true);
  for (bool staggered : {true, false}) {
    const auto op = staggered ? wavedg::assemble_staggered_1d(mesh, 8, 7, {}, 1.0)
                              : wavedg::assemble_nonstaggered_1d(mesh, 8, 7, {}, 1.0);
    const auto w = wavedg::project_initial_data<1>(
        op, [](const wavedg::Point<1>& x, double) { return std::sin(M_PI * x[0]); },
        [](const wavedg::Point<1>&, double) { return 0.0; });
    CHECK(op.energy(w) == Approx(M_PI * M_PI / 2.0).epsilon(1e-6));
  }
}

TEST_CASE("1D polynomial data is reproduced exactly") {
  const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.0, 3, false);
  const auto op = wavedg::assemble_staggered_1d(mesh, 3, 2, {}, 1.0);
  auto u = [](const wavedg::Point<1>& x, double) { return 1.0 - 2.0 * x[0] + x[0] * x[0] * x[0]; };
  auto v = [](const wavedg::Point<1>& x, double) { return 0.5 + x[0] * x[0]; };
  const auto w = wavedg::project_initial_data<1>(op, u, v);
  const auto [eu, ev] = wavedg::l2_error<1>(op, w, u, v, 0.0);
  CHECK(eu < 1e-13);
  CHECK(ev < 1e-13);
}

TEST_CASE("1D semi-discrete residual for a travelling wave decays under refinement") {
  // dW/dt of the projected (u, v) against the projected (v, c^2 u_xx).
  const double k = 2.0 * M_PI;
  std::vector<double> hs, err;
  for (int n : {10, 20, 40}) {
    const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.0, n, true);
    const auto op = wavedg::assemble_staggered_1d(mesh, 3, 2, {}, 1.0);
    const auto w = wavedg::project_initial_data<1>(
        op, [&](const wavedg::Point<1>& x, double) { return std::sin(k * x[0]); },
        [&](const wavedg::Point<1>& x, double) { return k * std::cos(k * x[0]); });
    const Eigen::VectorXd d = op.apply(w, 0.0);
    const auto [eu, ev] = wavedg::l2_error<1>(
        op, d, [&](const wavedg::Point<1>& x, double) { return k * std::cos(k * x[0]); },
        [&](const wavedg::Point<1>& x, double) { return -k * k * std::sin(k * x[0]); }, 0.0);
    hs.push_back(mesh.h());
    err.push_back(std::hypot(eu, ev));
  }
  const auto fit = wavedg::fit_power_law(hs, err);
  MESSAGE("residual rate ", fit.exponent);
  CHECK(fit.exponent > 1.5);
  CHECK(err.back() < err.front());
}

TEST_CASE("1D flux and boundary validation") {
  const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.0, 4, true);
  CHECK_THROWS(wavedg::assemble_staggered_1d(mesh, 0, 0, {}, 1.0));
  CHECK_THROWS(wavedg::assemble_nonstaggered_1d(mesh, 0, 0, {}, 1.0));
  wavedg::FluxParams bad;
  bad.beta = -1.0;
  CHECK_THROWS(wavedg::assemble_staggered_1d(mesh, 2, 1, bad, 1.0));
  const wavedg::BoundaryCondition bc(3.0, 4.0);
  CHECK(bc.gamma() == Approx(0.6));
  CHECK(bc.kappa() == Approx(0.8));
  CHECK(std::abs(bc.gamma() * bc.gamma() + bc.kappa() * bc.kappa() - 1.0) < 1e-12);
}
