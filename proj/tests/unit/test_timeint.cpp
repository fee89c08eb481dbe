#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "wavedg/analysis.hpp"
#include "wavedg/basis.hpp"
#include "wavedg/dg1d.hpp"
#include "wavedg/dg2d.hpp"
#include "wavedg/timeint.hpp"

using testing_util::random_state;

namespace {

// dW/dt = L W + g(t), g polynomial in t with coefficient vectors g[k] (g = sum g[k] t^k).
class MatrixOperator final : public wavedg::EvolutionOperator {
 public:
  explicit MatrixOperator(Eigen::MatrixXd l, std::vector<Eigen::VectorXd> g = {})
      : l_(std::move(l)), g_(std::move(g)) {}

  Eigen::Index size() const override { return l_.rows(); }
  void apply_linear(const Eigen::MatrixXd& in, Eigen::MatrixXd& out, const wavedg::DofMask* rows) const override {
    out = l_ * in;
    if (!rows) return;
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      if (!(*rows)[i]) out.row(i).setZero();
  }
  bool has_forcing() const override { return !g_.empty(); }
  void forcing(double t, int order, Eigen::VectorXd& out) const override {
    out.setZero(size());
    for (std::size_t k = order; k < g_.size(); ++k) {
      double c = 1.0;
      for (std::size_t j = 0; j < static_cast<std::size_t>(order); ++j) c *= static_cast<double>(k - j);
      out += c * std::pow(t, static_cast<double>(k - order)) * g_[k];
    }
  }

 private:
  Eigen::MatrixXd l_;
  std::vector<Eigen::VectorXd> g_;
};

wavedg::Operator1D pulse_op(int n, int q, wavedg::BoundaryPair bcs) {
  const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.5, n, false);
  return wavedg::assemble_staggered_1d(mesh, q, q - 1, {}, 1.0, bcs);
}

Eigen::VectorXd pulse_state(const wavedg::Operator1D& op) {
  return wavedg::project_initial_data<1>(
      op, [](const wavedg::Point<1>& x, double) { return std::exp(-20.0 * x[0] * x[0]); },
      [](const wavedg::Point<1>&, double) { return 0.0; });
}

}  // namespace

TEST_CASE("Taylor step on a scalar system is the truncated exponential") {
  for (double lambda : {-0.7, 0.3, 2.0}) {
    const MatrixOperator op(Eigen::MatrixXd::Constant(1, 1, lambda));
    const double dt = 0.37;
    for (int order : {1, 4, 7}) {
      double expect = 0.0, term = 1.0;
      for (int j = 0; j <= order; ++j) {
        expect += term;
        term *= lambda * dt / (j + 1);
      }
      const Eigen::VectorXd w = wavedg::taylor_step(op, Eigen::VectorXd::Ones(1), 0.0, {order, dt});
      CHECK(w(0) == doctest::Approx(expect).epsilon(1e-15));
    }
  }
  const MatrixOperator op(Eigen::MatrixXd::Identity(3, 3));
  CHECK(wavedg::taylor_step(op, Eigen::VectorXd::Zero(3), 0.0, {4, 0.1}).norm() == 0.0);
}

TEST_CASE("Taylor step is exact for a nilpotent system with polynomial forcing") {
  // L^3 = 0 and g of degree 1: the solution is a polynomial of degree 4 in t.
  Eigen::MatrixXd l(3, 3);
  l << 0, 2, -1, 0, 0, 3, 0, 0, 0;
  std::vector<Eigen::VectorXd> g{Eigen::Vector3d(1.0, -2.0, 0.5), Eigen::Vector3d(0.3, 0.0, -1.0)};
  const MatrixOperator op(l, g);
  const Eigen::Vector3d w0(0.2, -0.4, 1.1);
  const double t0 = 0.6, dt = 0.45;

  // Reference: variation of constants with exp(L s) = I + L s + L^2 s^2 / 2, integrated by Gauss.
  auto expm = [&](double s) -> Eigen::Matrix3d {
    return Eigen::Matrix3d::Identity() + l * s + l * l * s * s / 2.0;
  };
  Eigen::Vector3d exact = expm(dt) * w0;
  const auto rule = wavedg::gauss_rule(6);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = 0.5 * dt * (rule.nodes[i] + 1.0);
    const Eigen::Vector3d gs = g[0] + (t0 + s) * g[1];
    exact += 0.5 * dt * rule.weights[i] * expm(dt - s) * gs;
  }
  const Eigen::VectorXd got = wavedg::taylor_step(op, Eigen::VectorXd(w0), t0, {4, dt});
  CHECK((got - exact).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partition sizes and block structure") {
  const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.0, 4, true);
  const auto op = wavedg::assemble_staggered_1d(mesh, 2, 1, {}, 1.0);
  const auto part = wavedg::partition(op.layout());
  CHECK(part.w0.size() == 4);
  CHECK(static_cast<Eigen::Index>(part.w0.size() + part.w1.size()) == op.size());
  const Eigen::MatrixXd dense = wavedg::dense_operator(op);
  for (auto j : part.w0) CHECK(dense.col(j).cwiseAbs().maxCoeff() == 0.0);

  const auto op2 = wavedg::assemble_staggered_2d(wavedg::StaggeredMesh2D::build(3), 2, 2, {},
                                                 wavedg::WaveSpeedField<2>::uniform(1.0));
  CHECK(wavedg::partition(op2.layout()).w0.size() == 9);
}

TEST_CASE("LTS boundary group") {
  const auto op = pulse_op(10, 3, {});
  const auto lts = wavedg::make_lts_config(op, 3, 4, 4);
  const auto& layout = op.layout();
  const auto& dist = op.block_boundary_distance();
  for (int b = 0; b < layout.num_blocks(); ++b)
    for (int i = 0; i < layout.block_size(b); ++i)
      CHECK(static_cast<bool>(lts.boundary[layout.block_offset(b) + i]) == (dist[b] < 3));
  // Primal 0..2 and 7..9, dual 0..2 and 8..10.
  int blocks = 0;
  for (int b = 0; b < layout.num_blocks(); ++b) blocks += dist[b] < 3;
  CHECK(blocks == 12);
  CHECK_THROWS(wavedg::make_lts_config(op, 6, 4, 4));
  CHECK_NOTHROW(wavedg::make_lts_config(op, 6, 4, 4, true));
  CHECK_THROWS(wavedg::make_lts_config(op, 0, 4, 4));
}

TEST_CASE("LTS on a periodic mesh is the global Taylor step, bitwise") {
  const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.0, 8, true);
  const auto op = wavedg::assemble_staggered_1d(mesh, 3, 2, {}, 1.0);
  const auto lts = wavedg::make_lts_config(op, 3, 4, 4);
  std::mt19937 gen(61);
  const Eigen::VectorXd w = random_state(op.size(), gen);
  const double dt = 0.1 * mesh.h();
  const Eigen::VectorXd a = wavedg::lts_step(op, w, 0.0, dt, lts);
  const Eigen::VectorXd b = wavedg::taylor_step(op, w, 0.0, {4, dt});
  CHECK((a.array() == b.array()).all());
}

TEST_CASE("steppers are deterministic") {
  const auto op = pulse_op(10, 4, {wavedg::BoundaryCondition::neumann(), wavedg::BoundaryCondition::dirichlet()});
  const auto lts = wavedg::make_lts_config(op, 2, 5, 5);
  std::mt19937 gen(67);
  const Eigen::VectorXd w = random_state(op.size(), gen);
  const Eigen::VectorXd a = wavedg::lts_step(op, w, 0.0, 0.025, lts);
  const Eigen::VectorXd b = wavedg::lts_step(op, w, 0.0, 0.025, lts);
  CHECK((a.array() == b.array()).all());
  const Eigen::VectorXd c = wavedg::taylor_step(op, w, 0.0, {5, 0.025});
  const Eigen::VectorXd d = wavedg::taylor_step(op, w, 0.0, {5, 0.025});
  CHECK((c.array() == d.array()).all());
}

TEST_CASE("LTS converges at the Taylor order in the time step") {
  // Fixed spatial operator; compare against a tiny-step global Taylor reference at T.
  const auto op = pulse_op(10, 3, {wavedg::BoundaryCondition::neumann(), wavedg::BoundaryCondition::dirichlet()});
  const Eigen::VectorXd w0 = pulse_state(op);
  const double T = 0.5, h = 0.25;
  const int order = 4;

  Eigen::VectorXd ref = w0;
  const int ref_steps = 2000;
  for (int s = 0; s < ref_steps; ++s) ref = wavedg::taylor_step(op, ref, s * T / ref_steps, {8, T / ref_steps});

  std::vector<double> dts, errs;
  for (int steps : {40, 80, 160}) {
    const double dt = T / steps;
    REQUIRE(dt <= 0.1 * h + 1e-15);
    const auto lts = wavedg::make_lts_config(op, 2, order, order);
    Eigen::VectorXd w = w0;
    for (int s = 0; s < steps; ++s) w = wavedg::lts_step(op, w, s * dt, dt, lts);
    dts.push_back(dt);
    errs.push_back((w - ref).norm() / ref.norm());
  }
  const auto fit = wavedg::fit_power_law(dts, errs);
  MESSAGE("LTS temporal rate ", fit.exponent, " errors ", errs[0], " ", errs[2]);
  CHECK(fit.exponent > order - 0.5);
  CHECK(fit.exponent < order + 1.0);
}

TEST_CASE("Taylor stepping converges at the spatial rate on a travelling wave") {
  const double k = 2.0 * M_PI, T = 1.0;
  std::vector<double> hs, errs;
  for (int n : {10, 20, 40}) {
    const auto mesh = wavedg::StaggeredMesh1D::build(-1.0, 1.0, n, true);
    const auto op = wavedg::assemble_staggered_1d(mesh, 3, 2, {}, 1.0);
    auto u = [&](const wavedg::Point<1>& x, double t) { return std::sin(k * (x[0] + t)); };
    auto v = [&](const wavedg::Point<1>& x, double t) { return k * std::cos(k * (x[0] + t)); };
    Eigen::VectorXd w = wavedg::project_initial_data<1>(op, u, v);
    const int steps = static_cast<int>(std::lround(T / (0.1 * mesh.h())));
    const double dt = T / steps;
    for (int s = 0; s < steps; ++s) w = wavedg::taylor_step(op, w, s * dt, {4, dt});
    hs.push_back(mesh.h());
    errs.push_back(wavedg::l2_error<1>(op, w, u, v, T).first);
  }
  const double rate = wavedg::fit_power_law(hs, errs).exponent;
  MESSAGE("rate ", rate);
  CHECK(rate > 3.5);
}
