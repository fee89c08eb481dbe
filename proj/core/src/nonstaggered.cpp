#include "wavedg/nonstaggered.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavedg {

namespace {

RefBox<1> whole() { return RefBox<1>{}; }

}  // namespace

NonStaggeredScheme1D::NonStaggeredScheme1D(const StaggeredMesh1D& mesh, NonStaggeredSetup setup)
    : mesh_(mesh), setup_(std::move(setup)) {
  if (setup_.qu < 1) throw std::invalid_argument("non-staggered scheme: q_u must be >= 1");
  if (setup_.qv < 0) throw std::invalid_argument("non-staggered scheme: q_v must be >= 0");
  setup_.flux.validate();
  if (!setup_.speed.c || !setup_.speed.grad)
    throw std::invalid_argument("non-staggered scheme: wave speed is required");
  layout_ = DofLayout(1, setup_.qu, setup_.qv, mesh_.n(), mesh_.n());
  umodes_ = tensor_modes<1>(setup_.qu);
  vmodes_ = tensor_modes<1>(setup_.qv);
  int m = setup_.quad_points;
  // The beta penalty carries c^4 on faces: degree 8 + 2q for the quadratic speed.
  if (m <= 0) m = std::max(setup_.qu, setup_.qv) + (setup_.speed.constant ? 2 : 5);
  rule_ = gauss_rule(m);
}

Box<1> NonStaggeredScheme1D::cell(int j) const {
  const auto c = mesh_.primal_cell(j);
  Box<1> b;
  b.lo[0] = c[0];
  b.hi[0] = c[1];
  return b;
}

// Traces at the left (x = lo) or right (x = hi) end of element j.
Tabulation<1> NonStaggeredScheme1D::at_point(const std::vector<Mode<1>>& modes, int q, int j,
                                             double ref) const {
  std::array<std::vector<double>, 1> r{std::vector<double>{ref}};
  return tabulate<1>(modes, q, r, cell(j));
}

std::vector<int> NonStaggeredScheme1D::block_boundary_distance() const {
  std::vector<int> d;
  for (int pass = 0; pass < 2; ++pass)
    for (int j = 0; j < mesh_.n(); ++j) d.push_back(mesh_.primal_boundary_distance(j));
  return d;
}

void NonStaggeredScheme1D::assemble(BlockMatrix& a, MassMatrix& mass) const {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const int n = mesh_.n();
  const int nu = layout_.u_block();
  const int nv = layout_.v_block();
  const double alpha = setup_.flux.alpha;
  const double beta = setup_.flux.beta;
  const double tau = setup_.flux.tau;

  for (int j = 0; j < n; ++j) {
    const auto tp = tensor_points<1>(cell(j), rule_);
    const auto U = tabulate<1>(umodes_, setup_.qu, reference_coords<1>(tp, whole()), cell(j));
    const auto V = tabulate<1>(vmodes_, setup_.qv, reference_coords<1>(tp, whole()), cell(j));
    VectorXd wc2(tp.size());
    for (Eigen::Index i = 0; i < tp.size(); ++i) {
      const double c = setup_.speed.c(tp.x[i]);
      if (!(c > 0.0)) throw std::invalid_argument("wave speed must be positive");
      wc2(i) = tp.w(i) * c * c;
    }
    const MatrixXd gu = wc2.asDiagonal() * U.grad[0];
    MatrixXd uv = gu.transpose() * V.grad[0];
    uv.row(0) = (tp.w.asDiagonal() * V.val).colwise().sum();
    a.add(j, n + j, uv);
    a.add(n + j, j, -V.grad[0].transpose() * gu);
    const MatrixXd gram = U.grad[0].rightCols(nu - 1).transpose() * gu.rightCols(nu - 1);
    mass.set_u_block(j, cell(j).hi[0] - cell(j).lo[0], gram);
    VectorXd diag(nv);
    for (int i = 0; i < nv; ++i) diag(i) = mode_norm_squared<1>(vmodes_[i], cell(j));
    mass.set_v_block(n + j, diag);
  }

  for (const auto& f : mesh_.primal_faces()) {
    const int L = f.left, R = f.right;
    const double c = setup_.speed.c({f.x});
    const double c2 = c * c;
    const auto UL = at_point(umodes_, setup_.qu, L, 1.0);
    const auto UR = at_point(umodes_, setup_.qu, R, -1.0);
    const auto VL = at_point(vmodes_, setup_.qv, L, 1.0);
    const auto VR = at_point(vmodes_, setup_.qv, R, -1.0);
    const MatrixXd dl = UL.grad[0], dr = UR.grad[0];  // 1 x nu
    const MatrixXd vl = VL.val, vr = VR.val;

    // v* - v_L and v* - v_R as row functionals of (u_L, u_R, v_L, v_R)
    a.add(L, n + L, c2 * (alpha - 1.0) * dl.transpose() * vl);
    a.add(L, n + R, c2 * (1.0 - alpha) * dl.transpose() * vr);
    a.add(R, n + L, -c2 * alpha * dr.transpose() * vl);
    a.add(R, n + R, c2 * alpha * dr.transpose() * vr);
    if (beta != 0.0) {
      const double b = beta * c2 * c2;
      a.add(L, L, -b * dl.transpose() * dl);
      a.add(L, R, b * dl.transpose() * dr);
      a.add(R, L, b * dr.transpose() * dl);
      a.add(R, R, -b * dr.transpose() * dr);
    }
    // c^2 u_x* tested with +psi_L and -psi_R
    a.add(n + L, L, c2 * (1.0 - alpha) * vl.transpose() * dl);
    a.add(n + L, R, c2 * alpha * vl.transpose() * dr);
    a.add(n + R, L, -c2 * (1.0 - alpha) * vr.transpose() * dl);
    a.add(n + R, R, -c2 * alpha * vr.transpose() * dr);
    if (tau != 0.0) {
      a.add(n + L, n + L, -tau * vl.transpose() * vl);
      a.add(n + L, n + R, tau * vl.transpose() * vr);
      a.add(n + R, n + L, tau * vr.transpose() * vl);
      a.add(n + R, n + R, -tau * vr.transpose() * vr);
    }
  }

  const double xi = setup_.flux.boundary_upwind;
  for (const auto& b : mesh_.boundaries()) {
    const BoundaryCondition& bc = setup_.bc[b.side];
    const double sum = bc.gamma() + bc.kappa();
    const double gp = bc.gamma() / sum, kp = bc.kappa() / sum;
    const int e = b.primal;
    const double s = b.normal;
    const double c = setup_.speed.c({b.x});
    const double c2 = c * c;
    const auto U = at_point(umodes_, setup_.qu, e, s > 0 ? 1.0 : -1.0);
    const auto V = at_point(vmodes_, setup_.qv, e, s > 0 ? 1.0 : -1.0);
    const MatrixXd d = U.grad[0], v = V.val;
    a.add(e, n + e, c2 * s * (kp - 1.0) * d.transpose() * v);
    a.add(e, e, -xi * kp * c2 * c * d.transpose() * d);
    a.add(n + e, e, gp * c2 * s * v.transpose() * d);
    a.add(n + e, n + e, -xi * gp * c * v.transpose() * v);
  }
}

double NonStaggeredScheme1D::energy(const Eigen::VectorXd& w) const {
  double e = 0.0;
  for (int j = 0; j < mesh_.n(); ++j) {
    const auto tp = tensor_points<1>(cell(j), rule_);
    const auto U = tabulate<1>(umodes_, setup_.qu, reference_coords<1>(tp, whole()), cell(j));
    const auto V = tabulate<1>(vmodes_, setup_.qv, reference_coords<1>(tp, whole()), cell(j));
    const Eigen::VectorXd ux = U.grad[0] * w.segment(layout_.u_offset(j), layout_.u_block());
    const Eigen::VectorXd v = V.val * w.segment(layout_.v_offset(j), layout_.v_block());
    for (Eigen::Index i = 0; i < tp.size(); ++i) {
      const double c = setup_.speed.c(tp.x[i]);
      e += tp.w(i) * (v(i) * v(i) + c * c * ux(i) * ux(i));
    }
  }
  return 0.5 * e;
}

double NonStaggeredScheme1D::energy_rate_penalty(const Eigen::VectorXd& w) const {
  auto ux = [&](int j, double ref) {
    return (at_point(umodes_, setup_.qu, j, ref).grad[0] *
            w.segment(layout_.u_offset(j), layout_.u_block()))(0);
  };
  auto v = [&](int j, double ref) {
    return (at_point(vmodes_, setup_.qv, j, ref).val *
            w.segment(layout_.v_offset(j), layout_.v_block()))(0);
  };
  double rate = 0.0;
  for (const auto& f : mesh_.primal_faces()) {
    const double c = setup_.speed.c({f.x});
    const double ju = c * c * (ux(f.left, 1.0) - ux(f.right, -1.0));
    const double jv = v(f.left, 1.0) - v(f.right, -1.0);
    rate -= setup_.flux.beta * ju * ju + setup_.flux.tau * jv * jv;
  }
  for (const auto& b : mesh_.boundaries()) {
    const BoundaryCondition& bc = setup_.bc[b.side];
    const double ref = b.normal > 0 ? 1.0 : -1.0;
    const double c = setup_.speed.c({b.x});
    const double W = c * c * b.normal * ux(b.primal, ref);
    const double vb = v(b.primal, ref);
    rate += setup_.flux.boundary_upwind * (-bc.kappa() * W * W / c - bc.gamma() * c * vb * vb) / (bc.gamma() + bc.kappa());
  }
  return rate;
}

void NonStaggeredScheme1D::project_forcing(double t, int order, Eigen::VectorXd& rhs) const {
  rhs.setZero(layout_.total_dofs());
  if (!setup_.forcing) return;
  const GaussRule rule = gauss_rule(std::max(setup_.qu, setup_.qv) + 6);
  for (int j = 0; j < mesh_.n(); ++j) {
    const auto tp = tensor_points<1>(cell(j), rule);
    const auto V = tabulate<1>(vmodes_, setup_.qv, reference_coords<1>(tp, whole()), cell(j));
    Eigen::VectorXd f(tp.size());
    for (Eigen::Index i = 0; i < tp.size(); ++i) f(i) = tp.w(i) * setup_.forcing(tp.x[i], t, order);
    rhs.segment(layout_.v_offset(j), layout_.v_block()) = V.val.transpose() * f;
  }
}

Eigen::VectorXd NonStaggeredScheme1D::project(const SpaceTimeField<1>& u0,
                                              const SpaceTimeField<1>& v0, double t) const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(layout_.total_dofs());
  const GaussRule rule = gauss_rule(std::max(setup_.qu, setup_.qv) + 8);
  for (int j = 0; j < mesh_.n(); ++j) {
    const auto tp = tensor_points<1>(cell(j), rule);
    auto fill = [&](const std::vector<Mode<1>>& modes, int q, const SpaceTimeField<1>& f,
                    Eigen::Index off) {
      const auto T = tabulate<1>(modes, q, reference_coords<1>(tp, whole()), cell(j));
      Eigen::VectorXd fw(tp.size());
      for (Eigen::Index i = 0; i < tp.size(); ++i) fw(i) = tp.w(i) * f(tp.x[i], t);
      const Eigen::VectorXd mom = T.val.transpose() * fw;
      for (std::size_t m = 0; m < modes.size(); ++m)
        w(off + static_cast<Eigen::Index>(m)) =
            mom(static_cast<Eigen::Index>(m)) / mode_norm_squared<1>(modes[m], cell(j));
    };
    fill(umodes_, setup_.qu, u0, layout_.u_offset(j));
    fill(vmodes_, setup_.qv, v0, layout_.v_offset(j));
  }
  return w;
}

std::pair<double, double> NonStaggeredScheme1D::l2_error(const Eigen::VectorXd& w,
                                                         const SpaceTimeField<1>& exact_u,
                                                         const SpaceTimeField<1>& exact_v,
                                                         double t) const {
  const GaussRule rule = gauss_rule(std::max(setup_.qu, setup_.qv) + 8);
  double eu = 0.0, ev = 0.0;
  for (int j = 0; j < mesh_.n(); ++j) {
    const auto tp = tensor_points<1>(cell(j), rule);
    const auto U = tabulate<1>(umodes_, setup_.qu, reference_coords<1>(tp, whole()), cell(j));
    const auto V = tabulate<1>(vmodes_, setup_.qv, reference_coords<1>(tp, whole()), cell(j));
    const Eigen::VectorXd u = U.val * w.segment(layout_.u_offset(j), layout_.u_block());
    const Eigen::VectorXd v = V.val * w.segment(layout_.v_offset(j), layout_.v_block());
    for (Eigen::Index i = 0; i < tp.size(); ++i) {
      const double du = u(i) - exact_u(tp.x[i], t);
      const double dv = v(i) - exact_v(tp.x[i], t);
      eu += tp.w(i) * du * du;
      ev += tp.w(i) * dv * dv;
    }
  }
  return {std::sqrt(eu), std::sqrt(ev)};
}

}  // namespace wavedg
