#include "wavedg/staggered.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavedg {

namespace {

template <int D>
RefBox<D> whole_cell() {
  RefBox<D> r;
  for (int d = 0; d < D; ++d) r.axis[d] = {-1.0, 1.0};
  return r;
}

}  // namespace

template <int D>
StaggeredScheme<D>::StaggeredScheme(StaggeredTopology<D> topology, StaggeredSetup<D> setup)
    : topo_(std::move(topology)), setup_(std::move(setup)) {
  if (setup_.qu < 1) throw std::invalid_argument("staggered scheme: q_u must be >= 1");
  if (setup_.qv < 0) throw std::invalid_argument("staggered scheme: q_v must be >= 0");
  setup_.flux.validate();
  if (!setup_.speed.c || !setup_.speed.grad)
    throw std::invalid_argument("staggered scheme: wave speed and its gradient are required");
  layout_ = DofLayout(D, setup_.qu, setup_.qv, topo_.num_primal, topo_.num_dual);
  umodes_ = tensor_modes<D>(setup_.qu);
  vmodes_ = tensor_modes<D>(setup_.qv);
  int m = setup_.quad_points;
  // The beta penalty carries c^4 on faces: degree 8 + 2q for the quadratic speed.
  if (m <= 0) m = std::max(setup_.qu, setup_.qv) + (setup_.speed.constant ? 2 : 5);
  rule_ = gauss_rule(m);
}

template <int D>
typename StaggeredScheme<D>::Speed StaggeredScheme<D>::sample_speed(const TensorPoints<D>& tp) const {
  Speed s;
  const Eigen::Index n = tp.size();
  s.c.resize(n);
  s.c2.resize(n);
  for (int d = 0; d < D; ++d) s.grad_c2[d].resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = setup_.speed.c(tp.x[i]);
    if (!(c > 0.0)) throw std::invalid_argument("wave speed must be positive at every quadrature point");
    const Point<D> g = setup_.speed.grad(tp.x[i]);
    s.c(i) = c;
    s.c2(i) = c * c;
    for (int d = 0; d < D; ++d) s.grad_c2[d](i) = 2.0 * c * g[d];
  }
  return s;
}

template <int D>
int StaggeredScheme<D>::fine_points() const {
  return std::max(setup_.qu, setup_.qv) + 8;
}

template <int D>
std::vector<int> StaggeredScheme<D>::block_boundary_distance() const {
  std::vector<int> d = topo_.primal_distance;
  d.insert(d.end(), topo_.dual_distance.begin(), topo_.dual_distance.end());
  return d;
}

template <int D>
void StaggeredScheme<D>::assemble(BlockMatrix& a, MassMatrix& mass) const {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const int nu = layout_.u_block();
  const int nv = layout_.v_block();
  const int vb0 = topo_.num_primal;  // first v block
  const double beta = setup_.flux.beta;
  const double tau = setup_.flux.tau;

  std::vector<MatrixXd> gram(topo_.num_primal, MatrixXd::Zero(nu - 1, nu - 1));

  for (const auto& piece : topo_.pieces) {
    const auto tp = tensor_points<D>(piece.box, rule_);
    const auto U = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, piece.primal_ref),
                               topo_.primal_cells[piece.primal], true);
    const auto V = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, piece.dual_ref),
                               topo_.dual_cells[piece.dual]);
    const Speed s = sample_speed(tp);
    const VectorXd wc2 = tp.w.cwiseProduct(s.c2);

    // div(c^2 grad phi) at the points
    MatrixXd div = s.c2.asDiagonal() * U.lap;
    for (int d = 0; d < D; ++d) div.noalias() += s.grad_c2[d].asDiagonal() * U.grad[d];

    MatrixXd wv = tp.w.asDiagonal() * V.val;
    MatrixXd uv = -div.transpose() * wv;
    uv.row(0) = wv.colwise().sum();  // cell-average equation: integral of v
    a.add(piece.primal, vb0 + piece.dual, uv);

    MatrixXd vu = MatrixXd::Zero(nv, nu);
    for (int d = 0; d < D; ++d) {
      const MatrixXd wg = wc2.asDiagonal() * U.grad[d];
      vu.noalias() -= V.grad[d].transpose() * wg;
      gram[piece.primal].noalias() +=
          U.grad[d].rightCols(nu - 1).transpose() * wg.rightCols(nu - 1);
    }
    a.add(vb0 + piece.dual, piece.primal, vu);
  }

  // Primal faces: v* = v - beta [[c^2 grad u]], tested with +-(c^2 d_n phi).
  for (const auto& f : topo_.primal_faces) {
    const auto tp = tensor_points<D>(f.box, rule_);
    const int d = f.axis;
    const auto UL = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, f.minus_ref),
                                topo_.primal_cells[f.minus]);
    const auto UR = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, f.plus_ref),
                                topo_.primal_cells[f.plus]);
    const auto V = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, f.container_ref),
                               topo_.dual_cells[f.container]);
    const Speed s = sample_speed(tp);
    const MatrixXd tl = (tp.w.cwiseProduct(s.c2)).asDiagonal() * UL.grad[d];  // w c^2 d phi_L
    const MatrixXd tr = (tp.w.cwiseProduct(s.c2)).asDiagonal() * UR.grad[d];
    a.add(f.minus, vb0 + f.container, tl.transpose() * V.val);
    a.add(f.plus, vb0 + f.container, -tr.transpose() * V.val);
    if (beta != 0.0) {
      const MatrixXd jl = s.c2.asDiagonal() * UL.grad[d];
      const MatrixXd jr = s.c2.asDiagonal() * UR.grad[d];
      a.add(f.minus, f.minus, -beta * tl.transpose() * jl);
      a.add(f.minus, f.plus, beta * tl.transpose() * jr);
      a.add(f.plus, f.minus, beta * tr.transpose() * jl);
      a.add(f.plus, f.plus, -beta * tr.transpose() * jr);
    }
  }

  // Dual faces: (c^2 grad u . n)* = c^2 d_n u - tau [[v]].
  for (const auto& g : topo_.dual_faces) {
    const auto tp = tensor_points<D>(g.box, rule_);
    const int d = g.axis;
    const auto VL = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, g.minus_ref),
                                topo_.dual_cells[g.minus]);
    const auto VR = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, g.plus_ref),
                                topo_.dual_cells[g.plus]);
    const auto U = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, g.container_ref),
                               topo_.primal_cells[g.container]);
    const Speed s = sample_speed(tp);
    const MatrixXd flux_u = (tp.w.cwiseProduct(s.c2)).asDiagonal() * U.grad[d];
    a.add(vb0 + g.minus, g.container, VL.val.transpose() * flux_u);
    a.add(vb0 + g.plus, g.container, -VR.val.transpose() * flux_u);
    if (tau != 0.0) {
      const MatrixXd wl = tp.w.asDiagonal() * VL.val;
      const MatrixXd wr = tp.w.asDiagonal() * VR.val;
      a.add(vb0 + g.minus, vb0 + g.minus, -tau * wl.transpose() * VL.val);
      a.add(vb0 + g.minus, vb0 + g.plus, tau * wl.transpose() * VR.val);
      a.add(vb0 + g.plus, vb0 + g.minus, tau * wr.transpose() * VL.val);
      a.add(vb0 + g.plus, vb0 + g.plus, -tau * wr.transpose() * VR.val);
    }
  }

  // Physical boundary: v* = k'(v - xi c n.grad u), (c^2 n.grad u)* = g'(c^2 n.grad u - xi c v).
  const double xi = setup_.flux.boundary_upwind;
  for (const auto& b : topo_.boundaries) {
    const BoundaryCondition& bc = setup_.bc[b.axis][b.side];
    const double sum = bc.gamma() + bc.kappa();
    const double gp = bc.gamma() / sum;
    const double kp = bc.kappa() / sum;
    const auto tp = tensor_points<D>(b.box, rule_);
    const int d = b.axis;
    const double n = b.normal;
    const auto U = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, b.primal_ref),
                               topo_.primal_cells[b.primal]);
    const auto V = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, b.dual_ref),
                               topo_.dual_cells[b.dual]);
    const Speed s = sample_speed(tp);
    const MatrixXd test_u = (tp.w.cwiseProduct(s.c2) * n).asDiagonal() * U.grad[d];
    const MatrixXd wv = tp.w.asDiagonal() * V.val;
    if (kp != 0.0) {
      a.add(b.primal, vb0 + b.dual, kp * test_u.transpose() * V.val);
      if (xi != 0.0)
        a.add(b.primal, b.primal,
              -xi * kp * test_u.transpose() * (s.c * n).asDiagonal() * U.grad[d]);
    }
    if (gp != 0.0) {
      a.add(vb0 + b.dual, b.primal, gp * wv.transpose() * (s.c2 * n).asDiagonal() * U.grad[d]);
      if (xi != 0.0)
        a.add(vb0 + b.dual, vb0 + b.dual, -xi * gp * wv.transpose() * s.c.asDiagonal() * V.val);
    }
  }

  for (int j = 0; j < topo_.num_primal; ++j) {
    const auto& cell = topo_.primal_cells[j];
    double area = 1.0;
    for (int d = 0; d < D; ++d) area *= cell.hi[d] - cell.lo[d];
    mass.set_u_block(j, area, gram[j]);
  }
  for (int k = 0; k < topo_.num_dual; ++k) {
    VectorXd diag(nv);
    for (int i = 0; i < nv; ++i) diag(i) = mode_norm_squared<D>(vmodes_[i], topo_.dual_cells[k]);
    mass.set_v_block(vb0 + k, diag);
  }
}

template <int D>
double StaggeredScheme<D>::energy(const Eigen::VectorXd& w) const {
  double ev = 0.0;
  for (int k = 0; k < topo_.num_dual; ++k) {
    const auto tp = tensor_points<D>(topo_.dual_cells[k], rule_);
    const auto V = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, whole_cell<D>()),
                               topo_.dual_cells[k]);
    const Eigen::VectorXd v = V.val * w.segment(layout_.v_offset(k), layout_.v_block());
    ev += tp.w.dot(v.cwiseAbs2());
  }
  double eu = 0.0;
  for (int j = 0; j < topo_.num_primal; ++j) {
    const auto tp = tensor_points<D>(topo_.primal_cells[j], rule_);
    const auto U = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, whole_cell<D>()),
                               topo_.primal_cells[j]);
    const Speed s = sample_speed(tp);
    const auto coeffs = w.segment(layout_.u_offset(j), layout_.u_block());
    for (int d = 0; d < D; ++d) {
      const Eigen::VectorXd g = U.grad[d] * coeffs;
      eu += tp.w.cwiseProduct(s.c2).dot(g.cwiseAbs2());
    }
  }
  return 0.5 * (ev + eu);
}

template <int D>
double StaggeredScheme<D>::energy_rate_penalty(const Eigen::VectorXd& w) const {
  double rate = 0.0;
  const double beta = setup_.flux.beta;
  const double tau = setup_.flux.tau;
  auto ucoef = [&](int j) { return w.segment(layout_.u_offset(j), layout_.u_block()); };
  auto vcoef = [&](int k) { return w.segment(layout_.v_offset(k), layout_.v_block()); };

  if (beta != 0.0) {
    for (const auto& f : topo_.primal_faces) {
      const auto tp = tensor_points<D>(f.box, rule_);
      const auto UL = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, f.minus_ref),
                                  topo_.primal_cells[f.minus]);
      const auto UR = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, f.plus_ref),
                                  topo_.primal_cells[f.plus]);
      const Speed s = sample_speed(tp);
      const Eigen::VectorXd jump =
          s.c2.cwiseProduct(UL.grad[f.axis] * ucoef(f.minus) - UR.grad[f.axis] * ucoef(f.plus));
      rate -= beta * tp.w.dot(jump.cwiseAbs2());
    }
  }
  if (tau != 0.0) {
    for (const auto& g : topo_.dual_faces) {
      const auto tp = tensor_points<D>(g.box, rule_);
      const auto VL = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, g.minus_ref),
                                  topo_.dual_cells[g.minus]);
      const auto VR = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, g.plus_ref),
                                  topo_.dual_cells[g.plus]);
      const Eigen::VectorXd jump = VL.val * vcoef(g.minus) - VR.val * vcoef(g.plus);
      rate -= tau * tp.w.dot(jump.cwiseAbs2());
    }
  }
  for (const auto& b : topo_.boundaries) {
    const BoundaryCondition& bc = setup_.bc[b.axis][b.side];
    const double sum = bc.gamma() + bc.kappa();
    const auto tp = tensor_points<D>(b.box, rule_);
    const auto U = tabulate<D>(umodes_, setup_.qu, reference_coords<D>(tp, b.primal_ref),
                               topo_.primal_cells[b.primal]);
    const auto V = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, b.dual_ref),
                               topo_.dual_cells[b.dual]);
    const Speed s = sample_speed(tp);
    const Eigen::VectorXd flux = b.normal * s.c2.cwiseProduct(U.grad[b.axis] * ucoef(b.primal));
    const Eigen::VectorXd v = V.val * vcoef(b.dual);
    for (Eigen::Index i = 0; i < tp.size(); ++i)
      rate += setup_.flux.boundary_upwind * tp.w(i) *
              (-bc.kappa() * flux(i) * flux(i) / s.c(i) - bc.gamma() * s.c(i) * v(i) * v(i)) / sum;
  }
  return rate;
}

template <int D>
void StaggeredScheme<D>::project_v(const std::function<double(const Point<D>&)>& f,
                                   Eigen::VectorXd& rhs) const {
  rhs.setZero(layout_.total_dofs());
  const GaussRule rule = gauss_rule(std::max(setup_.qu, setup_.qv) + 6);
  for (int k = 0; k < topo_.num_dual; ++k) {
    const auto tp = tensor_points<D>(topo_.dual_cells[k], rule);
    const auto V = tabulate<D>(vmodes_, setup_.qv, reference_coords<D>(tp, whole_cell<D>()),
                               topo_.dual_cells[k]);
    Eigen::VectorXd fw(tp.size());
    for (Eigen::Index i = 0; i < tp.size(); ++i) fw(i) = tp.w(i) * f(tp.x[i]);
    rhs.segment(layout_.v_offset(k), layout_.v_block()) = V.val.transpose() * fw;
  }
}

template <int D>
void StaggeredScheme<D>::project_forcing(double t, int order, Eigen::VectorXd& rhs) const {
  if (setup_.forcing) {
    project_v([&](const Point<D>& x) { return setup_.forcing(x, t, order); }, rhs);
  } else if (setup_.separable) {
    project_v(setup_.separable.spatial, rhs);
    rhs *= setup_.separable.temporal(t, order);
  } else {
    rhs.setZero(layout_.total_dofs());
  }
}

template <int D>
void StaggeredScheme<D>::project_forcing_spatial(Eigen::VectorXd& rhs) const {
  if (setup_.separable)
    project_v(setup_.separable.spatial, rhs);
  else
    rhs.setZero(layout_.total_dofs());
}

template <int D>
Eigen::VectorXd StaggeredScheme<D>::project(const SpaceTimeField<D>& u0, const SpaceTimeField<D>& v0,
                                            double t) const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(layout_.total_dofs());
  const GaussRule rule = gauss_rule(fine_points());
  auto project_cell = [&](const Box<D>& cell, const std::vector<Mode<D>>& modes, int q,
                          const SpaceTimeField<D>& f, Eigen::Index offset) {
    const auto tp = tensor_points<D>(cell, rule);
    const auto T = tabulate<D>(modes, q, reference_coords<D>(tp, whole_cell<D>()), cell);
    Eigen::VectorXd fw(tp.size());
    for (Eigen::Index i = 0; i < tp.size(); ++i) fw(i) = tp.w(i) * f(tp.x[i], t);
    const Eigen::VectorXd moments = T.val.transpose() * fw;
    for (std::size_t m = 0; m < modes.size(); ++m)
      w(offset + static_cast<Eigen::Index>(m)) = moments(static_cast<Eigen::Index>(m)) /
                                                  mode_norm_squared<D>(modes[m], cell);
  };
  for (int j = 0; j < topo_.num_primal; ++j)
    project_cell(topo_.primal_cells[j], umodes_, setup_.qu, u0, layout_.u_offset(j));
  for (int k = 0; k < topo_.num_dual; ++k)
    project_cell(topo_.dual_cells[k], vmodes_, setup_.qv, v0, layout_.v_offset(k));
  return w;
}

template <int D>
std::pair<double, double> StaggeredScheme<D>::l2_error(const Eigen::VectorXd& w,
                                                       const SpaceTimeField<D>& exact_u,
                                                       const SpaceTimeField<D>& exact_v,
                                                       double t) const {
  const GaussRule rule = gauss_rule(fine_points());
  auto cell_error = [&](const Box<D>& cell, const std::vector<Mode<D>>& modes, int q,
                        const SpaceTimeField<D>& f, Eigen::Index offset) {
    const auto tp = tensor_points<D>(cell, rule);
    const auto T = tabulate<D>(modes, q, reference_coords<D>(tp, whole_cell<D>()), cell);
    const Eigen::VectorXd approx = T.val * w.segment(offset, static_cast<Eigen::Index>(modes.size()));
    double e = 0.0;
    for (Eigen::Index i = 0; i < tp.size(); ++i) {
      const double diff = approx(i) - f(tp.x[i], t);
      e += tp.w(i) * diff * diff;
    }
    return e;
  };
  double eu = 0.0, ev = 0.0;
  for (int j = 0; j < topo_.num_primal; ++j)
    eu += cell_error(topo_.primal_cells[j], umodes_, setup_.qu, exact_u, layout_.u_offset(j));
  for (int k = 0; k < topo_.num_dual; ++k)
    ev += cell_error(topo_.dual_cells[k], vmodes_, setup_.qv, exact_v, layout_.v_offset(k));
  return {std::sqrt(eu), std::sqrt(ev)};
}

template class StaggeredScheme<1>;
template class StaggeredScheme<2>;

}  // namespace wavedg
