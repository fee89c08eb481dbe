#pragma once

#include "wavedg/operator.hpp"
#include "wavedg/staggered.hpp"

namespace wavedg {

using Operator2D = SemiDiscreteOperator<2>;

/// Staggered operator on [-1, 1]^2 with the same boundary condition on all four sides.
Operator2D assemble_staggered_2d(const StaggeredMesh2D& mesh, int qu, int qv, const FluxParams& flux,
                                 const WaveSpeedField<2>& speed,
                                 const BoundaryCondition& bc = BoundaryCondition::dirichlet(),
                                 ForcingField<2> forcing = {});

Operator2D assemble_staggered_2d(const StaggeredMesh2D& mesh, int qu, int qv, const FluxParams& flux,
                                 const WaveSpeedField<2>& speed, const BoundaryCondition& bc,
                                 SeparableForcing<2> forcing);

/// L2 projection of (u0, v0) at time t onto the operator's spaces.
template <int D>
Eigen::VectorXd project_initial_data(const SemiDiscreteOperator<D>& op, const SpaceTimeField<D>& u0,
                                     const SpaceTimeField<D>& v0, double t = 0.0) {
  return op.scheme().project(u0, v0, t);
}

/// c(x, y) = 1 + x^2 + y^2.
WaveSpeedField<2> quadratic_speed();

/// u = sin(w t) sin(k1 pi x) sin(k2 pi y), w = pi sqrt(k1^2 + k2^2), v = u_t,
/// f = u_tt - div(c^2 grad u) for the given wave speed.
class ManufacturedSolution {
 public:
  ManufacturedSolution(double k1, double k2, WaveSpeedField<2> speed);

  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double omega() const { return omega_; }

  double u(const Point<2>& x, double t) const;
  double v(const Point<2>& x, double t) const;
  /// d^order f / dt^order.
  double f(const Point<2>& x, double t, int order = 0) const;

  SpaceTimeField<2> u_field() const;
  SpaceTimeField<2> v_field() const;
  ForcingField<2> forcing() const;
  /// f = sin(w t) g(x, y): the same forcing with its spatial part cached.
  SeparableForcing<2> separable_forcing() const;

 private:
  double spatial(const Point<2>& x) const;
  double forcing_shape(const Point<2>& x) const;

  double k1_;
  double k2_;
  double omega_;
  WaveSpeedField<2> speed_;
};

/// k-th time derivative of sin(w t).
double sin_derivative(double omega, double t, int k);

}  // namespace wavedg
