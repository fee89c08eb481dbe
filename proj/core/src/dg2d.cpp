#include "wavedg/dg2d.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace wavedg {

Operator2D assemble_staggered_2d(const StaggeredMesh2D& mesh, int qu, int qv, const FluxParams& flux,
                                 const WaveSpeedField<2>& speed, const BoundaryCondition& bc,
                                 ForcingField<2> forcing) {
  StaggeredSetup<2> s;
  s.qu = qu;
  s.qv = qv;
  s.flux = flux;
  s.speed = speed;
  s.bc[0] = {bc, bc};
  s.bc[1] = {bc, bc};
  s.forcing = std::move(forcing);
  return Operator2D(std::make_shared<StaggeredScheme<2>>(make_topology(mesh), std::move(s)));
}

Operator2D assemble_staggered_2d(const StaggeredMesh2D& mesh, int qu, int qv, const FluxParams& flux,
                                 const WaveSpeedField<2>& speed, const BoundaryCondition& bc,
                                 SeparableForcing<2> forcing) {
  StaggeredSetup<2> s;
  s.qu = qu;
  s.qv = qv;
  s.flux = flux;
  s.speed = speed;
  s.bc[0] = {bc, bc};
  s.bc[1] = {bc, bc};
  s.separable = std::move(forcing);
  return Operator2D(std::make_shared<StaggeredScheme<2>>(make_topology(mesh), std::move(s)));
}

WaveSpeedField<2> quadratic_speed() {
  WaveSpeedField<2> f;
  f.c = [](const Point<2>& p) { return 1.0 + p[0] * p[0] + p[1] * p[1]; };
  f.grad = [](const Point<2>& p) { return Point<2>{2.0 * p[0], 2.0 * p[1]}; };
  f.constant = false;
  return f;
}

double sin_derivative(double omega, double t, int k) {
  return std::pow(omega, k) * std::sin(omega * t + 0.5 * k * std::numbers::pi);
}

ManufacturedSolution::ManufacturedSolution(double k1, double k2, WaveSpeedField<2> speed)
    : k1_(k1), k2_(k2), omega_(std::numbers::pi * std::hypot(k1, k2)), speed_(std::move(speed)) {}

double ManufacturedSolution::spatial(const Point<2>& x) const {
  return std::sin(k1_ * std::numbers::pi * x[0]) * std::sin(k2_ * std::numbers::pi * x[1]);
}

double ManufacturedSolution::u(const Point<2>& x, double t) const {
  return std::sin(omega_ * t) * spatial(x);
}

double ManufacturedSolution::v(const Point<2>& x, double t) const {
  return omega_ * std::cos(omega_ * t) * spatial(x);
}

double ManufacturedSolution::f(const Point<2>& x, double t, int order) const {
  return sin_derivative(omega_, t, order) * forcing_shape(x);
}

double ManufacturedSolution::forcing_shape(const Point<2>& x) const {
  const double pi = std::numbers::pi;
  const double a = k1_ * pi, b = k2_ * pi;
  const double s = spatial(x);
  const double sx = a * std::cos(a * x[0]) * std::sin(b * x[1]);
  const double sy = b * std::sin(a * x[0]) * std::cos(b * x[1]);
  const double c = speed_.c(x);
  const Point<2> gc = speed_.grad(x);
  // u_tt - c^2 lap u - 2 c grad c . grad u, with lap S = -w^2 S
  return omega_ * omega_ * (c * c - 1.0) * s - 2.0 * c * (gc[0] * sx + gc[1] * sy);
}

SpaceTimeField<2> ManufacturedSolution::u_field() const {
  return [self = *this](const Point<2>& x, double t) { return self.u(x, t); };
}

SpaceTimeField<2> ManufacturedSolution::v_field() const {
  return [self = *this](const Point<2>& x, double t) { return self.v(x, t); };
}

SeparableForcing<2> ManufacturedSolution::separable_forcing() const {
  SeparableForcing<2> f;
  f.spatial = [self = *this](const Point<2>& x) { return self.forcing_shape(x); };
  f.temporal = [w = omega_](double t, int order) { return sin_derivative(w, t, order); };
  return f;
}

ForcingField<2> ManufacturedSolution::forcing() const {
  return [self = *this](const Point<2>& x, double t, int order) { return self.f(x, t, order); };
}

}  // namespace wavedg
