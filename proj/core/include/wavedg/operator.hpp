#pragma once

#include <array>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavedg/block_matrix.hpp"
#include "wavedg/mesh.hpp"

namespace wavedg {

template <int D>
using Point = std::array<double, D>;

/// g(x, t).
template <int D>
using SpaceTimeField = std::function<double(const Point<D>&, double)>;

/// d^order f / dt^order at (x, t).
template <int D>
using ForcingField = std::function<double(const Point<D>&, double, int)>;

/// f(x, t) = s(t) g(x). The spatial part is projected once at assembly.
template <int D>
struct SeparableForcing {
  std::function<double(const Point<D>&)> spatial;
  std::function<double(double, int)> temporal;  // d^order s / dt^order at t

  explicit operator bool() const { return spatial && temporal; }
};

/// Wave speed c(x) > 0 with its gradient (needed for the div(c^2 grad phi) volume term).
template <int D>
struct WaveSpeedField {
  std::function<double(const Point<D>&)> c;
  std::function<Point<D>(const Point<D>&)> grad;
  bool constant = false;

  static WaveSpeedField uniform(double c0) {
    WaveSpeedField f;
    f.c = [c0](const Point<D>&) { return c0; };
    f.grad = [](const Point<D>&) { return Point<D>{}; };
    f.constant = true;
    return f;
  }
};

/// Numerical flux parameters: averaging weight alpha, penalties beta (units 1/c) and tau (units c).
/// boundary_upwind scales the c-weighted terms of the physical boundary fluxes:
/// 1 gives v* = k(v - c n.grad u), (c^2 n.grad u)* = g(c^2 n.grad u - c v) with
/// k = kappa/(gamma+kappa), g = gamma/(gamma+kappa); 0 (the default) gives the
/// energy-conserving boundary v* = k v, (c^2 n.grad u)* = g c^2 n.grad u.
struct FluxParams {
  double alpha = 0.5;
  double beta = 0.0;
  double tau = 0.0;
  double boundary_upwind = 0.0;

  void validate() const;
  static FluxParams central() { return {}; }
};

/// gamma * u_t + kappa * c * n.grad(u) = 0, normalised so gamma^2 + kappa^2 = 1.
class BoundaryCondition {
 public:
  BoundaryCondition() : BoundaryCondition(1.0, 0.0) {}
  BoundaryCondition(double gamma, double kappa);

  static BoundaryCondition dirichlet() { return {1.0, 0.0}; }
  static BoundaryCondition neumann() { return {0.0, 1.0}; }

  double gamma() const { return gamma_; }
  double kappa() const { return kappa_; }

 private:
  double gamma_;
  double kappa_;
};

/// Linear evolution dW/dt = L W + g(t) as seen by the time steppers.
class EvolutionOperator {
 public:
  virtual ~EvolutionOperator() = default;

  virtual Eigen::Index size() const = 0;
  /// out = L in for the selected rows; unselected rows of out are zero.
  virtual void apply_linear(const Eigen::MatrixXd& in, Eigen::MatrixXd& out,
                            const DofMask* rows = nullptr) const = 0;
  virtual bool has_forcing() const { return false; }
  /// out = d^order g / dt^order at t.
  virtual void forcing(double t, int order, Eigen::VectorXd& out) const;
  /// DOFs whose values can influence the selected rows of L.
  virtual DofMask column_support(const DofMask& rows) const;
};

/// Geometry/basis side of a discretisation: everything that needs quadrature on
/// the state rather than the assembled matrices.
template <int D>
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual const DofLayout& layout() const = 0;
  /// Assembles the stiffness A and mass M of M dW/dt = A W + F.
  virtual void assemble(BlockMatrix& a, MassMatrix& m) const = 0;
  /// Per block (u elements, then v elements): index distance to a non-periodic boundary.
  virtual std::vector<int> block_boundary_distance() const = 0;

  virtual double energy(const Eigen::VectorXd& w) const = 0;
  /// Right side of the energy identity: jump penalties and boundary terms (<= 0).
  virtual double energy_rate_penalty(const Eigen::VectorXd& w) const = 0;

  virtual bool has_forcing() const = 0;
  /// rhs (full length) <- integral of psi * d^order f/dt^order over each v cell; u rows zero.
  virtual void project_forcing(double t, int order, Eigen::VectorXd& rhs) const = 0;
  /// For f = s(t) g(x): project_forcing(t, k) = forcing_time_factor(t, k) * (projection of g).
  virtual bool separable_forcing() const { return false; }
  virtual double forcing_time_factor(double, int) const { return 0.0; }
  virtual void project_forcing_spatial(Eigen::VectorXd& rhs) const { rhs.setZero(layout().total_dofs()); }

  virtual Eigen::VectorXd project(const SpaceTimeField<D>& u0, const SpaceTimeField<D>& v0,
                                  double t) const = 0;
  virtual std::pair<double, double> l2_error(const Eigen::VectorXd& w,
                                             const SpaceTimeField<D>& exact_u,
                                             const SpaceTimeField<D>& exact_v,
                                             double t) const = 0;
};

/// Assembled semi-discrete system M dW/dt = A W + F(t), dimension independent part.
class DgOperatorBase : public EvolutionOperator {
 public:
  const DofLayout& layout() const { return layout_; }
  const BlockMatrix& stiffness() const { return a_; }
  const MassMatrix& mass() const { return m_; }
  const std::vector<int>& block_boundary_distance() const { return distance_; }

  Eigen::Index size() const override { return layout_.total_dofs(); }
  void apply_linear(const Eigen::MatrixXd& in, Eigen::MatrixXd& out,
                    const DofMask* rows = nullptr) const override;
  DofMask column_support(const DofMask& rows) const override;

  /// M^{-1} (A w + F(t)).
  Eigen::VectorXd apply(const Eigen::VectorXd& w, double t) const;

 protected:
  DofLayout layout_;
  BlockMatrix a_;
  MassMatrix m_;
  std::vector<int> distance_;
};

template <int D>
class SemiDiscreteOperator final : public DgOperatorBase {
 public:
  explicit SemiDiscreteOperator(std::shared_ptr<const Scheme<D>> scheme) : scheme_(std::move(scheme)) {
    layout_ = scheme_->layout();
    std::vector<Eigen::Index> offsets(layout_.num_blocks());
    std::vector<int> sizes(layout_.num_blocks());
    for (int b = 0; b < layout_.num_blocks(); ++b) {
      offsets[b] = layout_.block_offset(b);
      sizes[b] = layout_.block_size(b);
    }
    a_ = BlockMatrix(offsets, sizes);
    m_ = MassMatrix(offsets, sizes);
    scheme_->assemble(a_, m_);
    a_.finalize();
    distance_ = scheme_->block_boundary_distance();
    if (scheme_->has_forcing() && scheme_->separable_forcing()) {
      Eigen::VectorXd g;
      scheme_->project_forcing_spatial(g);
      Eigen::MatrixXd tmp = g;
      m_.solve_in_place(tmp);
      spatial_forcing_ = tmp.col(0);
    }
  }

  const Scheme<D>& scheme() const { return *scheme_; }

  bool has_forcing() const override { return scheme_->has_forcing(); }
  void forcing(double t, int order, Eigen::VectorXd& out) const override {
    if (spatial_forcing_.size() > 0) {
      out = scheme_->forcing_time_factor(t, order) * spatial_forcing_;
      return;
    }
    out.setZero(size());
    if (!scheme_->has_forcing()) return;
    scheme_->project_forcing(t, order, out);
    Eigen::MatrixXd tmp = out;
    m_.solve_in_place(tmp);
    out = tmp.col(0);
  }

  double energy(const Eigen::VectorXd& w) const { return scheme_->energy(w); }

 private:
  std::shared_ptr<const Scheme<D>> scheme_;
  Eigen::VectorXd spatial_forcing_;  // M^-1 (projection of g) when f = s(t) g(x)
};

template <int D>
double discrete_energy(const SemiDiscreteOperator<D>& op, const Eigen::VectorXd& w) {
  return op.scheme().energy(w);
}

template <int D>
std::pair<double, double> l2_error(const SemiDiscreteOperator<D>& op, const Eigen::VectorXd& w,
                                   const SpaceTimeField<D>& exact_u,
                                   const SpaceTimeField<D>& exact_v, double t) {
  return op.scheme().l2_error(w, exact_u, exact_v, t);
}

}  // namespace wavedg
