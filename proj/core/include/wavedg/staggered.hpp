#pragma once

#include <array>
#include <functional>

#include "wavedg/mesh.hpp"
#include "wavedg/operator.hpp"
#include "wavedg/tensor_basis.hpp"

namespace wavedg {

template <int D>
struct StaggeredSetup {
  int qu = 1;
  int qv = 0;
  FluxParams flux;
  WaveSpeedField<D> speed = WaveSpeedField<D>::uniform(1.0);
  /// bc[axis][side], side 0 = lower end. Ignored on periodic axes.
  std::array<std::array<BoundaryCondition, 2>, D> bc{};
  ForcingField<D> forcing;
  SeparableForcing<D> separable;  // used when `forcing` is empty
  /// Gauss points per direction for the operator integrals; 0 picks
  /// max(qu, qv) + 2, or + 4 when the wave speed varies.
  int quad_points = 0;
};

/// Staggered energy-based DG: u on the primal mesh tested with c^2 grad(phi),
/// v on the dual mesh, plus the cell-average equation for u. Volume integrals
/// are split on every primal/dual intersection.
template <int D>
class StaggeredScheme final : public Scheme<D> {
 public:
  StaggeredScheme(StaggeredTopology<D> topology, StaggeredSetup<D> setup);

  const DofLayout& layout() const override { return layout_; }
  const StaggeredTopology<D>& topology() const { return topo_; }
  const StaggeredSetup<D>& setup() const { return setup_; }

  void assemble(BlockMatrix& a, MassMatrix& m) const override;
  std::vector<int> block_boundary_distance() const override;

  double energy(const Eigen::VectorXd& w) const override;
  double energy_rate_penalty(const Eigen::VectorXd& w) const override;

  bool has_forcing() const override {
    return static_cast<bool>(setup_.forcing) || static_cast<bool>(setup_.separable);
  }
  void project_forcing(double t, int order, Eigen::VectorXd& rhs) const override;
  bool separable_forcing() const override {
    return !setup_.forcing && static_cast<bool>(setup_.separable);
  }
  double forcing_time_factor(double t, int order) const override {
    return setup_.separable.temporal(t, order);
  }
  void project_forcing_spatial(Eigen::VectorXd& rhs) const override;

  Eigen::VectorXd project(const SpaceTimeField<D>& u0, const SpaceTimeField<D>& v0,
                          double t) const override;
  std::pair<double, double> l2_error(const Eigen::VectorXd& w, const SpaceTimeField<D>& exact_u,
                                     const SpaceTimeField<D>& exact_v, double t) const override;

 private:
  struct Speed {
    Eigen::VectorXd c;
    Eigen::VectorXd c2;
    std::array<Eigen::VectorXd, D> grad_c2;
  };
  Speed sample_speed(const TensorPoints<D>& tp) const;
  int fine_points() const;
  void project_v(const std::function<double(const Point<D>&)>& f, Eigen::VectorXd& rhs) const;

  StaggeredTopology<D> topo_;
  StaggeredSetup<D> setup_;
  DofLayout layout_;
  std::vector<Mode<D>> umodes_;
  std::vector<Mode<D>> vmodes_;
  GaussRule rule_;
};

extern template class StaggeredScheme<1>;
extern template class StaggeredScheme<2>;

}  // namespace wavedg
