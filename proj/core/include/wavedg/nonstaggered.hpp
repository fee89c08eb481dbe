#pragma once

#include <array>

#include "wavedg/mesh.hpp"
#include "wavedg/operator.hpp"
#include "wavedg/tensor_basis.hpp"

namespace wavedg {

struct NonStaggeredSetup {
  int qu = 1;
  int qv = 0;
  FluxParams flux;
  WaveSpeedField<1> speed = WaveSpeedField<1>::uniform(1.0);
  std::array<BoundaryCondition, 2> bc{};  // lower, upper; ignored when periodic
  ForcingField<1> forcing;
  int quad_points = 0;
};

/// Energy-based DG with u and v on the same 1D mesh. At interior faces
/// v* = alpha v- + (1 - alpha) v+ - beta [[c^2 u_x]] and
/// u_x* = (1 - alpha) u_x- + alpha u_x+ - (tau / c^2) [[v]], so alpha = 0 or 1
/// gives the alternating fluxes.
class NonStaggeredScheme1D final : public Scheme<1> {
 public:
  NonStaggeredScheme1D(const StaggeredMesh1D& mesh, NonStaggeredSetup setup);

  const DofLayout& layout() const override { return layout_; }
  const NonStaggeredSetup& setup() const { return setup_; }

  void assemble(BlockMatrix& a, MassMatrix& m) const override;
  std::vector<int> block_boundary_distance() const override;

  double energy(const Eigen::VectorXd& w) const override;
  double energy_rate_penalty(const Eigen::VectorXd& w) const override;

  bool has_forcing() const override { return static_cast<bool>(setup_.forcing); }
  void project_forcing(double t, int order, Eigen::VectorXd& rhs) const override;

  Eigen::VectorXd project(const SpaceTimeField<1>& u0, const SpaceTimeField<1>& v0,
                          double t) const override;
  std::pair<double, double> l2_error(const Eigen::VectorXd& w, const SpaceTimeField<1>& exact_u,
                                     const SpaceTimeField<1>& exact_v, double t) const override;

 private:
  Box<1> cell(int j) const;
  Tabulation<1> at_point(const std::vector<Mode<1>>& modes, int q, int j, double ref) const;

  StaggeredMesh1D mesh_;
  NonStaggeredSetup setup_;
  DofLayout layout_;
  std::vector<Mode<1>> umodes_;
  std::vector<Mode<1>> vmodes_;
  GaussRule rule_;
};

}  // namespace wavedg
