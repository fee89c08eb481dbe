#include "wavedg/dg1d.hpp"

#include <memory>
#include <stdexcept>

namespace wavedg {

namespace {

void check_speed(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("wave speed must be positive");
}

}  // namespace

Operator1D assemble_nonstaggered_1d(const StaggeredMesh1D& mesh, int qu, int qv,
                                    const FluxParams& flux, double c, const BoundaryPair& bcs,
                                    ForcingField<1> forcing) {
  check_speed(c);
  NonStaggeredSetup s;
  s.qu = qu;
  s.qv = qv;
  s.flux = flux;
  s.speed = WaveSpeedField<1>::uniform(c);
  s.bc = {bcs.left, bcs.right};
  s.forcing = std::move(forcing);
  return Operator1D(std::make_shared<NonStaggeredScheme1D>(mesh, std::move(s)));
}

Operator1D assemble_staggered_1d(const StaggeredMesh1D& mesh, int qu, int qv,
                                 const FluxParams& flux, double c, const BoundaryPair& bcs,
                                 ForcingField<1> forcing) {
  check_speed(c);
  StaggeredSetup<1> s;
  s.qu = qu;
  s.qv = qv;
  s.flux = flux;
  s.speed = WaveSpeedField<1>::uniform(c);
  s.bc[0] = {bcs.left, bcs.right};
  s.forcing = std::move(forcing);
  return Operator1D(std::make_shared<StaggeredScheme<1>>(make_topology(mesh), std::move(s)));
}

}  // namespace wavedg
