#pragma once

#include "wavedg/nonstaggered.hpp"
#include "wavedg/operator.hpp"
#include "wavedg/staggered.hpp"

namespace wavedg {

struct BoundaryPair {
  BoundaryCondition left = BoundaryCondition::dirichlet();
  BoundaryCondition right = BoundaryCondition::dirichlet();
};

using Operator1D = SemiDiscreteOperator<1>;

/// u and v on the primal mesh. Requires q_u >= 1.
Operator1D assemble_nonstaggered_1d(const StaggeredMesh1D& mesh, int qu, int qv,
                                    const FluxParams& flux, double c, const BoundaryPair& bcs = {},
                                    ForcingField<1> forcing = {});

/// u on the primal mesh, v on the dual mesh.
Operator1D assemble_staggered_1d(const StaggeredMesh1D& mesh, int qu, int qv,
                                 const FluxParams& flux, double c, const BoundaryPair& bcs = {},
                                 ForcingField<1> forcing = {});

}  // namespace wavedg
