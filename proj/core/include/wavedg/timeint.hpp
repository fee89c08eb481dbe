#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wavedg/operator.hpp"

namespace wavedg {

/// Truncated Taylor series of order q_T with step dt.
struct TaylorScheme {
  int order = 4;
  double dt = 0.0;
};

/// Advances every column of W from t to t + dt. With forcing, each column
/// receives the same forcing.
void taylor_step(const EvolutionOperator& op, Eigen::MatrixXd& w, double t, const TaylorScheme& scheme);
Eigen::VectorXd taylor_step(const EvolutionOperator& op, const Eigen::VectorXd& w, double t,
                            const TaylorScheme& scheme);

struct Partition {
  std::vector<Eigen::Index> w1;
  std::vector<Eigen::Index> w0;
};

/// W0 = cell averages of u, W1 = everything else.
Partition partition(const DofLayout& layout);

/// Local time stepping near non-periodic boundaries.
struct LtsConfig {
  int m = 3;        // layer thickness in elements
  int p = 1;        // sub-steps per global step
  int order = 4;    // Taylor order, shared by the global and local steps
  DofMask boundary; // DOFs advanced with the sub-steps
};

/// Boundary group: every block whose index distance to a non-periodic boundary
/// is < m. Throws when the group would be the whole mesh unless allow_full.
LtsConfig make_lts_config(const DgOperatorBase& op, int m, int p, int order, bool allow_full = false);

/// One global step of size dt. Interior DOFs take the Taylor step built from
/// the full-grid time derivatives at t; boundary DOFs take p sub-steps of size
/// dt/p, reading interface values from the interior Taylor polynomial.
void lts_step(const EvolutionOperator& op, Eigen::MatrixXd& w, double t, double dt, const LtsConfig& lts);
Eigen::VectorXd lts_step(const EvolutionOperator& op, const Eigen::VectorXd& w, double t, double dt,
                         const LtsConfig& lts);

}  // namespace wavedg
