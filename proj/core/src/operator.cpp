#include "wavedg/operator.hpp"

#include <cmath>
#include <stdexcept>

namespace wavedg {

void FluxParams::validate() const {
  if (!(beta >= 0.0)) throw std::invalid_argument("FluxParams: beta must be >= 0");
  if (!(tau >= 0.0)) throw std::invalid_argument("FluxParams: tau must be >= 0");
  if (!std::isfinite(alpha)) throw std::invalid_argument("FluxParams: alpha must be finite");
  if (!(boundary_upwind >= 0.0 && boundary_upwind <= 1.0))
    throw std::invalid_argument("FluxParams: boundary_upwind must lie in [0, 1]");
}

BoundaryCondition::BoundaryCondition(double gamma, double kappa) {
  if (gamma < 0.0 || kappa < 0.0)
    throw std::invalid_argument("BoundaryCondition: gamma and kappa must be >= 0");
  const double norm = std::hypot(gamma, kappa);
  if (norm == 0.0) throw std::invalid_argument("BoundaryCondition: gamma = kappa = 0");
  gamma_ = gamma / norm;
  kappa_ = kappa / norm;
}

void EvolutionOperator::forcing(double, int, Eigen::VectorXd& out) const { out.setZero(size()); }

DofMask EvolutionOperator::column_support(const DofMask&) const {
  return DofMask(static_cast<std::size_t>(size()), 1);
}

void DgOperatorBase::apply_linear(const Eigen::MatrixXd& in, Eigen::MatrixXd& out,
                                  const DofMask* rows) const {
  a_.multiply(in, out, rows);
  m_.solve_in_place(out, rows);
}

DofMask DgOperatorBase::column_support(const DofMask& rows) const {
  DofMask cols(static_cast<std::size_t>(size()), 0);
  for (int b = 0; b < a_.num_blocks(); ++b) {
    if (!rows[a_.offset(b)]) continue;
    for (const auto& e : a_.row(b)) {
      const Eigen::Index off = a_.offset(e.col);
      for (int i = 0; i < a_.size(e.col); ++i) cols[off + i] = 1;
    }
  }
  return cols;
}

Eigen::VectorXd DgOperatorBase::apply(const Eigen::VectorXd& w, double t) const {
  Eigen::MatrixXd out;
  a_.multiply(w, out);
  if (has_forcing()) {
    Eigen::VectorXd f;
    forcing(t, 0, f);  // already mass-inverted
    m_.solve_in_place(out);
    return out.col(0) + f;
  }
  m_.solve_in_place(out);
  return out.col(0);
}

}  // namespace wavedg
