#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavedg/operator.hpp"
#include "wavedg/timeint.hpp"

namespace wavedg {

/// Advances every column of its argument by one step.
using Stepper = std::function<void(Eigen::MatrixXd&)>;

inline constexpr Eigen::Index kDenseSizeGuard = 20000;

/// Dense B with B e_k = step(e_k). Columns are generated in chunks.
Eigen::MatrixXd build_one_step_matrix(Eigen::Index size, const Stepper& step,
                                      Eigen::Index guard = kDenseSizeGuard);
Eigen::MatrixXd build_one_step_matrix(const EvolutionOperator& op, const TaylorScheme& scheme);
Eigen::MatrixXd build_one_step_matrix(const EvolutionOperator& op, const LtsConfig& lts, double dt);

/// Dense matrix of the linear part of op (M^-1 A).
Eigen::MatrixXd dense_operator(const EvolutionOperator& op, Eigen::Index guard = kDenseSizeGuard);

/// Eigenvalues of a general real matrix (LAPACK dgeev). Throws on non-convergence.
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& a);

struct SpectrumEntry {
  Eigen::Index index = 0;
  double modulus = 0.0;
  double one_minus_modulus = 0.0;
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;  // sorted by modulus, descending
  double max_growth = 0.0;             // max |lambda| - 1
  double min_one_minus_modulus = 0.0;
  double spectral_radius = 0.0;
};

SpectrumReport eig_moduli(const Eigen::MatrixXd& b);

/// Largest |lambda| of M^-1 A restricted to the W1 rows and columns.
double spectral_radius_semidiscrete(const DgOperatorBase& op);

/// Largest real part relative to the spectral radius on the W1 block.
struct SemidiscreteSpectrum {
  double spectral_radius = 0.0;
  double max_abs_real = 0.0;
};
SemidiscreteSpectrum semidiscrete_spectrum(const DgOperatorBase& op);

/// || M1^-1 A11 ||_{M1} = || S^-1 A11 S^-1 ||_2 with S = M1^(1/2).
double operator_norm(const DgOperatorBase& op);

enum class SchemeKind { staggered, nonstaggered };

struct BoundCheck {
  SchemeKind kind = SchemeKind::staggered;
  int qu = 0;
  int qv = 0;
  double h = 0.0;
  double c = 1.0;
  double beta = 0.0;
  double tau = 0.0;
  double measured = 0.0;
  double bound = 0.0;
  bool ok() const { return measured <= bound; }
};

/// Right-hand side of the operator-norm estimate, with P = max(c beta qu^2, (tau/c)(qv+1)^2).
/// Non-staggered: (c/h)[C1 max((qu-1)^2, qv^2) + C2 (2P + (|alpha| + |1-alpha|)(qv+1) qu)],
/// C1 = 2 sqrt(3), C2 = 2. Staggered: (c/h)[C3 (qu+qv-1) + C4 sqrt(qu (qv+1)) + C5 P],
/// C3 = (8 sqrt(3) + 4)/3, C4 = 128/(sqrt(3) pi), C5 = 4.
double operator_norm_bound(SchemeKind kind, int qu, int qv, double h, double c, double beta, double tau,
                           double alpha = 0.5);

BoundCheck check_operator_bounds(const DgOperatorBase& op, SchemeKind kind, int qu, int qv,
                                 const FluxParams& flux, double c, double h);

struct PowerFit {
  double coefficient = 0.0;
  double exponent = 0.0;
};

/// Least-squares fit of log y = log a + b log x.
PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wavedg
