#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavedg/analysis.hpp"
#include "wavedg/operator.hpp"
#include "wavedg/timeint.hpp"
#include "wavedg_cli/config.hpp"

namespace wavedg::cli {

/// An assembled operator with its initial data, exact solution and stepping setup.
struct Problem {
  int dim = 1;
  int n = 0;
  double h = 0.0;
  std::shared_ptr<DgOperatorBase> op;
  std::function<Eigen::VectorXd(double)> exact_state;  // projection of the exact solution at t
  /// (err_u, err_v) at t; empty when no exact solution is known.
  std::function<std::pair<double, double>(const Eigen::VectorXd&, double)> error;
  std::function<double(const Eigen::VectorXd&)> energy;
  bool use_lts = false;
  LtsConfig lts;
  int order = 4;
  double dt = 0.0;

  void step(Eigen::VectorXd& w, double t) const;
};

Problem build_problem(const Config& cfg, int n);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double err_u = 0.0;
  double err_v = 0.0;
  bool diverged = false;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double rate_u = std::numeric_limits<double>::quiet_NaN();
  double rate_v = std::numeric_limits<double>::quiet_NaN();
};

ConvergenceResult run_convergence(const Config& cfg);
void write_convergence_csv(const ConvergenceResult& r, std::ostream& out);

struct SpectrumRow {
  std::string scheme;
  int qu = 0;
  int qv = 0;
  double h = 0.0;
  double rho = 0.0;
  double scaled = 0.0;  // rho h / qu
  double max_abs_real = 0.0;
  double cfl_ratio = std::numeric_limits<double>::quiet_NaN();
};

std::vector<SpectrumRow> run_spectrum(const Config& cfg);
void write_spectrum_csv(const std::vector<SpectrumRow>& rows, std::ostream& out);

struct AuditResult {
  Eigen::Index dofs = 0;
  SpectrumReport report;
};

AuditResult run_ltsaudit(const Config& cfg);
void write_audit_csv(const AuditResult& r, std::ostream& out);

struct EvolveRow {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;
  double err_u = std::numeric_limits<double>::quiet_NaN();
  double err_v = std::numeric_limits<double>::quiet_NaN();
};

/// Streams rows to `csv` (when non-null) as they are produced.
std::vector<EvolveRow> run_evolve(const Config& cfg, std::ostream* csv);

/// Flat binary snapshot: int64 dim, qu, qv, num_u_elements, num_v_elements, total_dofs
/// (little endian), then total_dofs float64 coefficients in layout order.
void write_snapshot(const std::string& path, const DofLayout& layout, const Eigen::VectorXd& w);

/// Runs one sub-command; returns the process exit code (0 ok, 1 config, 2 numerical).
int run_command(const std::string& command, const Config& cfg, std::ostream& out, std::ostream& err);

}  // namespace wavedg::cli
