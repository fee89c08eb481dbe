#include "wavedg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace wavedg {

namespace {

constexpr Eigen::Index kColumnChunk = 256;

void check_guard(Eigen::Index size, Eigen::Index guard) {
  if (size > guard)
    throw std::length_error("dense matrix of size " + std::to_string(size) + " exceeds the guard " +
                            std::to_string(guard));
}

Eigen::MatrixXd restrict(const Eigen::MatrixXd& a, const std::vector<Eigen::Index>& idx) {
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) r(i, j) = a(idx[i], idx[j]);
  return r;
}

std::vector<std::complex<double>> dgeev_values(const Eigen::MatrixXd& a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd work = a;  // column major, overwritten
  std::vector<double> wr(n), wi(n);
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(),
                                        wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw std::runtime_error("dgeev failed to converge (info = " + std::to_string(info) + ")");
  std::vector<std::complex<double>> ev(n);
  for (lapack_int i = 0; i < n; ++i) ev[i] = {wr[i], wi[i]};
  return ev;
}

// Some optimized BLAS builds return wrong spectra on some CPUs. A skew-symmetric
// matrix must have a purely imaginary spectrum; refuse to run if it does not.
void check_lapack_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    const int n = 96;
    Eigen::MatrixXd a(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) a(i, j) = std::sin(1.0 + 0.37 * i + 1.91 * j * j);
    a = (a - a.transpose()).eval();
    double re = 0.0;
    for (const auto& e : dgeev_values(a)) re = std::max(re, std::abs(e.real()));
    if (re > 1e-10 * a.norm())
      throw std::runtime_error(
          "LAPACK self-check failed: dgeev returned a non-imaginary spectrum for a skew-symmetric "
          "matrix (broken BLAS kernels; with OpenBLAS try OPENBLAS_CORETYPE=Haswell)");
  });
}

}  // namespace

Eigen::MatrixXd build_one_step_matrix(Eigen::Index size, const Stepper& step, Eigen::Index guard) {
  check_guard(size, guard);
  Eigen::MatrixXd b(size, size);
  for (Eigen::Index start = 0; start < size; start += kColumnChunk) {
    const Eigen::Index cols = std::min(kColumnChunk, size - start);
    Eigen::MatrixXd chunk = Eigen::MatrixXd::Zero(size, cols);
    for (Eigen::Index k = 0; k < cols; ++k) chunk(start + k, k) = 1.0;
    step(chunk);
    b.middleCols(start, cols) = chunk;
  }
  return b;
}

Eigen::MatrixXd build_one_step_matrix(const EvolutionOperator& op, const TaylorScheme& scheme) {
  if (op.has_forcing()) throw std::invalid_argument("one-step matrix needs a homogeneous problem");
  return build_one_step_matrix(op.size(), [&](Eigen::MatrixXd& w) { taylor_step(op, w, 0.0, scheme); });
}

Eigen::MatrixXd build_one_step_matrix(const EvolutionOperator& op, const LtsConfig& lts, double dt) {
  if (op.has_forcing()) throw std::invalid_argument("one-step matrix needs a homogeneous problem");
  return build_one_step_matrix(op.size(), [&](Eigen::MatrixXd& w) { lts_step(op, w, 0.0, dt, lts); });
}

Eigen::MatrixXd dense_operator(const EvolutionOperator& op, Eigen::Index guard) {
  const Eigen::Index n = op.size();
  check_guard(n, guard);
  Eigen::MatrixXd out;
  op.apply_linear(Eigen::MatrixXd::Identity(n, n), out);
  return out;
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (a.rows() == 0) return {};
  if (!a.allFinite()) throw std::invalid_argument("eigenvalues: matrix has non-finite entries");
  check_lapack_once();
  return dgeev_values(a);
}

SpectrumReport eig_moduli(const Eigen::MatrixXd& b) {
  const auto ev = eigenvalues(b);
  std::vector<double> mod(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) mod[i] = std::abs(ev[i]);
  std::sort(mod.begin(), mod.end(), std::greater<>());
  SpectrumReport r;
  r.entries.reserve(mod.size());
  for (std::size_t i = 0; i < mod.size(); ++i)
    r.entries.push_back({static_cast<Eigen::Index>(i), mod[i], 1.0 - mod[i]});
  if (!mod.empty()) {
    r.spectral_radius = mod.front();
    r.max_growth = mod.front() - 1.0;
    r.min_one_minus_modulus = 1.0 - mod.front();
  }
  return r;
}

SemidiscreteSpectrum semidiscrete_spectrum(const DgOperatorBase& op) {
  const Eigen::MatrixXd l = restrict(dense_operator(op), op.layout().w1_indices());
  SemidiscreteSpectrum s;
  for (const auto& e : eigenvalues(l)) {
    s.spectral_radius = std::max(s.spectral_radius, std::abs(e));
    s.max_abs_real = std::max(s.max_abs_real, std::abs(e.real()));
  }
  return s;
}

double spectral_radius_semidiscrete(const DgOperatorBase& op) {
  return semidiscrete_spectrum(op).spectral_radius;
}

double operator_norm(const DgOperatorBase& op) {
  const DofLayout& layout = op.layout();
  check_guard(op.size(), kDenseSizeGuard);
  const auto& w1 = layout.w1_indices();
  const Eigen::MatrixXd a11 = restrict(op.stiffness().to_dense(), w1);

  // S^-1 with S = M1^(1/2), assembled block by block in W1 numbering.
  const Eigen::Index n1 = static_cast<Eigen::Index>(w1.size());
  Eigen::MatrixXd sinv = Eigen::MatrixXd::Zero(n1, n1);
  Eigen::Index pos = 0;
  for (int b = 0; b < layout.num_blocks(); ++b) {
    const Eigen::MatrixXd mb = op.mass().block(b);
    const bool u = layout.is_u_block(b);
    const Eigen::Index s = mb.rows() - (u ? 1 : 0);
    if (s == 0) continue;
    const Eigen::MatrixXd m1 = u ? Eigen::MatrixXd(mb.bottomRightCorner(s, s)) : mb;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m1);
    sinv.block(pos, pos, s, s) = es.operatorInverseSqrt();
    pos += s;
  }
  const Eigen::MatrixXd scaled = sinv * a11 * sinv;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled);
  return svd.singularValues()(0);
}

double operator_norm_bound(SchemeKind kind, int qu, int qv, double h, double c, double beta,
                           double tau, double alpha) {
  const double s = c / h;
  const double penalty = std::max(c * beta * qu * qu, tau / c * (qv + 1.0) * (qv + 1.0));
  if (kind == SchemeKind::nonstaggered) {
    const double c1 = 2.0 * std::sqrt(3.0), c2 = 2.0;
    const double a = std::max((qu - 1.0) * (qu - 1.0), double(qv) * qv);
    return s * (c1 * a + c2 * (2.0 * penalty + (std::abs(alpha) + std::abs(1.0 - alpha)) * (qv + 1.0) * qu));
  }
  const double c3 = (8.0 * std::sqrt(3.0) + 4.0) / 3.0;
  const double c4 = 128.0 / (std::sqrt(3.0) * std::numbers::pi);
  const double c5 = 4.0;
  return s * (c3 * (qu + qv - 1.0) + c4 * std::sqrt(qu * (qv + 1.0)) + c5 * penalty);
}

BoundCheck check_operator_bounds(const DgOperatorBase& op, SchemeKind kind, int qu, int qv,
                                 const FluxParams& flux, double c, double h) {
  BoundCheck r;
  r.kind = kind;
  r.qu = qu;
  r.qv = qv;
  r.h = h;
  r.c = c;
  r.beta = flux.beta;
  r.tau = flux.tau;
  r.measured = operator_norm(op);
  r.bound = operator_norm_bound(kind, qu, qv, h, c, flux.beta, flux.tau, flux.alpha);
  return r;
}

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("power-law fit needs at least two matching points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("power-law fit needs distinct abscissae");
  PowerFit f;
  f.exponent = (n * sxy - sx * sy) / denom;
  f.coefficient = std::exp((sy - f.exponent * sx) / n);
  return f;
}

}  // namespace wavedg
