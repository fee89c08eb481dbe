#include "wavedg/timeint.hpp"

#include <algorithm>
#include <stdexcept>

namespace wavedg {

namespace {

// out <- L in + g^(order)(t) on the selected rows.
void derivative(const EvolutionOperator& op, const Eigen::MatrixXd& in, Eigen::MatrixXd& out, double t,
                int order, const DofMask* rows) {
  op.apply_linear(in, out, rows);
  if (!op.has_forcing()) return;
  Eigen::VectorXd g;
  op.forcing(t, order, g);
  if (rows) {
    for (Eigen::Index i = 0; i < g.size(); ++i)
      if (!(*rows)[i]) g(i) = 0.0;
  }
  out.colwise() += g;
}

void check_order(int order) {
  if (order < 1) throw std::invalid_argument("Taylor order must be >= 1");
}

}  // namespace

void taylor_step(const EvolutionOperator& op, Eigen::MatrixXd& w, double t, const TaylorScheme& scheme) {
  check_order(scheme.order);
  if (scheme.dt == 0.0) return;
  Eigen::MatrixXd d = w, next;
  double coef = 1.0;
  for (int j = 1; j <= scheme.order; ++j) {
    derivative(op, d, next, t, j - 1, nullptr);
    d.swap(next);
    coef *= scheme.dt / j;
    w.noalias() += coef * d;
  }
}

Eigen::VectorXd taylor_step(const EvolutionOperator& op, const Eigen::VectorXd& w, double t,
                            const TaylorScheme& scheme) {
  Eigen::MatrixXd m = w;
  taylor_step(op, m, t, scheme);
  return m.col(0);
}

Partition partition(const DofLayout& layout) { return {layout.w1_indices(), layout.w0_indices()}; }

LtsConfig make_lts_config(const DgOperatorBase& op, int m, int p, int order, bool allow_full) {
  if (m < 1) throw std::invalid_argument("LTS layer thickness m must be >= 1");
  if (p < 1) throw std::invalid_argument("LTS sub-step count p must be >= 1");
  check_order(order);
  LtsConfig cfg{m, p, order, DofMask(static_cast<std::size_t>(op.size()), 0)};
  const auto& dist = op.block_boundary_distance();
  const DofLayout& layout = op.layout();
  bool all = true;
  for (int b = 0; b < layout.num_blocks(); ++b) {
    const bool in = dist[b] < m;
    all = all && in;
    if (!in) continue;
    const Eigen::Index off = layout.block_offset(b);
    for (int i = 0; i < layout.block_size(b); ++i) cfg.boundary[off + i] = 1;
  }
  if (all && !allow_full)
    throw std::invalid_argument("LTS boundary layer covers the whole mesh; pass allow_full to permit it");
  return cfg;
}

void lts_step(const EvolutionOperator& op, Eigen::MatrixXd& w, double t, double dt, const LtsConfig& lts) {
  check_order(lts.order);
  const Eigen::Index n = op.size();
  if (static_cast<Eigen::Index>(lts.boundary.size()) != n)
    throw std::invalid_argument("LTS mask does not match the operator size");
  if (std::none_of(lts.boundary.begin(), lts.boundary.end(), [](char c) { return c != 0; })) {
    taylor_step(op, w, t, {lts.order, dt});
    return;
  }
  if (lts.p < 1) throw std::invalid_argument("LTS sub-step count p must be >= 1");
  const int q = lts.order;

  // Full-grid time derivatives at t.
  std::vector<Eigen::MatrixXd> d(q + 1);
  d[0] = w;
  for (int j = 1; j <= q; ++j) derivative(op, d[j - 1], d[j], t, j - 1, nullptr);

  std::vector<Eigen::Index> boundary, interface, interior;
  const DofMask support = op.column_support(lts.boundary);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lts.boundary[i])
      boundary.push_back(i);
    else {
      interior.push_back(i);
      if (support[i]) interface.push_back(i);
    }
  }

  // Interior update.
  Eigen::MatrixXd result = w;
  {
    double coef = 1.0;
    for (int j = 1; j <= q; ++j) {
      coef *= dt / j;
      for (Eigen::Index i : interior) result.row(i) += coef * d[j].row(i);
    }
  }

  // Boundary sub-steps with interface data from the interior Taylor polynomial.
  const double h = dt / lts.p;
  Eigen::MatrixXd state = w;  // only boundary rows evolve
  Eigen::MatrixXd e(n, w.cols()), next(n, w.cols());
  auto interface_derivative = [&](int j, double tau, Eigen::MatrixXd& target) {
    // sum_{l >= j} tau^(l-j)/(l-j)! d_l on the interface rows
    for (Eigen::Index i : interface) {
      Eigen::RowVectorXd acc = d[j].row(i);
      double coef = 1.0;
      for (int l = j + 1; l <= q; ++l) {
        coef *= tau / (l - j);
        acc += coef * d[l].row(i);
      }
      target.row(i) = acc;
    }
  };
  for (int k = 0; k < lts.p; ++k) {
    const double tau = k * h;
    e.setZero();
    for (Eigen::Index i : boundary) e.row(i) = state.row(i);
    interface_derivative(0, tau, e);
    Eigen::MatrixXd update = e;
    double coef = 1.0;
    for (int j = 1; j <= q; ++j) {
      derivative(op, e, next, t + tau, j - 1, &lts.boundary);
      e.swap(next);
      coef *= h / j;
      for (Eigen::Index i : boundary) update.row(i) += coef * e.row(i);
      if (j < q) interface_derivative(j, tau, e);
    }
    for (Eigen::Index i : boundary) state.row(i) = update.row(i);
  }
  for (Eigen::Index i : boundary) result.row(i) = state.row(i);
  w = std::move(result);
}

Eigen::VectorXd lts_step(const EvolutionOperator& op, const Eigen::VectorXd& w, double t, double dt,
                         const LtsConfig& lts) {
  Eigen::MatrixXd m = w;
  lts_step(op, m, t, dt, lts);
  return m.col(0);
}

}  // namespace wavedg
