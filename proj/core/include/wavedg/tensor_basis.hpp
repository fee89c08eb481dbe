#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "wavedg/basis.hpp"
#include "wavedg/mesh.hpp"
#include "wavedg/operator.hpp"

namespace wavedg {

template <int D>
using Mode = std::array<int, D>;

/// Tensor Legendre modes of degree <= q per axis, graded lexicographic:
/// by total degree, then by the x exponent descending. Mode 0 is the constant.
template <int D>
std::vector<Mode<D>> tensor_modes(int q) {
  std::vector<Mode<D>> modes;
  if constexpr (D == 1) {
    for (int i = 0; i <= q; ++i) modes.push_back({i});
  } else {
    for (int i = 0; i <= q; ++i)
      for (int j = 0; j <= q; ++j) modes.push_back({i, j});
    std::stable_sort(modes.begin(), modes.end(), [](const Mode<D>& a, const Mode<D>& b) {
      const int sa = a[0] + a[1], sb = b[0] + b[1];
      if (sa != sb) return sa < sb;
      return a[0] > b[0];
    });
  }
  return modes;
}

/// Integral over a box of a squared tensor mode, |box| * prod 1/(2 p_d + 1).
template <int D>
double mode_norm_squared(const Mode<D>& mode, const Box<D>& box) {
  double v = 1.0;
  for (int d = 0; d < D; ++d) v *= (box.hi[d] - box.lo[d]) / (2.0 * mode[d] + 1.0);
  return v;
}

/// Tensor Gauss points on a (possibly degenerate) box. Points are ordered
/// lexicographically with axis 0 slowest.
template <int D>
struct TensorPoints {
  std::vector<Point<D>> x;
  Eigen::VectorXd w;
  std::array<std::vector<double>, D> t;  // rule parameter in [-1, 1] per axis
  std::array<int, D> count{};

  Eigen::Index size() const { return static_cast<Eigen::Index>(x.size()); }
};

template <int D>
TensorPoints<D> tensor_points(const Box<D>& box, const GaussRule& rule) {
  TensorPoints<D> tp;
  std::array<std::vector<double>, D> xs, ws;
  for (int d = 0; d < D; ++d) {
    const double lo = box.lo[d], hi = box.hi[d];
    if (hi > lo) {
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        tp.t[d].push_back(rule.nodes[i]);
        xs[d].push_back(mid + half * rule.nodes[i]);
        ws[d].push_back(half * rule.weights[i]);
      }
    } else {
      tp.t[d].push_back(0.0);
      xs[d].push_back(lo);
      ws[d].push_back(1.0);
    }
    tp.count[d] = static_cast<int>(xs[d].size());
  }
  if constexpr (D == 1) {
    tp.x.resize(xs[0].size());
    tp.w.resize(static_cast<Eigen::Index>(xs[0].size()));
    for (std::size_t i = 0; i < xs[0].size(); ++i) {
      tp.x[i] = {xs[0][i]};
      tp.w(static_cast<Eigen::Index>(i)) = ws[0][i];
    }
  } else {
    const std::size_t n0 = xs[0].size(), n1 = xs[1].size();
    tp.x.resize(n0 * n1);
    tp.w.resize(static_cast<Eigen::Index>(n0 * n1));
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n1; ++j) {
        tp.x[i * n1 + j] = {xs[0][i], xs[1][j]};
        tp.w(static_cast<Eigen::Index>(i * n1 + j)) = ws[0][i] * ws[1][j];
      }
  }
  return tp;
}

/// Maps the rule parameters of `tp` into the reference coordinates of a cell,
/// given the sub-box `ref` that the point box occupies in that cell.
template <int D>
std::array<std::vector<double>, D> reference_coords(const TensorPoints<D>& tp, const RefBox<D>& ref) {
  std::array<std::vector<double>, D> r;
  for (int d = 0; d < D; ++d) {
    const double mid = 0.5 * (ref.axis[d].lo + ref.axis[d].hi);
    const double half = 0.5 * (ref.axis[d].hi - ref.axis[d].lo);
    for (double t : tp.t[d]) r[d].push_back(mid + half * t);
  }
  return r;
}

/// Basis values, physical gradients and Laplacians at tensor points; rows are
/// points, columns are modes.
template <int D>
struct Tabulation {
  Eigen::MatrixXd val;
  std::array<Eigen::MatrixXd, D> grad;
  Eigen::MatrixXd lap;
};

template <int D>
Tabulation<D> tabulate(const std::vector<Mode<D>>& modes, int q,
                       const std::array<std::vector<double>, D>& ref, const Box<D>& cell,
                       bool with_lap = false) {
  // 1D tables per axis: [point][degree]
  std::array<Eigen::MatrixXd, D> p, dp, ddp;
  for (int d = 0; d < D; ++d) {
    const Eigen::Index n = static_cast<Eigen::Index>(ref[d].size());
    const double scale = 2.0 / (cell.hi[d] - cell.lo[d]);
    p[d].resize(n, q + 1);
    dp[d].resize(n, q + 1);
    ddp[d].resize(n, q + 1);
    std::vector<double> a(q + 1), b(q + 1), c(q + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      legendre_all(q, ref[d][i], a, b, c);
      for (int k = 0; k <= q; ++k) {
        p[d](i, k) = a[k];
        dp[d](i, k) = b[k] * scale;
        ddp[d](i, k) = c[k] * scale * scale;
      }
    }
  }
  Tabulation<D> tab;
  const Eigen::Index nm = static_cast<Eigen::Index>(modes.size());
  if constexpr (D == 1) {
    const Eigen::Index n = p[0].rows();
    tab.val.resize(n, nm);
    tab.grad[0].resize(n, nm);
    if (with_lap) tab.lap.resize(n, nm);
    for (Eigen::Index m = 0; m < nm; ++m) {
      tab.val.col(m) = p[0].col(modes[m][0]);
      tab.grad[0].col(m) = dp[0].col(modes[m][0]);
      if (with_lap) tab.lap.col(m) = ddp[0].col(modes[m][0]);
    }
  } else {
    const Eigen::Index n0 = p[0].rows(), n1 = p[1].rows();
    const Eigen::Index n = n0 * n1;
    tab.val.resize(n, nm);
    tab.grad[0].resize(n, nm);
    tab.grad[1].resize(n, nm);
    if (with_lap) tab.lap.resize(n, nm);
    for (Eigen::Index m = 0; m < nm; ++m) {
      const int a = modes[m][0], b = modes[m][1];
      for (Eigen::Index i = 0; i < n0; ++i)
        for (Eigen::Index j = 0; j < n1; ++j) {
          const Eigen::Index r = i * n1 + j;
          tab.val(r, m) = p[0](i, a) * p[1](j, b);
          tab.grad[0](r, m) = dp[0](i, a) * p[1](j, b);
          tab.grad[1](r, m) = p[0](i, a) * dp[1](j, b);
          if (with_lap) tab.lap(r, m) = ddp[0](i, a) * p[1](j, b) + p[0](i, a) * ddp[1](j, b);
        }
    }
  }
  return tab;
}

}  // namespace wavedg
