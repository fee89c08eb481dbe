#include "wavedg/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace wavedg {

StaggeredMesh1D StaggeredMesh1D::build(double x_left, double x_right, int n, bool periodic) {
  if (n < 2) throw std::invalid_argument("build_mesh_1d: n must be >= 2");
  if (!(x_right > x_left)) throw std::invalid_argument("build_mesh_1d: x_right must exceed x_left");

  StaggeredMesh1D m;
  m.x_left_ = x_left;
  m.x_right_ = x_right;
  m.n_ = n;
  m.h_ = (x_right - x_left) / n;
  m.periodic_ = periodic;

  m.primal_edges_.resize(n + 1);
  for (int j = 0; j <= n; ++j) m.primal_edges_[j] = x_left + j * m.h_;
  m.primal_edges_[n] = x_right;

  std::vector<double> centers(n);
  for (int j = 0; j < n; ++j) centers[j] = x_left + (j + 0.5) * m.h_;

  if (periodic) {
    m.dual_edges_ = centers;
  } else {
    m.dual_edges_.reserve(n + 2);
    m.dual_edges_.push_back(x_left);
    m.dual_edges_.insert(m.dual_edges_.end(), centers.begin(), centers.end());
    m.dual_edges_.push_back(x_right);
  }

  const int nd = m.num_dual();
  for (int j = 0; j < n; ++j) {
    const double xl = m.primal_edges_[j];
    const double xr = m.primal_edges_[j + 1];
    const double rho = centers[j];

    AxisPiece lower;
    lower.primal = j;
    lower.dual = j;
    lower.a = xl;
    lower.b = rho;
    lower.primal_ref = {-1.0, 0.0};
    lower.dual_ref = (!periodic && j == 0) ? RefInterval{-1.0, 1.0} : RefInterval{0.0, 1.0};
    m.pieces_.push_back(lower);

    AxisPiece upper;
    upper.primal = j;
    upper.dual = periodic ? (j + 1) % n : j + 1;
    upper.a = rho;
    upper.b = xr;
    upper.primal_ref = {0.0, 1.0};
    upper.dual_ref = (!periodic && j + 1 == n) ? RefInterval{-1.0, 1.0} : RefInterval{-1.0, 0.0};
    m.pieces_.push_back(upper);
  }

  const int first_face = periodic ? 0 : 1;
  for (int j = first_face; j < n; ++j) {
    AxisPrimalFace f;
    f.x = m.primal_edges_[j];
    f.left = (j - 1 + n) % n;
    f.right = j;
    f.dual = j;
    f.dual_ref = 0.0;
    m.primal_faces_.push_back(f);
  }

  for (int j = 0; j < n; ++j) {
    AxisDualFace g;
    g.x = centers[j];
    g.left = j;
    g.right = periodic ? (j + 1) % nd : j + 1;
    g.primal = j;
    g.primal_ref = 0.0;
    m.dual_faces_.push_back(g);
  }

  if (!periodic) {
    m.boundaries_.push_back({x_left, 0, -1.0, 0, 0});
    m.boundaries_.push_back({x_right, 1, 1.0, n - 1, n});
  }
  return m;
}

std::array<double, 2> StaggeredMesh1D::primal_cell(int j) const {
  return {primal_edges_.at(j), primal_edges_.at(j + 1)};
}

std::array<double, 2> StaggeredMesh1D::dual_cell(int k) const {
  if (periodic_) {
    const double c = x_left_ + k * h_;
    return {c - 0.5 * h_, c + 0.5 * h_};
  }
  return {dual_edges_.at(k), dual_edges_.at(k + 1)};
}

int StaggeredMesh1D::primal_boundary_distance(int j) const {
  if (periodic_) return INT_MAX;
  return std::min(j, n_ - 1 - j);
}

int StaggeredMesh1D::dual_boundary_distance(int k) const {
  if (periodic_) return INT_MAX;
  return std::min(k, n_ - k);
}

StaggeredMesh2D StaggeredMesh2D::build(int n) {
  if (n < 2) throw std::invalid_argument("build_mesh_2d: n must be >= 2");
  StaggeredMesh2D m;
  m.axis_ = StaggeredMesh1D::build(-1.0, 1.0, n, false);
  return m;
}

double StaggeredMesh2D::primal_area(int e) const {
  const auto cx = axis_.primal_cell(e / n());
  const auto cy = axis_.primal_cell(e % n());
  return (cx[1] - cx[0]) * (cy[1] - cy[0]);
}

double StaggeredMesh2D::dual_area(int k) const {
  const auto cx = axis_.dual_cell(k / (n() + 1));
  const auto cy = axis_.dual_cell(k % (n() + 1));
  return (cx[1] - cx[0]) * (cy[1] - cy[0]);
}

StaggeredTopology<1> make_topology(const StaggeredMesh1D& mesh) {
  StaggeredTopology<1> t;
  t.num_primal = mesh.num_primal();
  t.num_dual = mesh.num_dual();
  for (int j = 0; j < t.num_primal; ++j) {
    const auto c = mesh.primal_cell(j);
    t.primal_cells.push_back({{c[0]}, {c[1]}});
    t.primal_distance.push_back(mesh.primal_boundary_distance(j));
  }
  for (int k = 0; k < t.num_dual; ++k) {
    const auto c = mesh.dual_cell(k);
    t.dual_cells.push_back({{c[0]}, {c[1]}});
    t.dual_distance.push_back(mesh.dual_boundary_distance(k));
  }
  for (const auto& p : mesh.pieces()) {
    VolumePiece<1> v;
    v.primal = p.primal;
    v.dual = p.dual;
    v.box = {{p.a}, {p.b}};
    v.primal_ref.axis[0] = p.primal_ref;
    v.dual_ref.axis[0] = p.dual_ref;
    t.pieces.push_back(v);
  }
  for (const auto& f : mesh.primal_faces()) {
    FaceSegment<1> s;
    s.axis = 0;
    s.box = {{f.x}, {f.x}};
    s.minus = f.left;
    s.plus = f.right;
    s.minus_ref.axis[0] = {1.0, 1.0};
    s.plus_ref.axis[0] = {-1.0, -1.0};
    s.container = f.dual;
    s.container_ref.axis[0] = {f.dual_ref, f.dual_ref};
    t.primal_faces.push_back(s);
  }
  for (const auto& g : mesh.dual_faces()) {
    FaceSegment<1> s;
    s.axis = 0;
    s.box = {{g.x}, {g.x}};
    s.minus = g.left;
    s.plus = g.right;
    s.minus_ref.axis[0] = {1.0, 1.0};
    s.plus_ref.axis[0] = {-1.0, -1.0};
    s.container = g.primal;
    s.container_ref.axis[0] = {g.primal_ref, g.primal_ref};
    t.dual_faces.push_back(s);
  }
  for (const auto& b : mesh.boundaries()) {
    BoundarySegment<1> s;
    s.axis = 0;
    s.side = b.side;
    s.normal = b.normal;
    s.box = {{b.x}, {b.x}};
    s.primal = b.primal;
    s.dual = b.dual;
    const double r = b.normal;
    s.primal_ref.axis[0] = {r, r};
    s.dual_ref.axis[0] = {r, r};
    t.boundaries.push_back(s);
  }
  return t;
}

StaggeredTopology<2> make_topology(const StaggeredMesh2D& mesh) {
  const StaggeredMesh1D& ax = mesh.axis();
  const int n = ax.num_primal();
  const int nd = ax.num_dual();
  auto pidx = [&](int i, int j) { return i * n + j; };
  auto didx = [&](int i, int j) { return i * nd + j; };
  // Compose a 2D index / box from per-axis data, with `a0` along x and `a1` along y.
  auto place = [](int axis, auto along, auto across) {
    return axis == 0 ? std::array{along, across} : std::array{across, along};
  };

  StaggeredTopology<2> t;
  t.num_primal = n * n;
  t.num_dual = nd * nd;
  t.primal_cells.resize(t.num_primal);
  t.primal_distance.resize(t.num_primal);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto cx = ax.primal_cell(i);
      const auto cy = ax.primal_cell(j);
      t.primal_cells[pidx(i, j)] = {{cx[0], cy[0]}, {cx[1], cy[1]}};
      t.primal_distance[pidx(i, j)] =
          std::min(ax.primal_boundary_distance(i), ax.primal_boundary_distance(j));
    }
  t.dual_cells.resize(t.num_dual);
  t.dual_distance.resize(t.num_dual);
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j) {
      const auto cx = ax.dual_cell(i);
      const auto cy = ax.dual_cell(j);
      t.dual_cells[didx(i, j)] = {{cx[0], cy[0]}, {cx[1], cy[1]}};
      t.dual_distance[didx(i, j)] =
          std::min(ax.dual_boundary_distance(i), ax.dual_boundary_distance(j));
    }

  for (const auto& px : ax.pieces())
    for (const auto& py : ax.pieces()) {
      VolumePiece<2> v;
      v.primal = pidx(px.primal, py.primal);
      v.dual = didx(px.dual, py.dual);
      v.box = {{px.a, py.a}, {px.b, py.b}};
      v.primal_ref.axis = {px.primal_ref, py.primal_ref};
      v.dual_ref.axis = {px.dual_ref, py.dual_ref};
      t.pieces.push_back(v);
    }

  for (int axis = 0; axis < 2; ++axis) {
    for (const auto& f : ax.primal_faces())
      for (const auto& q : ax.pieces()) {
        FaceSegment<2> s;
        s.axis = axis;
        const auto lo = place(axis, f.x, q.a);
        const auto hi = place(axis, f.x, q.b);
        s.box = {lo, hi};
        const auto im = place(axis, f.left, q.primal);
        const auto ip = place(axis, f.right, q.primal);
        const auto ic = place(axis, f.dual, q.dual);
        s.minus = pidx(im[0], im[1]);
        s.plus = pidx(ip[0], ip[1]);
        s.container = didx(ic[0], ic[1]);
        s.minus_ref.axis = place(axis, RefInterval{1.0, 1.0}, q.primal_ref);
        s.plus_ref.axis = place(axis, RefInterval{-1.0, -1.0}, q.primal_ref);
        s.container_ref.axis = place(axis, RefInterval{f.dual_ref, f.dual_ref}, q.dual_ref);
        t.primal_faces.push_back(s);
      }
    for (const auto& g : ax.dual_faces())
      for (const auto& q : ax.pieces()) {
        FaceSegment<2> s;
        s.axis = axis;
        s.box = {place(axis, g.x, q.a), place(axis, g.x, q.b)};
        const auto im = place(axis, g.left, q.dual);
        const auto ip = place(axis, g.right, q.dual);
        const auto ic = place(axis, g.primal, q.primal);
        s.minus = didx(im[0], im[1]);
        s.plus = didx(ip[0], ip[1]);
        s.container = pidx(ic[0], ic[1]);
        s.minus_ref.axis = place(axis, RefInterval{1.0, 1.0}, q.dual_ref);
        s.plus_ref.axis = place(axis, RefInterval{-1.0, -1.0}, q.dual_ref);
        s.container_ref.axis =
            place(axis, RefInterval{g.primal_ref, g.primal_ref}, q.primal_ref);
        t.dual_faces.push_back(s);
      }
    for (const auto& b : ax.boundaries())
      for (const auto& q : ax.pieces()) {
        BoundarySegment<2> s;
        s.axis = axis;
        s.side = b.side;
        s.normal = b.normal;
        s.box = {place(axis, b.x, q.a), place(axis, b.x, q.b)};
        const auto ip = place(axis, b.primal, q.primal);
        const auto id = place(axis, b.dual, q.dual);
        s.primal = pidx(ip[0], ip[1]);
        s.dual = didx(id[0], id[1]);
        const double r = b.normal;
        s.primal_ref.axis = place(axis, RefInterval{r, r}, q.primal_ref);
        s.dual_ref.axis = place(axis, RefInterval{r, r}, q.dual_ref);
        t.boundaries.push_back(s);
      }
  }
  return t;
}

DofLayout::DofLayout(int dim, int qu, int qv, int num_u_elements, int num_v_elements)
    : dim_(dim), qu_(qu), qv_(qv), nu_(num_u_elements), nv_(num_v_elements) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("DofLayout: dim must be 1 or 2");
  u_block_ = dim == 1 ? qu + 1 : (qu + 1) * (qu + 1);
  v_block_ = dim == 1 ? qv + 1 : (qv + 1) * (qv + 1);
  total_ = static_cast<Eigen::Index>(nu_) * u_block_ + static_cast<Eigen::Index>(nv_) * v_block_;
  w0_.reserve(nu_);
  w1_.reserve(total_ - nu_);
  for (Eigen::Index i = 0; i < total_; ++i) {
    if (i < static_cast<Eigen::Index>(nu_) * u_block_ && i % u_block_ == 0)
      w0_.push_back(i);
    else
      w1_.push_back(i);
  }
}

int DofLayout::block_of(Eigen::Index dof) const {
  const Eigen::Index u_end = static_cast<Eigen::Index>(nu_) * u_block_;
  if (dof < u_end) return static_cast<int>(dof / u_block_);
  return nu_ + static_cast<int>((dof - u_end) / v_block_);
}

}  // namespace wavedg
