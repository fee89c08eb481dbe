#pragma once

#include <array>
#include <climits>
#include <vector>

#include <Eigen/Core>

namespace wavedg {

/// Closed interval [lo, hi] in the reference coordinates [-1, 1] of some cell.
struct RefInterval {
  double lo = -1.0;
  double hi = 1.0;
};

/// Intersection of one primal and one dual cell: both fields are smooth on it.
struct AxisPiece {
  int primal = 0;
  int dual = 0;
  double a = 0.0;  // physical extent
  double b = 0.0;
  RefInterval primal_ref;
  RefInterval dual_ref;
};

/// Interior face of the primal mesh; always strictly inside one dual cell.
struct AxisPrimalFace {
  double x = 0.0;
  int left = 0;
  int right = 0;
  int dual = 0;
  double dual_ref = 0.0;
};

/// Interior face of the dual mesh; always strictly inside one primal cell.
struct AxisDualFace {
  double x = 0.0;
  int left = 0;
  int right = 0;
  int primal = 0;
  double primal_ref = 0.0;
};

/// Physical boundary point, shared by one primal and one dual cell.
struct AxisBoundary {
  double x = 0.0;
  int side = 0;  // 0 = lower end, 1 = upper end
  double normal = 0.0;
  int primal = 0;
  int dual = 0;
};

/// Uniform 1D primal mesh with its staggered dual. In the bounded case the
/// dual mesh has n + 1 cells, the two end cells having width h/2.
class StaggeredMesh1D {
 public:
  static StaggeredMesh1D build(double x_left, double x_right, int n, bool periodic);

  double x_left() const { return x_left_; }
  double x_right() const { return x_right_; }
  double length() const { return x_right_ - x_left_; }
  int n() const { return n_; }
  double h() const { return h_; }
  bool periodic() const { return periodic_; }

  int num_primal() const { return n_; }
  int num_dual() const { return periodic_ ? n_ : n_ + 1; }

  const std::vector<double>& primal_edges() const { return primal_edges_; }
  /// Periodic: the n primal centers. Bounded: {x_left, centers..., x_right}.
  const std::vector<double>& dual_edges() const { return dual_edges_; }

  /// Cell extents. The periodic dual cell 0 is reported unwrapped, centred on x_left.
  std::array<double, 2> primal_cell(int j) const;
  std::array<double, 2> dual_cell(int k) const;

  /// Index distance to the nearest non-periodic boundary (INT_MAX when periodic).
  int primal_boundary_distance(int j) const;
  int dual_boundary_distance(int k) const;

  const std::vector<AxisPiece>& pieces() const { return pieces_; }
  const std::vector<AxisPrimalFace>& primal_faces() const { return primal_faces_; }
  const std::vector<AxisDualFace>& dual_faces() const { return dual_faces_; }
  const std::vector<AxisBoundary>& boundaries() const { return boundaries_; }

 private:
  double x_left_ = 0.0;
  double x_right_ = 0.0;
  int n_ = 0;
  double h_ = 0.0;
  bool periodic_ = false;
  std::vector<double> primal_edges_;
  std::vector<double> dual_edges_;
  std::vector<AxisPiece> pieces_;
  std::vector<AxisPrimalFace> primal_faces_;
  std::vector<AxisDualFace> dual_faces_;
  std::vector<AxisBoundary> boundaries_;
};

/// Staggered Cartesian mesh on [-1, 1]^2: n^2 primal cells, (n+1)^2 dual cells.
/// Cells are numbered lexicographically with the x index slowest.
class StaggeredMesh2D {
 public:
  static StaggeredMesh2D build(int n);

  int n() const { return axis_.n(); }
  double h() const { return axis_.h(); }
  const StaggeredMesh1D& axis() const { return axis_; }

  int num_primal() const { return n() * n(); }
  int num_dual() const { return (n() + 1) * (n() + 1); }
  int primal_index(int ix, int iy) const { return ix * n() + iy; }
  int dual_index(int kx, int ky) const { return kx * (n() + 1) + ky; }

  double primal_area(int e) const;
  double dual_area(int k) const;

 private:
  StaggeredMesh1D axis_;
};

/// Tensor-product box of D intervals.
template <int D>
struct Box {
  std::array<double, D> lo{};
  std::array<double, D> hi{};
};

template <int D>
struct RefBox {
  std::array<RefInterval, D> axis{};
};

template <int D>
struct VolumePiece {
  int primal = 0;
  int dual = 0;
  Box<D> box;
  RefBox<D> primal_ref;
  RefBox<D> dual_ref;
};

/// Interior face segment of one mesh, lying inside a single cell of the other
/// mesh (the container). `minus` is the cell on the low side along `axis`.
template <int D>
struct FaceSegment {
  int axis = 0;
  Box<D> box;  // degenerate along `axis`
  int minus = 0;
  int plus = 0;
  RefBox<D> minus_ref;
  RefBox<D> plus_ref;
  int container = 0;
  RefBox<D> container_ref;
};

template <int D>
struct BoundarySegment {
  int axis = 0;
  int side = 0;
  double normal = 0.0;
  Box<D> box;
  int primal = 0;
  RefBox<D> primal_ref;
  int dual = 0;
  RefBox<D> dual_ref;
};

/// Cell-level adjacency of a D-dimensional tensor product of staggered axes.
template <int D>
struct StaggeredTopology {
  int num_primal = 0;
  int num_dual = 0;
  std::vector<Box<D>> primal_cells;
  std::vector<Box<D>> dual_cells;
  std::vector<int> primal_distance;  // to a non-periodic boundary
  std::vector<int> dual_distance;
  std::vector<VolumePiece<D>> pieces;
  std::vector<FaceSegment<D>> primal_faces;  // container is a dual cell
  std::vector<FaceSegment<D>> dual_faces;    // container is a primal cell
  std::vector<BoundarySegment<D>> boundaries;
};

StaggeredTopology<1> make_topology(const StaggeredMesh1D& mesh);
StaggeredTopology<2> make_topology(const StaggeredMesh2D& mesh);

/// Global numbering of the unknowns: all u elements first, then all v elements;
/// inside an element the modal coefficients in the basis' mode order (mode 0 is
/// the constant).
class DofLayout {
 public:
  DofLayout() = default;
  DofLayout(int dim, int qu, int qv, int num_u_elements, int num_v_elements);

  int dim() const { return dim_; }
  int qu() const { return qu_; }
  int qv() const { return qv_; }
  int num_u_elements() const { return nu_; }
  int num_v_elements() const { return nv_; }
  int u_block() const { return u_block_; }
  int v_block() const { return v_block_; }
  Eigen::Index total_dofs() const { return total_; }

  Eigen::Index u_offset(int e) const { return static_cast<Eigen::Index>(e) * u_block_; }
  Eigen::Index v_offset(int k) const {
    return static_cast<Eigen::Index>(nu_) * u_block_ + static_cast<Eigen::Index>(k) * v_block_;
  }

  /// Blocks enumerate u elements then v elements.
  int num_blocks() const { return nu_ + nv_; }
  Eigen::Index block_offset(int b) const { return b < nu_ ? u_offset(b) : v_offset(b - nu_); }
  int block_size(int b) const { return b < nu_ ? u_block_ : v_block_; }
  bool is_u_block(int b) const { return b < nu_; }
  int block_of(Eigen::Index dof) const;

  /// Cell averages of u (one per primal element) and the complement.
  const std::vector<Eigen::Index>& w0_indices() const { return w0_; }
  const std::vector<Eigen::Index>& w1_indices() const { return w1_; }

 private:
  int dim_ = 1;
  int qu_ = 1;
  int qv_ = 0;
  int nu_ = 0;
  int nv_ = 0;
  int u_block_ = 0;
  int v_block_ = 0;
  Eigen::Index total_ = 0;
  std::vector<Eigen::Index> w0_;
  std::vector<Eigen::Index> w1_;
};

}  // namespace wavedg
