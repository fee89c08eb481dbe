#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "wavedg/mesh.hpp"

using doctest::Approx;

TEST_CASE("1D periodic mesh: dual edges at the primal centres") {
  const auto m = wavedg::StaggeredMesh1D::build(-1.0, 1.0, 4, true);
  CHECK(m.num_primal() == 4);
  CHECK(m.num_dual() == 4);
  REQUIRE(m.dual_edges().size() == 4);
  const double expect[] = {-0.75, -0.25, 0.25, 0.75};
  for (int i = 0; i < 4; ++i) CHECK(m.dual_edges()[i] == Approx(expect[i]));
  // Cell 0 is reported unwrapped around x_left.
  CHECK(m.dual_cell(0)[0] == Approx(-1.25));
  CHECK(m.dual_cell(0)[1] == Approx(-0.75));
}

TEST_CASE("1D bounded mesh on [-1, 1.5], n = 10") {
  const auto m = wavedg::StaggeredMesh1D::build(-1.0, 1.5, 10, false);
  CHECK(m.h() == Approx(0.25));
  CHECK(m.num_primal() == 10);
  CHECK(m.num_dual() == 11);
  const auto first = m.dual_cell(0), last = m.dual_cell(10);
  CHECK(first[1] - first[0] == Approx(0.125));
  CHECK(last[1] - last[0] == Approx(0.125));
  double total = 0.0;
  for (int k = 0; k < m.num_dual(); ++k) total += m.dual_cell(k)[1] - m.dual_cell(k)[0];
  CHECK(std::abs(total - 2.5) < 1e-13);
}

TEST_CASE("1D bounded mesh on [0, 1], n = 2") {
  const auto m = wavedg::StaggeredMesh1D::build(0.0, 1.0, 2, false);
  const std::vector<double> expect{0.0, 0.25, 0.75, 1.0};
  REQUIRE(m.dual_edges().size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(m.dual_edges()[i] == Approx(expect[i]));
}

TEST_CASE("mesh construction rejects bad input") {
  CHECK_THROWS_AS(wavedg::StaggeredMesh1D::build(0.0, 1.0, 1, false), std::invalid_argument);
  CHECK_THROWS_AS(wavedg::StaggeredMesh1D::build(1.0, 0.0, 4, false), std::invalid_argument);
  CHECK_THROWS_AS(wavedg::StaggeredMesh2D::build(1), std::invalid_argument);
}

TEST_CASE("2D mesh cell counts and dual areas") {
  for (int n : {2, 3, 10}) {
    const auto m = wavedg::StaggeredMesh2D::build(n);
    CHECK(m.num_primal() == n * n);
    CHECK(m.num_dual() == (n + 1) * (n + 1));
    const double h2 = m.h() * m.h();
    int interior = 0, edge = 0, corner = 0;
    double total = 0.0;
    for (int k = 0; k < m.num_dual(); ++k) {
      const double a = m.dual_area(k);
      total += a;
      if (std::abs(a - h2) < 1e-13) ++interior;
      else if (std::abs(a - h2 / 2) < 1e-13) ++edge;
      else if (std::abs(a - h2 / 4) < 1e-13) ++corner;
    }
    CHECK(interior == (n - 1) * (n - 1));
    CHECK(edge == 4 * (n - 1));
    CHECK(corner == 4);
    CHECK(std::abs(total - 4.0) < 1e-13);
    double primal = 0.0;
    for (int e = 0; e < m.num_primal(); ++e) primal += m.primal_area(e);
    CHECK(std::abs(primal - 4.0) < 1e-13);
  }
  const auto m3 = wavedg::StaggeredMesh2D::build(3);
  CHECK(m3.dual_area(m3.dual_index(0, 0)) == Approx(m3.h() * m3.h() / 4));
  CHECK(m3.dual_area(m3.dual_index(1, 2)) == Approx(m3.h() * m3.h()));
}

namespace {

// Face position in the container's reference coordinates must be strictly inside (-1, 1).
template <int D>
void check_faces_inside_containers(const wavedg::StaggeredTopology<D>& topo) {
  const double tol = 1e-12;
  for (const auto& f : topo.primal_faces) {
    CHECK(std::abs(f.container_ref.axis[f.axis].lo) < 1.0 - tol);
    CHECK(topo.dual_distance.size() > static_cast<std::size_t>(f.container));
  }
  for (const auto& f : topo.dual_faces) CHECK(std::abs(f.container_ref.axis[f.axis].lo) < 1.0 - tol);
}

}  // namespace

TEST_CASE("interior faces of one mesh lie strictly inside a cell of the other") {
  check_faces_inside_containers(wavedg::make_topology(wavedg::StaggeredMesh1D::build(-1.0, 1.0, 5, true)));
  check_faces_inside_containers(wavedg::make_topology(wavedg::StaggeredMesh1D::build(-1.0, 1.5, 10, false)));
  check_faces_inside_containers(wavedg::make_topology(wavedg::StaggeredMesh2D::build(3)));

  const auto topo = wavedg::make_topology(wavedg::StaggeredMesh2D::build(3));
  CHECK(topo.boundaries.size() > 0);
  double pieces = 0.0;
  for (const auto& p : topo.pieces) pieces += (p.box.hi[0] - p.box.lo[0]) * (p.box.hi[1] - p.box.lo[1]);
  CHECK(std::abs(pieces - 4.0) < 1e-13);
}

TEST_CASE("DofLayout and the W0/W1 split") {
  const wavedg::DofLayout l(1, 2, 1, 4, 5);
  CHECK(l.total_dofs() == 4 * 3 + 5 * 2);
  CHECK(l.w0_indices().size() == 4);
  std::set<Eigen::Index> all(l.w0_indices().begin(), l.w0_indices().end());
  for (auto i : l.w1_indices()) CHECK(all.insert(i).second);
  CHECK(static_cast<Eigen::Index>(all.size()) == l.total_dofs());
  for (int e = 0; e < 4; ++e) CHECK(l.w0_indices()[e] == l.u_offset(e));
  CHECK(l.block_of(l.v_offset(2) + 1) == 4 + 2);

  const wavedg::DofLayout l2(2, 2, 2, 9, 16);
  CHECK(l2.u_block() == 9);
  CHECK(l2.w0_indices().size() == 9);
}
