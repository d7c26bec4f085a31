#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "steklov/dense.hpp"
#include "steklov/discretize.hpp"
#include "steklov/eigensolve.hpp"
#include "steklov/geometry.hpp"
#include "test_support.hpp"

using steklov::BoundaryMarker;
using steklov::DenseMatrix;
using steklov::DomainSpec;
using steklov::ErrorCode;
using steklov::Mesh;
using steklov::SpectralResult;
using steklov::SymmetricOperator;

namespace {

// Boundary mass restricted to the Schur boundary dofs, in their ordering.
DenseMatrix gamma_mass(const Mesh& mesh, const std::vector<int>& gamma) {
  const SymmetricOperator b =
      steklov::assemble_boundary_mass(mesh, BoundaryMarker::OUTER);
  std::vector<int> pos(mesh.vertex_count(), -1);
  for (std::size_t i = 0; i < gamma.size(); ++i) pos[gamma[i]] = int(i);
  DenseMatrix out(gamma.size(), gamma.size());
  for (const SymmetricOperator::Entry& e : b.entries) {
    if (pos[e.row] >= 0 && pos[e.col] >= 0) {
      out(pos[e.row], pos[e.col]) += e.value;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("perforated shell matches its closed-form spectrum") {
  const Mesh mesh =
      steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 128, 32, 0.85);
  const SpectralResult sd = steklov::solve_steklov_dirichlet(mesh, 4);
  REQUIRE(sd.eigenvalues.size() == 4);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(sd.eigenvalues[i - 1] <= sd.eigenvalues[i] + 1e-14);
  }
  CHECK(std::fabs(sd.eigenvalues[0] / 1.4426950408889634 - 1.0) <= 0.01);
  CHECK(std::fabs(sd.eigenvalues[1] / (5.0 / 3.0) - 1.0) <= 0.01);

  REQUIRE(sd.clusters.size() >= 2);
  CHECK(sd.clusters[0] == std::vector<int>{0});
  CHECK(sd.clusters[1] == std::vector<int>{1, 2});

  // Each eigenpair satisfies the discrete Rayleigh identity: the Dirichlet
  // energy of the reconstructed field over the outer-boundary mass.
  const SymmetricOperator k = steklov::assemble_stiffness(mesh);
  const SymmetricOperator b =
      steklov::assemble_boundary_mass(mesh, BoundaryMarker::OUTER);
  for (std::size_t i = 0; i < 4; ++i) {
    const std::vector<double> u = sd.eigenfields[i].expanded();
    const double energy = k.quad_form(u);
    const double trace = b.quad_form(u);
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(energy / trace ==
          doctest::Approx(sd.eigenvalues[i]).epsilon(1e-9));
  }

  // Orthonormal in the boundary inner product.
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(std::fabs(steklov::boundary_inner_product(
                mesh, sd.eigenfields[i], sd.eigenfields[j],
                BoundaryMarker::OUTER)) <= 1e-8);
    }
  }

  // Ground state has one sign away from the pinned ring.
  const std::vector<double> u1 = sd.eigenfields[0].expanded();
  double mx = 0.0;
  for (double v : u1) mx = std::max(mx, std::fabs(v));
  double lo = 1e300, hi = -1e300;
  for (std::size_t v = 0; v < u1.size(); ++v) {
    if (mesh.vertex_markers[v] == BoundaryMarker::INNER) continue;
    lo = std::min(lo, u1[v]);
    hi = std::max(hi, u1[v]);
  }
  CHECK((lo >= -1e-10 * mx || hi <= 1e-10 * mx));
}

TEST_CASE("unperforated disk spectrum follows the 1,1,2,2,3 pattern") {
  const Mesh mesh = steklov::build_polar_mesh(DomainSpec::disk(1.0), 128, 16, 1.0);
  const SpectralResult st = steklov::solve_steklov(mesh, 5);
  REQUIRE(st.eigenvalues.size() == 5);
  CHECK(std::fabs(st.trivial_eigenvalue) <= 1e-9 * st.eigenvalues[0]);
  const double want[] = {1.0, 1.0, 2.0, 2.0, 3.0};
  for (int i = 0; i < 5; ++i) {
    // Higher angular modes see more of the h^2 error at this resolution.
    const double tol = i < 4 ? 0.01 : 0.025;
    CHECK(std::fabs(st.eigenvalues[i] / want[i] - 1.0) <= tol);
  }
  REQUIRE(st.clusters.size() >= 2);
  CHECK(st.clusters[0] == std::vector<int>{0, 1});
  CHECK(st.clusters[1] == std::vector<int>{2, 3});
}

TEST_CASE("eigenvalues scale like one over length") {
  const Mesh small = steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 64, 8, 1.0);
  const Mesh big = steklov::build_polar_mesh(DomainSpec::disk(2.0, 1.0), 64, 8, 1.0);
  const SpectralResult a = steklov::solve_steklov_dirichlet(small, 3);
  const SpectralResult b = steklov::solve_steklov_dirichlet(big, 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(b.eigenvalues[i] ==
          doctest::Approx(a.eigenvalues[i] / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("dtn reduction sends constants to zero flux") {
  const Mesh mesh = steklov::build_polar_mesh(DomainSpec::disk(1.0), 64, 8, 1.0);
  const SymmetricOperator k = steklov::assemble_stiffness(mesh);
  const steklov::SchurSystem schur = steklov::schur_dtn(k, mesh);
  const std::size_t m = schur.gamma_dofs.size();
  REQUIRE(m == 64);

  double norm = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      row += schur.S(i, j);
      scale = std::max(scale, std::fabs(schur.S(i, j)));
    }
    norm = std::max(norm, std::fabs(row));
  }
  CHECK(norm <= 1e-10 * scale);

  // With the inner ring pinned the reduced form is positive on constants.
  const Mesh ann = steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 64, 8, 1.0);
  const SymmetricOperator kd =
      steklov::apply_dirichlet(steklov::assemble_stiffness(ann), ann);
  const steklov::SchurSystem sann = steklov::schur_dtn(kd, ann);
  double quad = 0.0;
  for (std::size_t i = 0; i < sann.gamma_dofs.size(); ++i) {
    for (std::size_t j = 0; j < sann.gamma_dofs.size(); ++j) {
      quad += sann.S(i, j);
    }
  }
  CHECK(quad > 0.0);
}

TEST_CASE("generalized eigenvalues interlace under boundary restriction") {
  const Mesh mesh = steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 32, 6, 1.0);
  const SymmetricOperator kd =
      steklov::apply_dirichlet(steklov::assemble_stiffness(mesh), mesh);
  const steklov::SchurSystem schur = steklov::schur_dtn(kd, mesh);
  std::vector<int> gamma_vertices;
  for (int dof : schur.gamma_dofs) {
    gamma_vertices.push_back(kd.dof_to_vertex[dof]);
  }
  const DenseMatrix b = gamma_mass(mesh, gamma_vertices);

  const std::size_t m = schur.gamma_dofs.size();
  const steklov::SymmetricEigen full = steklov::generalized_sym_eig(schur.S, b);

  DenseMatrix s1(m - 1, m - 1), b1(m - 1, m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < m; ++j) {
      s1(i, j) = schur.S(i, j);
      b1(i, j) = b(i, j);
    }
  }
  const steklov::SymmetricEigen sub = steklov::generalized_sym_eig(s1, b1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    CHECK(full.values[i] <= sub.values[i] + 1e-9);
    CHECK(sub.values[i] <= full.values[i + 1] + 1e-9);
  }
}

TEST_CASE("trace constant is attained and refinement-stable") {
  const Mesh mesh = steklov::build_polar_mesh(DomainSpec::disk(1.0), 64, 8, 1.0);
  const double c2 = steklov::friedrich_constant(mesh);
  // The constant field gives area/perimeter, roughly 1/2 on the unit disk.
  CHECK(c2 >= 0.49);
  CHECK(c2 < 10.0);
  const Mesh fine = steklov::build_polar_mesh(DomainSpec::disk(1.0), 128, 16, 1.0);
  CHECK(steklov::friedrich_constant(fine) == doctest::Approx(c2).epsilon(0.05));
}

TEST_CASE("argument guards") {
  const Mesh whole = steklov::build_polar_mesh(DomainSpec::disk(1.0), 16, 4, 1.0);
  CHECK(raised_code([&] { steklov::solve_steklov_dirichlet(whole, 2); }) ==
        ErrorCode::HoleRequired);
  const Mesh ann = steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 16, 4, 1.0);
  CHECK(raised_code([&] { steklov::solve_steklov_dirichlet(ann, 0); }) ==
        ErrorCode::InvalidSpec);
}
