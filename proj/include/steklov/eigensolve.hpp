#pragma once

#include <vector>

#include "steklov/dense.hpp"
#include "steklov/discretize.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

enum class SpectralMode { STEKLOV, STEKLOV_DIRICHLET };

struct SpectralResult {
  SpectralMode mode = SpectralMode::STEKLOV_DIRICHLET;
  std::vector<double> eigenvalues;         // ascending, k entries
  std::vector<Field> eigenfields;          // interior reconstructed, unit
                                           // L2 norm on the outer boundary
  std::vector<std::vector<int>> clusters;  // multiplicity partition of [0, k)
  double trivial_eigenvalue = 0.0;         // STEKLOV: the removed sigma_0
};

// Discrete Dirichlet-to-Neumann reduction: S = A_GG - A_GI A_II^-1 A_IG with
// G the OUTER-ring dofs of the given stiffness. The extension matrix maps
// boundary data to the energy-minimizing interior values (u_I = -ext * x_G).
struct SchurSystem {
  DenseMatrix S;
  std::vector<int> gamma_dofs;     // ascending dof indices on the outer ring
  std::vector<int> interior_dofs;  // the rest, ascending
  DenseMatrix extension;           // interior_dofs.size() x gamma_dofs.size()
};

SchurSystem schur_dtn(const SymmetricOperator& stiffness, const Mesh& mesh);

// First k eigenpairs of the perforated problem (zero trace on the inner
// ring, spectral condition on the outer ring). HoleRequired when r = 0.
SpectralResult solve_steklov_dirichlet(const Mesh& mesh, int k,
                                       double cluster_gap = 1e-3);

// First k nontrivial eigenpairs on an unperforated mesh; the near-zero
// trivial eigenvalue is detected (|sigma_0| < 1e-9 * sigma_1) and removed.
SpectralResult solve_steklov(const Mesh& mesh, int k, double cluster_gap = 1e-3);

// Best constant C2 in |u|^2_L2(Omega) <= C2 (|grad u|^2 + |u|^2_L2(bdry)),
// i.e. 1/lambda_min of (stiffness + full boundary mass) u = lambda (mass) u,
// by inverse iteration. Boundary mass covers OUTER and INNER edges.
double friedrich_constant(const Mesh& mesh);

}  // namespace steklov
