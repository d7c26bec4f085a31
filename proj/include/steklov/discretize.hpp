#pragma once

#include <cstddef>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

// Sparse symmetric operator in canonical coordinate form: entries sorted by
// (row, col), off-diagonal entries stored mirrored, indices live in the
// post-elimination numbering described by dof_map.
struct SymmetricOperator {
  struct Entry {
    int row;
    int col;
    double value;
  };

  std::size_t dim = 0;
  std::vector<Entry> entries;
  std::vector<int> dof_map;        // vertex -> matrix index, -1 = eliminated
  std::vector<int> dof_to_vertex;  // matrix index -> vertex

  double quad_form(const std::vector<double>& x) const;
  double bilinear(const std::vector<double>& x, const std::vector<double>& y) const;
  void mat_vec(const double* x, double* y) const;
};

// Nodal values on the surviving vertices of a mesh; eliminated inner-boundary
// vertices implicitly carry 0 (zero-trace convention).
struct Field {
  const Mesh* mesh = nullptr;
  std::vector<int> dof_map;  // same convention as SymmetricOperator
  std::vector<double> values;

  // Values on every vertex, zeros where eliminated.
  std::vector<double> expanded() const;
};

// Zero field over all vertices (identity dof numbering).
Field make_field(const Mesh& mesh);
// Zero field sharing an operator's dof numbering.
Field make_field_like(const Mesh& mesh, const SymmetricOperator& op);

// P1 forms, assembled over the full vertex set in deterministic element
// order. The stiffness is PSD with constants in its kernel.
SymmetricOperator assemble_stiffness(const Mesh& mesh);
// Exact linear mass on the polygonal boundary edges with the given marker;
// vertices away from that boundary get no entries.
SymmetricOperator assemble_boundary_mass(const Mesh& mesh, BoundaryMarker marker);
// Consistent (non-lumped) P1 mass over the triangles.
SymmetricOperator assemble_domain_mass(const Mesh& mesh);

// Remove rows/columns of INNER-marked vertices. Requires an operator on the
// full vertex set; NothingToEliminate when the mesh has no inner boundary.
SymmetricOperator apply_dirichlet(const SymmetricOperator& op, const Mesh& mesh);

// Sum of two operators sharing one dof numbering.
SymmetricOperator sum_operators(const SymmetricOperator& a, const SymmetricOperator& b);

// Squared H1(Omega_0) distance between f (zero-extended into the hole) and
// the constant c: Dirichlet energy + L2(Omega_r) distance + c^2 * hole_area.
double h1_distance_to_constant(const Mesh& mesh, const Field& f, double c,
                               double hole_area);

double boundary_inner_product(const Mesh& mesh, const Field& f, const Field& g,
                              BoundaryMarker marker);

}  // namespace steklov
