#include "steklov/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

std::vector<int> identity_dof_map(std::size_t n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

// Deterministic assembly: element contributions are buffered in element
// order, then sorted by (row, col) and summed left to right.
struct Accumulator {
  struct Triplet {
    int row;
    int col;
    double value;
  };
  std::vector<Triplet> triplets;

  void add(int i, int j, double v) { triplets.push_back({i, j, v}); }

  SymmetricOperator finish(std::size_t n) {
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const Triplet& a, const Triplet& b) {
                       return a.row != b.row ? a.row < b.row : a.col < b.col;
                     });
    SymmetricOperator op;
    op.dim = n;
    op.dof_map = identity_dof_map(n);
    op.dof_to_vertex = op.dof_map;
    for (std::size_t k = 0; k < triplets.size();) {
      const int r = triplets[k].row;
      const int c = triplets[k].col;
      double v = 0.0;
      while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
        v += triplets[k].value;
        ++k;
      }
      op.entries.push_back({r, c, v});
    }
    return op;
  }
};

}  // namespace

double SymmetricOperator::quad_form(const std::vector<double>& x) const {
  return bilinear(x, x);
}

double SymmetricOperator::bilinear(const std::vector<double>& x,
                                   const std::vector<double>& y) const {
  if (x.size() != dim || y.size() != dim) {
    raise(ErrorCode::OutOfRange, "discretize: vector length != operator dimension");
  }
  double s = 0.0;
  for (const auto& e : entries) s += e.value * x[e.row] * y[e.col];
  return s;
}

void SymmetricOperator::mat_vec(const double* x, double* y) const {
  for (std::size_t i = 0; i < dim; ++i) y[i] = 0.0;
  for (const auto& e : entries) y[e.row] += e.value * x[e.col];
}

std::vector<double> Field::expanded() const {
  std::vector<double> full(mesh->vertex_count(), 0.0);
  for (std::size_t v = 0; v < full.size(); ++v) {
    const int d = dof_map[v];
    if (d >= 0) full[v] = values[d];
  }
  return full;
}

Field make_field(const Mesh& mesh) {
  Field f;
  f.mesh = &mesh;
  f.dof_map = identity_dof_map(mesh.vertex_count());
  f.values.assign(mesh.vertex_count(), 0.0);
  return f;
}

Field make_field_like(const Mesh& mesh, const SymmetricOperator& op) {
  Field f;
  f.mesh = &mesh;
  f.dof_map = op.dof_map;
  f.values.assign(op.dim, 0.0);
  return f;
}

SymmetricOperator assemble_stiffness(const Mesh& mesh) {
  Accumulator acc;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    const double doubled = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                           (p1[1] - p0[1]) * (p2[0] - p0[0]);
    if (!(doubled > 0.0)) {
      raise(ErrorCode::DegenerateCell,
            "discretize: nonpositive triangle area at index " + std::to_string(t));
    }
    // grad of the hat at vertex i is the rotated opposite edge / (2 area);
    // K_ij = area * grad_i . grad_j.
    const double bx[3] = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
    const double by[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
    const double scale = 1.0 / (2.0 * doubled);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        acc.add(tri[i], tri[j], scale * (bx[i] * bx[j] + by[i] * by[j]));
  }
  return acc.finish(mesh.vertex_count());
}

SymmetricOperator assemble_boundary_mass(const Mesh& mesh, BoundaryMarker marker) {
  Accumulator acc;
  for (const auto& e : mesh.boundary_edges) {
    if (e.marker != marker) continue;
    const auto& pa = mesh.vertices[e.a];
    const auto& pb = mesh.vertices[e.b];
    const double len = std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    const double w = len / 6.0;
    acc.add(e.a, e.a, 2.0 * w);
    acc.add(e.b, e.b, 2.0 * w);
    acc.add(e.a, e.b, w);
    acc.add(e.b, e.a, w);
  }
  return acc.finish(mesh.vertex_count());
}

SymmetricOperator assemble_domain_mass(const Mesh& mesh) {
  Accumulator acc;
  for (const auto& tri : mesh.triangles) {
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    const double area2 = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                         (p1[1] - p0[1]) * (p2[0] - p0[0]);
    const double w = area2 / 24.0;  // area/12
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc.add(tri[i], tri[j], (i == j ? 2.0 : 1.0) * w);
  }
  return acc.finish(mesh.vertex_count());
}

SymmetricOperator apply_dirichlet(const SymmetricOperator& op, const Mesh& mesh) {
  if (op.dof_map.size() != mesh.vertex_count() || op.dim != mesh.vertex_count()) {
    raise(ErrorCode::InvalidSpec,
          "discretize: elimination expects an operator on the full vertex set");
  }
  bool any_inner = false;
  for (auto m : mesh.vertex_markers) {
    if (m == BoundaryMarker::INNER) {
      any_inner = true;
      break;
    }
  }
  if (!any_inner) {
    raise(ErrorCode::NothingToEliminate,
          "discretize: mesh has no inner boundary; use the pure-Steklov path");
  }

  SymmetricOperator out;
  out.dof_map.assign(mesh.vertex_count(), -1);
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.vertex_markers[v] != BoundaryMarker::INNER) {
      out.dof_map[v] = static_cast<int>(out.dof_to_vertex.size());
      out.dof_to_vertex.push_back(static_cast<int>(v));
    }
  }
  out.dim = out.dof_to_vertex.size();
  for (const auto& e : op.entries) {
    const int r = out.dof_map[e.row];
    const int c = out.dof_map[e.col];
    if (r >= 0 && c >= 0) out.entries.push_back({r, c, e.value});
  }
  return out;
}

SymmetricOperator sum_operators(const SymmetricOperator& a,
                                const SymmetricOperator& b) {
  if (a.dim != b.dim || a.dof_map != b.dof_map) {
    raise(ErrorCode::InvalidSpec, "discretize: operator sum needs one dof numbering");
  }
  SymmetricOperator out;
  out.dim = a.dim;
  out.dof_map = a.dof_map;
  out.dof_to_vertex = a.dof_to_vertex;
  std::size_t i = 0, j = 0;
  auto before = [](const SymmetricOperator::Entry& x, const SymmetricOperator::Entry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  };
  while (i < a.entries.size() || j < b.entries.size()) {
    if (j == b.entries.size() ||
        (i < a.entries.size() && before(a.entries[i], b.entries[j]))) {
      out.entries.push_back(a.entries[i++]);
    } else if (i == a.entries.size() || before(b.entries[j], a.entries[i])) {
      out.entries.push_back(b.entries[j++]);
    } else {
      auto e = a.entries[i++];
      e.value += b.entries[j++].value;
      out.entries.push_back(e);
    }
  }
  return out;
}

double h1_distance_to_constant(const Mesh& mesh, const Field& f, double c,
                               double hole_area) {
  if (!std::isfinite(c)) raise(ErrorCode::InvalidSpec, "discretize: constant must be finite");
  if (hole_area < 0.0) raise(ErrorCode::InvalidSpec, "discretize: hole area must be nonnegative");
  const SymmetricOperator k = assemble_stiffness(mesh);
  const SymmetricOperator m = assemble_domain_mass(mesh);
  const std::vector<double> fe = f.expanded();
  std::vector<double> diff = fe;
  for (double& v : diff) v -= c;
  return k.quad_form(fe) + m.quad_form(diff) + c * c * hole_area;
}

double boundary_inner_product(const Mesh& mesh, const Field& f, const Field& g,
                              BoundaryMarker marker) {
  const SymmetricOperator b = assemble_boundary_mass(mesh, marker);
  return b.bilinear(f.expanded(), g.expanded());
}

}  // namespace steklov
