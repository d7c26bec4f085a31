#include "steklov/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "steklov/banded.hpp"
#include "steklov/errors.hpp"
#include "steklov/simd/kernels.hpp"

namespace steklov {

namespace {

// Dense restriction of a boundary-mass operator to the listed vertices.
DenseMatrix dense_on_vertices(const SymmetricOperator& op,
                              const std::vector<int>& verts) {
  std::vector<int> pos(op.dof_map.size(), -1);
  for (std::size_t g = 0; g < verts.size(); ++g) pos[verts[g]] = static_cast<int>(g);
  DenseMatrix out(verts.size(), verts.size());
  for (const auto& e : op.entries) {
    const int r = pos[op.dof_to_vertex[e.row]];
    const int c = pos[op.dof_to_vertex[e.col]];
    if (r >= 0 && c >= 0) out(r, c) += e.value;
  }
  return out;
}

std::vector<std::vector<int>> cluster_indices(const std::vector<double>& vals,
                                              double rel_gap) {
  std::vector<std::vector<int>> clusters;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double scale = std::max(std::fabs(vals[i]), 1e-300);
    if (i == 0 || (vals[i] - vals[i - 1]) / scale > rel_gap) {
      clusters.emplace_back();
    }
    clusters.back().push_back(static_cast<int>(i));
  }
  return clusters;
}

struct ReducedProblem {
  SchurSystem schur;
  SymmetricEigen eig;           // full spectrum on the outer ring
  std::vector<int> gamma_verts; // mesh vertex per gamma position
};

ReducedProblem reduce_and_solve(const SymmetricOperator& stiffness,
                                const Mesh& mesh) {
  ReducedProblem rp;
  rp.schur = schur_dtn(stiffness, mesh);
  for (int d : rp.schur.gamma_dofs)
    rp.gamma_verts.push_back(stiffness.dof_to_vertex[d]);
  const SymmetricOperator bmass = assemble_boundary_mass(mesh, BoundaryMarker::OUTER);
  const DenseMatrix b = dense_on_vertices(bmass, rp.gamma_verts);
  rp.eig = generalized_sym_eig(rp.schur.S, b);
  return rp;
}

// Fields are built from boundary vectors: gamma values straight from the
// eigenvector, interior from the stored harmonic extension.
Field build_field(const Mesh& mesh, const SymmetricOperator& stiffness,
                  const ReducedProblem& rp, const double* gamma_vec) {
  Field f = make_field_like(mesh, stiffness);
  const std::size_t ng = rp.schur.gamma_dofs.size();
  const std::size_t ni = rp.schur.interior_dofs.size();
  for (std::size_t g = 0; g < ng; ++g)
    f.values[rp.schur.gamma_dofs[g]] = gamma_vec[g];
  for (std::size_t i = 0; i < ni; ++i) {
    f.values[rp.schur.interior_dofs[i]] =
        -simd::dot(rp.schur.extension.row(i), gamma_vec, ng);
  }
  return f;
}

void flip_field(Field& f, std::vector<double>& gamma_vec) {
  for (double& v : f.values) v = -v;
  for (double& v : gamma_vec) v = -v;
}

// Sign normalization per result index: the ground state of the perforated
// problem gets a positive boundary mean; everything else keys on its first
// significantly nonzero outer-ring value in vertex order.
void apply_sign_convention(const Mesh& mesh, const ReducedProblem& rp,
                           std::vector<Field>& fields,
                           std::vector<std::vector<double>>& gamma_vecs,
                           bool first_is_ground) {
  const SymmetricOperator bmass = assemble_boundary_mass(mesh, BoundaryMarker::OUTER);
  const DenseMatrix b = dense_on_vertices(bmass, rp.gamma_verts);
  const std::size_t ng = rp.gamma_verts.size();
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const std::vector<double>& x = gamma_vecs[k];
    if (k == 0 && first_is_ground) {
      double mean = 0.0;
      for (std::size_t i = 0; i < ng; ++i) mean += simd::dot(b.row(i), x.data(), ng);
      if (mean < 0.0) flip_field(fields[k], gamma_vecs[k]);
      continue;
    }
    double amax = 0.0;
    for (double v : x) amax = std::max(amax, std::fabs(v));
    for (std::size_t i = 0; i < ng; ++i) {
      if (std::fabs(x[i]) > 1e-12 * amax) {
        if (x[i] < 0.0) flip_field(fields[k], gamma_vecs[k]);
        break;
      }
    }
  }
}

}  // namespace

SchurSystem schur_dtn(const SymmetricOperator& stiffness, const Mesh& mesh) {
  SchurSystem out;
  std::vector<int> ipos(stiffness.dim, -1);
  std::vector<int> gpos(stiffness.dim, -1);
  for (std::size_t d = 0; d < stiffness.dim; ++d) {
    const int v = stiffness.dof_to_vertex[d];
    if (mesh.vertex_markers[v] == BoundaryMarker::OUTER) {
      gpos[d] = static_cast<int>(out.gamma_dofs.size());
      out.gamma_dofs.push_back(static_cast<int>(d));
    } else {
      ipos[d] = static_cast<int>(out.interior_dofs.size());
      out.interior_dofs.push_back(static_cast<int>(d));
    }
  }
  const std::size_t ng = out.gamma_dofs.size();
  const std::size_t ni = out.interior_dofs.size();
  if (ng == 0) {
    raise(ErrorCode::InvalidSpec, "eigensolve: mesh has no outer boundary dofs");
  }

  out.S = DenseMatrix(ng, ng);
  for (const auto& e : stiffness.entries) {
    const int r = gpos[e.row];
    const int c = gpos[e.col];
    if (r >= 0 && c >= 0) out.S(r, c) += e.value;
  }

  if (ni == 0) {
    out.extension = DenseMatrix(0, ng);
    return out;
  }

  std::size_t band = 0;
  for (const auto& e : stiffness.entries) {
    const int r = ipos[e.row];
    const int c = ipos[e.col];
    if (r >= 0 && c >= 0 && r >= c) band = std::max(band, std::size_t(r - c));
  }
  BandedCholesky aii(ni, band);
  for (const auto& e : stiffness.entries) {
    const int r = ipos[e.row];
    const int c = ipos[e.col];
    if (r >= 0 && c >= 0 && r >= c) aii.add(r, c, e.value);
  }
  aii.factor();

  // Right-hand sides A_IG, all gamma columns at once (row-major ni x ng).
  DenseMatrix y(ni, ng);
  for (const auto& e : stiffness.entries) {
    const int r = ipos[e.row];
    const int c = gpos[e.col];
    if (r >= 0 && c >= 0) y(r, c) += e.value;
  }
  aii.solve_in_place(y.data.data(), ng);

  // S -= A_GI * Y, walking the sparse gamma-interior couplings.
  for (const auto& e : stiffness.entries) {
    const int g = gpos[e.row];
    const int i = ipos[e.col];
    if (g >= 0 && i >= 0 && e.value != 0.0) {
      simd::axpy(-e.value, y.row(i), out.S.row(g), ng);
    }
  }
  out.S.symmetrize();
  out.extension = std::move(y);
  return out;
}

SpectralResult solve_steklov_dirichlet(const Mesh& mesh, int k, double cluster_gap) {
  if (mesh.hole_radius <= 0.0) {
    raise(ErrorCode::HoleRequired,
          "eigensolve: perforated solve needs a mesh with an inner boundary");
  }
  if (k < 1) raise(ErrorCode::InvalidSpec, "eigensolve: k must be positive");

  const SymmetricOperator stiffness =
      apply_dirichlet(assemble_stiffness(mesh), mesh);
  ReducedProblem rp = reduce_and_solve(stiffness, mesh);

  const std::size_t ng = rp.schur.gamma_dofs.size();
  const std::size_t kk = std::min<std::size_t>(k, ng);

  SpectralResult res;
  res.mode = SpectralMode::STEKLOV_DIRICHLET;
  res.eigenvalues.assign(rp.eig.values.begin(), rp.eig.values.begin() + kk);

  std::vector<std::vector<double>> gamma_vecs(kk, std::vector<double>(ng));
  for (std::size_t j = 0; j < kk; ++j) {
    for (std::size_t i = 0; i < ng; ++i) gamma_vecs[j][i] = rp.eig.vectors(i, j);
    res.eigenfields.push_back(build_field(mesh, stiffness, rp, gamma_vecs[j].data()));
  }
  apply_sign_convention(mesh, rp, res.eigenfields, gamma_vecs,
                        /*first_is_ground=*/true);

  for (auto& cluster : cluster_indices(rp.eig.values, cluster_gap)) {
    std::vector<int> kept;
    for (int idx : cluster) {
      if (idx < static_cast<int>(kk)) kept.push_back(idx);
    }
    if (!kept.empty()) res.clusters.push_back(std::move(kept));
  }
  return res;
}

SpectralResult solve_steklov(const Mesh& mesh, int k, double cluster_gap) {
  if (mesh.hole_radius > 0.0) {
    raise(ErrorCode::InvalidSpec,
          "eigensolve: pure-Steklov solve expects an unperforated mesh");
  }
  if (k < 1) raise(ErrorCode::InvalidSpec, "eigensolve: k must be positive");

  const SymmetricOperator stiffness = assemble_stiffness(mesh);
  ReducedProblem rp = reduce_and_solve(stiffness, mesh);

  const std::size_t ng = rp.schur.gamma_dofs.size();
  if (ng < 2) raise(ErrorCode::InvalidSpec, "eigensolve: outer ring too small");
  if (!(std::fabs(rp.eig.values[0]) < 1e-9 * std::fabs(rp.eig.values[1]))) {
    raise(ErrorCode::ValidationError,
          "eigensolve: trivial eigenvalue not separated from the spectrum");
  }

  const std::size_t kk = std::min<std::size_t>(k, ng - 1);
  SpectralResult res;
  res.mode = SpectralMode::STEKLOV;
  res.trivial_eigenvalue = rp.eig.values[0];
  res.eigenvalues.assign(rp.eig.values.begin() + 1,
                         rp.eig.values.begin() + 1 + kk);

  std::vector<std::vector<double>> gamma_vecs(kk, std::vector<double>(ng));
  for (std::size_t j = 0; j < kk; ++j) {
    for (std::size_t i = 0; i < ng; ++i) gamma_vecs[j][i] = rp.eig.vectors(i, j + 1);
    res.eigenfields.push_back(build_field(mesh, stiffness, rp, gamma_vecs[j].data()));
  }
  apply_sign_convention(mesh, rp, res.eigenfields, gamma_vecs,
                        /*first_is_ground=*/false);

  std::vector<double> nontrivial(rp.eig.values.begin() + 1, rp.eig.values.end());
  for (auto& cluster : cluster_indices(nontrivial, cluster_gap)) {
    std::vector<int> kept;
    for (int idx : cluster) {
      if (idx < static_cast<int>(kk)) kept.push_back(idx);
    }
    if (!kept.empty()) res.clusters.push_back(std::move(kept));
  }
  return res;
}

double friedrich_constant(const Mesh& mesh) {
  const SymmetricOperator stiffness = assemble_stiffness(mesh);
  const SymmetricOperator b_outer = assemble_boundary_mass(mesh, BoundaryMarker::OUTER);
  const SymmetricOperator b_inner = assemble_boundary_mass(mesh, BoundaryMarker::INNER);
  const SymmetricOperator a =
      sum_operators(stiffness, sum_operators(b_outer, b_inner));
  const SymmetricOperator m = assemble_domain_mass(mesh);

  const std::size_t n = a.dim;
  std::size_t band = 0;
  for (const auto& e : a.entries) {
    if (e.row >= e.col) band = std::max(band, std::size_t(e.row - e.col));
  }
  BandedCholesky chol(n, band);
  for (const auto& e : a.entries) {
    if (e.row >= e.col) chol.add(e.row, e.col, e.value);
  }
  chol.factor();

  // Inverse iteration on (mass, stiffness+boundary): the Rayleigh quotient
  // rises monotonically to the best constant.
  std::vector<double> x(n, 1.0), mx(n), ax(n);
  double mu_prev = -1.0;
  for (int it = 0; it < 1000; ++it) {
    m.mat_vec(x.data(), mx.data());
    chol.solve_in_place(mx.data(), 1);
    x.swap(mx);
    double norm = std::sqrt(simd::dot(x.data(), x.data(), n));
    simd::scal(1.0 / norm, x.data(), n);

    m.mat_vec(x.data(), mx.data());
    a.mat_vec(x.data(), ax.data());
    const double mu = simd::dot(x.data(), mx.data(), n) /
                      simd::dot(x.data(), ax.data(), n);
    if (mu_prev > 0.0 && std::fabs(mu - mu_prev) <= 1e-13 * mu) return mu;
    mu_prev = mu;
  }
  raise(ErrorCode::ValidationError,
        "eigensolve: Friedrich iteration failed to converge");
}

}  // namespace steklov
