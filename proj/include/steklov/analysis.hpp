#pragma once

#include <vector>

#include "steklov/discretize.hpp"
#include "steklov/eigensolve.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

struct NodalEntry {
  int nodal_count = 0;
  bool inner_touches_plus = false;   // a positive triangle meets the inner ring
  bool inner_touches_minus = false;
  bool mesh_has_inner = false;
  double zero_tolerance = 0.0;
};

struct NodalReport {
  std::vector<NodalEntry> entries;          // one per eigenfield, same order
  std::vector<int> cluster_multiplicities;  // copied from the spectral result
};

// Triangle-sign partition: a triangle is +/- when some vertex clears
// tol * max|f| on that side and none clears it on the other; triangles cut
// by the zero set are neutral. Nodal domains are connected components of
// edge-adjacent same-sign triangles; neutral triangles separate. Vertices
// inside the tolerance band (the pinned inner ring) never flip a sign.
NodalEntry count_nodal_domains(const Mesh& mesh, const Field& f, double tol = 1e-8);

// For a two-domain eigenfield: both signs must reach the inner boundary
// (neither nodal domain may enclose the hole). NotApplicable when the entry
// has a different domain count or the mesh has no hole.
bool hole_adjacency_check(const NodalEntry& entry);

NodalReport build_nodal_report(const Mesh& mesh, const SpectralResult& spectral,
                               double tol = 1e-8);

struct NodalBoundCheck {
  std::vector<int> bounds;      // 1 + sum of multiplicities below the level
  std::vector<int> max_counts;  // worst nodal count inside the level
  std::vector<bool> level_pass;
  bool all_pass = true;
};

// Courant-type bound per cluster level: the largest nodal count in cluster
// l+1 must not exceed 1 + sum of the multiplicities of clusters 1..l.
NodalBoundCheck nodal_bound_check(const SpectralResult& spectral,
                                  const NodalReport& nodal);

}  // namespace steklov
