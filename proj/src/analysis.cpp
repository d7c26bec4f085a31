#include "steklov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  // Canonical roots: the smaller triangle index wins, so the component
  // labeling is independent of merge order.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

}  // namespace

NodalEntry count_nodal_domains(const Mesh& mesh, const Field& f, double tol) {
  const std::vector<double> fe = f.expanded();
  double fmax = 0.0;
  for (double v : fe) fmax = std::max(fmax, std::fabs(v));
  if (fmax == 0.0) {
    raise(ErrorCode::AllNeutral, "analysis: field is identically zero");
  }
  const double thr = tol * fmax;

  const std::size_t nt = mesh.triangles.size();
  std::vector<int> sign(nt, 0);
  bool any_signed = false;
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    bool has_plus = false, has_minus = false;
    for (int k = 0; k < 3; ++k) {
      if (fe[tri[k]] > thr) has_plus = true;
      else if (fe[tri[k]] < -thr) has_minus = true;
    }
    // Zero-crossing triangles stay neutral and separate; vertices inside the
    // tolerance band (the pinned inner ring) never flip a sign.
    if (has_plus && !has_minus) sign[t] = 1;
    else if (has_minus && !has_plus) sign[t] = -1;
    if (sign[t] != 0) any_signed = true;
  }
  if (!any_signed) {
    raise(ErrorCode::AllNeutral, "analysis: tolerance swallows the whole field");
  }

  // Shared-edge adjacency; conforming mesh means at most two owners per edge.
  std::map<std::pair<int, int>, int> edge_owner;
  UnionFind uf(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      const int a = tri[e];
      const int b = tri[(e + 1) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_owner.try_emplace(key, static_cast<int>(t));
      if (!inserted) {
        const int other = it->second;
        if (sign[t] != 0 && sign[t] == sign[other]) uf.unite(static_cast<int>(t), other);
      }
    }
  }

  NodalEntry entry;
  entry.zero_tolerance = tol;
  for (auto m : mesh.vertex_markers) {
    if (m == BoundaryMarker::INNER) {
      entry.mesh_has_inner = true;
      break;
    }
  }

  std::vector<char> seen(nt, 0);
  for (std::size_t t = 0; t < nt; ++t) {
    if (sign[t] == 0) continue;
    const int root = uf.find(static_cast<int>(t));
    if (!seen[root]) {
      seen[root] = 1;
      ++entry.nodal_count;
    }
    if (entry.mesh_has_inner) {
      const auto& tri = mesh.triangles[t];
      const bool touches =
          mesh.vertex_markers[tri[0]] == BoundaryMarker::INNER ||
          mesh.vertex_markers[tri[1]] == BoundaryMarker::INNER ||
          mesh.vertex_markers[tri[2]] == BoundaryMarker::INNER;
      if (touches) {
        if (sign[t] > 0) entry.inner_touches_plus = true;
        else entry.inner_touches_minus = true;
      }
    }
  }
  return entry;
}

bool hole_adjacency_check(const NodalEntry& entry) {
  if (!entry.mesh_has_inner) {
    raise(ErrorCode::NotApplicable, "analysis: mesh has no inner boundary");
  }
  if (entry.nodal_count != 2) {
    raise(ErrorCode::NotApplicable,
          "analysis: hole adjacency is defined for two-domain eigenfields");
  }
  return entry.inner_touches_plus && entry.inner_touches_minus;
}

NodalReport build_nodal_report(const Mesh& mesh, const SpectralResult& spectral,
                               double tol) {
  NodalReport report;
  for (const auto& f : spectral.eigenfields) {
    report.entries.push_back(count_nodal_domains(mesh, f, tol));
  }
  for (const auto& cluster : spectral.clusters) {
    report.cluster_multiplicities.push_back(static_cast<int>(cluster.size()));
  }
  return report;
}

NodalBoundCheck nodal_bound_check(const SpectralResult& spectral,
                                  const NodalReport& nodal) {
  NodalBoundCheck check;
  int running = 0;
  for (std::size_t level = 0; level < spectral.clusters.size(); ++level) {
    const int bound = 1 + running;
    int worst = 0;
    for (int idx : spectral.clusters[level]) {
      if (idx < static_cast<int>(nodal.entries.size())) {
        worst = std::max(worst, nodal.entries[idx].nodal_count);
      }
    }
    check.bounds.push_back(bound);
    check.max_counts.push_back(worst);
    const bool pass = worst <= bound;
    check.level_pass.push_back(pass);
    check.all_pass = check.all_pass && pass;
    running += static_cast<int>(spectral.clusters[level].size());
  }
  return check;
}

}  // namespace steklov
