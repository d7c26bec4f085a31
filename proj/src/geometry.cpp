#include "steklov/geometry.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

#include "steklov/errors.hpp"

namespace steklov {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

// Periodic trapezoid rule with doubling until two successive levels agree to
// near machine precision. Exponentially convergent for analytic integrands.
double periodic_quadrature(const std::function<double(double)>& f) {
  int n = 256;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) prev += f(kTwoPi * i / n);
  prev *= kTwoPi / n;
  for (int level = 0; level < 12; ++level) {
    n *= 2;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(kTwoPi * i / n);
    const double cur = sum * kTwoPi / n;
    if (std::fabs(cur - prev) <= 1e-14 * std::fabs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

namespace {

// Golden-section refinement of an extremum bracketed on [lo, hi].
double golden_refine(const std::function<double(double)>& f, double lo,
                     double hi, bool minimum) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-13) {
    const bool keep_left = minimum ? (fc < fd) : (fc > fd);
    if (keep_left) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  return f(0.5 * (lo + hi));
}

double extremal_radius(const DomainSpec& spec, bool minimum) {
  const int n = 8192;
  auto f = [&spec](double th) { return spec.rho(th); };
  int best = 0;
  double best_v = f(0.0);
  for (int i = 1; i < n; ++i) {
    const double v = f(kTwoPi * i / n);
    if (minimum ? (v < best_v) : (v > best_v)) {
      best_v = v;
      best = i;
    }
  }
  const double h = kTwoPi / n;
  return golden_refine(f, (best - 1) * h, (best + 1) * h, minimum);
}

}  // namespace

DomainSpec DomainSpec::disk(double radius, double hole_radius) {
  DomainSpec s;
  s.outer = DiskBoundary{radius};
  s.hole_radius = hole_radius;
  s.validate();
  return s;
}

DomainSpec DomainSpec::ellipse(double a, double b, double hole_radius) {
  DomainSpec s;
  s.outer = EllipseBoundary{a, b};
  s.hole_radius = hole_radius;
  s.validate();
  return s;
}

DomainSpec DomainSpec::star_shaped(double c0, std::vector<double> cos_coef,
                                   std::vector<double> sin_coef,
                                   double hole_radius) {
  DomainSpec s;
  s.outer = FourierBoundary{c0, std::move(cos_coef), std::move(sin_coef)};
  s.hole_radius = hole_radius;
  s.validate();
  return s;
}

DomainSpec DomainSpec::with_hole(double r) const {
  DomainSpec s = *this;
  s.hole_radius = r;
  s.validate();
  return s;
}

double DomainSpec::rho(double theta) const {
  if (const auto* d = std::get_if<DiskBoundary>(&outer)) return d->radius;
  if (const auto* e = std::get_if<EllipseBoundary>(&outer)) {
    const double c = std::cos(theta), s = std::sin(theta);
    return e->a * e->b / std::sqrt(e->b * e->b * c * c + e->a * e->a * s * s);
  }
  const auto& fb = std::get<FourierBoundary>(outer);
  double v = fb.c0;
  for (std::size_t k = 0; k < fb.cos_coef.size(); ++k)
    v += fb.cos_coef[k] * std::cos((k + 1) * theta);
  for (std::size_t k = 0; k < fb.sin_coef.size(); ++k)
    v += fb.sin_coef[k] * std::sin((k + 1) * theta);
  return v;
}

double DomainSpec::rho_prime(double theta) const {
  if (std::holds_alternative<DiskBoundary>(outer)) return 0.0;
  if (const auto* e = std::get_if<EllipseBoundary>(&outer)) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double den = e->b * e->b * c * c + e->a * e->a * s * s;
    return -e->a * e->b * (e->a * e->a - e->b * e->b) * s * c /
           (den * std::sqrt(den));
  }
  const auto& fb = std::get<FourierBoundary>(outer);
  double v = 0.0;
  for (std::size_t k = 0; k < fb.cos_coef.size(); ++k)
    v -= fb.cos_coef[k] * (k + 1) * std::sin((k + 1) * theta);
  for (std::size_t k = 0; k < fb.sin_coef.size(); ++k)
    v += fb.sin_coef[k] * (k + 1) * std::cos((k + 1) * theta);
  return v;
}

void DomainSpec::validate() const {
  if (const auto* d = std::get_if<DiskBoundary>(&outer)) {
    if (!(d->radius > 0.0)) raise(ErrorCode::InvalidSpec, "geometry: disk radius must be positive");
  }
  if (const auto* e = std::get_if<EllipseBoundary>(&outer)) {
    if (!(e->a > 0.0) || !(e->b > 0.0)) {
      raise(ErrorCode::InvalidSpec, "geometry: ellipse semi-axes must be positive");
    }
  }
  if (!(hole_radius >= 0.0)) {
    raise(ErrorCode::InvalidSpec, "geometry: hole radius must be nonnegative");
  }
  const double rmin = extremal_radius(*this, /*minimum=*/true);
  if (!(rmin > 0.0)) {
    raise(ErrorCode::InvalidSpec, "geometry: outer radius function must stay positive");
  }
  if (hole_radius > 0.0 && !(hole_radius < rmin)) {
    raise(ErrorCode::InvalidSpec,
          "geometry: hole must stay strictly inside the outer boundary");
  }
}

Mesh build_polar_mesh(const DomainSpec& spec, int n_rays, int n_radial,
                      double grading) {
  spec.validate();
  if (n_rays < 8) raise(ErrorCode::InvalidSpec, "geometry: need n_rays >= 8");
  if (n_radial < 2) raise(ErrorCode::InvalidSpec, "geometry: need n_radial >= 2");
  if (!(grading > 0.0) || grading > 1.0) {
    raise(ErrorCode::InvalidSpec, "geometry: grading must lie in (0, 1]");
  }

  const double r = spec.hole_radius;
  const bool has_center = r == 0.0;
  // Segment widths grow outward by 1/grading; with a center vertex the fan
  // segment participates in the same progression.
  const int n_segments = has_center ? n_radial + 1 : n_radial;
  std::vector<double> fractions(n_segments + 1, 0.0);
  {
    double w = 1.0, sum = 0.0;
    std::vector<double> widths(n_segments);
    for (int k = n_segments - 1; k >= 0; --k) {  // outermost first
      widths[k] = w;
      sum += w;
      w *= grading;
    }
    double acc = 0.0;
    for (int k = 0; k < n_segments; ++k) {
      acc += widths[k];
      fractions[k + 1] = acc / sum;
    }
    fractions[n_segments] = 1.0;
  }

  Mesh mesh;
  mesh.hole_radius = r;
  mesh.n_rays = n_rays;
  mesh.n_rings = n_radial + 1;
  mesh.has_center = has_center;

  if (has_center) mesh.vertices.push_back({0.0, 0.0});
  for (int ring = 0; ring < mesh.n_rings; ++ring) {
    // fractions[0] = 0 is the center (or the hole circle when r > 0); rings
    // start at the first positive station.
    const double f = fractions[has_center ? ring + 1 : ring];
    for (int j = 0; j < n_rays; ++j) {
      const double th = kTwoPi * j / n_rays;
      const double t = r + (spec.rho(th) - r) * f;
      mesh.vertices.push_back({t * std::cos(th), t * std::sin(th)});
    }
  }

  mesh.vertex_markers.assign(mesh.vertices.size(), BoundaryMarker::INTERIOR);
  for (int j = 0; j < n_rays; ++j) {
    mesh.vertex_markers[mesh.ring_vertex(mesh.n_rings - 1, j)] = BoundaryMarker::OUTER;
    if (!has_center) mesh.vertex_markers[mesh.ring_vertex(0, j)] = BoundaryMarker::INNER;
  }

  if (has_center) {
    for (int j = 0; j < n_rays; ++j) {
      const int jn = (j + 1) % n_rays;
      mesh.triangles.push_back({0, mesh.ring_vertex(0, j), mesh.ring_vertex(0, jn)});
    }
  }
  for (int ring = 0; ring + 1 < mesh.n_rings; ++ring) {
    for (int j = 0; j < n_rays; ++j) {
      const int jn = (j + 1) % n_rays;
      const int a = mesh.ring_vertex(ring, j);
      const int b = mesh.ring_vertex(ring, jn);
      const int c = mesh.ring_vertex(ring + 1, j);
      const int d = mesh.ring_vertex(ring + 1, jn);
      // Every quad is split along the same (inner j, outer j+1) diagonal so
      // the mesh keeps the full cyclic symmetry of the ray set.
      mesh.triangles.push_back({a, c, d});
      mesh.triangles.push_back({a, d, b});
    }
  }

  for (int j = 0; j < n_rays; ++j) {
    const int jn = (j + 1) % n_rays;
    mesh.boundary_edges.push_back({mesh.ring_vertex(mesh.n_rings - 1, j),
                                   mesh.ring_vertex(mesh.n_rings - 1, jn),
                                   BoundaryMarker::OUTER});
  }
  if (!has_center) {
    for (int j = 0; j < n_rays; ++j) {
      const int jn = (j + 1) % n_rays;
      mesh.boundary_edges.push_back({mesh.ring_vertex(0, j), mesh.ring_vertex(0, jn),
                                     BoundaryMarker::INNER});
    }
  }

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    const double doubled = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                           (p1[1] - p0[1]) * (p2[0] - p0[0]);
    if (!(doubled > 0.0)) {
      raise(ErrorCode::DegenerateCell,
            "geometry: nonpositive triangle area at index " + std::to_string(t));
    }
  }
  return mesh;
}

double area(const Mesh& mesh) {
  double sum = 0.0;
  for (const auto& tri : mesh.triangles) {
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    sum += 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                  (p1[1] - p0[1]) * (p2[0] - p0[0]));
  }
  return sum;
}

double perimeter(const Mesh& mesh, BoundaryMarker which) {
  double sum = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    if (e.marker != which) continue;
    const auto& pa = mesh.vertices[e.a];
    const auto& pb = mesh.vertices[e.b];
    sum += std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
  }
  return sum;
}

double outer_area(const DomainSpec& spec) {
  return periodic_quadrature([&spec](double th) {
    const double rho = spec.rho(th);
    return 0.5 * rho * rho;
  });
}

double outer_perimeter(const DomainSpec& spec) {
  return periodic_quadrature([&spec](double th) {
    return std::hypot(spec.rho(th), spec.rho_prime(th));
  });
}

EquivalentRadii equivalent_radii(const DomainSpec& spec) {
  EquivalentRadii r;
  r.measure = std::sqrt(outer_area(spec) / std::numbers::pi);
  r.perimeter = outer_perimeter(spec) / kTwoPi;
  return r;
}

double min_boundary_radius(const DomainSpec& spec) {
  return extremal_radius(spec, /*minimum=*/true);
}

double max_boundary_radius(const DomainSpec& spec) {
  return extremal_radius(spec, /*minimum=*/false);
}

}  // namespace steklov
