#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

namespace steklov {

enum class BoundaryMarker { INTERIOR = 0, OUTER = 1, INNER = 2 };

// Outer boundary families, all star-shaped about the origin and described by
// a radius function rho(theta).
struct DiskBoundary {
  double radius = 1.0;
};
struct EllipseBoundary {
  double a = 1.0;  // semi-axis along x
  double b = 1.0;  // semi-axis along y
};
// rho(theta) = c0 + sum_k cos_coef[k-1] cos(k theta) + sin_coef[k-1] sin(k theta)
struct FourierBoundary {
  double c0 = 1.0;
  std::vector<double> cos_coef;
  std::vector<double> sin_coef;
};

struct DomainSpec {
  std::variant<DiskBoundary, EllipseBoundary, FourierBoundary> outer;
  double hole_radius = 0.0;  // concentric circular hole, 0 = unperforated

  static DomainSpec disk(double radius, double hole_radius = 0.0);
  static DomainSpec ellipse(double a, double b, double hole_radius = 0.0);
  static DomainSpec star_shaped(double c0, std::vector<double> cos_coef,
                                std::vector<double> sin_coef,
                                double hole_radius = 0.0);

  double rho(double theta) const;
  double rho_prime(double theta) const;

  DomainSpec with_hole(double r) const;

  // InvalidSpec unless rho > 0 everywhere and 0 <= hole_radius < min rho.
  void validate() const;
};

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  BoundaryMarker marker = BoundaryMarker::OUTER;
};

// Tensor polar mesh. Vertices are ring-major: the optional origin vertex
// first, then rings of n_rays vertices from the innermost ring outward, ray
// index fastest. The layout is load-bearing: it keeps the stiffness
// bandwidth near n_rays and puts the OUTER ring in one contiguous block.
struct Mesh {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;  // CCW
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<BoundaryMarker> vertex_markers;

  double hole_radius = 0.0;
  int n_rays = 0;
  int n_rings = 0;  // rings at positive radius; innermost is ring 0
  bool has_center = false;

  int ring_vertex(int ring, int ray) const {
    return (has_center ? 1 : 0) + ring * n_rays + ray;
  }
  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
};

// grading is the successive radial spacing ratio taken outward-to-inward:
// grading < 1 makes layers thinner toward the hole, grading = 1 is uniform.
Mesh build_polar_mesh(const DomainSpec& spec, int n_rays, int n_radial,
                      double grading);

// Polygonal quantities of the discrete mesh.
double area(const Mesh& mesh);
double perimeter(const Mesh& mesh, BoundaryMarker which);

// Integral of f over one period of 2 pi, by the doubling trapezoid rule;
// spectrally accurate for smooth periodic integrands.
double periodic_quadrature(const std::function<double(double)>& f);

// Analytic quantities of the unperforated outer domain, by adaptive periodic
// trapezoid quadrature (spectrally accurate for these smooth boundaries).
double outer_area(const DomainSpec& spec);
double outer_perimeter(const DomainSpec& spec);

struct EquivalentRadii {
  double measure;    // R_M: ball of the same area as the outer domain
  double perimeter;  // R_P: ball of the same perimeter
};
EquivalentRadii equivalent_radii(const DomainSpec& spec);

double min_boundary_radius(const DomainSpec& spec);
double max_boundary_radius(const DomainSpec& spec);

}  // namespace steklov
