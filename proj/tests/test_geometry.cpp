#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "steklov/geometry.hpp"
#include "test_support.hpp"

using steklov::BoundaryMarker;
using steklov::DomainSpec;
using steklov::ErrorCode;
using steklov::Mesh;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("analytic area and perimeter of the reference ellipse") {
  // a = 1.2, b = 5/6 has area pi exactly, so R_M = 1; the perimeter value is
  // frozen from an independent high-precision quadrature.
  const DomainSpec e = DomainSpec::ellipse(1.2, 5.0 / 6.0);
  CHECK(steklov::outer_area(e) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(steklov::outer_perimeter(e) ==
        doctest::Approx(6.4399421727351284).epsilon(1e-11));
  const steklov::EquivalentRadii rad = steklov::equivalent_radii(e);
  CHECK(rad.measure == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rad.perimeter == doctest::Approx(1.0249486300167562).epsilon(1e-11));
}

TEST_CASE("extremal radii of a three-lobed star") {
  // rho = 1 + 0.2 cos(theta): min 0.8, max 1.2.
  const DomainSpec s = DomainSpec::star_shaped(1.0, {0.2}, {});
  CHECK(steklov::min_boundary_radius(s) == doctest::Approx(0.8).epsilon(1e-8));
  CHECK(steklov::max_boundary_radius(s) == doctest::Approx(1.2).epsilon(1e-8));

  const DomainSpec lobed = DomainSpec::star_shaped(1.0, {0.0, 0.0, 0.15}, {});
  CHECK(steklov::min_boundary_radius(lobed) == doctest::Approx(0.85).epsilon(1e-8));
  CHECK(steklov::max_boundary_radius(lobed) == doctest::Approx(1.15).epsilon(1e-8));
  CHECK(lobed.rho(0.0) == doctest::Approx(1.15).epsilon(1e-14));
  CHECK(lobed.rho_prime(0.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("periodic quadrature is spectrally accurate") {
  CHECK(steklov::periodic_quadrature([](double t) {
          return std::cos(t) * std::cos(t);
        }) == doctest::Approx(kPi).epsilon(1e-13));
  // 2 pi I_0(1), frozen.
  CHECK(steklov::periodic_quadrature([](double t) {
          return std::exp(std::sin(t));
        }) == doctest::Approx(7.9549265210128453).epsilon(1e-12));
}

TEST_CASE("annulus mesh counts and markers") {
  const Mesh m = steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 8, 2, 1.0);
  CHECK(m.vertex_count() == 24);
  CHECK(m.triangle_count() == 32);
  CHECK(m.n_rays == 8);
  CHECK(m.n_rings == 3);
  CHECK_FALSE(m.has_center);

  int inner = 0, outer = 0;
  for (const steklov::BoundaryEdge& e : m.boundary_edges) {
    if (e.marker == BoundaryMarker::INNER) ++inner;
    if (e.marker == BoundaryMarker::OUTER) ++outer;
  }
  CHECK(inner == 8);
  CHECK(outer == 8);

  for (int ray = 0; ray < 8; ++ray) {
    CHECK(m.vertex_markers[m.ring_vertex(0, ray)] == BoundaryMarker::INNER);
    CHECK(m.vertex_markers[m.ring_vertex(1, ray)] == BoundaryMarker::INTERIOR);
    CHECK(m.vertex_markers[m.ring_vertex(2, ray)] == BoundaryMarker::OUTER);
  }
}

TEST_CASE("unperforated mesh gets a center fan") {
  const Mesh m = steklov::build_polar_mesh(DomainSpec::disk(1.0), 8, 2, 1.0);
  CHECK(m.has_center);
  CHECK(m.vertex_count() == 25);
  CHECK(m.triangle_count() == 40);
  int inner = 0;
  for (const steklov::BoundaryEdge& e : m.boundary_edges) {
    if (e.marker == BoundaryMarker::INNER) ++inner;
  }
  CHECK(inner == 0);
}

TEST_CASE("triangles are positively oriented") {
  for (const Mesh& m :
       {steklov::build_polar_mesh(DomainSpec::ellipse(1.2, 5.0 / 6.0, 0.2), 16, 4, 0.85),
        steklov::build_polar_mesh(DomainSpec::disk(1.0), 16, 4, 1.0)}) {
    for (const auto& t : m.triangles) {
      const auto& a = m.vertices[t[0]];
      const auto& b = m.vertices[t[1]];
      const auto& c = m.vertices[t[2]];
      const double twice_area =
          (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
      CHECK(twice_area > 0.0);
    }
  }
}

TEST_CASE("polygonal area and perimeter approach the smooth values") {
  const Mesh disk = steklov::build_polar_mesh(DomainSpec::disk(1.0), 256, 8, 1.0);
  CHECK(std::fabs(steklov::area(disk) - kPi) <= 5e-4);
  // The outer ring is a regular 256-gon; its perimeter is exact.
  CHECK(steklov::perimeter(disk, BoundaryMarker::OUTER) ==
        doctest::Approx(2.0 * 256.0 * std::sin(kPi / 256.0)).epsilon(1e-12));

  const Mesh ann = steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 256, 8, 1.0);
  CHECK(std::fabs(steklov::area(ann) - 0.75 * kPi) <= 5e-4);
  CHECK(steklov::perimeter(ann, BoundaryMarker::INNER) ==
        doctest::Approx(2.0 * 256.0 * 0.5 * std::sin(kPi / 256.0)).epsilon(1e-12));
}

TEST_CASE("grading fixes the successive spacing ratio") {
  // Ratio 0.5 over three layers on [0.5, 1]: cumulative fractions 1/7, 3/7, 1.
  const Mesh m = steklov::build_polar_mesh(DomainSpec::disk(1.0, 0.5), 8, 3, 0.5);
  const auto radius_of = [&](int ring) {
    const auto& v = m.vertices[m.ring_vertex(ring, 0)];
    return std::hypot(v[0], v[1]);
  };
  CHECK(radius_of(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(radius_of(1) == doctest::Approx(0.5 + 0.5 / 7.0).epsilon(1e-13));
  CHECK(radius_of(2) == doctest::Approx(0.5 + 1.5 / 7.0).epsilon(1e-13));
  CHECK(radius_of(3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("spec validation rejects bad input") {
  CHECK(raised_code([] { DomainSpec::disk(-1.0).validate(); }) ==
        ErrorCode::InvalidSpec);
  CHECK(raised_code([] { DomainSpec::disk(1.0, 1.0).validate(); }) ==
        ErrorCode::InvalidSpec);
  CHECK(raised_code([] { DomainSpec::star_shaped(1.0, {1.5}, {}).validate(); }) ==
        ErrorCode::InvalidSpec);
  CHECK(raised_code([] {
          steklov::build_polar_mesh(DomainSpec::disk(1.0), 7, 4, 1.0);
        }) == ErrorCode::InvalidSpec);
  CHECK(raised_code([] {
          steklov::build_polar_mesh(DomainSpec::disk(1.0), 8, 1, 1.0);
        }) == ErrorCode::InvalidSpec);
  CHECK(raised_code([] {
          steklov::build_polar_mesh(DomainSpec::disk(1.0), 8, 4, 0.0);
        }) == ErrorCode::InvalidSpec);
  CHECK(raised_code([] {
          steklov::build_polar_mesh(DomainSpec::disk(1.0), 8, 4, 1.2);
        }) == ErrorCode::InvalidSpec);
}

TEST_CASE("with_hole returns an adjusted copy") {
  const DomainSpec e = DomainSpec::ellipse(1.2, 5.0 / 6.0);
  const DomainSpec holed = e.with_hole(0.25);
  CHECK(holed.hole_radius == 0.25);
  CHECK(e.hole_radius == 0.0);
  CHECK(holed.rho(0.3) == doctest::Approx(e.rho(0.3)).epsilon(1e-15));
}
