#pragma once

#include <vector>

namespace steklov {

// Spherical shell A_{r,R} = {x in R^n : r < |x| < R}.
struct ShellSpec {
  int n = 2;
  double r = 0.0;
  double R = 1.0;

  void validate() const;  // InvalidSpec unless n >= 2 and 0 <= r < R
};

// Transition profile parameters: outer radius eps, inner radius r_eps = eps^p.
struct CorrectorSpec {
  int n = 2;
  double eps = 0.1;
  double p = 2.0;

  double inner_radius() const;
  void validate() const;  // RateViolation when the rate condition fails
};

// Measure of the n-ball and surface measure of the unit (n-1)-sphere.
double ball_volume(int n, double radius);
double sphere_area_factor(int n);

// First eigenvalue of the mixed problem on the shell (zero trace on |x| = r,
// spectral condition on |x| = R). Requires r > 0: the unperforated case has
// no such eigenvalue, only the limit 0.
double sigma1_shell(const ShellSpec& s);

// Second eigenvalue; continuous in r down to r = 0 where it equals 1/R, the
// first nontrivial eigenvalue of the ball.
double sigma2_shell(const ShellSpec& s);

// d sigma2 / dr; positive for r > 0, zero exactly at r = 0.
double sigma2_shell_derivative(const ShellSpec& s);

// Radial profile attaining sigma1 (unnormalized): log(t/r) for n = 2,
// r^(2-n) - t^(2-n) for n >= 3. Requires r > 0 and r <= t <= R.
double radial_eigenfunction_1(const ShellSpec& s, double t);

// The n eigenfunctions attaining sigma2, evaluated at x (components
// (1 - r^n/|x|^n) x_j). Requires r <= |x| <= R.
std::vector<double> eigenfunction_2(const ShellSpec& s,
                                    const std::vector<double>& x);

struct BallEigenvalue {
  double value = 0.0;
  int multiplicity = 0;
};

// First nontrivial eigenvalue of the ball B_R: 1/R with multiplicity n.
BallEigenvalue steklov_ball_sigma1(int n, double R);

// Transition profile: 0 inside r_eps, 1 outside eps, radial ramp between.
double corrector_value(const CorrectorSpec& c, double t);

struct CorrectorNorms {
  double L2_sq = 0.0;      // squared L2 norm over the domain
  double gradL2_sq = 0.0;  // squared L2 norm of the gradient
};

// Squared norms over a domain of the given n-dimensional measure containing
// B_eps. The ramp region is integrated by composite 16-point Gauss-Legendre
// on log-spaced panels (the integrands vary on a log scale).
CorrectorNorms corrector_norms(const CorrectorSpec& c, double domain_area,
                               int quad_points);

}  // namespace steklov
