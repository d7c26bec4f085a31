#include "steklov/shells.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
constexpr int kGL = 16;
constexpr double kGLNode[kGL / 2] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGLWeight[kGL / 2] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss_panel(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kGL / 2; ++i) {
    sum += kGLWeight[i] * (f(mid - half * kGLNode[i]) + f(mid + half * kGLNode[i]));
  }
  return sum * half;
}

// Composite quadrature on log-spaced panels over [a, b], n_points total.
template <typename F>
double log_composite(const F& f, double a, double b, int n_points) {
  const int panels = n_points / kGL > 0 ? n_points / kGL : 1;
  const double ratio = std::pow(b / a, 1.0 / panels);
  double sum = 0.0;
  double lo = a;
  for (int k = 0; k < panels; ++k) {
    const double hi = k + 1 == panels ? b : lo * ratio;
    sum += gauss_panel(f, lo, hi);
    lo = hi;
  }
  return sum;
}

}  // namespace

double ball_volume(int n, double radius) {
  // omega_n = pi^(n/2) / Gamma(n/2 + 1)
  const double v = std::pow(std::numbers::pi, 0.5 * n) /
                   std::tgamma(0.5 * n + 1.0);
  return v * std::pow(radius, n);
}

double sphere_area_factor(int n) {
  // surface measure of the unit sphere: n * omega_n
  return n * ball_volume(n, 1.0);
}

void ShellSpec::validate() const {
  if (n < 2) raise(ErrorCode::InvalidSpec, "shells: dimension must be >= 2");
  if (!(r >= 0.0) || !(R > r)) {
    raise(ErrorCode::InvalidSpec, "shells: need 0 <= r < R");
  }
}

double CorrectorSpec::inner_radius() const { return std::pow(eps, p); }

void CorrectorSpec::validate() const {
  if (n < 2) raise(ErrorCode::InvalidSpec, "shells: dimension must be >= 2");
  if (!(eps > 0.0) || !(eps < 1.0)) {
    raise(ErrorCode::InvalidSpec, "shells: need 0 < eps < 1");
  }
  const double min_p = n == 2 ? 1.0 : static_cast<double>(n) / (n - 2);
  if (!(p > min_p)) {
    raise(ErrorCode::RateViolation,
          "shells: rate exponent p must exceed " + std::to_string(min_p) +
              " in dimension " + std::to_string(n));
  }
}

double sigma1_shell(const ShellSpec& s) {
  s.validate();
  if (s.r == 0.0) {
    raise(ErrorCode::HoleRequired,
          "shells: sigma1 needs r > 0; the r->0 limit is 0, not a value");
  }
  if (s.n == 2) return 1.0 / (s.R * std::log(s.R / s.r));
  return (s.n - 2) / (s.R * (std::pow(s.R / s.r, s.n - 2) - 1.0));
}

double sigma2_shell(const ShellSpec& s) {
  s.validate();
  const double Rn = std::pow(s.R, s.n);
  const double rn = std::pow(s.r, s.n);
  return (Rn + rn * (s.n - 1)) / (s.R * (Rn - rn));
}

double sigma2_shell_derivative(const ShellSpec& s) {
  s.validate();
  const double Rn = std::pow(s.R, s.n);
  const double rn = std::pow(s.r, s.n);
  const double num = static_cast<double>(s.n) * s.n * std::pow(s.R, s.n - 1) *
                     std::pow(s.r, s.n - 1);
  return num / ((Rn - rn) * (Rn - rn));
}

double radial_eigenfunction_1(const ShellSpec& s, double t) {
  s.validate();
  if (s.r == 0.0) {
    raise(ErrorCode::HoleRequired, "shells: radial profile needs r > 0");
  }
  if (!(t >= s.r) || !(t <= s.R)) {
    raise(ErrorCode::OutOfRange, "shells: t must lie in [r, R]");
  }
  if (s.n == 2) return std::log(t) - std::log(s.r);
  return std::pow(s.r, 2 - s.n) - std::pow(t, 2 - s.n);
}

std::vector<double> eigenfunction_2(const ShellSpec& s,
                                    const std::vector<double>& x) {
  s.validate();
  if (static_cast<int>(x.size()) != s.n) {
    raise(ErrorCode::InvalidSpec, "shells: point dimension mismatch");
  }
  double norm_sq = 0.0;
  for (double xi : x) norm_sq += xi * xi;
  const double t = std::sqrt(norm_sq);
  if (!(t >= s.r) || !(t <= s.R)) {
    raise(ErrorCode::OutOfRange, "shells: |x| must lie in [r, R]");
  }
  const double factor =
      s.r == 0.0 ? 1.0 : 1.0 - std::pow(s.r, s.n) / std::pow(t, s.n);
  std::vector<double> w(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) w[j] = factor * x[j];
  return w;
}

BallEigenvalue steklov_ball_sigma1(int n, double R) {
  if (n < 2) raise(ErrorCode::InvalidSpec, "shells: dimension must be >= 2");
  if (!(R > 0.0)) raise(ErrorCode::InvalidSpec, "shells: radius must be positive");
  return {1.0 / R, n};
}

double corrector_value(const CorrectorSpec& c, double t) {
  if (!(t >= 0.0)) raise(ErrorCode::OutOfRange, "shells: radius must be nonnegative");
  const double r_eps = c.inner_radius();
  if (t <= r_eps) return 0.0;
  if (t >= c.eps) return 1.0;
  if (c.n == 2) return std::log(t / r_eps) / std::log(c.eps / r_eps);
  const double a = std::pow(r_eps, 2 - c.n);
  const double b = std::pow(c.eps, 2 - c.n);
  return (a - std::pow(t, 2 - c.n)) / (a - b);
}

CorrectorNorms corrector_norms(const CorrectorSpec& c, double domain_area,
                               int quad_points) {
  c.validate();
  if (quad_points < 64) {
    raise(ErrorCode::InvalidSpec, "shells: need at least 64 quadrature points");
  }
  if (!(domain_area > ball_volume(c.n, c.eps))) {
    raise(ErrorCode::InvalidSpec,
          "shells: domain must contain the transition ball");
  }

  const double r_eps = c.inner_radius();
  const double surf = sphere_area_factor(c.n);

  // d/dt of the ramp: 1/(t log(eps/r_eps)) for n=2, else
  // (n-2) t^(1-n) / (r_eps^(2-n) - eps^(2-n)).
  double ramp_scale;
  if (c.n == 2) {
    ramp_scale = 1.0 / std::log(c.eps / r_eps);
  } else {
    ramp_scale = (c.n - 2) /
                 (std::pow(r_eps, 2 - c.n) - std::pow(c.eps, 2 - c.n));
  }

  CorrectorNorms out;
  out.gradL2_sq = log_composite(
      [&](double t) {
        const double d = c.n == 2 ? ramp_scale / t
                                  : ramp_scale * std::pow(t, 1 - c.n);
        return d * d * surf * std::pow(t, c.n - 1);
      },
      r_eps, c.eps, quad_points);

  const double shell_l2 = log_composite(
      [&](double t) {
        const double v = corrector_value(c, t);
        return v * v * surf * std::pow(t, c.n - 1);
      },
      r_eps, c.eps, quad_points);
  out.L2_sq = domain_area - ball_volume(c.n, c.eps) + shell_l2;
  return out;
}

}  // namespace steklov
