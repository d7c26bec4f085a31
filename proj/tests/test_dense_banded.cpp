#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "steklov/banded.hpp"
#include "steklov/dense.hpp"
#include "test_support.hpp"

using steklov::BandedCholesky;
using steklov::DenseMatrix;
using steklov::ErrorCode;

namespace {

DenseMatrix random_spd(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  DenseMatrix m(n, n);
  for (double& v : m.data) v = uni(rng);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += m(k, i) * m(k, j);
      a(i, j) = s + (i == j ? double(n) : 0.0);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("cholesky reproduces a hand factor") {
  // A = L L^T with L = [[2,0,0],[1,2,0],[1,1,2]].
  DenseMatrix a(3, 3);
  a(0, 0) = 4; a(0, 1) = 2; a(0, 2) = 2;
  a(1, 0) = 2; a(1, 1) = 5; a(1, 2) = 3;
  a(2, 0) = 2; a(2, 1) = 3; a(2, 2) = 6;
  steklov::cholesky_in_place(a);
  CHECK(a(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(a(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(a(2, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a(2, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a(2, 2) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("cholesky rejects an indefinite matrix") {
  DenseMatrix a(2, 2);
  a(0, 0) = 1; a(0, 1) = 2;
  a(1, 0) = 2; a(1, 1) = 1;
  CHECK(raised_code([&] { steklov::cholesky_in_place(a); }) ==
        ErrorCode::NotPositiveDefinite);
}

TEST_CASE("triangular solves invert the factor") {
  std::mt19937_64 rng(11);
  const std::size_t n = 20, nrhs = 3;
  DenseMatrix a = random_spd(rng, n);
  const DenseMatrix a0 = a;

  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> b(n * nrhs);
  for (double& v : b) v = uni(rng);
  const std::vector<double> b0 = b;

  steklov::cholesky_in_place(a);
  steklov::forward_solve_rows(a, b.data(), nrhs);
  steklov::backward_solve_rows(a, b.data(), nrhs);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < nrhs; ++k) {
      double r = -b0[i * nrhs + k];
      for (std::size_t j = 0; j < n; ++j) r += a0(i, j) * b[j * nrhs + k];
      CHECK(std::fabs(r) <= 1e-10);
    }
  }
}

TEST_CASE("jacobi eigensolve on known spectra") {
  DenseMatrix a(2, 2);
  a(0, 0) = 2; a(0, 1) = 1;
  a(1, 0) = 1; a(1, 1) = 2;
  steklov::SymmetricEigen e = steklov::jacobi_eigensolve(a);
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));

  DenseMatrix d(3, 3);
  d(0, 0) = 3; d(1, 1) = 1; d(2, 2) = 2;
  steklov::SymmetricEigen ed = steklov::jacobi_eigensolve(d);
  CHECK(ed.values[0] == doctest::Approx(1.0));
  CHECK(ed.values[1] == doctest::Approx(2.0));
  CHECK(ed.values[2] == doctest::Approx(3.0));

  // Residual and orthonormality on a random symmetric matrix.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  DenseMatrix s(8, 8);
  for (double& v : s.data) v = uni(rng);
  s.symmetrize();
  steklov::SymmetricEigen es = steklov::jacobi_eigensolve(s);
  for (std::size_t k = 0; k < 8; ++k) {
    if (k > 0) CHECK(es.values[k - 1] <= es.values[k] + 1e-14);
    double rnorm = 0.0, xnorm = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      double sx = 0.0;
      for (std::size_t j = 0; j < 8; ++j) sx += s(i, j) * es.vectors(j, k);
      const double r = sx - es.values[k] * es.vectors(i, k);
      rnorm += r * r;
      xnorm += es.vectors(i, k) * es.vectors(i, k);
    }
    CHECK(std::sqrt(rnorm) <= 1e-10);
    CHECK(std::sqrt(xnorm) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("generalized eigensolve is B-orthonormal with small residuals") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const std::size_t n = 12;
  DenseMatrix a(n, n);
  for (double& v : a.data) v = uni(rng);
  a.symmetrize();
  DenseMatrix b = random_spd(rng, n);

  steklov::SymmetricEigen e = steklov::generalized_sym_eig(a, b);
  REQUIRE(e.values.size() == n);
  for (std::size_t k = 0; k < n; ++k) {
    double rnorm = 0.0, anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ax = 0.0, bx = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        ax += a(i, j) * e.vectors(j, k);
        bx += b(i, j) * e.vectors(j, k);
      }
      const double r = ax - e.values[k] * bx;
      rnorm += r * r;
      anorm += ax * ax;
    }
    CHECK(std::sqrt(rnorm) <= 1e-10 * (1.0 + std::sqrt(anorm)));
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l <= k; ++l) {
      double g = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double bx = 0.0;
        for (std::size_t j = 0; j < n; ++j) bx += b(i, j) * e.vectors(j, l);
        g += e.vectors(i, k) * bx;
      }
      CHECK(std::fabs(g - (k == l ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("generalized eigensolve with A = B gives the unit spectrum") {
  std::mt19937_64 rng(29);
  DenseMatrix b = random_spd(rng, 9);
  steklov::SymmetricEigen e = steklov::generalized_sym_eig(b, b);
  for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("banded factor matches the dense factor") {
  const std::size_t n = 30, band = 3;
  BandedCholesky bc(n, band);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    bc.add(i, i, 4.0);
    a(i, i) = 4.0;
    for (std::size_t d = 1; d <= band && d <= i; ++d) {
      bc.add(i, i - d, -1.0 / d);
      a(i, i - d) = a(i - d, i) = -1.0 / d;
    }
  }
  bc.factor();

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const std::size_t nrhs = 2;
  std::vector<double> rhs(n * nrhs);
  for (double& v : rhs) v = uni(rng);
  std::vector<double> x = rhs;
  bc.solve_in_place(x.data(), nrhs);

  DenseMatrix ad = a;
  steklov::cholesky_in_place(ad);
  std::vector<double> xd = rhs;
  steklov::forward_solve_rows(ad, xd.data(), nrhs);
  steklov::backward_solve_rows(ad, xd.data(), nrhs);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::fabs(x[i] - xd[i]) <= 1e-11);
  }
}

TEST_CASE("banded storage guards its contract") {
  BandedCholesky bc(10, 2);
  CHECK(raised_code([&] { bc.add(5, 1, 1.0); }) == ErrorCode::OutOfRange);
  CHECK(raised_code([&] { bc.solve_in_place(nullptr, 1); }) ==
        ErrorCode::ValidationError);

  BandedCholesky singular(2, 1);
  singular.add(0, 0, 1.0);
  singular.add(1, 0, 2.0);
  singular.add(1, 1, 1.0);  // second pivot 1 - 4 < 0
  CHECK(raised_code([&] { singular.factor(); }) == ErrorCode::SingularInterior);
}

TEST_CASE("dense transpose and symmetrize") {
  DenseMatrix m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 4; m(1, 1) = 5; m(1, 2) = 6;
  DenseMatrix t = m.transposed();
  CHECK(t.rows == 3);
  CHECK(t.cols == 2);
  CHECK(t(2, 1) == 6.0);

  DenseMatrix s(2, 2);
  s(0, 0) = 1; s(0, 1) = 4;
  s(1, 0) = 2; s(1, 1) = 1;
  s.symmetrize();
  CHECK(s(0, 1) == doctest::Approx(3.0));
  CHECK(s(1, 0) == doctest::Approx(3.0));
}
