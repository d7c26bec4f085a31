#pragma once

#include <cstddef>
#include <vector>

namespace steklov {

// Symmetric positive definite matrix in lower banded storage. Entry (i, j)
// with i - band <= j <= i lives at data[i*(band+1) + band - (i - j)], so each
// row's in-band slice is contiguous and the factor loops reduce to dot/axpy
// on overlapping slices. The ring-major vertex numbering of the polar meshes
// keeps band at roughly n_rays + 1, which is what makes the direct interior
// solve cheap.
class BandedCholesky {
 public:
  BandedCholesky(std::size_t n, std::size_t band);

  std::size_t size() const { return n_; }
  std::size_t band() const { return band_; }

  // Accumulate into A before factor(); j <= i and i - j <= band required.
  void add(std::size_t i, std::size_t j, double value);

  // In-place L L^T; throws SingularInterior on a nonpositive pivot.
  void factor();

  // Solve A X = B for row-major B (n x nrhs), in place. factor() first.
  void solve_in_place(double* b, std::size_t nrhs) const;

 private:
  double& at(std::size_t i, std::size_t j) {
    return data_[i * (band_ + 1) + band_ - (i - j)];
  }
  double at(std::size_t i, std::size_t j) const {
    return data_[i * (band_ + 1) + band_ - (i - j)];
  }

  std::size_t n_;
  std::size_t band_;
  bool factored_ = false;
  std::vector<double> data_;
};

}  // namespace steklov
