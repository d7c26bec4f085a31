#pragma once

#include <cstddef>

// Vector kernels behind the dense/banded linear algebra. A scalar reference
// implementation always exists; on x86 an AVX2+FMA variant and on arm64 a
// NEON variant are compiled in and picked at load time. The STEKLOV_SIMD
// environment variable ("scalar", "avx2", "neon", "auto") overrides the pick;
// requesting an unavailable backend falls back to scalar.

namespace steklov::simd {

struct KernelTable {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);  // y += a x
  void (*scal)(double a, double* x, std::size_t n);                   // x *= a
  // plane rotation: (x, y) <- (c x - s y, s x + c y)
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
};

extern const KernelTable kScalarKernels;

// Active table; resolved before main() and stable for the process lifetime.
const KernelTable& kernels();

const char* active_backend();

// Test hook: force a backend by name, "auto" re-resolves. Unknown or
// unavailable names leave the scalar table active and return false.
bool select_backend(const char* name);

inline double dot(const double* x, const double* y, std::size_t n) {
  return kernels().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  kernels().axpy(a, x, y, n);
}
inline void scal(double a, double* x, std::size_t n) {
  kernels().scal(a, x, n);
}
inline void rot(double* x, double* y, double c, double s, std::size_t n) {
  kernels().rot(x, y, c, s, n);
}

}  // namespace steklov::simd
