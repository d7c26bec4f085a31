#include <cstdlib>
#include <cstring>

#include "steklov/simd/kernels.hpp"

namespace steklov::simd {

const KernelTable* avx2_kernel_table();
const KernelTable* neon_kernel_table();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* resolve(const char* request) {
  const bool want_auto = request == nullptr || std::strcmp(request, "auto") == 0;
  if (!want_auto && std::strcmp(request, "scalar") == 0) return &kScalarKernels;
  if (want_auto || std::strcmp(request, "avx2") == 0) {
    if (const KernelTable* t = avx2_kernel_table(); t && cpu_has_avx2()) return t;
    if (!want_auto) return nullptr;
  }
  if (want_auto || std::strcmp(request, "neon") == 0) {
    if (const KernelTable* t = neon_kernel_table()) return t;
    if (!want_auto) return nullptr;
  }
  return want_auto ? &kScalarKernels : nullptr;
}

const KernelTable* g_active = resolve(std::getenv("STEKLOV_SIMD"));

}  // namespace

const KernelTable& kernels() {
  return g_active ? *g_active : kScalarKernels;
}

const char* active_backend() { return kernels().name; }

bool select_backend(const char* name) {
  const KernelTable* t = resolve(name);
  g_active = t ? t : &kScalarKernels;
  return t != nullptr;
}

}  // namespace steklov::simd
