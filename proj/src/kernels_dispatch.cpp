#include <atomic>
#include <cstdlib>
#include <cstring>

#include "framefield/error.hpp"
#include "framefield/kernels.hpp"

namespace framefield::kernels {
namespace {

Backend detect() {
  if (const char* env = std::getenv("FRAMEFIELD_SIMD"); env && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
#if defined(FRAMEFIELD_HAVE_AVX2_KERNELS)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw ParamError(std::string("backend not available: ") + backend_name(b));
  current().store(b, std::memory_order_relaxed);
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
#if defined(FRAMEFIELD_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) return avx2::dotc(a, b);
#endif
  return scalar::dotc(a, b);
}

double norm2(std::span<const cplx> a) {
#if defined(FRAMEFIELD_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) return avx2::norm2(a);
#endif
  return scalar::norm2(a);
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
#if defined(FRAMEFIELD_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) return avx2::axpy(alpha, x, y);
#endif
  scalar::axpy(alpha, x, y);
}

void kron_apply(std::span<cplx> data, std::size_t q, std::size_t levels, std::span<const cplx> m) {
#if defined(FRAMEFIELD_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::Avx2) return avx2::kron_apply(data, q, levels, m);
#endif
  scalar::kron_apply(data, q, levels, m);
}

}  // namespace framefield::kernels
