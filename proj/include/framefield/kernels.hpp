#pragma once

// Complex double inner loops used by the grid sweeps and the discrete
// transforms. Every kernel has a scalar reference implementation and, on x86,
// an AVX2+FMA variant. The variant is picked once at runtime from CPUID; set
// FRAMEFIELD_SIMD=scalar in the environment to force the reference path.

#include <complex>
#include <cstddef>
#include <span>

namespace framefield::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
// Throws ParamError if the backend is not available on this CPU.
void set_backend(Backend b);

// sum_i conj(a_i) * b_i
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
// sum_i |a_i|^2
double norm2(std::span<const cplx> a);
// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
// Applies the q x q row-major matrix `m` along every base-q axis of `data`
// (length q^levels, axis 0 fastest): data <- (m (x) m (x) ... (x) m) data.
void kron_apply(std::span<cplx> data, std::size_t q, std::size_t levels, std::span<const cplx> m);

namespace scalar {
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void kron_apply(std::span<cplx> data, std::size_t q, std::size_t levels, std::span<const cplx> m);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FRAMEFIELD_HAVE_AVX2_KERNELS 1
namespace avx2 {
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void kron_apply(std::span<cplx> data, std::size_t q, std::size_t levels, std::span<const cplx> m);
}  // namespace avx2
#endif

}  // namespace framefield::kernels
