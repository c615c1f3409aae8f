#include "framefield/kernels.hpp"

#if defined(FRAMEFIELD_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <vector>

#define FF_AVX2 __attribute__((target("avx2,fma")))

namespace framefield::kernels::avx2 {
namespace {

// Two complex numbers per register: (re0, im0, re1, im1).
FF_AVX2 inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

FF_AVX2 inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

FF_AVX2 inline __m256d broadcast1(const cplx& z) {
  return _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&z));
}

// Lane-wise complex product a * b.
FF_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

FF_AVX2 inline cplx hsum2(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

}  // namespace

FF_AVX2 cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  // acc_rr accumulates (ar*br, ai*bi); acc_ri accumulates (ar*bi, ai*br).
  __m256d acc_rr = _mm256_setzero_pd();
  __m256d acc_ri = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a.data() + i);
    const __m256d vb = load2(b.data() + i);
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_ri);
  }
  const cplx rr = hsum2(acc_rr);
  const cplx ri = hsum2(acc_ri);
  double re = rr.real() + rr.imag();
  double im = ri.real() - ri.imag();
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

FF_AVX2 double norm2(std::span<const cplx> a) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= a.size(); i += 2) {
    const __m256d v = load2(a.data() + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  const cplx s = hsum2(acc);
  double r = s.real() + s.imag();
  for (; i < a.size(); ++i) r += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return r;
}

FF_AVX2 void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const __m256d va = broadcast1(alpha);
  std::size_t i = 0;
  for (; i + 2 <= x.size(); i += 2) {
    const __m256d vy = load2(y.data() + i);
    store2(y.data() + i, _mm256_add_pd(vy, cmul(load2(x.data() + i), va)));
  }
  for (; i < x.size(); ++i) y[i] += alpha * x[i];
}

FF_AVX2 void kron_apply(std::span<cplx> data, std::size_t q, std::size_t levels, std::span<const cplx> m) {
  // Column-major copy so that m[r][c], m[r+1][c] are adjacent.
  std::vector<cplx> mt(q * q);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < q; ++c) mt[c * q + r] = m[r * q + c];

  std::vector<cplx> in(2 * q);  // fibre pairs, interleaved per column
  std::vector<cplx> x(q), y(q);
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < levels; ++axis, stride *= q) {
    const std::size_t block = stride * q;
    for (std::size_t base = 0; base < data.size(); base += block) {
      std::size_t j = 0;
      // Two adjacent fibres at once when the axis is not the contiguous one.
      for (; j + 2 <= stride; j += 2) {
        for (std::size_t c = 0; c < q; ++c) store2(&in[2 * c], load2(&data[base + j + c * stride]));
        for (std::size_t r = 0; r < q; ++r) {
          __m256d acc = _mm256_setzero_pd();
          for (std::size_t c = 0; c < q; ++c) acc = _mm256_add_pd(acc, cmul(load2(&in[2 * c]), broadcast1(m[r * q + c])));
          store2(&data[base + j + r * stride], acc);
        }
      }
      // Remaining single fibre: two output rows at once from the transposed matrix.
      for (; j < stride; ++j) {
        for (std::size_t c = 0; c < q; ++c) x[c] = data[base + j + c * stride];
        std::size_t r = 0;
        for (; r + 2 <= q; r += 2) {
          __m256d acc = _mm256_setzero_pd();
          for (std::size_t c = 0; c < q; ++c) acc = _mm256_add_pd(acc, cmul(load2(&mt[c * q + r]), broadcast1(x[c])));
          store2(&y[r], acc);
        }
        for (; r < q; ++r) {
          cplx acc{};
          for (std::size_t c = 0; c < q; ++c) acc += m[r * q + c] * x[c];
          y[r] = acc;
        }
        for (std::size_t rr = 0; rr < q; ++rr) data[base + j + rr * stride] = y[rr];
      }
    }
  }
}

}  // namespace framefield::kernels::avx2

#endif
