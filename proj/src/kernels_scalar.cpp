#include <vector>

#include "framefield/kernels.hpp"

namespace framefield::kernels::scalar {

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm2(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& x : a) s += x.real() * x.real() + x.imag() * x.imag();
  return s;
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void kron_apply(std::span<cplx> data, std::size_t q, std::size_t levels, std::span<const cplx> m) {
  std::vector<cplx> in(q), out(q);
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < levels; ++axis, stride *= q) {
    const std::size_t block = stride * q;
    for (std::size_t base = 0; base < data.size(); base += block) {
      for (std::size_t j = 0; j < stride; ++j) {
        for (std::size_t c = 0; c < q; ++c) in[c] = data[base + j + c * stride];
        for (std::size_t r = 0; r < q; ++r) {
          cplx acc{};
          for (std::size_t c = 0; c < q; ++c) acc += m[r * q + c] * in[c];
          out[r] = acc;
        }
        for (std::size_t r = 0; r < q; ++r) data[base + j + r * stride] = out[r];
      }
    }
  }
}

}  // namespace framefield::kernels::scalar
