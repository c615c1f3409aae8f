#include <doctest.h>

#include <random>
#include <vector>

#include "framefield/kernels.hpp"

using namespace framefield::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Dense (m (x) ... (x) m) with axis 0 fastest.
std::vector<cplx> kron_naive(const std::vector<cplx>& x, std::size_t q, std::size_t levels, const std::vector<cplx>& m) {
  const std::size_t n = x.size();
  std::vector<cplx> y(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx w = 1.0;
      std::size_t a = i, b = j;
      for (std::size_t l = 0; l < levels; ++l, a /= q, b /= q) w *= m[(a % q) * q + (b % q)];
      y[i] += w * x[j];
    }
  return y;
}

}  // namespace

TEST_CASE("scalar kernels against direct formulas") {
  std::mt19937_64 rng(1);
  const auto a = random_vec(9, rng), b = random_vec(9, rng);
  cplx dot{};
  double nrm = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += std::conj(a[i]) * b[i];
    nrm += std::norm(a[i]);
  }
  CHECK(std::abs(scalar::dotc(a, b) - dot) < 1e-13);
  CHECK(scalar::norm2(a) == doctest::Approx(nrm));
  auto y = b;
  scalar::axpy({0.5, -2.0}, a, y);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(y[i] - (b[i] + cplx{0.5, -2.0} * a[i])) < 1e-14);
}

TEST_CASE("kron_apply matches the dense Kronecker product") {
  std::mt19937_64 rng(2);
  for (std::size_t q : {2u, 3u, 4u, 5u})
    for (std::size_t levels : {1u, 2u, 3u}) {
      std::size_t n = 1;
      for (std::size_t l = 0; l < levels; ++l) n *= q;
      const auto m = random_vec(q * q, rng);
      const auto x = random_vec(n, rng);
      auto y = x;
      scalar::kron_apply(y, q, levels, m);
      CHECK(max_diff(y, kron_naive(x, q, levels, m)) < 1e-11);
    }
}

#if defined(FRAMEFIELD_HAVE_AVX2_KERNELS)
TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!backend_available(Backend::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; skipping");
    return;
  }
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n < 40; ++n) {
    const auto a = random_vec(n, rng), b = random_vec(n, rng);
    CHECK(std::abs(avx2::dotc(a, b) - scalar::dotc(a, b)) < 1e-12);
    CHECK(std::abs(avx2::norm2(a) - scalar::norm2(a)) < 1e-12);
    auto y1 = b, y2 = b;
    avx2::axpy({1.5, 0.25}, a, y1);
    scalar::axpy({1.5, 0.25}, a, y2);
    CHECK(max_diff(y1, y2) < 1e-14);
  }
  for (std::size_t q : {2u, 3u, 4u, 5u, 7u})
    for (std::size_t levels : {0u, 1u, 2u, 3u, 4u}) {
      std::size_t n = 1;
      for (std::size_t l = 0; l < levels; ++l) n *= q;
      const auto m = random_vec(q * q, rng);
      auto y1 = random_vec(n, rng);
      auto y2 = y1;
      avx2::kron_apply(y1, q, levels, m);
      scalar::kron_apply(y2, q, levels, m);
      CHECK(max_diff(y1, y2) < 1e-11);
    }
}
#endif

TEST_CASE("backend selection") {
  CHECK(backend_available(Backend::Scalar));
  const Backend before = active_backend();
  set_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  CHECK(std::string(backend_name(Backend::Scalar)) == "scalar");
  std::mt19937_64 rng(4);
  const auto a = random_vec(17, rng);
  CHECK(dotc(a, a).real() == doctest::Approx(norm2(a)));
  if (backend_available(before)) set_backend(before);
}
