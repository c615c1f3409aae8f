#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "framefield/error.hpp"
#include "framefield/mask.hpp"

namespace framefield {

// A construction whose certification check failed. Carries the failing report.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, CheckReport report) : Error(what), report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

// Square matrix of stride-q symbols (functions of prime^{-1} xi) that is
// unitary at every point. Entries are therefore invariant under the shifts
// xi -> xi + prime u(k), k < q.
class Paraunitary {
 public:
  // Row-major entries. Validates stride and unitarity on the covering grid;
  // throws CertificationError if A* A deviates from I by more than tol.
  Paraunitary(Field field, std::size_t size, std::vector<Mask> entries, double tol = 1e-10);

  const Field& field() const { return field_; }
  std::size_t size() const { return size_; }
  const Mask& entry(std::size_t row, std::size_t col) const { return entries_[row * size_ + col]; }
  const std::vector<Mask>& entries() const { return entries_; }

  unsigned required_depth() const;
  MatrixSample evaluate(const FieldElement& xi) const;
  // max over grid(depth) of ||A* A - I||_max.
  double unitarity_deviation(unsigned depth) const;
  Paraunitary adjoint() const;

 private:
  Field field_;
  std::size_t size_;
  std::vector<Mask> entries_;
};

// Scaling mask h_k = q^{-1/2} for k < q and wavelets d^j_k = q^{-1/2} conj chi(prime u(j) u(k)).
FilterBank haar_bank(const Field& field);

// Gram-Schmidt of a seeded complex Gaussian matrix; constant entries.
Paraunitary constant_paraunitary(const Field& field, std::size_t size, std::uint64_t seed);
// Identity with entry (i, i) replaced by conj chi at scaled index `delay`.
Paraunitary delay_block(const Field& field, std::size_t size, std::size_t position, std::uint64_t delay);
// Matrix product with entry-wise symbol products.
Paraunitary compose(const Paraunitary& a, const Paraunitary& b);
// U_0 D_1 U_1 ... D_delays U_delays with seeded constant factors and delays
// by scaled index 1..q^2-1 at seeded positions.
Paraunitary random_paraunitary(const Field& field, std::size_t size, std::uint64_t seed, unsigned delays);

// A tight bank with `wavelets` >= q-1 wavelet masks: its polyphase matrix is
// a q-row slice of a seeded paraunitary product, arranged so that m0(0) = 1.
FilterBank random_tight_bank(const Field& field, std::size_t wavelets, std::uint64_t seed, unsigned delays);

struct FramePair {
  FilterBank primal;
  FilterBank dual;
};

// G_k = sum_{l<=L} a_{k,l} m_l and G~_k = sum_{l<=L} a_{k,L+l} m~_l for
// k = 1..2L, with A of size 2L. Scaling masks pass through unchanged. The
// inputs must pass check_uep and the outputs are certified (UEP for both,
// mixed orthogonality for the pair) before returning.
FramePair derive_pair(std::span<const Mask> primal_wavelets, std::span<const Mask> dual_wavelets, const Mask& m0,
                      const Mask& m0_dual, const Paraunitary& a, double tol = 1e-10);

// Family r = 1..L has wavelets eta^r_{n,l} = a_{l,r} m_n (n-major), L = size
// of A. Every family is certified tight and every pair of families mixed
// orthogonal.
std::vector<FilterBank> orthogonal_family(const FilterBank& bank, const Paraunitary& a, double tol = 1e-10);

// Depth used for construction certificates: covers every mask, at least 1.
unsigned certification_depth(std::span<const FilterBank> banks);

}  // namespace framefield
