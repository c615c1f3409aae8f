#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "framefield/galois.hpp"

namespace framefield {

using cplx = std::complex<double>;

// Shared, immutable handle on the residue field. Everything built over the
// same local field holds the same handle.
using Field = std::shared_ptr<const GaloisField>;

Field make_field(FieldParams params);
Field make_field(std::uint32_t p, std::uint32_t c = 1);

// Throws ParamError unless both handles describe the same field.
void require_same_field(const Field& a, const Field& b);

// A finite Laurent polynomial sum_j digit_j * prime^j over GF(q).
//
// Normalized: the digit at the valuation is nonzero, and the zero element has
// no digits and valuation 0.
class FieldElement {
 public:
  explicit FieldElement(Field field);
  FieldElement(Field field, int valuation, std::vector<GFElem> digits);

  // digit * prime^power.
  static FieldElement monomial(Field field, const GFElem& digit, int power);
  // prime^power.
  static FieldElement prime_power(Field field, int power);
  // Digits given as indices in [0, q), lowest power first starting at `low`.
  static FieldElement from_digit_indices(Field field, int low, const std::vector<std::uint64_t>& digits);

  const Field& field() const { return field_; }
  bool is_zero() const { return digits_.empty(); }
  int valuation() const { return v_; }
  // Highest power carrying a nonzero digit (valuation - 1 for zero).
  int top_power() const { return v_ + static_cast<int>(digits_.size()) - 1; }
  const std::vector<GFElem>& digits() const { return digits_; }

  GFElem digit(int power) const;
  std::uint64_t digit_index(int power) const;

  // |x| = q^{-v}; |0| = 0.
  double abs() const;

  // Multiplication by prime^k.
  FieldElement shifted(int k) const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  void normalize();

  Field field_;
  int v_ = 0;
  std::vector<GFElem> digits_;
};

// The coset representative u(n): base-q digit b_i of n sits at prime^{-(i+1)}.
FieldElement u_map(const Field& field, std::uint64_t n);

// Carry-free index group with u(m) + u(n) = u(m [+] n).
std::uint64_t index_add(const GaloisField& f, std::uint64_t m, std::uint64_t n);
std::uint64_t index_sub(const GaloisField& f, std::uint64_t m, std::uint64_t n);
std::uint64_t index_neg(const GaloisField& f, std::uint64_t n);

// exp(2 pi i k / p), exact for the real roots.
cplx root_of_unity(std::uint32_t p, std::uint32_t k);

// proj0 of the digit at prime^{-1}; chi(x) = root_of_unity(p, chi_phase(x)).
std::uint32_t chi_phase(const FieldElement& x);
cplx chi(const FieldElement& x);

// chi(u(n) * xi), computed through the field product.
cplx chi_n(std::uint64_t n, const FieldElement& xi);

// Same phase as chi_phase(u_map(n) * xi) from the digits of xi directly: only
// the digits of xi at powers 0, 1, ... pair with the digits of n.
std::uint32_t chi_n_phase(const GaloisField& f, std::uint64_t n, const FieldElement& xi);

// q^s with overflow and memory checks (SizeError).
std::uint64_t grid_size(const GaloisField& f, unsigned depth);

// Coset representatives sum_{j<s} d_j prime^j of B^s in D, d_0 fastest.
std::vector<FieldElement> grid(const Field& field, unsigned depth);
FieldElement grid_point(const Field& field, unsigned depth, std::uint64_t index);

}  // namespace framefield
