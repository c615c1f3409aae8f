#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "framefield/localfield.hpp"

namespace framefield {

// A finitely supported symbol
//
//   m(xi) = q^{-1/2} sum_k h_k conj(chi_{k*stride}(xi)).
//
// `stride` is a power of q. Stride 1 is an ordinary refinement or wavelet
// mask; stride q^j is a symbol in the scaled variable prime^{-j} xi. Trailing
// zero coefficients are dropped on construction.
class Mask {
 public:
  explicit Mask(Field field, std::vector<cplx> coeffs = {}, std::uint64_t stride = 1);

  // The symbol that evaluates to `value` everywhere.
  static Mask constant(Field field, cplx value, std::uint64_t stride = 1);

  const Field& field() const { return field_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::uint64_t stride() const { return stride_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  // Largest absolute index k*stride with a stored coefficient (0 if empty).
  std::uint64_t max_index() const;
  // Smallest s with q^s > max_index(): the grid depth on which the symbol is
  // constant on cosets of B^s.
  unsigned required_depth() const;
  // Coefficient at absolute index n (zero off the stride lattice).
  cplx coeff_at(std::uint64_t n) const;

  Mask scaled(cplx factor) const;
  // Zeroes coefficients with |h| < eps and drops the trailing ones.
  Mask trimmed(double eps) const;

  friend bool operator==(const Mask& a, const Mask& b);

 private:
  Field field_;
  std::vector<cplx> coeffs_;
  std::uint64_t stride_;
};

// Pointwise evaluation from the digits of xi (fast path).
cplx eval_mask(const Mask& m, const FieldElement& xi);
// Evaluation through chi_n, i.e. the field product u(k) * xi and chi.
cplx eval_mask_reference(const Mask& m, const FieldElement& xi);

// Values on grid(depth), in grid order, via the separable character transform.
// Throws DepthError if depth < m.required_depth().
std::vector<cplx> tabulate(const Mask& m, unsigned depth);

Mask mask_add(const Mask& a, const Mask& b);
// Product symbol: eval(mask_mul(a, b), xi) == eval(a, xi) * eval(b, xi).
// Coefficients combine under the carry-free index group.
Mask mask_mul(const Mask& a, const Mask& b);
// eval(mask_adjoint(a), xi) == conj(eval(a, xi)).
Mask mask_adjoint(const Mask& a);

// Components r = 0..q-1 collect the coefficients at n = q k + r, reindexed by
// k, so that m(xi) = q^{-1/2} sum_r conj(chi_r(xi)) f_r(prime^{-1} xi).
std::vector<Mask> polyphase_split(const Mask& m);
// f_r(zeta) = sum_k h_{qk+r} conj(chi_k(zeta)), without the q^{-1/2} factor.
cplx polyphase_eval(const Mask& component, const FieldElement& zeta);

// A scaling mask m0 plus wavelet masks m_1..m_L over one field.
class FilterBank {
 public:
  FilterBank(Mask m0, std::vector<Mask> wavelets);

  const Field& field() const { return m0_.field(); }
  const Mask& m0() const { return m0_; }
  const std::vector<Mask>& wavelets() const { return wavelets_; }
  std::size_t wavelet_count() const { return wavelets_.size(); }
  // Index 0 is m0, 1..L are the wavelets.
  std::size_t mask_count() const { return wavelets_.size() + 1; }
  const Mask& mask(std::size_t ell) const { return ell == 0 ? m0_ : wavelets_[ell - 1]; }

  unsigned required_depth() const;
  FilterBank scaled(cplx factor) const;

  // m0(0); must be 1 for a refinable function with phi^(0) = 1.
  cplx normalization() const;
  // Throws ParamError if |m0(0) - 1| > tol.
  void require_normalized(double tol = 1e-12) const;

 private:
  Mask m0_;
  std::vector<Mask> wavelets_;
};

// Dense complex matrix sampled at one point of the field.
struct MatrixSample {
  FieldElement point;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> entries;  // row-major

  cplx at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

struct CheckReport {
  std::string condition;
  unsigned grid_depth = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  FieldElement worst_point;
  std::map<std::string, double> details;

  CheckReport(std::string condition, unsigned depth, double deviation, double tol, FieldElement worst)
      : condition(std::move(condition)),
        grid_depth(depth),
        max_deviation(deviation),
        tolerance(tol),
        pass(deviation <= tol),
        worst_point(std::move(worst)) {}
};

// (L+1) x q, entry (l, k) = m_l(xi + prime u(k)).
MatrixSample modulation_matrix(const FilterBank& bank, const FieldElement& xi);
// q x (L+1), entry (r, l) = f_r^l(prime^{-1} xi).
MatrixSample polyphase_matrix(const FilterBank& bank, const FieldElement& xi);

// max over grid(depth) of ||H* H - I_q||_max.
CheckReport check_uep(const FilterBank& bank, unsigned depth, double tol);
// max(0, sum_k |m0(xi + prime u(k))|^2 - 1) at the worst grid point.
CheckReport check_subqmf(const Mask& m0, unsigned depth, double tol);
// max over grid(depth) of ||Gamma Gamma* - I_q||_max.
CheckReport check_polyphase_unitary(const FilterBank& bank, unsigned depth, double tol);
// max over grid(depth) and k < q of ||M0(xi)* M0~(xi)||_max, where M0 holds
// the wavelet values at xi and xi + prime u(k).
CheckReport check_mixed_orthogonality(const FilterBank& a, const FilterBank& b, unsigned depth, double tol);

}  // namespace framefield
