#include "framefield/mask.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framefield/error.hpp"
#include "framefield/kernels.hpp"
#include "framefield/parallel.hpp"

namespace framefield {
namespace {

unsigned digit_count(std::uint64_t n, std::uint64_t q) {
  unsigned d = 0;
  for (; n > 0; n /= q) ++d;
  return d;
}

void require_power_of_q(std::uint64_t stride, std::uint64_t q) {
  if (stride == 0) throw ParamError("stride must be positive");
  std::uint64_t s = stride;
  while (s % q == 0) s /= q;
  if (s != 1) throw ParamError("stride " + std::to_string(stride) + " is not a power of q = " + std::to_string(q));
}

// Index of xi + prime u(k) in a grid, for k < q: only digit 0 moves.
std::uint64_t shift_index(const GaloisField& f, std::uint64_t g, std::uint64_t k) {
  const std::uint64_t q = f.q();
  const std::uint64_t d0 = g % q;
  return g - d0 + f.digit_add(d0, k);
}

void require_depth(unsigned depth, unsigned needed, const char* what) {
  if (depth < needed)
    throw DepthError(std::string(what) + ": grid depth " + std::to_string(depth) + " does not cover the mask support (need " +
                     std::to_string(needed) + ")");
}

// Masks of a bank tabulated on one grid; values[l][g].
struct BankTables {
  std::vector<std::vector<cplx>> values;
};

BankTables tabulate_masks(const std::vector<const Mask*>& masks, unsigned depth, double scale = 1.0) {
  BankTables t;
  t.values.reserve(masks.size());
  for (const Mask* m : masks) {
    auto v = tabulate(*m, depth);
    if (scale != 1.0)
      for (auto& x : v) x *= scale;
    t.values.push_back(std::move(v));
  }
  return t;
}

std::vector<const Mask*> bank_masks(const FilterBank& b) {
  std::vector<const Mask*> ms;
  for (std::size_t l = 0; l < b.mask_count(); ++l) ms.push_back(&b.mask(l));
  return ms;
}

std::vector<const Mask*> wavelet_masks(const FilterBank& b) {
  std::vector<const Mask*> ms;
  for (const auto& w : b.wavelets()) ms.push_back(&w);
  return ms;
}

// max |G - I| over the Gram matrix of `vecs` (G_ij = <v_i, v_j>).
double gram_identity_deviation(const std::vector<std::vector<cplx>>& vecs) {
  double dev = 0.0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i; j < vecs.size(); ++j) {
      const cplx g = kernels::dotc(vecs[i], vecs[j]);
      dev = std::max(dev, std::abs(g - (i == j ? cplx{1.0} : cplx{})));
    }
  return dev;
}

}  // namespace

// ---------------------------------------------------------------- Mask

Mask::Mask(Field field, std::vector<cplx> coeffs, std::uint64_t stride)
    : field_(std::move(field)), coeffs_(std::move(coeffs)), stride_(stride) {
  if (!field_) throw ParamError("missing field");
  require_power_of_q(stride_, field_->q());
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

Mask Mask::constant(Field field, cplx value, std::uint64_t stride) {
  const double sq = std::sqrt(static_cast<double>(field->q()));
  return Mask(std::move(field), {value * sq}, stride);
}

std::uint64_t Mask::max_index() const { return coeffs_.empty() ? 0 : (coeffs_.size() - 1) * stride_; }

unsigned Mask::required_depth() const { return digit_count(max_index(), field_->q()); }

cplx Mask::coeff_at(std::uint64_t n) const {
  if (n % stride_ != 0) return {};
  const std::uint64_t i = n / stride_;
  return i < coeffs_.size() ? coeffs_[i] : cplx{};
}

Mask Mask::scaled(cplx factor) const {
  std::vector<cplx> c = coeffs_;
  for (auto& x : c) x *= factor;
  return Mask(field_, std::move(c), stride_);
}

Mask Mask::trimmed(double eps) const {
  std::vector<cplx> c = coeffs_;
  for (auto& x : c)
    if (std::abs(x) < eps) x = {};
  return Mask(field_, std::move(c), stride_);
}

bool operator==(const Mask& a, const Mask& b) {
  if (!(a.field_->params() == b.field_->params())) return false;
  if (a.coeffs_.empty() && b.coeffs_.empty()) return true;
  return a.stride_ == b.stride_ && a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------- evaluation

cplx eval_mask(const Mask& m, const FieldElement& xi) {
  require_same_field(m.field(), xi.field());
  const GaloisField& f = *m.field();
  const std::uint32_t p = f.p();
  cplx acc{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.coeffs()[i] == cplx{}) continue;
    const std::uint32_t ph = chi_n_phase(f, i * m.stride(), xi);
    acc += m.coeffs()[i] * root_of_unity(p, (p - ph) % p);
  }
  return acc / std::sqrt(static_cast<double>(f.q()));
}

cplx eval_mask_reference(const Mask& m, const FieldElement& xi) {
  require_same_field(m.field(), xi.field());
  cplx acc{};
  for (std::size_t i = 0; i < m.size(); ++i) acc += m.coeffs()[i] * std::conj(chi_n(i * m.stride(), xi));
  return acc / std::sqrt(static_cast<double>(m.field()->q()));
}

std::vector<cplx> tabulate(const Mask& m, unsigned depth) {
  require_depth(depth, m.required_depth(), "tabulate");
  const GaloisField& f = *m.field();
  const std::uint64_t n = grid_size(f, depth);
  const std::uint64_t q = f.q();
  const std::uint32_t p = f.p();
  std::vector<cplx> data(n);
  for (std::size_t i = 0; i < m.size(); ++i) data[i * m.stride()] = m.coeffs()[i];
  // W[d][b] = conj(chi(pairing of digit b with digit d)).
  std::vector<cplx> w(q * q);
  for (std::uint64_t d = 0; d < q; ++d)
    for (std::uint64_t b = 0; b < q; ++b) w[d * q + b] = root_of_unity(p, (p - f.digit_pair(b, d)) % p);
  kernels::kron_apply(data, q, depth, w);
  const double s = 1.0 / std::sqrt(static_cast<double>(q));
  for (auto& x : data) x *= s;
  return data;
}

// ---------------------------------------------------------------- algebra

Mask mask_add(const Mask& a, const Mask& b) {
  require_same_field(a.field(), b.field());
  if (a.empty()) return b;
  if (b.empty()) return a;
  const std::uint64_t s = std::min(a.stride(), b.stride());
  const std::uint64_t top = std::max(a.max_index(), b.max_index()) / s;
  std::vector<cplx> c(top + 1);
  for (std::size_t i = 0; i < a.size(); ++i) c[i * a.stride() / s] += a.coeffs()[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i * b.stride() / s] += b.coeffs()[i];
  return Mask(a.field(), std::move(c), s);
}

Mask mask_mul(const Mask& a, const Mask& b) {
  require_same_field(a.field(), b.field());
  const GaloisField& f = *a.field();
  if (a.empty() || b.empty()) return Mask(a.field(), {}, std::min(a.stride(), b.stride()));
  const std::uint64_t s = std::min(a.stride(), b.stride());
  // conj chi_j conj chi_k = conj chi_{j [+] k}; one q^{-1/2} is absorbed.
  const double norm = 1.0 / std::sqrt(static_cast<double>(f.q()));
  std::vector<cplx> c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeffs()[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b.coeffs()[j] == cplx{}) continue;
      const std::uint64_t n = index_add(f, i * a.stride(), j * b.stride()) / s;
      if (n >= c.size()) c.resize(n + 1);
      c[n] += a.coeffs()[i] * b.coeffs()[j] * norm;
    }
  }
  return Mask(a.field(), std::move(c), s);
}

Mask mask_adjoint(const Mask& a) {
  const GaloisField& f = *a.field();
  std::vector<cplx> c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t n = index_neg(f, i * a.stride()) / a.stride();
    if (n >= c.size()) c.resize(n + 1);
    c[n] = std::conj(a.coeffs()[i]);
  }
  return Mask(a.field(), std::move(c), a.stride());
}

std::vector<Mask> polyphase_split(const Mask& m) {
  const std::uint64_t q = m.field()->q();
  std::vector<std::vector<cplx>> comps(q);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::uint64_t n = i * m.stride();
    auto& c = comps[n % q];
    const std::uint64_t k = n / q;
    if (k >= c.size()) c.resize(k + 1);
    c[k] = m.coeffs()[i];
  }
  std::vector<Mask> out;
  out.reserve(q);
  for (auto& c : comps) out.emplace_back(m.field(), std::move(c), 1);
  return out;
}

cplx polyphase_eval(const Mask& component, const FieldElement& zeta) {
  return eval_mask(component, zeta) * std::sqrt(static_cast<double>(component.field()->q()));
}

// ---------------------------------------------------------------- FilterBank

FilterBank::FilterBank(Mask m0, std::vector<Mask> wavelets) : m0_(std::move(m0)), wavelets_(std::move(wavelets)) {
  for (const auto& w : wavelets_) require_same_field(m0_.field(), w.field());
}

unsigned FilterBank::required_depth() const {
  unsigned d = m0_.required_depth();
  for (const auto& w : wavelets_) d = std::max(d, w.required_depth());
  return d;
}

FilterBank FilterBank::scaled(cplx factor) const {
  std::vector<Mask> ws;
  for (const auto& w : wavelets_) ws.push_back(w.scaled(factor));
  return FilterBank(m0_.scaled(factor), std::move(ws));
}

cplx FilterBank::normalization() const { return eval_mask(m0_, FieldElement(field())); }

void FilterBank::require_normalized(double tol) const {
  const cplx v = normalization();
  if (std::abs(v - 1.0) > tol)
    throw ParamError("scaling mask is not normalized: m0(0) = " + std::to_string(v.real()) + (v.imag() < 0 ? "-" : "+") +
                     std::to_string(std::abs(v.imag())) + "i");
}

// ---------------------------------------------------------------- matrices

MatrixSample modulation_matrix(const FilterBank& bank, const FieldElement& xi) {
  const Field& field = bank.field();
  const std::uint64_t q = field->q();
  MatrixSample s{xi, bank.mask_count(), q, std::vector<cplx>(bank.mask_count() * q)};
  for (std::uint64_t k = 0; k < q; ++k) {
    const FieldElement pt = xi + u_map(field, k).shifted(1);
    for (std::size_t l = 0; l < bank.mask_count(); ++l) s.entries[l * q + k] = eval_mask(bank.mask(l), pt);
  }
  return s;
}

MatrixSample polyphase_matrix(const FilterBank& bank, const FieldElement& xi) {
  const std::uint64_t q = bank.field()->q();
  const std::size_t cols = bank.mask_count();
  MatrixSample s{xi, q, cols, std::vector<cplx>(q * cols)};
  const FieldElement zeta = xi.shifted(-1);
  for (std::size_t l = 0; l < cols; ++l) {
    const auto comps = polyphase_split(bank.mask(l));
    for (std::uint64_t r = 0; r < q; ++r) s.entries[r * cols + l] = polyphase_eval(comps[r], zeta);
  }
  return s;
}

// ---------------------------------------------------------------- checks

CheckReport check_uep(const FilterBank& bank, unsigned depth, double tol) {
  require_depth(depth, bank.required_depth(), "check_uep");
  const Field& field = bank.field();
  const GaloisField& f = *field;
  const std::uint64_t q = f.q();
  const std::uint64_t n = grid_size(f, depth);
  const unsigned tdepth = std::max(depth, 1u);
  const BankTables t = tabulate_masks(bank_masks(bank), tdepth);
  const std::size_t rows = bank.mask_count();

  const SweepMax worst = sweep_max(n, [&](std::uint64_t g) {
    std::vector<std::vector<cplx>> cols(q, std::vector<cplx>(rows));
    for (std::uint64_t k = 0; k < q; ++k) {
      const std::uint64_t gk = shift_index(f, g, k);
      for (std::size_t l = 0; l < rows; ++l) cols[k][l] = t.values[l][gk];
    }
    return gram_identity_deviation(cols);
  });
  return CheckReport("uep", depth, worst.value, tol, grid_point(field, depth, worst.index));
}

CheckReport check_subqmf(const Mask& m0, unsigned depth, double tol) {
  require_depth(depth, m0.required_depth(), "check_subqmf");
  const Field& field = m0.field();
  const GaloisField& f = *field;
  const std::uint64_t n = grid_size(f, depth);
  const auto t = tabulate(m0, std::max(depth, 1u));

  std::vector<double> sums(n);
  parallel_for(n, [&](std::uint64_t g) {
    double s = 0.0;
    for (std::uint64_t k = 0; k < f.q(); ++k) s += std::norm(t[shift_index(f, g, k)]);
    sums[g] = s;
  });
  const SweepMax worst = sweep_max(n, [&](std::uint64_t g) { return std::max(0.0, sums[g] - 1.0); });
  CheckReport r("subqmf", depth, worst.value, tol, grid_point(field, depth, worst.index));
  r.details["max_sum"] = *std::max_element(sums.begin(), sums.end());
  return r;
}

CheckReport check_polyphase_unitary(const FilterBank& bank, unsigned depth, double tol) {
  require_depth(depth, bank.required_depth(), "check_polyphase_unitary");
  const Field& field = bank.field();
  const GaloisField& f = *field;
  const std::uint64_t q = f.q();
  const std::uint64_t n = grid_size(f, depth);
  const unsigned tdepth = std::max(depth, 1u);
  const std::size_t cols = bank.mask_count();

  // comp[l][r] tabulated as f_r^l, i.e. sqrt(q) times the component symbol.
  std::vector<std::vector<std::vector<cplx>>> comp(cols);
  const double sq = std::sqrt(static_cast<double>(q));
  for (std::size_t l = 0; l < cols; ++l) {
    const auto parts = polyphase_split(bank.mask(l));
    std::vector<const Mask*> ptrs;
    for (const auto& m : parts) ptrs.push_back(&m);
    comp[l] = tabulate_masks(ptrs, tdepth, sq).values;
  }

  const SweepMax worst = sweep_max(n, [&](std::uint64_t g) {
    // Gamma at prime^{-1} xi: drop digit 0.
    const std::uint64_t z = g / q;
    // Rows of Gamma conjugated so that <row_r, row_r'> = (Gamma Gamma*)_{r r'}.
    std::vector<std::vector<cplx>> rows(q, std::vector<cplx>(cols));
    for (std::uint64_t r = 0; r < q; ++r)
      for (std::size_t l = 0; l < cols; ++l) rows[r][l] = std::conj(comp[l][r][z]);
    return gram_identity_deviation(rows);
  });
  return CheckReport("polyphase", depth, worst.value, tol, grid_point(field, depth, worst.index));
}

CheckReport check_mixed_orthogonality(const FilterBank& a, const FilterBank& b, unsigned depth, double tol) {
  require_same_field(a.field(), b.field());
  if (a.wavelet_count() != b.wavelet_count())
    throw ParamError("mixed orthogonality needs equal wavelet counts (" + std::to_string(a.wavelet_count()) + " vs " +
                     std::to_string(b.wavelet_count()) + ")");
  require_depth(depth, std::max(a.required_depth(), b.required_depth()), "check_mixed_orthogonality");
  const Field& field = a.field();
  const GaloisField& f = *field;
  const std::uint64_t q = f.q();
  const std::uint64_t n = grid_size(f, depth);
  const unsigned tdepth = std::max(depth, 1u);
  const BankTables ta = tabulate_masks(wavelet_masks(a), tdepth);
  const BankTables tb = tabulate_masks(wavelet_masks(b), tdepth);
  const std::size_t L = a.wavelet_count();

  const SweepMax worst = sweep_max(n, [&](std::uint64_t g) {
    std::vector<cplx> a0(L), a1(L), b0(L), b1(L);
    for (std::size_t l = 0; l < L; ++l) {
      a0[l] = ta.values[l][g];
      b0[l] = tb.values[l][g];
    }
    double dev = 0.0;
    for (std::uint64_t k = 0; k < q; ++k) {
      const std::uint64_t gk = shift_index(f, g, k);
      for (std::size_t l = 0; l < L; ++l) {
        a1[l] = ta.values[l][gk];
        b1[l] = tb.values[l][gk];
      }
      dev = std::max({dev, std::abs(kernels::dotc(a0, b0)), std::abs(kernels::dotc(a0, b1)), std::abs(kernels::dotc(a1, b0)),
                      std::abs(kernels::dotc(a1, b1))});
    }
    return dev;
  });
  return CheckReport("mixed", depth, worst.value, tol, grid_point(field, depth, worst.index));
}

}  // namespace framefield
