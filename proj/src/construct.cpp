#include "framefield/construct.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "framefield/kernels.hpp"
#include "framefield/parallel.hpp"

namespace framefield {
namespace {

constexpr double kTrim = 1e-14;
constexpr int kGramSchmidtRetries = 8;

std::uint64_t splitmix(std::uint64_t x) { return derive_seed(x, 0); }

using Dense = std::vector<cplx>;  // row-major square matrix

// Modified Gram-Schmidt on the columns of a seeded Gaussian matrix. When
// `first` is non-empty it is used as column 0 before normalization.
bool gram_schmidt(std::size_t n, std::uint64_t seed, const Dense& first, Dense& out) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  out.assign(n * n, {});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out[i * n + j] = {g(rng), g(rng)};
  if (!first.empty())
    for (std::size_t i = 0; i < n; ++i) out[i * n] = first[i];
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj{};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(out[i * n + k]) * out[i * n + j];
      for (std::size_t i = 0; i < n; ++i) out[i * n + j] -= proj * out[i * n + k];
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(out[i * n + j]);
    norm = std::sqrt(norm);
    if (norm < 1e-8) return false;
    for (std::size_t i = 0; i < n; ++i) out[i * n + j] /= norm;
  }
  return true;
}

Dense random_unitary(std::size_t n, std::uint64_t seed, const Dense& first = {}) {
  Dense u;
  for (int attempt = 0; attempt < kGramSchmidtRetries; ++attempt) {
    if (gram_schmidt(n, splitmix(seed + static_cast<std::uint64_t>(attempt)), first, u)) return u;
  }
  throw ParamError("Gram-Schmidt failed on every reseed");
}

Paraunitary from_dense(const Field& field, std::size_t n, const Dense& u) {
  std::vector<Mask> entries;
  entries.reserve(n * n);
  for (const auto& x : u) entries.push_back(Mask::constant(field, x, field->q()));
  return Paraunitary(field, n, std::move(entries));
}

double gram_deviation(const std::vector<std::vector<cplx>>& vecs) {
  double dev = 0.0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i; j < vecs.size(); ++j) {
      const cplx g = kernels::dotc(vecs[i], vecs[j]);
      dev = std::max(dev, std::abs(g - (i == j ? cplx{1.0} : cplx{})));
    }
  return dev;
}

Mask weighted_sum(std::span<const Mask> symbols, std::span<const Mask> masks) {
  Mask acc(masks.front().field());
  for (std::size_t l = 0; l < masks.size(); ++l) acc = mask_add(acc, mask_mul(symbols[l], masks[l]));
  return acc.trimmed(kTrim);
}

void certify(const CheckReport& r, const std::string& what) {
  if (!r.pass) throw CertificationError(what + " failed: deviation " + std::to_string(r.max_deviation), r);
}

}  // namespace

// ---------------------------------------------------------------- Paraunitary

Paraunitary::Paraunitary(Field field, std::size_t size, std::vector<Mask> entries, double tol)
    : field_(std::move(field)), size_(size), entries_(std::move(entries)) {
  if (size_ == 0) throw ParamError("paraunitary matrix must have size >= 1");
  if (entries_.size() != size_ * size_) throw ParamError("paraunitary entry count does not match size");
  const std::uint64_t q = field_->q();
  for (auto& e : entries_) {
    require_same_field(field_, e.field());
    if (e.empty()) e = Mask(field_, {}, q);
    if (e.stride() % q != 0) throw ParamError("paraunitary entries must be stride-q symbols");
  }
  const unsigned depth = std::max(required_depth(), 1u);
  const double dev = unitarity_deviation(depth);
  if (!(dev <= tol))
    throw CertificationError("matrix is not paraunitary", CheckReport("paraunitary", depth, dev, tol, FieldElement(field_)));
}

unsigned Paraunitary::required_depth() const {
  unsigned d = 0;
  for (const auto& e : entries_) d = std::max(d, e.required_depth());
  return d;
}

MatrixSample Paraunitary::evaluate(const FieldElement& xi) const {
  MatrixSample s{xi, size_, size_, std::vector<cplx>(size_ * size_)};
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries[i] = eval_mask(entries_[i], xi);
  return s;
}

double Paraunitary::unitarity_deviation(unsigned depth) const {
  const unsigned tdepth = std::max(depth, 1u);
  const std::uint64_t n = grid_size(*field_, depth);
  std::vector<std::vector<cplx>> tables;
  tables.reserve(entries_.size());
  for (const auto& e : entries_) tables.push_back(tabulate(e, tdepth));
  return sweep_max(n, [&](std::uint64_t g) {
           std::vector<std::vector<cplx>> cols(size_, std::vector<cplx>(size_));
           for (std::size_t i = 0; i < size_; ++i)
             for (std::size_t j = 0; j < size_; ++j) cols[j][i] = tables[i * size_ + j][g];
           return gram_deviation(cols);
         })
      .value;
}

Paraunitary Paraunitary::adjoint() const {
  std::vector<Mask> e;
  e.reserve(entries_.size());
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) e.push_back(mask_adjoint(entry(j, i)));
  return Paraunitary(field_, size_, std::move(e));
}

// ---------------------------------------------------------------- builders

FilterBank haar_bank(const Field& field) {
  const std::uint64_t q = field->q();
  const double s = 1.0 / std::sqrt(static_cast<double>(q));
  Mask m0(field, std::vector<cplx>(q, cplx{s}));
  std::vector<Mask> ws;
  for (std::uint64_t j = 1; j < q; ++j) {
    std::vector<cplx> d(q);
    const FieldElement puj = u_map(field, j).shifted(1);
    for (std::uint64_t k = 0; k < q; ++k) d[k] = s * std::conj(chi(puj * u_map(field, k)));
    ws.emplace_back(field, std::move(d));
  }
  return FilterBank(std::move(m0), std::move(ws));
}

Paraunitary constant_paraunitary(const Field& field, std::size_t size, std::uint64_t seed) {
  return from_dense(field, size, random_unitary(size, seed));
}

Paraunitary delay_block(const Field& field, std::size_t size, std::size_t position, std::uint64_t delay) {
  if (position >= size) throw ParamError("delay position outside the matrix");
  const std::uint64_t q = field->q();
  const double sq = std::sqrt(static_cast<double>(q));
  std::vector<Mask> e;
  e.reserve(size * size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      if (i != j) {
        e.emplace_back(field, std::vector<cplx>{}, q);
      } else if (i == position) {
        std::vector<cplx> c(delay + 1);
        c[delay] = sq;
        e.emplace_back(field, std::move(c), q);
      } else {
        e.push_back(Mask::constant(field, 1.0, q));
      }
    }
  return Paraunitary(field, size, std::move(e));
}

Paraunitary compose(const Paraunitary& a, const Paraunitary& b) {
  require_same_field(a.field(), b.field());
  if (a.size() != b.size()) throw ParamError("compose: size mismatch");
  const std::size_t n = a.size();
  std::vector<Mask> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mask acc(a.field(), {}, a.field()->q());
      for (std::size_t k = 0; k < n; ++k) acc = mask_add(acc, mask_mul(a.entry(i, k), b.entry(k, j)));
      e.push_back(acc.trimmed(kTrim));
    }
  return Paraunitary(a.field(), n, std::move(e));
}

Paraunitary random_paraunitary(const Field& field, std::size_t size, std::uint64_t seed, unsigned delays) {
  std::uint64_t state = splitmix(seed);
  Paraunitary acc = constant_paraunitary(field, size, state);
  const std::uint64_t q = field->q();
  for (unsigned i = 0; i < delays; ++i) {
    state = splitmix(state);
    const std::size_t pos = state % size;
    const std::uint64_t d = 1 + (state >> 32) % (q * q - 1);
    acc = compose(acc, delay_block(field, size, pos, d));
    state = splitmix(state);
    acc = compose(acc, constant_paraunitary(field, size, state));
  }
  return acc;
}

FilterBank random_tight_bank(const Field& field, std::size_t wavelets, std::uint64_t seed, unsigned delays) {
  const std::uint64_t q = field->q();
  const std::size_t cols = wavelets + 1;
  if (cols < q) throw ParamError("a tight bank needs at least q-1 wavelets");

  // E = P * P(0)^* * diag(1, W) has E(0) = diag(1, W).
  const Paraunitary p = random_paraunitary(field, cols, seed, delays);
  const MatrixSample p0 = p.evaluate(FieldElement(field));
  const Dense w = random_unitary(cols - 1, splitmix(seed ^ 0x5157ull));
  Dense fix(cols * cols);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      // (P(0)^* diag(1, W))_{ij} = sum_k conj(P0_{ki}) diag_{kj}
      cplx v = j == 0 ? std::conj(p0.at(0, i)) : cplx{};
      if (j > 0)
        for (std::size_t k = 1; k < cols; ++k) v += std::conj(p0.at(k, i)) * w[(k - 1) * (cols - 1) + (j - 1)];
      fix[i * cols + j] = v;
    }
  const Paraunitary e = compose(p, from_dense(field, cols, fix));

  // Q unitary with first column q^{-1/2} (1, ..., 1).
  const Dense ones(q, cplx{1.0 / std::sqrt(static_cast<double>(q))});
  const Dense qmat = random_unitary(q, splitmix(seed ^ 0xA11CEull), ones);

  const double isq = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<std::vector<cplx>> coeffs(cols);
  for (std::size_t l = 0; l < cols; ++l) {
    for (std::uint64_t r = 0; r < q; ++r) {
      Mask gamma(field, {}, q);
      for (std::uint64_t rr = 0; rr < q; ++rr) gamma = mask_add(gamma, e.entry(rr, l).scaled(qmat[r * q + rr]));
      // Entry value q^{-1/2} sum_k e_k conj chi_k(prime^{-1} xi) equals
      // f_r(prime^{-1} xi) when h_{qk+r} = q^{-1/2} e_k.
      for (std::uint64_t k = 0; k * q <= gamma.max_index() && !gamma.empty(); ++k) {
        const cplx v = gamma.coeff_at(k * q);
        if (v == cplx{}) continue;
        const std::uint64_t n = q * k + r;
        if (n >= coeffs[l].size()) coeffs[l].resize(n + 1);
        coeffs[l][n] = v * isq;
      }
    }
  }
  Mask m0 = Mask(field, std::move(coeffs[0])).trimmed(kTrim);
  std::vector<Mask> ws;
  for (std::size_t l = 1; l < cols; ++l) ws.push_back(Mask(field, std::move(coeffs[l])).trimmed(kTrim));
  return FilterBank(std::move(m0), std::move(ws));
}

// ---------------------------------------------------------------- algorithms

unsigned certification_depth(std::span<const FilterBank> banks) {
  unsigned d = 1;
  for (const auto& b : banks) d = std::max(d, b.required_depth());
  return d;
}

FramePair derive_pair(std::span<const Mask> primal_wavelets, std::span<const Mask> dual_wavelets, const Mask& m0,
                      const Mask& m0_dual, const Paraunitary& a, double tol) {
  const std::size_t L = primal_wavelets.size();
  if (L == 0) throw ParamError("derive_pair needs at least one wavelet");
  if (dual_wavelets.size() != L) throw ParamError("primal and dual wavelet counts differ");
  if (a.size() != 2 * L) throw ParamError("paraunitary matrix must have size 2L");
  require_same_field(m0.field(), a.field());
  require_same_field(m0_dual.field(), a.field());

  const FilterBank in_primal(m0, {primal_wavelets.begin(), primal_wavelets.end()});
  const FilterBank in_dual(m0_dual, {dual_wavelets.begin(), dual_wavelets.end()});
  const FilterBank inputs[] = {in_primal, in_dual};
  const unsigned in_depth = certification_depth(inputs);
  certify(check_uep(in_primal, in_depth, tol), "primal input UEP");
  certify(check_uep(in_dual, in_depth, tol), "dual input UEP");

  std::vector<Mask> g, gd;
  for (std::size_t k = 0; k < 2 * L; ++k) {
    std::vector<Mask> left, right;
    for (std::size_t l = 0; l < L; ++l) {
      left.push_back(a.entry(k, l));
      right.push_back(a.entry(k, L + l));
    }
    g.push_back(weighted_sum(left, primal_wavelets));
    gd.push_back(weighted_sum(right, dual_wavelets));
  }
  FramePair out{FilterBank(m0, std::move(g)), FilterBank(m0_dual, std::move(gd))};

  const FilterBank outputs[] = {out.primal, out.dual};
  const unsigned depth = certification_depth(outputs);
  certify(check_uep(out.primal, depth, tol), "primal output UEP");
  certify(check_uep(out.dual, depth, tol), "dual output UEP");
  certify(check_mixed_orthogonality(out.primal, out.dual, depth, tol), "mixed orthogonality");
  return out;
}

std::vector<FilterBank> orthogonal_family(const FilterBank& bank, const Paraunitary& a, double tol) {
  require_same_field(bank.field(), a.field());
  if (bank.wavelet_count() == 0) throw ParamError("orthogonal_family needs at least one wavelet");
  const FilterBank in[] = {bank};
  certify(check_uep(bank, certification_depth(in), tol), "input UEP");

  const std::size_t L = a.size();
  std::vector<FilterBank> families;
  for (std::size_t r = 0; r < L; ++r) {
    std::vector<Mask> eta;
    for (const auto& m : bank.wavelets())
      for (std::size_t l = 0; l < L; ++l) eta.push_back(mask_mul(a.entry(l, r), m).trimmed(kTrim));
    families.emplace_back(bank.m0(), std::move(eta));
  }

  const unsigned depth = certification_depth(families);
  for (const auto& f : families) certify(check_uep(f, depth, tol), "family UEP");
  for (std::size_t r = 0; r < L; ++r)
    for (std::size_t s = r + 1; s < L; ++s)
      certify(check_mixed_orthogonality(families[r], families[s], depth, tol), "family mixed orthogonality");
  return families;
}

}  // namespace framefield
