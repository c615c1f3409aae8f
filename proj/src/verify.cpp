#include "framefield/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>

#include "framefield/kernels.hpp"
#include "framefield/parallel.hpp"

namespace framefield {
namespace {

constexpr double kMatrixTol = 1e-10;

std::uint64_t ipow(std::uint64_t q, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= q;
  return r;
}

void require_normalized(const Mask& m0) {
  const cplx n = eval_mask(m0, FieldElement(m0.field()));
  if (std::abs(n - 1.0) > 1e-12)
    throw ParamError("scaling mask is not normalized: m0(0) = " + std::to_string(n.real()) + " + " +
                     std::to_string(n.imag()) + "i");
}

void require_uep(const FilterBank& bank, const char* what) {
  const FilterBank banks[] = {bank};
  const CheckReport r = check_uep(bank, certification_depth(banks), kMatrixTol);
  if (!r.pass) throw CertificationError(std::string(what) + ": bank fails the UEP precondition", r);
}

// Nonzero coefficients of a mask by absolute index.
std::vector<std::pair<std::uint64_t, cplx>> support(const Mask& m, std::uint64_t limit) {
  std::vector<std::pair<std::uint64_t, cplx>> s;
  if (m.empty()) return s;
  if (m.max_index() >= limit)
    throw DepthError("mask support " + std::to_string(m.max_index() + 1) + " exceeds signal length " +
                     std::to_string(limit));
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.coeffs()[i] != cplx{}) s.emplace_back(i * m.stride(), m.coeffs()[i]);
  return s;
}

std::vector<std::uint64_t> sample_indices(std::uint64_t size, std::size_t points) {
  std::vector<std::uint64_t> idx;
  if (points >= size) {
    for (std::uint64_t g = 0; g < size; ++g) idx.push_back(g);
  } else {
    for (std::size_t i = 0; i < points; ++i) idx.push_back(i * size / points);
  }
  return idx;
}

}  // namespace

// ---------------------------------------------------------------- HatGrid

HatGrid::HatGrid(Field f, unsigned c, unsigned fn) : field(std::move(f)), coarse(c), fine(fn) {
  values.assign(grid_size(*field, coarse + fine), cplx{});
}

FieldElement HatGrid::point(std::uint64_t g) const {
  const std::uint64_t q = field->q();
  std::vector<std::uint64_t> ds(coarse + fine);
  for (auto& d : ds) {
    d = g % q;
    g /= q;
  }
  return FieldElement::from_digit_indices(field, -static_cast<int>(coarse), ds);
}

std::optional<std::uint64_t> HatGrid::locate(const FieldElement& xi) const {
  require_same_field(field, xi.field());
  if (xi.is_zero()) return 0;
  if (xi.valuation() < -static_cast<int>(coarse)) return std::nullopt;
  const std::uint64_t q = field->q();
  std::uint64_t g = 0;
  for (unsigned t = coarse + fine; t-- > 0;) g = g * q + xi.digit_index(static_cast<int>(t) - static_cast<int>(coarse));
  return g;
}

std::optional<cplx> HatGrid::value(const FieldElement& xi) const {
  const auto g = locate(xi);
  if (!g) return std::nullopt;
  return values[*g];
}

HatGrid constant_hat(const Field& field, unsigned coarse, unsigned fine, cplx value) {
  HatGrid h(field, coarse, fine);
  std::fill(h.values.begin(), h.values.end(), value);
  return h;
}

// ---------------------------------------------------------------- cascade

cplx cascade_value(const Mask& m0, unsigned J, const FieldElement& xi) {
  const int s = static_cast<int>(m0.required_depth());
  const cplx c0 = eval_mask(m0, FieldElement(m0.field()));
  cplx prod = 1.0;
  for (unsigned j = 1; j <= J; ++j) {
    const FieldElement x = xi.shifted(static_cast<int>(j));
    if (x.is_zero() || x.valuation() >= s) {
      for (; j <= J; ++j) prod *= c0;
      break;
    }
    prod *= eval_mask(m0, x);
  }
  return prod;
}

cplx phihat_value(const Mask& m0, const FieldElement& xi) {
  require_normalized(m0);
  const int s = static_cast<int>(m0.required_depth());
  cplx prod = 1.0;
  for (int j = 1;; ++j) {
    const FieldElement x = xi.shifted(j);
    if (x.is_zero() || x.valuation() >= s) return prod;
    prod *= eval_mask(m0, x);
  }
}

HatGrid cascade_phihat(const Mask& m0, unsigned J, unsigned coarse, unsigned fine) {
  require_normalized(m0);
  const unsigned s = m0.required_depth();
  const unsigned st = std::max(s, 1u);
  if (fine + 1 < st)
    throw DepthError("hat grid resolution " + std::to_string(fine) + " is too coarse for mask depth " + std::to_string(s));
  const Field& field = m0.field();
  const std::uint64_t q = field->q();
  const std::vector<cplx> table = tabulate(m0, st);
  const cplx c0 = table[0];
  const std::uint64_t qs = ipow(q, st);

  HatGrid h(field, coarse, fine);
  h.stabilization = s == 0 ? 0 : std::min(J, coarse + s - 1);
  parallel_for(h.size(), [&](std::uint64_t g) {
    cplx prod = 1.0;
    for (unsigned j = 1; j <= J; ++j) {
      // Digits of prime^j xi at powers 0..st-1 are the digits of xi at powers -j..st-1-j.
      std::uint64_t idx;
      if (j <= coarse) {
        idx = (g / ipow(q, coarse - j)) % qs;
      } else if (j - coarse < st) {
        const unsigned up = j - coarse;
        idx = (g % ipow(q, st - up)) * ipow(q, up);
      } else {
        for (; j <= J; ++j) prod *= c0;
        break;
      }
      prod *= table[idx];
    }
    h.values[g] = prod;
  });
  return h;
}

CheckReport partition_of_unity_check(const HatGrid& phihat, std::uint64_t K, double tol) {
  const GaloisField& f = *phihat.field;
  const std::uint64_t q = f.q();
  const std::uint64_t span = ipow(q, phihat.coarse);
  if (K == 0) throw ParamError("partition_of_unity_check needs at least one translate");
  if (K > span)
    throw DepthError("hat grid covers " + std::to_string(span) + " translates, " + std::to_string(K) + " requested");

  // u(k) has digit b_i at power -(i+1), i.e. hat digit position coarse-i-1.
  std::vector<std::uint64_t> offset(K);
  for (std::uint64_t k = 0; k < K; ++k) {
    std::uint64_t o = 0, n = k;
    for (unsigned i = 0; n > 0; ++i, n /= q) o += (n % q) * ipow(q, phihat.coarse - i - 1);
    offset[k] = o;
  }

  const std::uint64_t base = ipow(q, phihat.fine);
  std::vector<double> sums(base);
  parallel_for(base, [&](std::uint64_t t) {
    const std::uint64_t g = t * span;
    double acc = 0.0;
    for (std::uint64_t k = 0; k < K; ++k) acc += std::norm(phihat.values[g + offset[k]]);
    sums[t] = acc;
  });
  double worst = -1.0, min_sum = INFINITY;
  std::uint64_t worst_t = 0;
  for (std::uint64_t t = 0; t < base; ++t) {
    const double d = std::abs(sums[t] - 1.0);
    if (d > worst || std::isnan(d)) {
      worst = d;
      worst_t = t;
    }
    min_sum = std::min(min_sum, sums[t]);
  }
  CheckReport r("partition", phihat.fine, worst, tol, phihat.point(worst_t * span));
  r.details["translates"] = static_cast<double>(K);
  r.details["truncation_bound"] = std::max(0.0, 1.0 - min_sum);
  r.details["stabilization"] = phihat.stabilization;
  return r;
}

CheckReport telescoping_check(const FilterBank& bank, const HatGrid& phihat, std::size_t points, double tol) {
  require_same_field(bank.field(), phihat.field);
  const auto idx = sample_indices(phihat.size(), points);
  const SweepMax best = sweep_max(idx.size(), [&](std::uint64_t i) {
    const FieldElement xi = phihat.point(idx[i]);
    const FieldElement pxi = xi.shifted(1);
    const double a = std::norm(*phihat.value(pxi));
    const double b = std::norm(phihat.values[idx[i]]);
    double lhs = 0.0;
    for (const auto& m : bank.wavelets()) lhs += std::norm(eval_mask(m, pxi));
    return std::abs(lhs * a - (a - b));
  });
  CheckReport r("telescoping", phihat.fine, best.value, tol, phihat.point(idx.empty() ? 0 : idx[best.index]));
  r.details["points"] = static_cast<double>(idx.size());
  r.details["stabilization"] = phihat.stabilization;
  return r;
}

CheckReport telescoping_sum_check(const Mask& m0, std::span<const FieldElement> points, unsigned J, double tol) {
  require_normalized(m0);
  const int jj = static_cast<int>(J);
  const SweepMax best = sweep_max(points.size(), [&](std::uint64_t i) {
    const FieldElement& xi = points[i];
    double sum = 0.0;
    for (int j = -jj; j <= jj; ++j)
      sum += std::norm(phihat_value(m0, xi.shifted(j + 1))) - std::norm(phihat_value(m0, xi.shifted(j)));
    const double ends = std::norm(phihat_value(m0, xi.shifted(jj + 1))) - std::norm(phihat_value(m0, xi.shifted(-jj)));
    return std::abs(sum - ends);
  });
  CheckReport r("telescoping_sum", 0, points.empty() ? 0.0 : best.value, tol,
                points.empty() ? FieldElement(m0.field()) : points[best.index]);
  r.details["J"] = J;
  return r;
}

// ---------------------------------------------------------------- transforms

DiscreteSignal::DiscreteSignal(Field f, unsigned l) : field(std::move(f)), levels(l) {
  samples.assign(grid_size(*field, levels), cplx{});
}

DiscreteSignal::DiscreteSignal(Field f, unsigned l, std::vector<cplx> s)
    : field(std::move(f)), levels(l), samples(std::move(s)) {
  if (samples.size() != grid_size(*field, levels)) throw ParamError("signal length is not q^levels");
}

std::vector<DiscreteSignal> analysis_step(const DiscreteSignal& v, const FilterBank& bank) {
  require_same_field(v.field, bank.field());
  if (v.levels == 0) throw DepthError("cannot analyse a signal of length 1");
  const GaloisField& f = *v.field;
  const std::uint64_t q = f.q();
  std::vector<DiscreteSignal> out;
  for (std::size_t l = 0; l < bank.mask_count(); ++l) {
    const auto sup = support(bank.mask(l), v.size());
    DiscreteSignal w(v.field, v.levels - 1);
    for (std::uint64_t k = 0; k < w.size(); ++k) {
      cplx acc{};
      for (const auto& [a, h] : sup) acc += std::conj(h) * v.samples[index_add(f, a, q * k)];
      w.samples[k] = acc;
    }
    out.push_back(std::move(w));
  }
  return out;
}

DiscreteSignal synthesis_step(const std::vector<DiscreteSignal>& parts, const FilterBank& bank) {
  if (parts.size() != bank.mask_count()) throw ParamError("synthesis needs one signal per mask");
  const Field& field = bank.field();
  const GaloisField& f = *field;
  const std::uint64_t q = f.q();
  const unsigned levels = parts.front().levels + 1;
  DiscreteSignal v(field, levels);
  for (std::size_t l = 0; l < parts.size(); ++l) {
    require_same_field(parts[l].field, field);
    if (parts[l].levels + 1 != levels) throw ParamError("synthesis inputs differ in length");
    const auto sup = support(bank.mask(l), v.size());
    for (std::uint64_t k = 0; k < parts[l].size(); ++k) {
      const cplx w = parts[l].samples[k];
      if (w == cplx{}) continue;
      for (const auto& [a, h] : sup) v.samples[index_add(f, a, q * k)] += h * w;
    }
  }
  return v;
}

Decomposition decompose(const DiscreteSignal& v, const FilterBank& bank, unsigned J) {
  if (J > v.levels) throw DepthError("decomposition depth exceeds signal levels");
  Decomposition d{{}, v};
  for (unsigned j = 0; j < J; ++j) {
    auto parts = analysis_step(d.scaling, bank);
    d.scaling = std::move(parts.front());
    d.details.emplace_back(std::make_move_iterator(parts.begin() + 1), std::make_move_iterator(parts.end()));
  }
  return d;
}

DiscreteSignal reconstruct(const Decomposition& d, const FilterBank& bank) {
  DiscreteSignal cur = d.scaling;
  for (std::size_t j = d.details.size(); j-- > 0;) {
    std::vector<DiscreteSignal> parts{cur};
    parts.insert(parts.end(), d.details[j].begin(), d.details[j].end());
    cur = synthesis_step(parts, bank);
  }
  return cur;
}

double energy(const DiscreteSignal& v) { return kernels::norm2(v.samples); }

DiscreteSignal random_signal(const Field& field, unsigned levels, std::uint64_t seed) {
  DiscreteSignal v(field, levels);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  for (auto& x : v.samples) x = {g(rng), g(rng)};
  return v;
}

// ---------------------------------------------------------------- experiments

namespace {

CheckReport trial_report(const char* name, const Field& field, const ExperimentOptions& opt,
                         const std::vector<double>& dev) {
  double worst = -1.0;
  std::size_t at = 0;
  for (std::size_t t = 0; t < dev.size(); ++t)
    if (dev[t] > worst || std::isnan(dev[t])) {
      worst = dev[t];
      at = t;
    }
  if (opt.per_trial) *opt.per_trial = dev;
  CheckReport r(name, opt.levels, dev.empty() ? 0.0 : worst, opt.tol, FieldElement(field));
  r.details["trials"] = opt.trials;
  r.details["worst_trial"] = static_cast<double>(at);
  r.details["seed"] = static_cast<double>(opt.seed);
  r.details["levels"] = opt.levels;
  r.details["depth_levels"] = opt.depth_levels;
  return r;
}

}  // namespace

CheckReport parseval_experiment(const FilterBank& bank, const ExperimentOptions& opt) {
  if (opt.require_uep) require_uep(bank, "parseval_experiment");
  std::vector<double> dev(opt.trials);
  parallel_for(
      opt.trials,
      [&](std::uint64_t t) {
        const DiscreteSignal v = random_signal(bank.field(), opt.levels, derive_seed(opt.seed, t));
        const Decomposition d = decompose(v, bank, opt.depth_levels);
        double captured = energy(d.scaling);
        for (const auto& level : d.details)
          for (const auto& w : level) captured += energy(w);
        const double e = energy(v);
        dev[t] = std::abs(e - captured) / e;
      },
      1);
  return trial_report("parseval", bank.field(), opt, dev);
}

CheckReport mixed_frame_experiment(const FramePair& pair, const ExperimentOptions& opt) {
  require_same_field(pair.primal.field(), pair.dual.field());
  if (pair.primal.wavelet_count() != pair.dual.wavelet_count())
    throw ParamError("pair banks have different wavelet counts");
  if (opt.require_uep) {
    require_uep(pair.primal, "mixed_frame_experiment (primal)");
    require_uep(pair.dual, "mixed_frame_experiment (dual)");
  }
  std::vector<double> dev(opt.trials);
  parallel_for(
      opt.trials,
      [&](std::uint64_t t) {
        const DiscreteSignal v = random_signal(pair.primal.field(), opt.levels, derive_seed(opt.seed, t));
        Decomposition d = decompose(v, pair.primal, opt.depth_levels);
        std::fill(d.scaling.samples.begin(), d.scaling.samples.end(), cplx{});
        const DiscreteSignal out = reconstruct(d, pair.dual);
        dev[t] = std::sqrt(energy(out) / energy(v));
      },
      1);
  return trial_report("mixed_frame", pair.primal.field(), opt, dev);
}

CheckReport multiplier_orthogonality_check(const FramePair& pair, const HatGrid& g_hat, const HatGrid& h_hat,
                                           unsigned J, double tol) {
  const Field& field = pair.primal.field();
  require_same_field(field, pair.dual.field());
  require_same_field(field, g_hat.field);
  require_same_field(field, h_hat.field);
  if (pair.primal.wavelet_count() != pair.dual.wavelet_count())
    throw ParamError("pair banks have different wavelet counts");
  for (const HatGrid* h : {&g_hat, &h_hat})
    for (const cplx& x : h->values)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw ParamError("multiplier samples are not bounded");

  std::atomic<std::uint64_t> evaluated{0}, skipped{0};
  const int jj = static_cast<int>(J);
  const std::size_t L = pair.primal.wavelet_count();
  const SweepMax best = sweep_max(g_hat.size(), [&](std::uint64_t g) {
    const FieldElement xi = g_hat.point(g);
    cplx total{};
    for (int j = -jj; j <= jj; ++j) {
      const FieldElement eta = xi.shifted(-j);
      const auto gv = g_hat.value(eta);
      const auto hv = h_hat.value(eta);
      if (!gv || !hv) {
        ++skipped;
        continue;
      }
      ++evaluated;
      // psi^_l(eta) = m_l(prime eta) phi^(prime eta).
      const FieldElement p = eta.shifted(1);
      const cplx phi = phihat_value(pair.primal.m0(), p) * *gv;
      const cplx phid = phihat_value(pair.dual.m0(), p) * *hv;
      for (std::size_t l = 0; l < L; ++l)
        total += eval_mask(pair.primal.wavelets()[l], p) * phi * std::conj(eval_mask(pair.dual.wavelets()[l], p) * phid);
    }
    return std::abs(total);
  });
  CheckReport r("multiplier", g_hat.fine, best.value, tol, g_hat.point(best.index));
  r.details["J"] = J;
  r.details["terms_evaluated"] = static_cast<double>(evaluated.load());
  r.details["terms_skipped"] = static_cast<double>(skipped.load());
  return r;
}

}  // namespace framefield
