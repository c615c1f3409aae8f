#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "framefield/construct.hpp"
#include "framefield/mask.hpp"

namespace framefield {

// Samples of a function on prime^{-coarse} D at resolution B^fine. Point g
// has digits e_t (base q, e_0 fastest) at powers t - coarse, t < coarse + fine.
// Points of D itself are the indices divisible by q^coarse.
struct HatGrid {
  HatGrid(Field field, unsigned coarse, unsigned fine);

  Field field;
  unsigned coarse = 0;
  unsigned fine = 0;
  std::vector<cplx> values;
  // Last cascade factor that can differ from m0(0) anywhere on the grid.
  unsigned stabilization = 0;

  std::uint64_t size() const { return values.size(); }
  FieldElement point(std::uint64_t g) const;
  // Index of the sample whose coset contains xi. Digits at powers >= fine are
  // dropped; nothing is returned if xi has digits below -coarse.
  std::optional<std::uint64_t> locate(const FieldElement& xi) const;
  std::optional<cplx> value(const FieldElement& xi) const;
};

// Constant samples, for identity multipliers.
HatGrid constant_hat(const Field& field, unsigned coarse, unsigned fine, cplx value);

// prod_{j=1}^{J} m0(prime^j xi).
cplx cascade_value(const Mask& m0, unsigned J, const FieldElement& xi);
// The infinite product: factors stop changing once prime^j xi lies in B^s.
cplx phihat_value(const Mask& m0, const FieldElement& xi);

// Truncated cascade tabulated on a hat grid. Requires m0(0) = 1 within 1e-12
// (ParamError) and fine >= required_depth - 1 (DepthError) so that every
// sample is exact on its coset.
HatGrid cascade_phihat(const Mask& m0, unsigned J, unsigned coarse, unsigned fine);

// max over xi in D of |sum_{k<K} |phi^(xi + u(k))|^2 - 1|. Requires K <= q^coarse.
// details: truncation_bound = 1 - min of the truncated sums.
CheckReport partition_of_unity_check(const HatGrid& phihat, std::uint64_t K, double tol);

// sum_l |m_l(prime xi)|^2 |phi^(prime xi)|^2 against
// |phi^(prime xi)|^2 - |phi^(xi)|^2 at `points` evenly spaced samples.
CheckReport telescoping_check(const FilterBank& bank, const HatGrid& phihat, std::size_t points, double tol);

// Sum over j in [-J, J] of |phi^(prime^{j+1} xi)|^2 - |phi^(prime^j xi)|^2
// against its two surviving end terms.
CheckReport telescoping_sum_check(const Mask& m0, std::span<const FieldElement> points, unsigned J, double tol);

// Coefficients indexed by n < q^levels; translations act by the carry-free sum.
struct DiscreteSignal {
  Field field;
  unsigned levels = 0;
  std::vector<cplx> samples;

  DiscreteSignal(Field field, unsigned levels);
  DiscreteSignal(Field field, unsigned levels, std::vector<cplx> samples);
  std::uint64_t size() const { return samples.size(); }
};

// w_l[k] = sum_n conj(h_l[n [-] qk]) v[n] for every mask of the bank.
// DepthError if a mask support does not fit below q^levels.
std::vector<DiscreteSignal> analysis_step(const DiscreteSignal& v, const FilterBank& bank);
// Adjoint of analysis_step.
DiscreteSignal synthesis_step(const std::vector<DiscreteSignal>& parts, const FilterBank& bank);

struct Decomposition {
  std::vector<std::vector<DiscreteSignal>> details;  // details[level][l - 1]
  DiscreteSignal scaling;
};

// J analysis steps along the scaling branch.
Decomposition decompose(const DiscreteSignal& v, const FilterBank& bank, unsigned J);
DiscreteSignal reconstruct(const Decomposition& d, const FilterBank& bank);

double energy(const DiscreteSignal& v);
DiscreteSignal random_signal(const Field& field, unsigned levels, std::uint64_t seed);

struct ExperimentOptions {
  unsigned levels = 6;        // signal length q^levels
  unsigned depth_levels = 4;  // J
  unsigned trials = 20;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  // Reject banks failing check_uep before running (CertificationError).
  bool require_uep = true;
  // When set, receives the per-trial values.
  std::vector<double>* per_trial = nullptr;
};

// Max over trials of | ||v||^2 - captured energy | / ||v||^2.
CheckReport parseval_experiment(const FilterBank& bank, const ExperimentOptions& opt);
// Max over trials of ||out|| / ||v||, where out synthesizes the primal
// wavelet coefficients of v with the dual bank and drops the scaling branch.
CheckReport mixed_frame_experiment(const FramePair& pair, const ExperimentOptions& opt);

// max over the points xi of g_hat of
// |sum_l sum_{|j|<=J} psi^_l(prime^{-j} xi) g^(.) conj(psi~^_l(prime^{-j} xi) h^(.))|.
// Terms whose argument falls outside a multiplier grid are skipped and
// counted (details: terms_evaluated, terms_skipped). Non-finite multiplier
// samples are rejected with ParamError.
CheckReport multiplier_orthogonality_check(const FramePair& pair, const HatGrid& g_hat, const HatGrid& h_hat,
                                           unsigned J, double tol);

}  // namespace framefield
