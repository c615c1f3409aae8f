// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "framefield/error.hpp"
#include "framefield/verify.hpp"

using namespace framefield;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string note;
};

FilterBank perturbed(const FilterBank& b, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Mask> ws;
  for (const auto& w : b.wavelets()) {
    auto c = w.coeffs();
    for (auto& x : c) x += scale * cplx{g(rng), g(rng)};
    ws.emplace_back(b.field(), c, w.stride());
  }
  return FilterBank(b.m0(), ws);
}

double pr_error(const FilterBank& b, unsigned levels, std::uint64_t seed) {
  const DiscreteSignal v = random_signal(b.field(), levels, seed);
  const DiscreteSignal r = synthesis_step(analysis_step(v, b), b);
  double e = 0.0, n = 0.0;
  for (std::size_t i = 0; i < v.samples.size(); ++i) {
    e = std::max(e, std::abs(r.samples[i] - v.samples[i]));
    n = std::max(n, std::abs(v.samples[i]));
  }
  return e / n;
}

char buf[256];

Outcome criterion1() {
  double worst = 0.0, slowest = 0.0;
  for (std::uint32_t c : {1u, 2u})
    for (std::uint32_t p : {2u, 3u, 5u}) {
      if (c == 2 && p != 2) continue;
      const auto t0 = Clock::now();
      const FilterBank h = haar_bank(make_field(p, c));
      worst = std::max({worst, check_uep(h, 3, 1e-12).max_deviation, check_polyphase_unitary(h, 3, 1e-12).max_deviation});
      slowest = std::max(slowest, seconds_since(t0));
    }
  std::snprintf(buf, sizeof buf, "Haar q=2,3,4,5: max deviation %.2e, slowest %.3fs", worst, slowest);
  return {worst < 1e-12 && slowest < 1.0, buf};
}

Outcome criterion2() {
  std::mt19937_64 rng(2024);
  int agree = 0, total = 0, tight = 0;
  for (std::uint32_t p : {2u, 3u})
    for (std::uint64_t s = 0; s < 100; ++s) {
      const Field f = make_field(p);
      FilterBank b = random_tight_bank(f, f->q() - 1 + s % 3, 1000 * p + s, 1 + s % 2);
      if (s % 2) b = perturbed(b, 1e-2, rng);
      const unsigned d = std::max(1u, b.required_depth());
      const bool u = check_uep(b, d, 1e-8).pass;
      const bool g = check_polyphase_unitary(b, d, 1e-8).pass;
      agree += u == g;
      tight += u;
      ++total;
    }
  std::snprintf(buf, sizeof buf, "UEP vs polyphase verdicts agree %d/%d (%d tight)", agree, total, tight);
  return {agree == total && total == 200, buf};
}

Outcome criterion3() {
  const auto t0 = Clock::now();
  const Field f = make_field(2);
  const FilterBank h = haar_bank(f);
  double uep = 0.0, mixed = 0.0, ratio = 0.0;
  int built = 0;
  ExperimentOptions o;
  o.levels = 6;
  o.depth_levels = 4;
  o.trials = 20;
  for (std::size_t size : {2u, 4u}) {
    // L = size/2 wavelets; the second Haar slot is a zero mask.
    std::vector<Mask> ws = h.wavelets();
    if (size == 4) ws.push_back(Mask(f));
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Paraunitary a = random_paraunitary(f, size, 77 + s, 2);
      const FramePair pr = derive_pair(ws, ws, h.m0(), h.m0(), a);
      const unsigned d = certification_depth(std::vector<FilterBank>{pr.primal, pr.dual});
      uep = std::max({uep, check_uep(pr.primal, d, 1e-10).max_deviation, check_uep(pr.dual, d, 1e-10).max_deviation});
      mixed = std::max(mixed, check_mixed_orthogonality(pr.primal, pr.dual, d, 1e-10).max_deviation);
      o.seed = s + 1;
      ratio = std::max(ratio, mixed_frame_experiment(pr, o).max_deviation);
      ++built;
    }
  }
  const double t = seconds_since(t0);
  std::snprintf(buf, sizeof buf, "%d Haar pairs: UEP %.2e, mixed %.2e, frame ratio %.2e, %.2fs", built, uep, mixed,
                ratio, t);
  return {built == 40 && uep < 1e-10 && mixed < 1e-10 && ratio < 1e-8 && t < 30.0, buf};
}

Outcome criterion4() {
  const Field f = make_field(2);
  const FilterBank h = haar_bank(f);
  double uep = 0.0, mixed = 0.0, parseval = 0.0;
  int families = 0;
  ExperimentOptions o;
  o.levels = 6;
  o.depth_levels = 4;
  for (std::size_t L : {2u, 3u})
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto fam = orthogonal_family(h, random_paraunitary(f, L, 500 + s, 1));
      const unsigned d = certification_depth(fam);
      for (std::size_t r = 0; r < fam.size(); ++r) {
        uep = std::max(uep, check_uep(fam[r], d, 1e-10).max_deviation);
        parseval = std::max(parseval, parseval_experiment(fam[r], o).max_deviation);
        for (std::size_t t = r + 1; t < fam.size(); ++t)
          mixed = std::max(mixed, check_mixed_orthogonality(fam[r], fam[t], d, 1e-10).max_deviation);
      }
      ++families;
    }
  std::snprintf(buf, sizeof buf, "%d families: UEP %.2e, pairwise mixed %.2e, Parseval %.2e", families, uep, mixed,
                parseval);
  return {families == 20 && uep < 1e-10 && mixed < 1e-10 && parseval < 1e-10, buf};
}

Outcome criterion5() {
  double cascade = 0.0, partition = 0.0, telescoping = 0.0;
  for (std::uint32_t p : {2u, 3u}) {
    const Field f = make_field(p);
    const FilterBank h = haar_bank(f);
    const HatGrid ph = cascade_phihat(h.m0(), 10, 2, 2);
    const std::uint64_t span = f->q() * f->q();
    for (std::uint64_t g = 0; g < ph.size(); ++g)
      cascade = std::max(cascade, std::abs(ph.values[g] - (g % span == 0 ? 1.0 : 0.0)));
    partition = std::max(partition, partition_of_unity_check(ph, span, 1e-12).max_deviation);

    const FilterBank b = random_tight_bank(f, f->q(), 31 + p, 2);
    const HatGrid pb = cascade_phihat(b.m0(), 24, 3, b.m0().required_depth() + 2);
    telescoping = std::max(telescoping, telescoping_check(b, pb, 100, 1e-8).max_deviation);
    telescoping = std::max(telescoping, telescoping_check(h, ph, 16, 1e-8).max_deviation);
  }
  std::snprintf(buf, sizeof buf, "cascade on D %.2e, partition %.2e, telescoping %.2e", cascade, partition,
                telescoping);
  return {cascade < 1e-12 && partition < 1e-12 && telescoping < 1e-8, buf};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  const Field f = make_field(2);
  int disagree = 0, tight = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    FilterBank b = random_tight_bank(f, 1 + s % 3, 9000 + s, 1);
    if (s >= 50) b = perturbed(b, 1e-2, rng);
    const bool uep = check_uep(b, std::max(1u, b.required_depth()), 1e-10).pass;
    double err = 0.0;
    for (std::uint64_t t = 0; t < 3; ++t) err = std::max(err, pr_error(b, 4, 100 * s + t));
    disagree += uep != (err < 1e-10);
    tight += uep;
  }
  std::snprintf(buf, sizeof buf, "PR at M=4 vs UEP: %d disagreements over 100 banks (%d tight)", disagree, tight);
  return {disagree == 0 && tight == 50, buf};
}

Outcome criterion7() {
  bool group = true;
  for (std::uint32_t p : {2u, 3u}) {
    const Field f = make_field(p);
    const std::uint64_t n4 = f->q() * f->q() * f->q() * f->q();
    std::vector<FieldElement> u;
    for (std::uint64_t n = 0; n < n4; ++n) u.push_back(u_map(f, n));
    for (std::uint64_t m = 0; m < n4; ++m)
      for (std::uint64_t n = 0; n < n4; ++n) {
        const std::uint64_t s = index_add(*f, m, n);
        group = group && s < n4 && u[m] + u[n] == u[s] && index_sub(*f, s, n) == m;
      }
  }

  double chi_dev = 0.0;
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Field f = make_field(p);
    std::uniform_int_distribution<std::uint64_t> d(0, f->q() - 1);
    auto draw = [&] {
      std::vector<std::uint64_t> ds(8);
      for (auto& x : ds) x = d(rng);
      return FieldElement::from_digit_indices(f, -4, ds);
    };
    for (int t = 0; t < 1000; ++t) {
      const auto a = draw(), b = draw();
      chi_dev = std::max(chi_dev, std::abs(chi(a + b) - chi(a) * chi(b)));
    }
  }

  bool axioms = true;
  int fields = 0;
  for (auto [p, c] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}}) {
    const GaloisField g(FieldParams::make(p, c));
    const std::uint64_t q = g.q();
    for (std::uint64_t a = 0; a < q; ++a) {
      const auto ea = g.from_digit(a);
      axioms = axioms && g.add(ea, g.zero()) == ea && g.mul(ea, g.one()) == ea && g.add(ea, g.neg(ea)) == g.zero();
      if (a != 0) axioms = axioms && g.mul(ea, g.inverse(ea)) == g.one();
      for (std::uint64_t b = 0; b < q; ++b) {
        const auto eb = g.from_digit(b);
        axioms = axioms && g.add(ea, eb) == g.add(eb, ea) && g.mul(ea, eb) == g.mul(eb, ea);
        for (std::uint64_t c3 = 0; c3 < q; ++c3) {
          const auto ec = g.from_digit(c3);
          axioms = axioms && g.mul(g.mul(ea, eb), ec) == g.mul(ea, g.mul(eb, ec)) &&
                   g.add(g.add(ea, eb), ec) == g.add(ea, g.add(eb, ec)) &&
                   g.mul(ea, g.add(eb, ec)) == g.add(g.mul(ea, eb), g.mul(ea, ec));
        }
      }
    }
    ++fields;
  }
  std::snprintf(buf, sizeof buf, "group law %s, chi additivity %.2e, field axioms %s on %d fields",
                group ? "exact" : "BROKEN", chi_dev, axioms ? "hold" : "BROKEN", fields);
  return {group && chi_dev <= 1e-15 && axioms, buf};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.note.c_str());
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
