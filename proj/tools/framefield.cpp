// framefield: build filter banks, derive orthogonal frame pairs and families,
// and run the verification suites from the command line.
//
// Exit codes: 0 all checks pass, 1 a check or certification failed, 2 bad
// input or parameters, 3 grid depth or size too small.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "framefield/construct.hpp"
#include "framefield/io.hpp"
#include "framefield/verify.hpp"

namespace ff = framefield;
using ff::io::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kDepth = 3 };

struct Common {
  std::uint32_t p = 2;
  std::uint32_t c = 1;
  std::vector<std::uint32_t> modulus;
  std::string out;
  double tol = 1e-10;
  std::uint64_t seed = 1;

  ff::Field field() const {
    ff::FieldParams fp = ff::FieldParams::make(p, c);
    if (!modulus.empty()) fp.modulus = modulus;
    fp.validate();
    return ff::make_field(fp);
  }
};

void add_field_flags(CLI::App* cmd, Common& o) {
  cmd->add_option("--p", o.p, "residue characteristic (prime)");
  cmd->add_option("--c", o.c, "residue degree, q = p^c");
  cmd->add_option("--modulus", o.modulus, "irreducible modulus, lowest degree first")->delimiter(',');
}

// JSON to --out when given, otherwise stdout.
void emit(const std::string& out, const json& j) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    ff::io::write_json_file(out, j);
  }
}

json input_hash(const std::string& path) { return ff::io::fnv1a_hex(ff::io::read_text_file(path)); }

int verdict(const std::vector<ff::CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return kFail;
  return kPass;
}

json reports_json(const std::vector<ff::CheckReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(ff::io::to_json(r));
  return {{"pass", verdict(reports) == kPass}, {"reports", arr}};
}

// ---------------------------------------------------------------- gen

struct GenOpts {
  Common common;
  std::string kind;
  std::size_t wavelets = 0;
  std::size_t size = 2;
  unsigned delays = 1;
};

int run_gen(const GenOpts& o) {
  const ff::Field field = o.common.field();
  if (o.kind == "haar") {
    emit(o.common.out, ff::io::to_json(ff::haar_bank(field)));
  } else if (o.kind == "random") {
    const std::size_t L = o.wavelets == 0 ? field->q() - 1 : o.wavelets;
    emit(o.common.out, ff::io::to_json(ff::random_tight_bank(field, L, o.common.seed, o.delays)));
  } else if (o.kind == "paraunitary") {
    emit(o.common.out, ff::io::to_json(ff::random_paraunitary(field, o.size, o.common.seed, o.delays)));
  } else {
    throw ff::InputError("unknown gen kind \"" + o.kind + "\" (haar, random, paraunitary)");
  }
  return kPass;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  Common common;
  std::string input;
  std::string dual;
  std::vector<std::string> checks{"uep", "subqmf", "polyphase", "mixed"};
  int depth = -1;
};

int run_verify(const VerifyOpts& o) {
  for (const auto& c : o.checks)
    if (c != "uep" && c != "subqmf" && c != "polyphase" && c != "mixed")
      throw ff::InputError("unknown check \"" + c + "\"");
  const json doc = ff::io::read_json_file(o.input);

  std::vector<ff::FilterBank> banks;
  bool have_pair = false;
  if (doc.is_object() && doc.contains("primal")) {
    const ff::FramePair pair = ff::io::pair_from_json(doc);
    banks = {pair.primal, pair.dual};
    have_pair = true;
  } else {
    banks.push_back(ff::io::bank_from_json(doc));
    if (!o.dual.empty()) {
      banks.push_back(ff::io::bank_from_json(ff::io::read_json_file(o.dual)));
      ff::require_same_field(banks[0].field(), banks[1].field());
      have_pair = true;
    }
  }
  const unsigned depth = o.depth >= 0 ? static_cast<unsigned>(o.depth) : ff::certification_depth(banks);

  std::vector<ff::CheckReport> reports;
  auto has = [&](const char* c) { return std::find(o.checks.begin(), o.checks.end(), c) != o.checks.end(); };
  for (const auto& b : banks) {
    if (has("uep")) reports.push_back(ff::check_uep(b, depth, o.common.tol));
    if (has("subqmf")) reports.push_back(ff::check_subqmf(b.m0(), depth, o.common.tol));
    if (has("polyphase")) reports.push_back(ff::check_polyphase_unitary(b, depth, o.common.tol));
  }
  if (has("mixed") && have_pair) reports.push_back(ff::check_mixed_orthogonality(banks[0], banks[1], depth, o.common.tol));

  emit(o.common.out, reports_json(reports));
  std::cerr << ff::io::format_report_table(reports);
  return verdict(reports);
}

// ---------------------------------------------------------------- pair / family

struct BuildOpts {
  Common common;
  std::string primal, dual, bank, paraunitary;
  std::size_t size = 0;
  unsigned delays = 1;
};

ff::Paraunitary load_or_make(const BuildOpts& o, const ff::Field& field, std::size_t size, json& prov) {
  if (!o.paraunitary.empty()) {
    prov["inputs"]["paraunitary"] = input_hash(o.paraunitary);
    ff::Paraunitary a = ff::io::paraunitary_from_json(ff::io::read_json_file(o.paraunitary), field);
    ff::require_same_field(a.field(), field);
    return a;
  }
  prov["seed"] = o.common.seed;
  prov["delays"] = o.delays;
  return ff::random_paraunitary(field, size, o.common.seed, o.delays);
}

int certification_failure(const std::string& out, const ff::CertificationError& e) {
  emit(out, {{"pass", false}, {"error", e.what()}, {"report", ff::io::to_json(e.report())}});
  std::cerr << "certification failed: " << e.what() << '\n';
  return kFail;
}

int run_pair(const BuildOpts& o) {
  const ff::FilterBank primal = ff::io::bank_from_json(ff::io::read_json_file(o.primal));
  const ff::FilterBank dual = ff::io::bank_from_json(ff::io::read_json_file(o.dual.empty() ? o.primal : o.dual));
  ff::require_same_field(primal.field(), dual.field());
  json prov = {{"algorithm", "derive_pair"}, {"tol", o.common.tol}};
  prov["inputs"]["primal"] = input_hash(o.primal);
  prov["inputs"]["dual"] = input_hash(o.dual.empty() ? o.primal : o.dual);
  try {
    const ff::Paraunitary a = load_or_make(o, primal.field(), 2 * primal.wavelet_count(), prov);
    const ff::FramePair pair =
        ff::derive_pair(primal.wavelets(), dual.wavelets(), primal.m0(), dual.m0(), a, o.common.tol);
    emit(o.common.out, ff::io::to_json(pair, prov));
  } catch (const ff::CertificationError& e) {
    return certification_failure(o.common.out, e);
  }
  return kPass;
}

int run_family(const BuildOpts& o) {
  const ff::FilterBank bank = ff::io::bank_from_json(ff::io::read_json_file(o.bank));
  json prov = {{"algorithm", "orthogonal_family"}, {"tol", o.common.tol}};
  prov["inputs"]["bank"] = input_hash(o.bank);
  const std::filesystem::path dir = o.common.out.empty() ? "." : o.common.out;
  std::filesystem::create_directories(dir);
  std::vector<ff::FilterBank> fams;
  try {
    const ff::Paraunitary a = load_or_make(o, bank.field(), o.size == 0 ? 2 : o.size, prov);
    fams = ff::orthogonal_family(bank, a, o.common.tol);
  } catch (const ff::CertificationError& e) {
    return certification_failure((dir / "family_failure.json").string(), e);
  }
  const unsigned depth = ff::certification_depth(fams);
  json index = {{"provenance", prov}, {"families", json::array()}, {"mixed_reports", json::array()}};
  for (std::size_t r = 0; r < fams.size(); ++r) {
    const std::string name = "family_" + std::to_string(r + 1) + ".json";
    ff::io::write_json_file((dir / name).string(), ff::io::to_json(fams[r]));
    index["families"].push_back(name);
  }
  for (std::size_t r = 0; r < fams.size(); ++r)
    for (std::size_t s = r + 1; s < fams.size(); ++s) {
      const std::string name = "mixed_" + std::to_string(r + 1) + "_" + std::to_string(s + 1) + ".json";
      ff::io::write_json_file((dir / name).string(),
                              ff::io::to_json(ff::check_mixed_orthogonality(fams[r], fams[s], depth, o.common.tol)));
      index["mixed_reports"].push_back(name);
    }
  ff::io::write_json_file((dir / "family.json").string(), index);
  return kPass;
}

// ---------------------------------------------------------------- experiment

struct ExpOpts {
  Common common;
  std::string kind, bank, pair, csv;
  unsigned levels = 4;       // J
  unsigned signal_size = 6;  // M, signal length q^M
  unsigned trials = 20;
  unsigned coarse = 2;
  int depth = -1;  // hat grid resolution for cascade / partition
  std::uint64_t translates = 0;
  bool skip_precondition = false;
};

int run_experiment(const ExpOpts& o) {
  json report;
  std::ostringstream csv;
  csv << std::setprecision(17);
  ff::ExperimentOptions eo;
  eo.levels = o.signal_size;
  eo.depth_levels = o.levels;
  eo.trials = o.trials;
  eo.seed = o.common.seed;
  eo.tol = o.common.tol;
  eo.require_uep = !o.skip_precondition;
  std::vector<double> per_trial;
  eo.per_trial = &per_trial;
  bool pass = true;

  auto load_bank = [&] {
    if (o.bank.empty()) throw ff::InputError("--bank is required for this experiment");
    return ff::io::bank_from_json(ff::io::read_json_file(o.bank));
  };
  auto hat_grid = [&](const ff::FilterBank& b) {
    const unsigned s = b.m0().required_depth();
    const unsigned fine = o.depth >= 0 ? static_cast<unsigned>(o.depth) : (s > 0 ? s - 1 : 0);
    return ff::cascade_phihat(b.m0(), o.levels, o.coarse, fine);
  };

  if (o.kind == "parseval") {
    const ff::CheckReport r = ff::parseval_experiment(load_bank(), eo);
    report = ff::io::to_json(r);
    pass = r.pass;
    csv << "trial,relative_deviation\n";
    for (std::size_t t = 0; t < per_trial.size(); ++t) csv << t << ',' << per_trial[t] << '\n';
  } else if (o.kind == "mixed") {
    ff::FramePair pair = [&] {
      if (!o.pair.empty()) return ff::io::pair_from_json(ff::io::read_json_file(o.pair));
      const ff::FilterBank b = load_bank();
      return ff::FramePair{b, b};
    }();
    const ff::CheckReport r = ff::mixed_frame_experiment(pair, eo);
    report = ff::io::to_json(r);
    pass = r.pass;
    csv << "trial,ratio\n";
    for (std::size_t t = 0; t < per_trial.size(); ++t) csv << t << ',' << per_trial[t] << '\n';
  } else if (o.kind == "cascade") {
    const ff::FilterBank b = load_bank();
    const ff::HatGrid h = hat_grid(b);
    const ff::CheckReport r = ff::telescoping_check(b, h, 100, o.common.tol);
    report = ff::io::to_json(r);
    pass = r.pass;
    csv << "index,valuation,re,im,abs\n";
    for (std::uint64_t g = 0; g < h.size(); ++g) {
      const ff::FieldElement x = h.point(g);
      csv << g << ',' << (x.is_zero() ? 0 : x.valuation()) << ',' << h.values[g].real() << ',' << h.values[g].imag()
          << ',' << std::abs(h.values[g]) << '\n';
    }
  } else if (o.kind == "partition") {
    const ff::FilterBank b = load_bank();
    const ff::HatGrid h = hat_grid(b);
    const std::uint64_t K = o.translates == 0 ? ff::grid_size(*b.field(), o.coarse) : o.translates;
    const ff::CheckReport r = ff::partition_of_unity_check(h, K, o.common.tol);
    report = ff::io::to_json(r);
    pass = r.pass;
    csv << "index,re,im\n";
    for (std::uint64_t g = 0; g < h.size(); ++g) csv << g << ',' << h.values[g].real() << ',' << h.values[g].imag() << '\n';
  } else if (o.kind == "transform") {
    const ff::FilterBank b = load_bank();
    const ff::DiscreteSignal v = ff::random_signal(b.field(), o.signal_size, o.common.seed);
    const ff::Decomposition d = ff::decompose(v, b, o.levels);
    const double err = [&] {
      const ff::DiscreteSignal w = ff::reconstruct(d, b);
      double e = 0.0;
      for (std::size_t i = 0; i < v.samples.size(); ++i) e = std::max(e, std::abs(w.samples[i] - v.samples[i]));
      return e;
    }();
    const ff::CheckReport r("reconstruction", o.signal_size, err, o.common.tol, ff::FieldElement(b.field()));
    report = ff::io::to_json(r);
    pass = r.pass;
    ff::io::write_transform_csv(csv, d);
  } else {
    throw ff::InputError("unknown experiment \"" + o.kind + "\" (parseval, mixed, cascade, partition, transform)");
  }

  report["experiment"] = {{"kind", o.kind},         {"levels", o.levels}, {"signal_size", o.signal_size},
                          {"trials", o.trials},     {"seed", o.common.seed}, {"coarse", o.coarse},
                          {"tol", o.common.tol},    {"precondition", !o.skip_precondition}};
  emit(o.common.out, report);
  if (!o.csv.empty()) {
    std::ofstream f(o.csv, std::ios::binary);
    if (!f) throw ff::InputError("cannot write " + o.csv);
    f << csv.str();
  }
  std::cerr << o.kind << ": " << (pass ? "pass" : "FAIL") << " (deviation " << report["max_deviation"] << ")\n";
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal wavelet frames on local fields of positive characteristic"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "write a filter bank or paraunitary matrix as JSON");
  g->add_option("kind", gen.kind, "haar | random | paraunitary")->required();
  add_field_flags(g, gen.common);
  g->add_option("--seed", gen.common.seed, "seed for random kinds");
  g->add_option("--wavelets", gen.wavelets, "wavelet count for random banks (default q-1)");
  g->add_option("--size", gen.size, "paraunitary matrix size");
  g->add_option("--delays", gen.delays, "delay factors in random products");
  g->add_option("--out", gen.common.out, "output file (default stdout)");

  VerifyOpts ver;
  auto* v = app.add_subcommand("verify", "run matrix checks on a bank or pair");
  v->add_option("input", ver.input, "bank or pair JSON")->required();
  v->add_option("--dual", ver.dual, "second bank for the mixed check");
  v->add_option("--checks", ver.checks, "subset of uep,subqmf,polyphase,mixed")->delimiter(',');
  v->add_option("--depth", ver.depth, "grid depth (default: covering depth)");
  v->add_option("--tol", ver.common.tol, "tolerance");
  v->add_option("--out", ver.common.out, "report file (default stdout)");

  BuildOpts pr;
  auto* p = app.add_subcommand("pair", "derive an orthogonal pair of frames");
  p->add_option("--primal", pr.primal, "primal bank JSON")->required();
  p->add_option("--dual", pr.dual, "dual bank JSON (default: primal)");
  p->add_option("--paraunitary", pr.paraunitary, "paraunitary matrix JSON of size 2L");
  p->add_option("--seed", pr.common.seed, "seed for a random paraunitary matrix");
  p->add_option("--delays", pr.delays, "delay factors in the random matrix");
  p->add_option("--tol", pr.common.tol, "certification tolerance");
  p->add_option("--out", pr.common.out, "pair file (default stdout)");

  BuildOpts fam;
  auto* f = app.add_subcommand("family", "derive pairwise orthogonal tight frames");
  f->add_option("--bank", fam.bank, "tight bank JSON")->required();
  f->add_option("--paraunitary", fam.paraunitary, "paraunitary matrix JSON");
  f->add_option("--size", fam.size, "size L of a random paraunitary matrix (default 2)");
  f->add_option("--seed", fam.common.seed, "seed for a random paraunitary matrix");
  f->add_option("--delays", fam.delays, "delay factors in the random matrix");
  f->add_option("--tol", fam.common.tol, "certification tolerance");
  f->add_option("--out", fam.common.out, "output directory");

  ExpOpts ex;
  auto* e = app.add_subcommand("experiment", "run a desk-scale experiment");
  e->add_option("kind", ex.kind, "parseval | mixed | cascade | partition | transform")->required();
  e->add_option("--bank", ex.bank, "bank JSON");
  e->add_option("--pair", ex.pair, "pair JSON (mixed)");
  e->add_option("--levels", ex.levels, "decomposition levels J, or cascade iterations");
  e->add_option("--signal-size", ex.signal_size, "signal length q^M, given as M");
  e->add_option("--trials", ex.trials, "random signals");
  e->add_option("--seed", ex.common.seed, "signal seed");
  e->add_option("--tol", ex.common.tol, "tolerance");
  e->add_option("--coarse", ex.coarse, "hat grid covers prime^{-coarse} D");
  e->add_option("--depth", ex.depth, "hat grid resolution");
  e->add_option("--translates", ex.translates, "partition translates K (default q^coarse)");
  e->add_flag("--skip-precondition", ex.skip_precondition, "run without the UEP precondition");
  e->add_option("--csv", ex.csv, "CSV output");
  e->add_option("--out", ex.common.out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kInput;
  }

  try {
    if (*g) return run_gen(gen);
    if (*v) return run_verify(ver);
    if (*p) return run_pair(pr);
    if (*f) return run_family(fam);
    if (*e) return run_experiment(ex);
  } catch (const ff::CertificationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kFail;
  } catch (const ff::DepthError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kDepth;
  } catch (const ff::SizeError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kDepth;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInput;
  }
  return kInput;
}
