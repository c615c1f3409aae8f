#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "framefield/io.hpp"

namespace fs = std::filesystem;
using framefield::io::json;

namespace {

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() / ("framefield_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  std::string at(const std::string& name) const { return (dir / name).string(); }
};

int run_env(const std::string& env, const std::string& args) {
  const std::string cmd = env + std::string(FRAMEFIELD_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run(const std::string& args) { return run_env("", args); }

json load(const std::string& path) { return framefield::io::read_json_file(path); }

}  // namespace

TEST_CASE("gen and verify") {
  Workdir w;
  const auto haar = w.at("haar.json");
  CHECK(run("gen haar --p 3 --out " + haar) == 0);
  CHECK(load(haar)["masks"].size() == 3);
  CHECK(run("verify " + haar + " --out " + w.at("r.json")) == 0);
  const json r = load(w.at("r.json"));
  REQUIRE(r["reports"].is_array());
  for (const auto& x : r["reports"]) CHECK(x["pass"] == true);

  CHECK(run("gen haar --p 2 --c 2 --out " + w.at("h4.json")) == 0);
  CHECK(run("verify " + w.at("h4.json") + " --checks uep,polyphase") == 0);

  CHECK(run("gen random --p 2 --wavelets 2 --seed 4 --delays 2 --out " + w.at("rb.json")) == 0);
  CHECK(run("verify " + w.at("rb.json") + " --checks uep --tol 1e-10") == 0);

  CHECK(run("gen paraunitary --p 2 --size 4 --seed 1 --out " + w.at("a.json")) == 0);
  CHECK(load(w.at("a.json"))["size"] == 4);
}

TEST_CASE("exit codes") {
  Workdir w;
  CHECK(run("gen haar --p 4") == 2);
  CHECK(run("gen nonsense --p 2") == 2);
  CHECK(run("verify " + w.at("missing.json")) == 2);
  {
    std::ofstream out(w.at("bad.json"));
    out << "{\"field\": {";
  }
  CHECK(run("verify " + w.at("bad.json")) == 2);

  // A lone m0 with no wavelets fails UEP.
  REQUIRE(run("gen haar --p 2 --out " + w.at("h.json")) == 0);
  json lone = load(w.at("h.json"));
  lone["masks"].erase(1);
  framefield::io::write_json_file(w.at("lone.json"), lone);
  CHECK(run("verify " + w.at("lone.json") + " --checks uep") == 1);

  CHECK(run("verify " + w.at("h.json") + " --depth 0") == 3);
  CHECK(run("experiment parseval --bank " + w.at("h.json") + " --levels 5 --signal-size 3") == 3);
}

TEST_CASE("pair and family") {
  Workdir w;
  const auto haar = w.at("haar.json");
  REQUIRE(run("gen haar --p 2 --out " + haar) == 0);
  CHECK(run("pair --primal " + haar + " --seed 3 --delays 1 --out " + w.at("p1.json")) == 0);
  CHECK(run("pair --primal " + haar + " --seed 3 --delays 1 --out " + w.at("p2.json")) == 0);
  CHECK(framefield::io::read_text_file(w.at("p1.json")) == framefield::io::read_text_file(w.at("p2.json")));
  const json p = load(w.at("p1.json"));
  CHECK(p["provenance"].contains("algorithm"));
  CHECK(run("verify " + w.at("p1.json")) == 0);
  CHECK(run("experiment mixed --pair " + w.at("p1.json") + " --levels 3 --signal-size 5 --trials 5") == 0);

  // Haar needs a 2L = 2 matrix; size 4 is rejected as a parameter error.
  REQUIRE(run("gen paraunitary --p 2 --size 4 --seed 1 --out " + w.at("a4.json")) == 0);
  CHECK(run("pair --primal " + haar + " --paraunitary " + w.at("a4.json")) == 2);

  const auto dir = w.at("fam");
  CHECK(run("family --bank " + haar + " --size 2 --seed 5 --out " + dir) == 0);
  CHECK(fs::exists(dir + "/family_1.json"));
  CHECK(fs::exists(dir + "/family_2.json"));
  CHECK(fs::exists(dir + "/mixed_1_2.json"));
  CHECK(load(dir + "/family.json").is_object());
}

TEST_CASE("experiments") {
  Workdir w;
  const auto haar = w.at("haar.json");
  REQUIRE(run("gen haar --p 2 --out " + haar) == 0);
  CHECK(run("experiment parseval --bank " + haar + " --levels 5 --signal-size 6 --out " + w.at("pv.json")) == 0);
  CHECK(load(w.at("pv.json"))["max_deviation"].get<double>() < 1e-12);
  CHECK(run("experiment cascade --bank " + haar + " --levels 8 --coarse 2 --depth 2") == 0);
  CHECK(run("experiment partition --bank " + haar + " --coarse 2 --depth 2") == 0);
  CHECK(run("experiment transform --bank " + haar + " --levels 2 --signal-size 4 --csv " + w.at("t.csv")) == 0);
  std::ifstream csv(w.at("t.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "level,branch,k,re,im");
}

TEST_CASE("experiment output does not depend on the thread count") {
  Workdir w;
  const auto bank = w.at("rb.json");
  REQUIRE(run("gen random --p 3 --wavelets 3 --seed 8 --out " + bank) == 0);
  const std::string args = "experiment parseval --bank " + bank + " --levels 3 --signal-size 5 --trials 16 --out ";
  CHECK(run_env("FRAMEFIELD_THREADS=1 ", args + w.at("t1.json")) == 0);
  CHECK(run_env("FRAMEFIELD_THREADS=4 ", args + w.at("t4.json")) == 0);
  CHECK(framefield::io::read_text_file(w.at("t1.json")) == framefield::io::read_text_file(w.at("t4.json")));
}
