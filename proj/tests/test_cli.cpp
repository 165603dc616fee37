#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TQD_VERIFY_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tqd_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::ordered_json parse(const Run& r) { return nlohmann::ordered_json::parse(r.out); }

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").code == 0);
  CHECK(run("ontic --help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("ontic --q").code == 2);
  CHECK(run("ontic --unknown 3").code == 2);
}

TEST_CASE("hamiltonian at (1,2,7) has eight distinct eigenvalues") {
  const auto r = run("hamiltonian --a 1 --b 2 --c 7");
  const auto j = parse(r);
  CHECK(j["command"] == "hamiltonian");
  CHECK(j["result"]["numeric_spectrum"]["distinct_eigenvalues"] == 8);
  // The builder and the printed E4 disagree with the printed matrix.
  CHECK(r.code == 1);
  CHECK(j["verdicts"]["builder_reproduces_printed_matrix"] == false);
}

TEST_CASE("hamiltonian at (1,2,3) warns about E1 = E4") {
  const auto j = parse(run("hamiltonian --a 1 --b 2 --c 3"));
  CHECK(j["result"]["analytic_spectrum"]["printed"]["collisions"][0]["vanishing_form"] == "a+b-c");
}

TEST_CASE("hamiltonian at the origin is the zero matrix") {
  const auto j = parse(run("hamiltonian --a 0 --b 0 --c 0"));
  for (const auto& row : j["result"]["printed_matrix"])
    for (const auto& v : row) CHECK(v == 0);
  CHECK(j["result"]["numeric_spectrum"]["distinct_eigenvalues"] == 1);
}

TEST_CASE("exclusion at pi/3") {
  const auto r = run("exclusion --theta 1.0471975511965976");
  CHECK(r.code == 0);
  const auto j = parse(r);
  CHECK(j["result"]["matching"]["outcome_to_preparation"][1] == 6);
  CHECK(j["status"] == "pass");
}

TEST_CASE("exclusion grid") {
  const auto r = run("exclusion --grid 99");
  CHECK(r.code == 0);
  CHECK(parse(r)["verdicts"]["matching_theta_independent"] == true);
}

TEST_CASE("out-of-range inputs exit 2") {
  CHECK(run("exclusion --theta 1.5707963267948966").code == 2);
  CHECK(run("exclusion --theta 0").code == 2);
  CHECK(run("ontic --q 0").code == 2);
  CHECK(run("ontic --q 1.5").code == 2);
  CHECK(run("ontic --samples 0").code == 2);
  CHECK(run("hamiltonian --a nan").code == 2);
  CHECK(run("pbr2 --output csv").code == 2);
  CHECK(run("hamiltonian --perturb 8,0,1").code == 2);
}

TEST_CASE("pbr2 report matches the golden file") {
  const auto r = run("pbr2");
  CHECK(r.code == 0);
  CHECK(r.out == slurp(fs::path(TQD_TEST_DATA) / "pbr2.golden.json"));
}

TEST_CASE("ontic bound and determinism") {
  const auto a = run("ontic --q 0.5 --samples 100000 --seed 7");
  const auto b = run("ontic --q 0.5 --samples 100000 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = parse(a);
  CHECK(j["result"]["overlap_model"]["forbidden_outcome_bound"].get<double>() >= 0.015625);
  CHECK(j["parameters"]["seed"] == 7);
  CHECK(run("ontic --q 0.5 --samples 100000 --seed 8").out != a.out);
}

TEST_CASE("default seed is 0") {
  CHECK(parse(run("ontic --samples 100"))["parameters"]["seed"] == 0);
}

TEST_CASE("csv output for scans") {
  const auto r = run("exclusion --grid 2 --output csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("theta,prep_index,outcome_index,probability\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 2 * 64);
}

TEST_CASE("reports can be written to a file") {
  const auto path = scratch("pbr2.json");
  fs::remove(path);
  const auto r = run("pbr2 --out " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == run("pbr2").out);
}

TEST_CASE("config files: key=value and JSON, flags win") {
  const auto kv = scratch("settings.cfg");
  std::ofstream(kv) << "# toy model\nq = 0.25\nsamples = 1000\nseed = 3\n";
  const auto j = parse(run("ontic --config " + kv.string() + " --seed 5"));
  CHECK(j["parameters"]["q"] == 0.25);
  CHECK(j["parameters"]["samples"] == 1000);
  CHECK(j["parameters"]["seed"] == 5);

  const auto js = scratch("settings.json");
  std::ofstream(js) << R"({"a": 1, "b": 2, "c": 3})";
  const auto h = parse(run("hamiltonian --config " + js.string()));
  CHECK(h["parameters"]["c"] == 3);

  const auto bad = scratch("bad.cfg");
  std::ofstream(bad) << "q = 0.5\nnonsense\n";
  CHECK(run("ontic --config " + bad.string()).code == 2);
  CHECK(run("ontic --config /nonexistent/file.cfg").code == 2);
}

TEST_CASE("model files are written and read back") {
  const auto path = scratch("toy.json");
  CHECK(run("ontic --q 0.25 --samples 100 --write-model " + path.string()).code == 0);
  const auto from_file = parse(run("ontic --q 0.25 --samples 100 --model " + path.string()));
  const auto built = parse(run("ontic --q 0.25 --samples 100"));
  CHECK(from_file["result"]["overlap_model"] == built["result"]["overlap_model"]);

  const auto broken = scratch("broken.json");
  std::ofstream(broken) << R"({"schema_version": "1", "parties": {}})";
  CHECK(run("ontic --model " + broken.string()).code == 2);
  std::ofstream(broken) << "not json";
  CHECK(run("ontic --model " + broken.string()).code == 2);
}

TEST_CASE("a corrupted matrix entry flips the hamiltonian verdicts") {
  const auto clean = parse(run("hamiltonian --a 1 --b 2 --c 7"));
  const auto dirty = parse(run("hamiltonian --a 1 --b 2 --c 7 --perturb 0,0,1e-6"));
  CHECK(clean["verdicts"]["printed_eigenvectors_verified"] == true);
  CHECK(dirty["verdicts"]["printed_eigenvectors_verified"] == false);
}
