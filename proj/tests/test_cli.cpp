#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "azcoh/cli.hpp"

using namespace azcoh;
using namespace azcoh::cli;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("azcoh_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_state(const std::string& name, const DensityMatrix& rho) {
  const fs::path p = scratch_dir() / name;
  save_state(p, rho);
  return p;
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AZCOH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

DensityMatrix diag_state(double a, double b) {
  RealVector v(2);
  v << a, b;
  return DensityMatrix(DiagonalState(v));
}

}  // namespace

TEST_CASE("state files round-trip bit for bit", "[cli]") {
  Rng rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_state(2 + trial % 5, rng);
    const fs::path p = write_state("rt.json", rho);
    const DensityMatrix back = load_state(p);
    CHECK(back.matrix() == rho.matrix());
  }
}

TEST_CASE("bad state files", "[cli]") {
  auto kind = [](const fs::path& p) {
    try {
      load_state(p);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::NumericFailure;
  };
  CHECK(kind(scratch_dir() / "missing.json") == ErrorKind::BadInput);
  CHECK(kind(write_text("garbage.json", "{not json")) == ErrorKind::BadInput);
  CHECK(kind(write_text("shape.json", R"({"dim": 2, "re": [[1, 0]], "im": [[0, 0]]})")) == ErrorKind::BadInput);
  CHECK(kind(write_text("trace.json", R"({"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})")) ==
        ErrorKind::BadInput);

  std::ostringstream out, err;
  CoherenceArgs a;
  a.input = scratch_dir() / "garbage.json";
  CHECK(cmd_coherence(a, out, err) == kBadInput);
  CHECK(out.str().empty());
}

TEST_CASE("coherence command", "[cli]") {
  const fs::path plus = write_state("plus.json", max_coherent_state(2));
  const fs::path diag = write_state("diag.json", diag_state(0.3, 0.7));
  std::ostringstream out, err;
  CoherenceArgs a;
  a.input = plus;
  a.alpha = 0.5;
  a.z = 1.0;
  REQUIRE(cmd_coherence(a, out, err) == kOk);
  json j = json::parse(out.str());
  CHECK(j["value"].get<double>() == Approx(1.0).epsilon(1e-12));
  CHECK(j["method"] == "closed");
  CHECK(j["regime"] == "A");
  CHECK(j["converged"] == true);
  CHECK(j["optimal_sigma"].size() == 2);

  out.str("");
  a.input = diag;
  a.z = 2.0;
  a.method = "numeric";
  REQUIRE(cmd_coherence(a, out, err) == kOk);
  CHECK(json::parse(out.str())["value"].get<double>() == Approx(0.0).margin(1e-10));

  out.str("");
  a.alpha = 3.0;
  a.z = 0.7;
  CHECK(cmd_coherence(a, out, err) == kUnproven);
  a.allow_unproven = true;
  CHECK(cmd_coherence(a, out, err) == kOk);

  a.alpha = 1.0;
  CHECK(cmd_coherence(a, out, err) == kInvalidParams);
  a.alpha = 0.5;
  a.method = "closed";
  CHECK(cmd_coherence(a, out, err) == kInvalidParams);
}

TEST_CASE("divergence command", "[cli]") {
  Rng rng(97);
  const fs::path r = write_state("r.json", diag_state(0.9, 0.1));
  const fs::path s = write_state("s.json", diag_state(0.5, 0.5));
  const fs::path pure = write_state("pure.json", random_pure_state(3, rng));
  const fs::path mixed3 = write_state("mixed3.json", DensityMatrix(DiagonalState(RealVector::Constant(3, 1.0 / 3.0))));
  const fs::path e0 = write_state("e0.json", diag_state(1.0, 0.0));

  auto run = [](DivergenceArgs a, json* j) {
    std::ostringstream out, err;
    const int rc = cmd_divergence(a, out, err);
    if (rc == kOk) *j = json::parse(out.str());
    return rc;
  };
  json j;
  REQUIRE(run({r, s, 2.0, 1.0, "tsallis"}, &j) == kOk);
  CHECK(j["value"].get<double>() == Approx(0.64).epsilon(1e-12));
  CHECK(j["f"].get<double>() == Approx(1.64).epsilon(1e-12));
  REQUIRE(run({r, r, 0.7, 0.4, "generalized"}, &j) == kOk);
  CHECK(j["value"].get<double>() == Approx(0.0).margin(1e-12));
  REQUIRE(run({pure, mixed3, 1.5, 2.0, "renyi"}, &j) == kOk);
  CHECK(j["value"].get<double>() == Approx(std::log(3.0)).epsilon(1e-10));
  REQUIRE(run({s, e0, 2.0, 1.0, "generalized"}, &j) == kOk);
  CHECK(j["infinite"] == true);
  CHECK(j["value"].is_null());

  CHECK(run({r, s, 2.0, 2.0, "tsallis"}, &j) == kInvalidParams);
  CHECK(run({r, s, 1.0, 1.0, "renyi"}, &j) == kInvalidParams);
  CHECK(run({r, mixed3, 0.5, 1.0, "renyi"}, &j) == kInvalidParams);
  CHECK(run({r, s, 0.5, 1.0, "bogus"}, &j) == kInvalidParams);
}

TEST_CASE("qubit sweep", "[cli]") {
  SweepArgs a;
  a.points = 21;
  a.output = scratch_dir() / "sweep.csv";
  std::ostringstream err;
  REQUIRE(cmd_sweep_qubit(a, err) == kOk);
  const auto rows = read_csv(a.output);
  REQUIRE(rows.size() == 22);
  CHECK(rows[0] == std::vector<std::string>{"c3", "c_half_half", "c_half_one", "c_half_two", "numeric_half_half",
                                            "numeric_half_one", "numeric_half_two", "absdiff_half_half",
                                            "absdiff_half_one", "absdiff_half_two"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 10);
    std::vector<double> v;
    for (const auto& c : rows[i]) v.push_back(std::stod(c));
    CHECK(v[1] <= v[2] + 1e-9);
    CHECK(v[2] <= v[3] + 1e-9);
    for (int k = 1; k <= 3; ++k) CHECK(v[static_cast<std::size_t>(k)] <= 1.0 + 1e-9);
    for (int k = 7; k <= 9; ++k) CHECK(v[static_cast<std::size_t>(k)] <= 1e-5);
  }
  const auto mid = rows[11];
  CHECK(std::stod(mid[0]) == 0.0);
  for (int k = 1; k <= 3; ++k) CHECK(std::stod(mid[static_cast<std::size_t>(k)]) == Approx(1.0).epsilon(1e-12));
  for (const auto* row : {&rows[1], &rows[21]}) {
    CHECK(std::abs(std::stod((*row)[0])) == 1.0);
    for (int k = 1; k <= 3; ++k) CHECK(std::stod((*row)[static_cast<std::size_t>(k)]) == Approx(0.0).margin(1e-12));
  }

  a.output = scratch_dir() / "no" / "such" / "dir" / "sweep.csv";
  CHECK(cmd_sweep_qubit(a, err) == kBadInput);
  a.points = 1;
  CHECK(cmd_sweep_qubit(a, err) == kInvalidParams);
}

TEST_CASE("verify command", "[cli]") {
  std::ostringstream out, err;
  VerifyArgs a;
  a.suite = "lemma1";
  a.alpha = 0.5;
  a.z = 1.0;
  a.trials = 100;
  a.seed = 7;
  REQUIRE(cmd_verify(a, out, err) == kOk);
  const json j = json::parse(out.str());
  CHECK(j["passed"] == true);
  CHECK(j["suite"] == "lemma1");
  CHECK(j.contains("worst"));

  out.str("");
  a.suite = "oracle";
  a.z = 2.0;
  a.trials = 10;
  CHECK(cmd_verify(a, out, err) == kOk);

  a.suite = "nonsense";
  CHECK(cmd_verify(a, out, err) == kInvalidParams);
}

TEST_CASE("commands are deterministic under a fixed seed", "[cli]") {
  Rng rng(101);
  const fs::path in = write_state("det.json", random_state(3, rng));
  CoherenceArgs a;
  a.input = in;
  a.alpha = 0.5;
  a.z = 2.0;
  a.seed = 5;
  std::ostringstream o1, o2, err;
  REQUIRE(cmd_coherence(a, o1, err) == kOk);
  REQUIRE(cmd_coherence(a, o2, err) == kOk);
  CHECK(o1.str() == o2.str());
}

TEST_CASE("executable exit codes", "[cli]") {
  const fs::path plus = write_state("exe_plus.json", max_coherent_state(2));
  const std::string p = plus.string();
  CHECK(run_cli("coherence " + p + " --alpha 0.5 --z 1") == 0);
  CHECK(run_cli("coherence --input " + p + " --alpha 0.5 --z 2 --method numeric --seed 3") == 0);
  CHECK(run_cli("coherence " + p + " --alpha 3 --z 0.7") == 4);
  CHECK(run_cli("coherence " + p + " --alpha 3 --z 0.7 --allow-unproven") == 0);
  CHECK(run_cli("coherence " + (scratch_dir() / "absent.json").string() + " --alpha 0.5 --z 1") == 2);
  CHECK(run_cli("coherence " + p + " --alpha -1 --z 1") == 3);
  CHECK(run_cli("coherence " + p + " --z 1") == 3);
  CHECK(run_cli("divergence " + p + " " + p + " --alpha 2 --kind generalized") == 0);
  CHECK(run_cli("verify lemma1 --alpha 0.5 --z 1 --trials 20 --seed 7") == 0);
  CHECK(run_cli("sweep --points 5 --output " + (scratch_dir() / "exe.csv").string()) == 0);
  CHECK(run_cli("sweep --points 5 --output /nonexistent_dir/x.csv") == 2);
  CHECK(run_cli("--help") == 0);
}
