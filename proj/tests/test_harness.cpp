#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <string>

#include "harness.hpp"
#include "io.hpp"

using namespace rcns;
namespace fs = std::filesystem;

namespace {

std::string tiny_config(const std::string& extra = "", const std::string& experiment = "stability") {
  return "model.gamma = 2.0\n"
         "model.mu = 1.0\n"
         "model.tau = 0.01\n"
         "states.v_plus = 1.2\n"
         "states.u_plus = 0\n"
         "states.v_m = 1.0\n"
         "states.v_minus = 0.9\n"
         "grid.L = 60\n"
         "grid.N = 128\n"
         "solver.cfl = 0.9\n"
         "solver.end_time = 0.5\n"
         "solver.output_stride = 4\n"
         "shift.lambda_amp = auto\n"
         "perturbation.shape = gaussian_bump\n"
         "perturbation.amplitude = 0.005\n"
         "perturbation.center = -20\n"
         "perturbation.width = 6\n"
         "perturbation.target_fields = vu\n"
         "experiment = " + experiment + "\n"
         "output_dir = unused\n"
         "seed = 1\n" +
         extra;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("rcns_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing round trip and validation") {
  const harness::ExperimentConfig c = harness::parse_config_text(tiny_config());
  CHECK(c.gamma == 2.0);
  CHECK(c.N == 128);
  CHECK(c.lambda_amp < 0.0);  // auto
  CHECK(c.center == -20.0);
  CHECK(c.target_fields == "vu");

  const harness::ExperimentConfig c2 = harness::parse_config_text(harness::render_config(c));
  CHECK(c2.gamma == c.gamma);
  CHECK(c2.N == c.N);
  CHECK(c2.end_time == c.end_time);

  // strictness
  CHECK_THROWS_AS(harness::parse_config_text("model.gamma = 2\n"), ConfigError);
  CHECK_THROWS_AS(harness::parse_config_text(tiny_config("bogus.key = 3\n")), ConfigError);
  CHECK_THROWS_AS(harness::parse_config_text(tiny_config("model.gamma = 2.0\n")), ConfigError);
  CHECK_THROWS_AS(harness::parse_config_text(tiny_config("", "warp_drive")), ConfigError);

  // sweep list ordering
  CHECK_THROWS_AS(
      harness::parse_config_text(tiny_config("sweep.tau_list = 1e-4,1e-3\n", "relax_sweep")),
      ConfigError);
  const harness::ExperimentConfig sw =
      harness::parse_config_text(tiny_config("sweep.tau_list = 1e-2,1e-3\n", "relax_sweep"));
  CHECK(sw.tau_list.size() == 2);
}

TEST_CASE("experiment build validates and resolves sizing") {
  harness::ExperimentConfig c = harness::parse_config_text(tiny_config());
  const harness::BuiltExperiment b = harness::build_experiment(c);
  CHECK(b.lambda == doctest::Approx(std::sqrt(b.states.delta_S)));
  CHECK(b.grid.cells == 128);

  // the relaxation-time window is enforced up front
  c.tau = 1.5;  // beyond the hard cap of 1
  CHECK_THROWS_AS(harness::build_experiment(c), ConfigError);
  c.tau = 0.8;  // inside the cap but outside mu/|h'| for a strong shock
  c.v_plus = 2.6;
  CHECK_THROWS_AS(harness::build_experiment(c), ConfigError);

  // auto domain sizing: L = max(40/delta_S, 8 |lambda1(v_minus)| T)
  harness::ExperimentConfig d = harness::parse_config_text(tiny_config());
  d.L = -1.0;
  d.end_time = 200.0;
  const harness::BuiltExperiment bd = harness::build_experiment(d);
  const double expect =
      8.0 * std::abs(eos::lambda1(bd.model, 0.9)) * 200.0;
  CHECK(bd.grid.half_width == doctest::Approx(expect).epsilon(1e-12));

  // perturbations cannot drive the volume negative
  harness::ExperimentConfig e = harness::parse_config_text(tiny_config());
  e.amplitude = 5.0;
  const harness::BuiltExperiment be = harness::build_experiment(e);
  CHECK_THROWS_AS(harness::initial_state(be, e), ConfigError);
}

TEST_CASE("zero-amplitude initial data is exactly the composite") {
  harness::ExperimentConfig c = harness::parse_config_text(tiny_config());
  c.amplitude = 0.0;
  const harness::BuiltExperiment b = harness::build_experiment(c);
  const solver::FieldState s = harness::initial_state(b, c);
  for (int i = 0; i < b.grid.cells; ++i) {
    const waves::CompositeValue w = b.composite->eval(0.0, b.grid.center(i), 0.0);
    CHECK(s.v[i] == w.v);
    CHECK(s.u[i] == w.u);
    CHECK(s.pi[i] == w.pi);
  }
}

TEST_CASE("git-style content hashing") {
  CHECK(io::sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(io::sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
  // matches `git hash-object` on a file containing "hello\n"
  CHECK(io::git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("stability runs are deterministic and carry provenance") {
  const harness::ExperimentConfig c = harness::parse_config_text(tiny_config());
  TempDir d1("det1"), d2("det2");
  const nlohmann::json s1 = harness::run_stability(c, d1.path.string(), harness::parse_formats("csv,json"));
  const nlohmann::json s2 = harness::run_stability(c, d2.path.string(), harness::parse_formats("csv,json"));

  CHECK(io::read_text_file((d1.path / "series.csv").string()) ==
        io::read_text_file((d2.path / "series.csv").string()));
  CHECK(io::read_text_file((d1.path / "shift.csv").string()) ==
        io::read_text_file((d2.path / "shift.csv").string()));
  CHECK(io::read_text_file((d1.path / "summary.json").string()) ==
        io::read_text_file((d2.path / "summary.json").string()));

  CHECK(s1.contains("config_echo"));
  CHECK(s1["config_sha1"] == io::git_blob_sha1(tiny_config()));
  CHECK(s1["sup_error_initial"].get<double>() > 0.0);
}

TEST_CASE("json-only format emits exactly the summary") {
  const harness::ExperimentConfig c = harness::parse_config_text(tiny_config());
  TempDir d("jsononly");
  harness::run_stability(c, d.path.string(), harness::parse_formats("json"));
  std::set<std::string> files;
  for (const auto& entry : fs::directory_iterator(d.path))
    files.insert(entry.path().filename().string());
  CHECK(files == std::set<std::string>{"summary.json"});
}

TEST_CASE("svg charts follow the summary manifest") {
  const harness::ExperimentConfig c = harness::parse_config_text(tiny_config());
  TempDir d("svg");
  const nlohmann::json s =
      harness::run_stability(c, d.path.string(), harness::parse_formats("json,svg"));
  for (const auto& name : s["charts"]) {
    const fs::path chart = d.path / ("chart_" + name.get<std::string>() + ".svg");
    CHECK(fs::exists(chart));
  }
}

TEST_CASE("profile experiment writes the wave artifacts") {
  const harness::ExperimentConfig c =
      harness::parse_config_text(tiny_config("", "profile_only"));
  TempDir d("profile");
  const nlohmann::json s = harness::run_experiment(c, d.path.string(), "csv,json", 1);
  CHECK(s["experiment"] == "profile_only");
  CHECK(fs::exists(d.path / "profile.csv"));
  CHECK(fs::exists(d.path / "profile.json"));
  const std::string csv = io::read_text_file((d.path / "profile.csv").string());
  CHECK(csv.rfind("xi,v,u,pi\n", 0) == 0);
  const nlohmann::json meta = nlohmann::json::parse(
      io::read_text_file((d.path / "profile.json").string()));
  CHECK(meta["sigma"].get<double>() == doctest::Approx(1.2360330811826105));
  CHECK(meta["tail_rate"].get<double>() > 0.0);
}

TEST_CASE("format parsing") {
  const harness::OutputFormats f = harness::parse_formats("csv , json");
  CHECK(f.csv);
  CHECK(f.json);
  CHECK(!f.svg);
  CHECK_THROWS_AS(harness::parse_formats("yaml"), ConfigError);
  CHECK_THROWS_AS(harness::parse_formats(""), ConfigError);
}
