#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "simlearn/errors.hpp"
#include "simlearn/harness.hpp"

using namespace simlearn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentConfig small_init_config(const std::string& out_dir) {
  ExperimentConfig config;
  config.preset = Preset::kInitOnly;
  config.instance.dim = 6;
  config.instance.link_builtin = "pure-he2";
  config.instance.seed = 5;
  config.init.n_override = 5000;
  config.trials = 2;
  config.n_eval = 5000;
  config.output_dir = out_dir;
  return config;
}

}  // namespace

TEST_CASE("parse_config defaults and validation") {
  const ExperimentConfig defaults = parse_config("{}");
  CHECK(defaults.preset == Preset::kFullPipeline);
  CHECK(defaults.instance.dim == 10);
  CHECK(defaults.instance.link_builtin == "pure-he2");
  CHECK(defaults.trials == 1);

  const ExperimentConfig custom = parse_config(R"({
    "preset": "init-only",
    "instance": {"dim": 12, "link": "relu",
                 "noise": {"model": "orthogonal-hermite", "degree": 2, "q": 0.01},
                 "seed": 3},
    "init": {"n": 2000},
    "trials": 4
  })");
  CHECK(custom.preset == Preset::kInitOnly);
  CHECK(custom.instance.dim == 12);
  CHECK(custom.instance.link_builtin == "relu");
  CHECK(custom.instance.noise == NoiseKind::kOrthogonalHermite);
  CHECK(custom.instance.q == 0.01);
  CHECK(*custom.init.n_override == 2000);
  CHECK(custom.trials == 4);

  const ExperimentConfig coeffs = parse_config(R"({
    "instance": {"link": {"coeffs": [0, 0.6, 0.8]}}
  })");
  CHECK(coeffs.instance.link_builtin.empty());
  CHECK(coeffs.instance.link_coeffs.size() == 3);
  CHECK(build_link(coeffs.instance).k_star == 1);
}

TEST_CASE("schema violations carry a location") {
  // Parse errors report the line number.
  try {
    parse_config("{\n  \"preset\": \"full-pipeline\",\n  oops\n}");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.location() == "line 3");
  }

  // Semantic errors report the JSON pointer.
  try {
    parse_config(R"({"preset": "no-such-preset"})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.location() == "/preset");
  }
  try {
    parse_config(R"({"instance": {"link": "no-such-link"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.location() == "/instance/link");
  }
  try {
    parse_config(R"({"instance": {"noise": {"model": "partial-trace", "degree": 3}}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.location() == "/instance/noise/degree");
  }
  CHECK_THROWS_AS(load_config("/no/such/file.json"), ConfigError);
}

TEST_CASE("emit/parse round trip is a fixed point") {
  ExperimentConfig config = small_init_config("unused");
  config.sweep_n = {100, 1000};
  const std::string once = emit_config(config);
  const std::string twice = emit_config(parse_config(once));
  CHECK(once == twice);
}

TEST_CASE("describe resolves derived parameters") {
  ExperimentConfig config;
  config.instance.link_builtin = "pure-he2";
  const std::string text = describe(config);
  CHECK(text.find("k*=2") != std::string::npos);
  CHECK(text.find("c_k*=1") != std::string::npos);
  CHECK(text.find("0.041386") != std::string::npos);  // 9/(40 e k* c_k*)
  CHECK(text.find("B4=15") != std::string::npos);

  ExperimentConfig with_eta = config;
  with_eta.gd.eta = 0.125;
  const std::string overridden = describe(with_eta);
  CHECK(overridden.find("eta=0.125 (explicit override)") != std::string::npos);
}

TEST_CASE("init-only preset writes canonical reports and an aggregate") {
  const fs::path dir = fs::temp_directory_path() / "simlearn_test_init";
  fs::remove_all(dir);
  const ExperimentConfig config = small_init_config(dir.string());

  std::ostringstream log;
  CHECK(run_experiment(config, log) == kExitOk);
  CHECK(fs::exists(dir / "trial_0.json"));
  CHECK(fs::exists(dir / "trial_1.json"));
  CHECK(fs::exists(dir / "aggregate.csv"));

  const std::string csv = slurp(dir / "aggregate.csv");
  CHECK(csv.rfind("trial,seed,n_init,n_gd,alignment,final_loss,wall_ms\n", 0) == 0);

  const auto report = nlohmann::json::parse(slurp(dir / "trial_0.json"));
  CHECK(report.contains("init"));
  CHECK(report.contains("eval"));
  CHECK(report["seed"] == 5);
  CHECK_FALSE(report.contains("gd"));

  // Reports are canonical: a rerun is byte-identical.
  const std::string first = slurp(dir / "trial_0.json");
  std::ostringstream log2;
  run_experiment(config, log2);
  CHECK(slurp(dir / "trial_0.json") == first);
  fs::remove_all(dir);
}

TEST_CASE("full pipeline preset records traces") {
  const fs::path dir = fs::temp_directory_path() / "simlearn_test_full";
  fs::remove_all(dir);
  ExperimentConfig config = small_init_config(dir.string());
  config.preset = Preset::kFullPipeline;
  config.trials = 1;
  config.gd.batch_n = 1000;
  config.gd.iters = 5;

  std::ostringstream log;
  CHECK(run_experiment(config, log) == kExitOk);
  CHECK(fs::exists(dir / "trial_0.json"));
  CHECK(fs::exists(dir / "trace_0.csv"));
  const std::string trace = slurp(dir / "trace_0.csv");
  CHECK(trace.rfind("t,sin_theta,loss,grad_norm\n", 0) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "trial_0.json"));
  CHECK(report.contains("gd"));
  fs::remove_all(dir);
}

TEST_CASE("sample sweep emits success rates") {
  const fs::path dir = fs::temp_directory_path() / "simlearn_test_sweep";
  fs::remove_all(dir);
  ExperimentConfig config = small_init_config(dir.string());
  config.preset = Preset::kSampleSweep;
  config.trials = 3;
  config.sweep_n = {200, 2000};

  std::ostringstream log;
  CHECK(run_experiment(config, log) == kExitOk);
  const std::string summary = slurp(dir / "sweep.csv");
  CHECK(summary.rfind("n,success_rate,trials\n", 0) == 0);
  CHECK(summary.find("\n200,") != std::string::npos);
  CHECK(summary.find("\n2000,") != std::string::npos);
  CHECK(fs::exists(dir / "sweep_detail.csv"));
  fs::remove_all(dir);
}

TEST_CASE("selftest preset respects the filter and exit codes") {
  ExperimentConfig config;
  config.preset = Preset::kSelftest;
  config.selftest_filter = "harness-config-roundtrip";
  std::ostringstream log;
  CHECK(run_experiment(config, log) == kExitOk);
  CHECK(log.str().find("PASS") != std::string::npos);
  CHECK(log.str().find("harness-config-roundtrip") != std::string::npos);
}
