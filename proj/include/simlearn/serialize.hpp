#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "simlearn/chow_pca.hpp"
#include "simlearn/eval.hpp"
#include "simlearn/sphere_gd.hpp"
#include "simlearn/synth.hpp"

namespace simlearn {

/// JSON-facing description of a ProblemInstance; the concrete w* and
/// adversary direction are reconstructed deterministically from the seed.
struct InstanceDesc {
  int dim = 10;
  std::string link_builtin = "pure-he2";  // empty when link_coeffs is used
  std::vector<double> link_coeffs;
  int link_degree = kDefaultLinkDegree;
  NoiseKind noise = NoiseKind::kRealizable;
  int noise_degree = 0;
  double q = 0.0;
  std::uint64_t seed = 1;
  std::optional<double> label_cap;
};

LinkSpec build_link(const InstanceDesc& desc);
ProblemInstance build_instance(const InstanceDesc& desc);
ProblemInstance build_instance(const InstanceDesc& desc, std::uint64_t seed_override);

enum class Preset { kInitOnly, kFullPipeline, kNoiseSweep, kSampleSweep, kSelftest };

std::string preset_name(Preset preset);

struct ExperimentConfig {
  Preset preset = Preset::kFullPipeline;
  InstanceDesc instance;
  InitConfig init;
  GDConfig gd;
  int trials = 1;
  std::string output_dir = "out";
  std::size_t n_eval = 100'000;
  std::vector<double> sweep_q;        // noise-sweep grid
  std::vector<std::size_t> sweep_n;   // sample-sweep grid
  std::string selftest_filter;
};

/// Parse with schema validation. Parse errors report "line N"; semantic
/// errors report the JSON pointer of the offending field. Both throw
/// ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string emit_config(const ExperimentConfig& config);

nlohmann::json to_json(const InitReport& report);
nlohmann::json to_json(const TrainReport& report, bool include_trace = false);
nlohmann::json to_json(const EvalReport& report);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace simlearn
