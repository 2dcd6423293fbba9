#include "simlearn/serialize.hpp"

#include <fstream>
#include <sstream>

#include "simlearn/errors.hpp"

namespace simlearn {

using nlohmann::json;

namespace {

std::string line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return "line " + std::to_string(line);
}

[[noreturn]] void fail(const std::string& pointer, const std::string& message) {
  throw ConfigError(pointer, message);
}

template <typename T>
T get_or(const json& j, const std::string& pointer, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(pointer + "/" + key, e.what());
  }
}

NoiseKind noise_kind_from_name(const std::string& name, const std::string& pointer) {
  if (name == "realizable") return NoiseKind::kRealizable;
  if (name == "orthogonal-hermite") return NoiseKind::kOrthogonalHermite;
  if (name == "partial-trace") return NoiseKind::kPartialTraceAdversary;
  if (name == "bounded-random") return NoiseKind::kBoundedRandom;
  fail(pointer, "unknown noise model '" + name + "'");
}

std::string noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kRealizable: return "realizable";
    case NoiseKind::kOrthogonalHermite: return "orthogonal-hermite";
    case NoiseKind::kPartialTraceAdversary: return "partial-trace";
    case NoiseKind::kBoundedRandom: return "bounded-random";
  }
  return "realizable";
}

SvdMethod svd_from_name(const std::string& name, const std::string& pointer) {
  if (name == "auto") return SvdMethod::kAuto;
  if (name == "full") return SvdMethod::kFull;
  if (name == "power") return SvdMethod::kPowerIteration;
  fail(pointer, "unknown svd method '" + name + "'");
}

std::string svd_name(SvdMethod method) {
  switch (method) {
    case SvdMethod::kAuto: return "auto";
    case SvdMethod::kFull: return "full";
    case SvdMethod::kPowerIteration: return "power";
  }
  return "auto";
}

InstanceDesc parse_instance(const json& j) {
  const std::string ptr = "/instance";
  if (!j.is_object()) fail(ptr, "must be an object");
  InstanceDesc desc;
  desc.dim = get_or<int>(j, ptr, "dim", 10);
  if (desc.dim < 1) fail(ptr + "/dim", "must be >= 1");

  if (j.contains("link")) {
    const json& link = j.at("link");
    if (link.is_string()) {
      desc.link_builtin = link.get<std::string>();
    } else if (link.is_object() && link.contains("coeffs")) {
      desc.link_builtin.clear();
      try {
        desc.link_coeffs = link.at("coeffs").get<std::vector<double>>();
      } catch (const json::exception& e) {
        fail(ptr + "/link/coeffs", e.what());
      }
      if (desc.link_coeffs.empty()) fail(ptr + "/link/coeffs", "must be non-empty");
    } else if (link.is_object() && link.contains("builtin")) {
      desc.link_builtin = link.at("builtin").get<std::string>();
    } else {
      fail(ptr + "/link", "expected a builtin name or {\"coeffs\": [...]}");
    }
    if (link.is_object()) {
      desc.link_degree = get_or<int>(link, ptr + "/link", "max_degree", kDefaultLinkDegree);
    }
  }
  if (!desc.link_builtin.empty() && !is_builtin_link(desc.link_builtin)) {
    fail(ptr + "/link", "unknown builtin link '" + desc.link_builtin + "'");
  }

  if (j.contains("noise")) {
    const json& noise = j.at("noise");
    if (!noise.is_object()) fail(ptr + "/noise", "must be an object");
    const std::string model = get_or<std::string>(noise, ptr + "/noise", "model", "realizable");
    desc.noise = noise_kind_from_name(model, ptr + "/noise/model");
    desc.noise_degree = get_or<int>(noise, ptr + "/noise", "degree", 0);
    desc.q = get_or<double>(noise, ptr + "/noise", "q", 0.0);
    if (desc.q < 0.0) fail(ptr + "/noise/q", "must be >= 0");
    if (desc.noise == NoiseKind::kOrthogonalHermite && desc.noise_degree < 1) {
      fail(ptr + "/noise/degree", "orthogonal-hermite needs degree >= 1");
    }
    if (desc.noise == NoiseKind::kPartialTraceAdversary &&
        (desc.noise_degree < 2 || desc.noise_degree % 2 != 0)) {
      fail(ptr + "/noise/degree", "partial-trace needs an even degree >= 2");
    }
  }
  desc.seed = get_or<std::uint64_t>(j, ptr, "seed", 1);
  if (j.contains("label_cap")) {
    const double cap = j.at("label_cap").get<double>();
    if (cap <= 0.0) fail(ptr + "/label_cap", "must be positive");
    desc.label_cap = cap;
  }
  return desc;
}

json emit_instance(const InstanceDesc& desc) {
  json j;
  j["dim"] = desc.dim;
  if (!desc.link_builtin.empty()) {
    j["link"] = desc.link_builtin;
  } else {
    j["link"] = json{{"coeffs", desc.link_coeffs}, {"max_degree", desc.link_degree}};
  }
  json noise;
  noise["model"] = noise_kind_name(desc.noise);
  if (desc.noise_degree > 0) noise["degree"] = desc.noise_degree;
  if (desc.noise != NoiseKind::kRealizable) noise["q"] = desc.q;
  j["noise"] = noise;
  j["seed"] = desc.seed;
  if (desc.label_cap) j["label_cap"] = *desc.label_cap;
  return j;
}

InitConfig parse_init(const json& j) {
  const std::string ptr = "/init";
  if (!j.is_object()) fail(ptr, "must be an object");
  InitConfig cfg;
  cfg.k = get_or<int>(j, ptr, "k", 0);
  cfg.eps = get_or<double>(j, ptr, "eps", 0.05);
  if (cfg.eps <= 0.0) fail(ptr + "/eps", "must be positive");
  cfg.eps0 = get_or<double>(j, ptr, "eps0", 0.0);
  if (j.contains("n")) {
    const auto n = j.at("n").get<std::int64_t>();
    if (n < 1) fail(ptr + "/n", "must be >= 1");
    cfg.n_override = static_cast<std::size_t>(n);
  }
  cfg.sample_constant = get_or<double>(j, ptr, "sample_constant", 1.0);
  if (cfg.sample_constant <= 0.0) fail(ptr + "/sample_constant", "must be positive");
  cfg.svd = svd_from_name(get_or<std::string>(j, ptr, "svd", "auto"), ptr + "/svd");
  cfg.power_iters = get_or<int>(j, ptr, "power_iters", 200);
  return cfg;
}

json emit_init(const InitConfig& cfg) {
  json j;
  j["k"] = cfg.k;
  j["eps"] = cfg.eps;
  j["eps0"] = cfg.eps0;
  if (cfg.n_override) j["n"] = *cfg.n_override;
  j["sample_constant"] = cfg.sample_constant;
  j["svd"] = svd_name(cfg.svd);
  j["power_iters"] = cfg.power_iters;
  return j;
}

GDConfig parse_gd(const json& j) {
  const std::string ptr = "/gd";
  if (!j.is_object()) fail(ptr, "must be an object");
  GDConfig cfg;
  cfg.eta = get_or<double>(j, ptr, "eta", 0.0);
  if (cfg.eta < 0.0) fail(ptr + "/eta", "must be >= 0 (0 derives the default)");
  cfg.iters = get_or<int>(j, ptr, "iters", 0);
  if (cfg.iters < 0) fail(ptr + "/iters", "must be >= 0 (0 derives the default)");
  const auto batch = get_or<std::int64_t>(j, ptr, "batch", 10'000);
  if (batch < 1) fail(ptr + "/batch", "must be >= 1");
  cfg.batch_n = static_cast<std::size_t>(batch);
  cfg.delta = get_or<double>(j, ptr, "delta", 0.1);
  cfg.eps = get_or<double>(j, ptr, "eps", 0.05);
  if (cfg.eps <= 0.0) fail(ptr + "/eps", "must be positive");
  cfg.record_trace = get_or<bool>(j, ptr, "record_trace", true);
  cfg.truncate_labels = get_or<bool>(j, ptr, "truncate_labels", true);
  cfg.skip_when_noise_dominates = get_or<bool>(j, ptr, "skip_when_noise_dominates", false);
  return cfg;
}

json emit_gd(const GDConfig& cfg) {
  json j;
  j["eta"] = cfg.eta;
  j["iters"] = cfg.iters;
  j["batch"] = cfg.batch_n;
  j["delta"] = cfg.delta;
  j["eps"] = cfg.eps;
  j["record_trace"] = cfg.record_trace;
  j["truncate_labels"] = cfg.truncate_labels;
  j["skip_when_noise_dominates"] = cfg.skip_when_noise_dominates;
  return j;
}

}  // namespace

LinkSpec build_link(const InstanceDesc& desc) {
  if (!desc.link_builtin.empty()) return make_link(desc.link_builtin, desc.link_degree);
  return make_link_from_coeffs("custom", desc.link_coeffs, desc.link_degree);
}

ProblemInstance build_instance(const InstanceDesc& desc) {
  return build_instance(desc, desc.seed);
}

ProblemInstance build_instance(const InstanceDesc& desc, std::uint64_t seed_override) {
  return make_instance(desc.dim, build_link(desc), desc.noise, desc.noise_degree, desc.q,
                       seed_override, desc.label_cap);
}

std::string preset_name(Preset preset) {
  switch (preset) {
    case Preset::kInitOnly: return "init-only";
    case Preset::kFullPipeline: return "full-pipeline";
    case Preset::kNoiseSweep: return "noise-sweep";
    case Preset::kSampleSweep: return "sample-sweep";
    case Preset::kSelftest: return "selftest";
  }
  return "full-pipeline";
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(line_of_byte(text, e.byte), e.what());
  }
  if (!j.is_object()) fail("/", "config must be a JSON object");

  ExperimentConfig config;
  const std::string preset = get_or<std::string>(j, "", "preset", "full-pipeline");
  if (preset == "init-only") config.preset = Preset::kInitOnly;
  else if (preset == "full-pipeline") config.preset = Preset::kFullPipeline;
  else if (preset == "noise-sweep") config.preset = Preset::kNoiseSweep;
  else if (preset == "sample-sweep") config.preset = Preset::kSampleSweep;
  else if (preset == "selftest") config.preset = Preset::kSelftest;
  else fail("/preset", "unknown preset '" + preset + "'");

  if (j.contains("instance")) config.instance = parse_instance(j.at("instance"));
  if (j.contains("init")) config.init = parse_init(j.at("init"));
  if (j.contains("gd")) config.gd = parse_gd(j.at("gd"));
  config.trials = get_or<int>(j, "", "trials", 1);
  if (config.trials < 1) fail("/trials", "must be >= 1");
  config.output_dir = get_or<std::string>(j, "", "output_dir", "out");
  const auto n_eval = get_or<std::int64_t>(j, "", "n_eval", 100'000);
  if (n_eval < 1000) fail("/n_eval", "must be >= 1000");
  config.n_eval = static_cast<std::size_t>(n_eval);
  if (j.contains("sweep_q")) {
    config.sweep_q = j.at("sweep_q").get<std::vector<double>>();
    for (double q : config.sweep_q) {
      if (q < 0.0) fail("/sweep_q", "entries must be >= 0");
    }
  }
  if (j.contains("sweep_n")) {
    for (const auto& entry : j.at("sweep_n")) {
      const auto n = entry.get<std::int64_t>();
      if (n < 1) fail("/sweep_n", "entries must be >= 1");
      config.sweep_n.push_back(static_cast<std::size_t>(n));
    }
  }
  config.selftest_filter = get_or<std::string>(j, "", "filter", "");
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string emit_config(const ExperimentConfig& config) {
  json j;
  j["preset"] = preset_name(config.preset);
  j["instance"] = emit_instance(config.instance);
  j["init"] = emit_init(config.init);
  j["gd"] = emit_gd(config.gd);
  j["trials"] = config.trials;
  j["output_dir"] = config.output_dir;
  j["n_eval"] = config.n_eval;
  if (!config.sweep_q.empty()) j["sweep_q"] = config.sweep_q;
  if (!config.sweep_n.empty()) j["sweep_n"] = config.sweep_n;
  if (!config.selftest_filter.empty()) j["filter"] = config.selftest_filter;
  return j.dump(2) + "\n";
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& entry : j) v[i++] = entry.get<double>();
  return v;
}

json to_json(const InitReport& report) {
  json j;
  j["w0"] = vector_to_json(report.w0);
  j["v_hat"] = vector_to_json(report.v_hat);
  j["sigma1"] = report.sigma1;
  j["sigma2"] = report.sigma2;
  j["n_used"] = report.n_used;
  if (report.alignment) j["alignment"] = *report.alignment;
  j["sign_flipped"] = report.sign_flipped;
  return j;
}

json to_json(const TrainReport& report, bool include_trace) {
  json j;
  j["w_final"] = vector_to_json(report.w_final);
  j["n_total"] = report.n_total;
  j["constant_regime"] = report.constant_regime;
  j["skipped"] = report.skipped;
  if (include_trace) {
    json rows = json::array();
    for (const TraceRow& row : report.trace) {
      rows.push_back(json{{"t", row.t},
                          {"alignment", row.alignment},
                          {"sin_theta", row.sin_theta},
                          {"loss", row.loss},
                          {"grad_norm", row.grad_norm}});
    }
    j["trace"] = rows;
  }
  return j;
}

json to_json(const EvalReport& report) {
  json j;
  j["l2_loss_mc"] = report.l2_loss.mean;
  j["l2_loss_se"] = report.l2_loss.std_error;
  j["noiseless_loss_closed"] = report.noiseless_loss_closed;
  j["alignment"] = report.alignment;
  j["loss_upper_bound"] = report.loss_upper_bound;
  j["n_eval"] = report.n_eval;
  return j;
}

}  // namespace simlearn
