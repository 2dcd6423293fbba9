#include "simlearn/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "simlearn/errors.hpp"
#include "simlearn/rng.hpp"

namespace simlearn {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Sub-seed tags so the init, GD and eval streams of one trial never collide.
constexpr std::uint64_t kInitStream = 101;
constexpr std::uint64_t kGdStream = 202;
constexpr std::uint64_t kEvalStream = 303;

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  std::size_t n_init = 0;
  std::size_t n_gd = 0;
  double alignment = 0.0;
  double final_loss = 0.0;
  double wall_ms = 0.0;
  json report;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_trace_csv(const fs::path& path, const TrainReport& report) {
  std::ostringstream out;
  out << "t,sin_theta,loss,grad_norm\n";
  for (const TraceRow& row : report.trace) {
    out << row.t << "," << row.sin_theta << "," << row.loss << "," << row.grad_norm << "\n";
  }
  write_text(path, out.str());
}

/// One pipeline trial: init, optionally GD, and a final evaluation. The
/// canonical JSON report carries no timing.
TrialResult run_trial(const ExperimentConfig& config, int trial, bool with_gd,
                      double q_override = -1.0) {
  const auto start = std::chrono::steady_clock::now();
  TrialResult result;
  result.trial = trial;
  result.seed = config.instance.seed + static_cast<std::uint64_t>(trial);

  InstanceDesc desc = config.instance;
  if (q_override >= 0.0) desc.q = q_override;
  const ProblemInstance instance = build_instance(desc, result.seed);

  InitConfig init_cfg = config.init;
  init_cfg.seed = Rng::mix(result.seed, kInitStream);
  const InitReport init = init_tensor_pca(instance, init_cfg);
  result.n_init = init.n_used;

  Vector w = init.w0;
  json report;
  report["trial"] = trial;
  report["seed"] = result.seed;
  report["preset"] = preset_name(config.preset);
  report["init"] = to_json(init);

  if (with_gd) {
    GDConfig gd_cfg = config.gd;
    gd_cfg.seed = Rng::mix(result.seed, kGdStream);
    const TrainReport train_report = train(instance, w, gd_cfg);
    w = train_report.w_final;
    result.n_gd = train_report.n_total;
    report["gd"] = to_json(train_report);
    if (gd_cfg.record_trace && !config.output_dir.empty()) {
      write_trace_csv(fs::path(config.output_dir) /
                          ("trace_" + std::to_string(trial) + ".csv"),
                      train_report);
    }
  }

  const EvalReport eval_report = evaluate(instance, w, config.n_eval, Rng::mix(result.seed, kEvalStream));
  result.alignment = eval_report.alignment;
  result.final_loss = eval_report.l2_loss.mean;
  report["eval"] = to_json(eval_report);

  result.report = std::move(report);
  result.wall_ms = elapsed_ms(start);
  return result;
}

void write_trial_report(const ExperimentConfig& config, const TrialResult& result,
                        const std::string& stem) {
  write_text(fs::path(config.output_dir) / (stem + ".json"), result.report.dump(2) + "\n");
}

int run_pipeline_preset(const ExperimentConfig& config, std::ostream& log, bool with_gd) {
  std::ostringstream csv;
  csv << "trial,seed,n_init,n_gd,alignment,final_loss,wall_ms\n";
  for (int trial = 0; trial < config.trials; ++trial) {
    const TrialResult result = run_trial(config, trial, with_gd);
    write_trial_report(config, result, "trial_" + std::to_string(trial));
    csv << result.trial << "," << result.seed << "," << result.n_init << "," << result.n_gd
        << "," << result.alignment << "," << result.final_loss << "," << result.wall_ms << "\n";
    log << "trial " << trial << ": alignment=" << result.alignment
        << " final_loss=" << result.final_loss << "\n";
  }
  write_text(fs::path(config.output_dir) / "aggregate.csv", csv.str());
  return kExitOk;
}

int run_noise_sweep(const ExperimentConfig& config, std::ostream& log) {
  if (config.instance.noise == NoiseKind::kRealizable) {
    throw ConfigError("/instance/noise/model",
                      "noise-sweep needs a noise model whose level can be scaled");
  }
  std::vector<double> grid = config.sweep_q;
  if (grid.empty()) grid = {0.0, 0.0025, 0.01, 0.04};
  std::ostringstream csv;
  csv << "q,trial,seed,n_init,n_gd,alignment,final_loss,wall_ms\n";
  for (std::size_t qi = 0; qi < grid.size(); ++qi) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const TrialResult result = run_trial(config, trial, true, grid[qi]);
      write_trial_report(config, result,
                         "trial_q" + std::to_string(qi) + "_" + std::to_string(trial));
      csv << grid[qi] << "," << result.trial << "," << result.seed << "," << result.n_init
          << "," << result.n_gd << "," << result.alignment << "," << result.final_loss << ","
          << result.wall_ms << "\n";
    }
    log << "q=" << grid[qi] << " done\n";
  }
  write_text(fs::path(config.output_dir) / "sweep.csv", csv.str());
  return kExitOk;
}

int run_sample_sweep(const ExperimentConfig& config, std::ostream& log) {
  std::vector<std::size_t> grid = config.sweep_n;
  if (grid.empty()) grid = {1000, 10'000, 100'000};
  std::ostringstream detail;
  detail << "n,trial,seed,alignment,success\n";
  std::ostringstream summary;
  summary << "n,success_rate,trials\n";
  for (std::size_t n : grid) {
    ExperimentConfig sized = config;
    sized.init.n_override = n;
    int successes = 0;
    for (int trial = 0; trial < config.trials; ++trial) {
      const TrialResult result = run_trial(sized, trial, false);
      const bool success = std::fabs(result.alignment) >= 0.5;
      successes += success ? 1 : 0;
      detail << n << "," << result.trial << "," << result.seed << "," << result.alignment
             << "," << (success ? 1 : 0) << "\n";
    }
    const double rate = static_cast<double>(successes) / static_cast<double>(config.trials);
    summary << n << "," << rate << "," << config.trials << "\n";
    log << "n=" << n << " success_rate=" << rate << "\n";
  }
  write_text(fs::path(config.output_dir) / "sweep_detail.csv", detail.str());
  write_text(fs::path(config.output_dir) / "sweep.csv", summary.str());
  return kExitOk;
}

int run_selftest_preset(const ExperimentConfig& config, std::ostream& log) {
  const std::vector<CheckResult> results = run_selftest(config.selftest_filter);
  bool all_pass = true;
  for (const CheckResult& check : results) {
    log << (check.pass ? "PASS" : "FAIL") << "  " << check.name;
    if (!check.detail.empty()) log << "  (" << check.detail << ")";
    log << "\n";
    all_pass = all_pass && check.pass;
  }
  log << (all_pass ? "all checks passed" : "some checks FAILED") << " [" << results.size()
      << " run]\n";
  return all_pass ? kExitOk : kExitThreshold;
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
  if (config.preset != Preset::kSelftest && !config.output_dir.empty()) {
    fs::create_directories(config.output_dir);
  }
  switch (config.preset) {
    case Preset::kInitOnly: return run_pipeline_preset(config, log, false);
    case Preset::kFullPipeline: return run_pipeline_preset(config, log, true);
    case Preset::kNoiseSweep: return run_noise_sweep(config, log);
    case Preset::kSampleSweep: return run_sample_sweep(config, log);
    case Preset::kSelftest: return run_selftest_preset(config, log);
  }
  return kExitOk;
}

std::string describe(const ExperimentConfig& config) {
  const LinkSpec link = build_link(config.instance);
  const int k = config.init.k > 0 ? config.init.k : link.k_star;
  const int l = k / 2;
  const double eps0 = config.init.eps0 > 0.0
                          ? config.init.eps0
                          : link.c_kstar / (256.0 * static_cast<double>(link.k_star));
  const double eta = config.gd.eta > 0.0 ? config.gd.eta : default_step_size(link);
  const int iters =
      config.gd.iters > 0 ? config.gd.iters : default_iteration_count(link, config.gd.eps);

  std::ostringstream out;
  out << "preset: " << preset_name(config.preset) << "\n";
  out << "instance: dim=" << config.instance.dim << " link=" << link.name
      << " (k*=" << link.k_star << ", c_k*=" << link.c_kstar << ", C_k*=" << link.C_kstar
      << ", B4=" << link.B4 << ", tail_mass=" << link.tail_mass << ")\n";
  out << "noise: q=" << config.instance.q << " seed=" << config.instance.seed << "\n";
  out << "init: k=" << k << " l=" << l << " eps=" << config.init.eps << " eps0=" << eps0;
  if (config.init.n_override) {
    out << " n=" << *config.init.n_override << " (explicit override)";
  } else {
    out << " n=" << init_sample_schedule(k, l, config.instance.dim, config.init.eps, eps0,
                                         link.B4, config.init.sample_constant)
        << " (schedule e^k log^k(B4/eps) d^(k-l)/eps0^2 + 1/eps, x" << config.init.sample_constant
        << ")";
  }
  out << "\n";
  out << "gd: eta=" << eta;
  if (config.gd.eta > 0.0) {
    out << " (explicit override)";
  } else {
    out << " (9/(40 e k* c_k*))";
  }
  out << " T=" << iters << " batch=" << config.gd.batch_n << " delta=" << config.gd.delta
      << " eps=" << config.gd.eps << "\n";
  if (config.gd.truncate_labels && !config.instance.label_cap) {
    out << "label cap: sqrt(4 B4/eps) = " << default_label_cap(link, config.gd.eps) << "\n";
  } else if (config.instance.label_cap) {
    out << "label cap: " << *config.instance.label_cap << " (explicit)\n";
  }
  out << "trials: " << config.trials << " n_eval=" << config.n_eval
      << " output_dir=" << config.output_dir << "\n";
  return out.str();
}

}  // namespace simlearn
