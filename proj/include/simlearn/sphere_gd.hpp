#pragma once

#include <cstdint>
#include <vector>

#include "simlearn/synth.hpp"

namespace simlearn {

struct GDConfig {
  double eta = 0.0;         // 0 resolves to 9/(40 e k* c_{k*})
  int iters = 0;            // T; 0 resolves to ceil(8 log(C_{k*}/eps))
  std::size_t batch_n = 10'000;
  double delta = 0.1;
  double eps = 0.05;
  std::uint64_t seed = 0;
  bool record_trace = true;
  // Clamp labels at B_y = sqrt(4 B4/eps) unless the instance already caps.
  bool truncate_labels = true;
  // When Q exceeds (c_{k*}/(64 k*))^2 the contraction guarantee is void and
  // any unit vector is a constant-factor answer; opting in skips GD entirely.
  bool skip_when_noise_dominates = false;
};

/// State at the start of iteration t plus the gradient taken there.
struct TraceRow {
  int t = 0;
  double alignment = 0.0;  // w_t . w* (signed)
  double sin_theta = 0.0;
  double loss = 0.0;       // empirical truncated loss on the step's batch
  double grad_norm = 0.0;
};

struct TrainReport {
  Vector w_final;
  std::vector<TraceRow> trace;
  std::size_t n_total = 0;
  bool constant_regime = false;  // Q above the warm-start threshold
  bool skipped = false;          // gating returned without running GD
};

/// P_w v = v - (w.v) w; requires |w| = 1 within 1e-8.
Vector project_tangent(const Vector& w, const Vector& v);

/// Estimate of the Riemannian gradient of the truncated loss,
///   g-hat(w) = -(2/n) sum_i k* c_{k*} y_i P_w <He_{k*}(x_i), w^{x(k*-1)}>,
/// evaluated through the O(d) closed form
///   P_w <He_{k*}(x), w^{x(k*-1)}> = (1/sqrt(k*)) he_{k*-1}(w.x) (x - (w.x) w).
/// The -2 matches the analytic gradient of 2(1 - E[y phi(w.x)]), so the
/// descent update w - eta g-hat moves toward the signal; `convention_scale`
/// exposes the prefactor (+1 recovers the bare sum form).
Vector empirical_gradient(const Batch& batch, const Vector& w, const LinkSpec& link,
                          double convention_scale = -2.0);

/// w <- (w - eta g) / |w - eta g|; a vanishing denominator is degenerate.
Vector riemannian_step(const Vector& w, const Vector& g, double eta);

/// 2 (1 - mean(y <He_{k*}(x), w^{x k*}>)). In the realizable case the
/// population value is 2 (1 - c_{k*} (w.w*)^{k*}).
double truncated_loss_empirical(const Batch& batch, const Vector& w, const LinkSpec& link);

double default_step_size(const LinkSpec& link);
int default_iteration_count(const LinkSpec& link, double eps);

/// Riemannian minibatch SGD from w0: T steps, a fresh batch per step, unit
/// normalization after every update. Deterministic per (cfg.seed, thread
/// count independent).
TrainReport train(const ProblemInstance& instance, const Vector& w0, const GDConfig& cfg);

}  // namespace simlearn
