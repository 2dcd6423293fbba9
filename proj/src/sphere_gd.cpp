#include "simlearn/sphere_gd.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "simlearn/errors.hpp"
#include "simlearn/parallel.hpp"
#include "simlearn/rng.hpp"

namespace simlearn {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

void require_unit(const Vector& w, const char* who) {
  if (std::fabs(w.norm() - 1.0) > 1e-8) {
    throw ArgumentError(std::string(who) + ": vector must be unit norm");
  }
}

struct ChunkSums {
  Vector weighted_x;    // sum_i a_i x_i, a_i = y_i he_{k*-1}(w.x_i)
  double weighted_proj = 0.0;  // sum_i a_i (w.x_i)
  double phi_sum = 0.0;        // sum_i y_i <He_{k*}(x_i), w^{x k*}>
};

/// (he_{k-1}(z), he_k(z)) without touching the heap; k >= 1.
inline std::pair<double, double> he_adjacent(int k, double z) {
  double prev = 1.0;  // he_0
  double cur = z;     // he_1
  for (int m = 1; m < k; ++m) {
    const double next = (z * cur - std::sqrt(static_cast<double>(m)) * prev) /
                        std::sqrt(static_cast<double>(m + 1));
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

/// One pass over the batch producing the sums every estimator here needs;
/// chunked with fixed boundaries and merged in chunk order.
ChunkSums batch_sums(const Batch& batch, const Vector& w, int k_star) {
  const std::size_t n = batch.size();
  const int d = static_cast<int>(batch.x.cols());
  const std::size_t num_chunks = (n + kRngChunk - 1) / kRngChunk;
  std::vector<ChunkSums> partials(num_chunks);
  for_each_chunk(n, kRngChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
    ChunkSums sums;
    sums.weighted_x = Vector::Zero(d);
    for (std::size_t i = begin; i < end; ++i) {
      Eigen::Map<const Vector> xi(batch.x.data() + i * static_cast<std::size_t>(d), d);
      const double y = batch.y[static_cast<Eigen::Index>(i)];
      const double proj = w.dot(xi);
      const auto [he_km1, he_k] = he_adjacent(k_star, proj);
      const double a = y * he_km1;
      sums.weighted_x += a * xi;
      sums.weighted_proj += a * proj;
      sums.phi_sum += y * he_k;
    }
    partials[c] = std::move(sums);
  });
  ChunkSums total;
  total.weighted_x = Vector::Zero(d);
  for (const ChunkSums& p : partials) {
    total.weighted_x += p.weighted_x;
    total.weighted_proj += p.weighted_proj;
    total.phi_sum += p.phi_sum;
  }
  return total;
}

}  // namespace

Vector project_tangent(const Vector& w, const Vector& v) {
  require_unit(w, "project_tangent");
  return v - w.dot(v) * w;
}

Vector empirical_gradient(const Batch& batch, const Vector& w, const LinkSpec& link,
                          double convention_scale) {
  if (batch.size() == 0) throw ArgumentError("empirical_gradient: empty batch");
  require_unit(w, "empirical_gradient");
  const int k = link.k_star;
  const ChunkSums sums = batch_sums(batch, w, k);
  // P_w kills the he_k(w.x) w component of the contraction, leaving
  // (1/sqrt(k)) he_{k-1}(w.x) (x - (w.x) w) per sample.
  const double factor = convention_scale * static_cast<double>(k) * link.c_kstar /
                        (std::sqrt(static_cast<double>(k)) * static_cast<double>(batch.size()));
  return factor * (sums.weighted_x - sums.weighted_proj * w);
}

Vector riemannian_step(const Vector& w, const Vector& g, double eta) {
  const Vector moved = w - eta * g;
  const double norm = moved.norm();
  if (norm == 0.0) throw DegenerateInputError("riemannian_step: zero-length update");
  return moved / norm;
}

double truncated_loss_empirical(const Batch& batch, const Vector& w, const LinkSpec& link) {
  if (batch.size() == 0) throw ArgumentError("truncated_loss_empirical: empty batch");
  const ChunkSums sums = batch_sums(batch, w, link.k_star);
  return 2.0 * (1.0 - sums.phi_sum / static_cast<double>(batch.size()));
}

double default_step_size(const LinkSpec& link) {
  return 9.0 / (40.0 * kE * static_cast<double>(link.k_star) * link.c_kstar);
}

int default_iteration_count(const LinkSpec& link, double eps) {
  if (eps <= 0.0) throw ArgumentError("eps must be positive");
  const double t = 8.0 * std::log(std::max(link.C_kstar / eps, kE));
  return static_cast<int>(std::ceil(t));
}

TrainReport train(const ProblemInstance& instance, const Vector& w0, const GDConfig& cfg) {
  require_unit(w0, "train");
  if (cfg.batch_n < 1) throw ArgumentError("train: batch_n must be >= 1");
  const LinkSpec& link = instance.link;
  const double eta = cfg.eta > 0.0 ? cfg.eta : default_step_size(link);
  const int iters = cfg.iters > 0 ? cfg.iters : default_iteration_count(link, cfg.eps);

  TrainReport report;
  const double gate = std::pow(link.c_kstar / (64.0 * static_cast<double>(link.k_star)), 2);
  report.constant_regime = instance.noise_level > gate;
  if (report.constant_regime && cfg.skip_when_noise_dominates) {
    report.w_final = Vector::Unit(instance.dim, 0);
    report.skipped = true;
    return report;
  }

  ProblemInstance sampled = instance;
  if (cfg.truncate_labels && !sampled.label_cap) {
    sampled.label_cap = default_label_cap(link, cfg.eps);
  }

  Vector w = w0;
  report.trace.reserve(cfg.record_trace ? static_cast<std::size_t>(iters) : 0);
  for (int t = 0; t < iters; ++t) {
    const Batch batch =
        sample_batch(sampled, cfg.batch_n, Rng::mix(cfg.seed, static_cast<std::uint64_t>(t)));
    // One pass yields both the gradient sums and the truncated-loss sum;
    // the factor matches empirical_gradient's expression exactly.
    const ChunkSums sums = batch_sums(batch, w, link.k_star);
    const double factor = -2.0 * static_cast<double>(link.k_star) * link.c_kstar /
                          (std::sqrt(static_cast<double>(link.k_star)) *
                           static_cast<double>(batch.size()));
    const Vector grad = factor * (sums.weighted_x - sums.weighted_proj * w);
    if (cfg.record_trace) {
      TraceRow row;
      row.t = t;
      row.alignment = w.dot(instance.w_star);
      row.sin_theta = std::sqrt(std::max(0.0, 1.0 - row.alignment * row.alignment));
      row.loss = 2.0 * (1.0 - sums.phi_sum / static_cast<double>(batch.size()));
      row.grad_norm = grad.norm();
      report.trace.push_back(row);
    }
    w = riemannian_step(w, grad, eta);
    report.n_total += cfg.batch_n;
  }
  report.w_final = w;
  return report;
}

}  // namespace simlearn
