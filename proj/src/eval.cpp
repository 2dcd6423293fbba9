#include "simlearn/eval.hpp"

#include <cmath>
#include <vector>

#include "simlearn/errors.hpp"
#include "simlearn/parallel.hpp"
#include "simlearn/rng.hpp"

namespace simlearn {

namespace {

void require_unit(const Vector& w, const char* who) {
  if (std::fabs(w.norm() - 1.0) > 1e-8) {
    throw ArgumentError(std::string(who) + ": vector must be unit norm");
  }
}

double coeff_power_sum(const LinkSpec& link, double a) {
  if (std::fabs(a) > 1.0 + 1e-12) throw ArgumentError("alignment argument must be in [-1, 1]");
  double acc = 0.0;
  double power = 1.0;
  for (std::size_t k = 0; k < link.coeffs.size(); ++k) {
    if (k > 0) power *= a;
    if (static_cast<int>(k) >= link.k_star) acc += link.coeffs[k] * link.coeffs[k] * power;
  }
  return acc;
}

}  // namespace

McEstimate l2_loss_mc(const ProblemInstance& instance, const Vector& w, std::size_t n_eval,
                      std::uint64_t seed) {
  if (n_eval < 1000) throw ArgumentError("l2_loss_mc: n_eval must be >= 1000");
  require_unit(w, "l2_loss_mc");
  const int d = instance.dim;

  // Samples are generated and reduced per fixed chunk; the residual sums are
  // merged in chunk order, so the estimate is thread-count independent.
  const std::size_t num_chunks = (n_eval + kRngChunk - 1) / kRngChunk;
  std::vector<double> sum(num_chunks, 0.0);
  std::vector<double> sumsq(num_chunks, 0.0);
  for_each_chunk(n_eval, kRngChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Rng rng = chunk_rng(seed, c);
    Vector x(d);
    double local_sum = 0.0;
    double local_sq = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      for (int j = 0; j < d; ++j) x[j] = rng.gaussian();
      const double y = sample_label(instance, x, rng);
      const double residual = instance.link.eval(x.dot(w)) - y;
      local_sum += residual * residual;
      local_sq += residual * residual * residual * residual;
    }
    sum[c] = local_sum;
    sumsq[c] = local_sq;
  });

  double total = 0.0, total_sq = 0.0;
  for (std::size_t c = 0; c < num_chunks; ++c) {
    total += sum[c];
    total_sq += sumsq[c];
  }
  McEstimate est;
  est.n = n_eval;
  est.mean = total / static_cast<double>(n_eval);
  const double var =
      std::max(0.0, total_sq / static_cast<double>(n_eval) - est.mean * est.mean);
  est.std_error = std::sqrt(var / static_cast<double>(n_eval));
  return est;
}

double noiseless_loss_closed(const LinkSpec& link, double a) {
  return 2.0 * (1.0 - coeff_power_sum(link, a));
}

double loss_upper_bound(const LinkSpec& link, double q, double a) {
  if (q < 0.0) throw ArgumentError("loss_upper_bound: q must be >= 0");
  return 2.0 * q + 4.0 * (1.0 - coeff_power_sum(link, a));
}

double alignment(const Vector& w, const Vector& w_star, const LinkSpec& link) {
  require_unit(w, "alignment");
  require_unit(w_star, "alignment");
  const double dot = w.dot(w_star);
  return link.has_odd_term ? dot : std::fabs(dot);
}

Vector population_g_star(const LinkSpec& link, const Vector& w, const Vector& w_star) {
  require_unit(w, "population_g_star");
  require_unit(w_star, "population_g_star");
  const double a = w.dot(w_star);
  const double factor = -2.0 * static_cast<double>(link.k_star) * link.c_kstar *
                        std::pow(a, link.k_star - 1);
  return factor * (w_star - a * w);
}

EvalReport evaluate(const ProblemInstance& instance, const Vector& w, std::size_t n_eval,
                    std::uint64_t seed) {
  EvalReport report;
  report.l2_loss = l2_loss_mc(instance, w, n_eval, seed);
  const double a = w.dot(instance.w_star);
  report.noiseless_loss_closed = noiseless_loss_closed(instance.link, a);
  report.alignment = alignment(w, instance.w_star, instance.link);
  report.loss_upper_bound = loss_upper_bound(instance.link, instance.noise_level, a);
  report.n_eval = n_eval;
  return report;
}

}  // namespace simlearn
