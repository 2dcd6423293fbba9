#pragma once

#include <cstdint>

#include "simlearn/synth.hpp"

namespace simlearn {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

struct EvalReport {
  McEstimate l2_loss;            // E[(sigma(w.x) - y)^2] Monte Carlo
  double noiseless_loss_closed = 0.0;
  double alignment = 0.0;        // parity-aware
  double loss_upper_bound = 0.0;
  std::size_t n_eval = 0;
};

/// Monte Carlo estimate of the squared loss E[(sigma(w.x) - y)^2] with its
/// standard error; deterministic per seed, thread-count independent.
McEstimate l2_loss_mc(const ProblemInstance& instance, const Vector& w, std::size_t n_eval,
                      std::uint64_t seed);

/// Realizable-loss closed form 2 (1 - sum_{k >= k*} c_k^2 a^k) over the
/// stored coefficients; requires |a| <= 1.
double noiseless_loss_closed(const LinkSpec& link, double a);

/// 2 Q + 4 (1 - sum_{k >= k*} c_k^2 a^k): an upper bound for the squared loss
/// at alignment a under noise level Q.
double loss_upper_bound(const LinkSpec& link, double q, double a);

/// w.w* when the link has an odd-degree coefficient, |w.w*| otherwise
/// (the sign is unidentifiable for even links).
double alignment(const Vector& w, const Vector& w_star, const LinkSpec& link);

/// Population Riemannian gradient of the truncated loss in the realizable
/// case: -2 k* c_{k*} (w.w*)^{k*-1} (w* - (w.w*) w).
Vector population_g_star(const LinkSpec& link, const Vector& w, const Vector& w_star);

EvalReport evaluate(const ProblemInstance& instance, const Vector& w, std::size_t n_eval,
                    std::uint64_t seed);

}  // namespace simlearn
