#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "simlearn/link.hpp"
#include "simlearn/rng.hpp"
#include "simlearn/tensor.hpp"

namespace simlearn {

enum class NoiseKind {
  kRealizable,            // y = sigma(w*.x)
  kOrthogonalHermite,     // y = sigma(w*.x) + sqrt(Q) he_m(v.x), v unit, v _|_ w*
  kPartialTraceAdversary, // y = sigma(w*.x) + (sqrt(Q)/Z) <He_k(x), I^{x(k-2)/2} x v^{x2}>
  kBoundedRandom,         // y = sigma(w*.x) + sqrt(Q) * (uniform +-1)
};

struct NoiseModel {
  NoiseKind kind = NoiseKind::kRealizable;
  int degree = 0;      // m for OrthogonalHermite, even k for PartialTraceAdversary
  Vector direction;    // v; empty unless the kind needs one
  double level = 0.0;  // Q, the constructed E[(y - sigma(w*.x))^2]
  double normalizer = 1.0;  // Z for PartialTraceAdversary
};

/// Distribution D: standard Gaussian x-marginal plus one of the label models.
/// noise_level is the constructed Q, an upper bound for opt; 0 when realizable.
struct ProblemInstance {
  int dim = 1;
  Vector w_star;
  LinkSpec link;
  NoiseModel noise;
  double noise_level = 0.0;
  std::optional<double> label_cap;  // B_y; labels clamped when set
};

struct Batch {
  RowMajorMatrix x;  // n x dim, one sample per row
  Vector y;
  std::size_t size() const { return static_cast<std::size_t>(y.size()); }
};

/// Deterministic instance construction: w* is a normalized seeded Gaussian
/// vector and the adversary direction v is a Gram-Schmidt complement of an
/// independently seeded vector against w*.
ProblemInstance make_instance(int dim, LinkSpec link, NoiseKind kind, int degree, double q,
                              std::uint64_t seed, std::optional<double> label_cap = {});

/// n i.i.d. samples from D. Sampling is chunked (see rng.hpp): output is
/// identical for any thread count and any two calls with equal (instance,
/// seed) regardless of n prefix.
Batch sample_batch(const ProblemInstance& instance, std::size_t n, std::uint64_t seed);

/// Label for a given x under the instance's noise model, cap applied; the
/// generator is consumed only by the BoundedRandom variant. Streaming
/// consumers share this with sample_batch so the two paths cannot drift.
double sample_label(const ProblemInstance& instance, Eigen::Ref<const Vector> x, Rng& rng);

/// Symmetric clamp of a label to [-cap, cap].
double truncate_labels(double y, double cap);

/// The label bound B_y = sqrt(4 B4 / eps) that makes clamping cost at most
/// eps in squared loss.
double default_label_cap(const LinkSpec& link, double eps);

/// Z = ||sym(I^{x(k-2)/2} x v^{x2})||_F via dense construction (k even >= 2);
/// the second moment of the adversary's additive term is (sqrt(Q)/Z)^2 Z^2 = Q.
double noise_normalizer(int k, int dim, const Vector& v);

/// <He_k(x), I^{x(k-2)/2} x v^{x2}> for even k and unit v; closed form for
/// k in {2, 4}, dense contraction otherwise.
double partial_trace_contraction(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> v, int k);

/// CSV dump: dim feature columns then the label column, one row per sample.
void write_batch_csv(std::ostream& out, const Batch& batch);

}  // namespace simlearn
