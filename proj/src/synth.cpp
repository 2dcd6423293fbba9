#include "simlearn/synth.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "simlearn/errors.hpp"
#include "simlearn/hermite.hpp"
#include "simlearn/parallel.hpp"
#include "simlearn/rng.hpp"

namespace simlearn {

namespace {

/// Product of two dense tensors, with `a` holding the faster-varying indices.
DenseTensor kron_tensor(const DenseTensor& a, const DenseTensor& b) {
  DenseTensor out = zero_tensor(a.dim, a.order + b.order);
  const std::size_t block = a.data.size();
  for (std::size_t j = 0; j < b.data.size(); ++j) {
    const double factor = b.data[j];
    for (std::size_t i = 0; i < block; ++i) out.data[j * block + i] = a.data[i] * factor;
  }
  return out;
}

DenseTensor identity_pad_tensor(int k, int dim, const Vector& v) {
  if (k < 2 || k % 2 != 0) throw ArgumentError("partial-trace degree must be even and >= 2");
  DenseTensor acc = zero_tensor(dim, 0);
  acc.data[0] = 1.0;
  DenseTensor eye = zero_tensor(dim, 2);
  for (int i = 0; i < dim; ++i) {
    eye.data[static_cast<std::size_t>(i) * (static_cast<std::size_t>(dim) + 1)] = 1.0;
  }
  for (int rep = 0; rep < (k - 2) / 2; ++rep) acc = kron_tensor(acc, eye);
  return kron_tensor(acc, outer({v, v}));
}

Vector gram_schmidt_direction(const Vector& w_star, std::uint64_t seed) {
  const int d = static_cast<int>(w_star.size());
  if (d < 2) throw ArgumentError("adversarial noise needs dim >= 2");
  Rng rng(Rng::mix(seed, 2));
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.gaussian();
  v -= v.dot(w_star) * w_star;
  const double norm = v.norm();
  if (norm < 1e-9) throw DegenerateInputError("seeded direction collapsed onto w*");
  return v / norm;
}

}  // namespace

ProblemInstance make_instance(int dim, LinkSpec link, NoiseKind kind, int degree, double q,
                              std::uint64_t seed, std::optional<double> label_cap) {
  if (dim < 1) throw ArgumentError("instance dim must be >= 1");
  if (q < 0.0) throw ArgumentError("noise level must be >= 0");
  ProblemInstance inst;
  inst.dim = dim;
  inst.link = std::move(link);
  inst.label_cap = label_cap;

  Rng rng(Rng::mix(seed, 1));
  Vector w(dim);
  for (int i = 0; i < dim; ++i) w[i] = rng.gaussian();
  inst.w_star = w / w.norm();

  inst.noise.kind = kind;
  inst.noise.level = kind == NoiseKind::kRealizable ? 0.0 : q;
  inst.noise_level = inst.noise.level;
  switch (kind) {
    case NoiseKind::kRealizable:
    case NoiseKind::kBoundedRandom:
      break;
    case NoiseKind::kOrthogonalHermite:
      if (degree < 1) throw ArgumentError("orthogonal-hermite noise degree must be >= 1");
      inst.noise.degree = degree;
      inst.noise.direction = gram_schmidt_direction(inst.w_star, seed);
      break;
    case NoiseKind::kPartialTraceAdversary:
      inst.noise.degree = degree;
      inst.noise.direction = gram_schmidt_direction(inst.w_star, seed);
      inst.noise.normalizer = noise_normalizer(degree, dim, inst.noise.direction);
      break;
  }
  return inst;
}

double truncate_labels(double y, double cap) {
  if (cap <= 0.0) throw ArgumentError("label cap must be positive");
  if (y > cap) return cap;
  if (y < -cap) return -cap;
  return y;
}

double default_label_cap(const LinkSpec& link, double eps) {
  if (eps <= 0.0) throw ArgumentError("eps must be positive");
  return std::sqrt(4.0 * link.B4 / eps);
}

double noise_normalizer(int k, int dim, const Vector& v) {
  if (k == 2) return v.squaredNorm();  // sym(v x v) = v x v
  const DenseTensor padded = identity_pad_tensor(k, dim, v);
  return frobenius(sym(padded));
}

double partial_trace_contraction(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> v, int k) {
  const double vx = v.dot(x);
  if (k == 2) return (vx * vx - 1.0) / std::sqrt(2.0);
  if (k == 4) {
    // Pairing expansion of <He_4(x), sum_i e_i x e_i x v x v> for unit v.
    const double xx = x.squaredNorm();
    const double d = static_cast<double>(x.size());
    return (xx * vx * vx - d * vx * vx - 4.0 * vx * vx - xx + d + 2.0) / std::sqrt(24.0);
  }
  const DenseTensor padded = identity_pad_tensor(k, static_cast<int>(x.size()), v);
  return inner_scalar(padded, hermite_tensor_dense(x, k));
}

double sample_label(const ProblemInstance& instance, Eigen::Ref<const Vector> x, Rng& rng) {
  const NoiseModel& noise = instance.noise;
  double y = instance.link.eval(x.dot(instance.w_star));
  switch (noise.kind) {
    case NoiseKind::kRealizable:
      break;
    case NoiseKind::kOrthogonalHermite:
      y += std::sqrt(noise.level) * hermite_eval(noise.degree, x.dot(noise.direction));
      break;
    case NoiseKind::kPartialTraceAdversary:
      y += std::sqrt(noise.level) / noise.normalizer *
           partial_trace_contraction(x, noise.direction, noise.degree);
      break;
    case NoiseKind::kBoundedRandom:
      y += std::sqrt(noise.level) * rng.sign();
      break;
  }
  if (instance.label_cap) y = truncate_labels(y, *instance.label_cap);
  return y;
}

Batch sample_batch(const ProblemInstance& instance, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("sample_batch: n must be >= 1");
  const int d = instance.dim;
  Batch batch;
  batch.x.resize(static_cast<Eigen::Index>(n), d);
  batch.y.resize(static_cast<Eigen::Index>(n));

  for_each_chunk(n, kRngChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng = chunk_rng(seed, chunk);
    for (std::size_t i = begin; i < end; ++i) {
      double* xp = batch.x.data() + i * static_cast<std::size_t>(d);
      for (int j = 0; j < d; ++j) xp[j] = rng.gaussian();
      batch.y[static_cast<Eigen::Index>(i)] =
          sample_label(instance, Eigen::Map<const Vector>(xp, d), rng);
    }
  });
  return batch;
}

void write_batch_csv(std::ostream& out, const Batch& batch) {
  const Eigen::Index n = batch.y.size();
  const Eigen::Index d = batch.x.cols();
  for (Eigen::Index j = 0; j < d; ++j) out << "x" << j << ",";
  out << "y\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out << batch.x(i, j) << ",";
    out << batch.y[i] << "\n";
  }
}

}  // namespace simlearn
