#include "simlearn/chow_pca.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "simlearn/errors.hpp"
#include "simlearn/hermite.hpp"
#include "simlearn/parallel.hpp"
#include "simlearn/rng.hpp"
#include "simlearn/sphere_gd.hpp"

namespace simlearn {

namespace {

constexpr int kFullSvdLimit = 512;

void fix_sign(Vector& v) {
  Eigen::Index argmax = 0;
  v.cwiseAbs().maxCoeff(&argmax);
  if (v[argmax] < 0.0) v = -v;
}

TopSingular power_iteration_top(const Matrix& m, int iters) {
  // Left singular vectors live in the eigenspace of the (smaller) Gram matrix.
  const bool transpose = m.rows() > m.cols();
  const Matrix gram = transpose ? Matrix(m.transpose() * m) : Matrix(m * m.transpose());
  const Eigen::Index n = gram.rows();

  auto dominant = [&](const Matrix& a) {
    Rng rng(0x5eedULL);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.gaussian();
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
      Vector next = a * v;
      const double norm = next.norm();
      if (norm == 0.0) break;
      v = next / norm;
      lambda = v.dot(a * v);
    }
    return std::pair<Vector, double>(v, lambda);
  };

  auto [v1, lambda1] = dominant(gram);
  const Matrix deflated = gram - lambda1 * v1 * v1.transpose();
  auto [v2, lambda2] = dominant(deflated);
  (void)v2;

  TopSingular top;
  top.sigma1 = std::sqrt(std::max(0.0, lambda1));
  top.sigma2 = std::sqrt(std::max(0.0, lambda2));
  if (transpose) {
    // v1 is a right singular vector; map it through M and normalize.
    Vector left = m * v1;
    const double norm = left.norm();
    if (norm == 0.0) throw DegenerateInputError("power iteration produced a null left vector");
    top.v = left / norm;
  } else {
    top.v = v1;
  }
  fix_sign(top.v);
  return top;
}

TopSingular full_svd_top(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
  TopSingular top;
  top.v = svd.matrixU().col(0);
  top.sigma1 = svd.singularValues()(0);
  top.sigma2 = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
  fix_sign(top.v);
  return top;
}

}  // namespace

UnfoldedMatrix chow_matrix(const Batch& batch, int k, int l) {
  const std::size_t n = batch.size();
  if (n == 0) throw ArgumentError("chow_matrix: empty sample set");
  if (l != k / 2) throw ArgumentError("chow_matrix: l must be floor(k/2)");
  const int d = static_cast<int>(batch.x.cols());
  const std::size_t total = checked_pow(d, k);
  const std::size_t rows = checked_pow(d, l);

  // Per-chunk partial sums in flat tensor order, merged in chunk order.
  // Serial and threaded runs share the identical reduction tree, so the
  // result is bit-identical for any worker count; the number of live
  // buffers is bounded by the super-block size.
  const std::size_t num_chunks = (n + kRngChunk - 1) / kRngChunk;
  std::vector<double> acc(total, 0.0);

  auto accumulate_range = [&](std::vector<double>& sum, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Eigen::Map<const Vector> xi(batch.x.data() + i * static_cast<std::size_t>(d), d);
      const double y = batch.y[static_cast<Eigen::Index>(i)];
      if (y == 0.0) continue;
      if (k == 1) {
        for (int j = 0; j < d; ++j) sum[static_cast<std::size_t>(j)] += y * xi[j];
      } else if (k == 2) {
        // He_2(x) = (x x^T - I)/sqrt(2); flat = r + c*d.
        constexpr double kInvSqrt2 = 0.7071067811865475244;
        std::size_t flat = 0;
        for (int c = 0; c < d; ++c) {
          const double xc = y * xi[c] * kInvSqrt2;
          for (int r = 0; r < d; ++r, ++flat) sum[flat] += xi[r] * xc;
          sum[static_cast<std::size_t>(c) * (static_cast<std::size_t>(d) + 1)] -= y * kInvSqrt2;
        }
      } else {
        const DenseTensor he = hermite_tensor_dense(xi, k);
        for (std::size_t f = 0; f < total; ++f) sum[f] += y * he.data[f];
      }
    }
  };

  const std::size_t block =
      std::max<std::size_t>(1, std::min<std::size_t>(num_chunks,
                                                     static_cast<std::size_t>(worker_count()) * 4));
  std::vector<std::vector<double>> partials(block);
  for (std::size_t first = 0; first < num_chunks; first += block) {
    const std::size_t last = std::min(first + block, num_chunks);
    const std::size_t span_begin = first * kRngChunk;
    const std::size_t span_end = std::min(last * kRngChunk, n);
    for_each_chunk(span_end - span_begin, kRngChunk,
                   [&](std::size_t c, std::size_t b, std::size_t e) {
                     auto& slot = partials[c];
                     slot.assign(total, 0.0);
                     accumulate_range(slot, span_begin + b, span_begin + e);
                   });
    for (std::size_t c = 0; c < last - first; ++c) {
      const std::vector<double>& slot = partials[c];
      for (std::size_t f = 0; f < total; ++f) acc[f] += slot[f];
    }
  }

  UnfoldedMatrix m;
  m.dim = d;
  m.order = k;
  m.split = l;
  const std::size_t cols = total / rows;
  m.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      m.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          acc[r + c * rows] * inv_n;
    }
  }
  return m;
}

TopSingular top_left_singular(const Matrix& m, SvdMethod method, int power_iters) {
  if (m.size() == 0 || m.isZero(0.0)) {
    throw DegenerateInputError("top_left_singular: zero matrix");
  }
  const bool full = method == SvdMethod::kFull ||
                    (method == SvdMethod::kAuto && std::min(m.rows(), m.cols()) <= kFullSvdLimit);
  return full ? full_svd_top(m) : power_iteration_top(m, power_iters);
}

TopSingular top_left_singular(const UnfoldedMatrix& m, SvdMethod method, int power_iters) {
  return top_left_singular(Matrix(m.entries), method, power_iters);
}

std::size_t init_sample_schedule(int k, int l, int dim, double eps, double eps0, double B4,
                                 double sample_constant) {
  if (eps <= 0.0 || eps0 <= 0.0) throw ArgumentError("eps and eps0 must be positive");
  const double log_term = std::pow(std::log(std::max(B4 / eps, std::exp(1.0))), k);
  const double rate = std::exp(static_cast<double>(k)) * log_term *
                          std::pow(static_cast<double>(dim), k - l) / (eps0 * eps0) +
                      1.0 / eps;
  const double n = sample_constant * rate;
  if (n > 1e12) throw ResourceError("init sample schedule asks for more than 1e12 samples");
  return static_cast<std::size_t>(std::ceil(n));
}

InitReport init_tensor_pca(const ProblemInstance& instance, const InitConfig& cfg) {
  const LinkSpec& link = instance.link;
  const int k = cfg.k > 0 ? cfg.k : link.k_star;
  const int l = k / 2;
  const int d = instance.dim;
  const double eps0 =
      cfg.eps0 > 0.0 ? cfg.eps0 : link.c_kstar / (256.0 * static_cast<double>(link.k_star));

  const std::size_t n =
      cfg.n_override ? *cfg.n_override
                     : init_sample_schedule(k, l, d, cfg.eps, eps0, link.B4, cfg.sample_constant);
  const Batch batch = sample_batch(instance, n, Rng::mix(cfg.seed, 0));

  InitReport report;
  report.n_used = n;

  Vector u;
  if (k == 1) {
    // Degenerate unfolding: the 1 x d Chow matrix's top right-singular
    // direction is just the normalized empirical Chow vector.
    Vector chow = Vector::Zero(d);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Eigen::Map<const Vector> xi(batch.x.data() + i * static_cast<std::size_t>(d), d);
      chow += batch.y[static_cast<Eigen::Index>(i)] * xi;
    }
    chow /= static_cast<double>(n);
    const double norm = chow.norm();
    if (norm == 0.0) throw DegenerateInputError("degree-1 Chow vector is zero");
    u = chow / norm;
    report.v_hat = Vector::Ones(1);
    report.sigma1 = norm;
    report.sigma2 = 0.0;
  } else {
    const UnfoldedMatrix m = chow_matrix(batch, k, l);
    const TopSingular top = top_left_singular(m, cfg.svd, cfg.power_iters);
    report.v_hat = top.v;
    report.sigma1 = top.sigma1;
    report.sigma2 = top.sigma2;
    const Matrix folded = fold_rows(top.v, d);
    u = top_left_singular(folded, cfg.svd, cfg.power_iters).v;
  }

  // Held-out probe: keep whichever of +-u has the lower empirical truncated
  // loss. Label-driven, so it needs no knowledge of w*.
  const std::size_t n_probe = std::max<std::size_t>(1000, n / 10);
  const Batch probe = sample_batch(instance, n_probe, Rng::mix(cfg.seed, 1));
  const double loss_pos = truncated_loss_empirical(probe, u, link);
  const double loss_neg = truncated_loss_empirical(probe, Vector(-u), link);
  if (loss_neg < loss_pos) {
    u = -u;
    report.sign_flipped = true;
  }
  report.n_used += n_probe;

  report.w0 = u / u.norm();
  const double dot = report.w0.dot(instance.w_star);
  report.alignment = link.has_odd_term ? dot : std::fabs(dot);
  return report;
}

InitReport pca_solve(const ProblemInstance& instance, double eps, InitConfig cfg) {
  if (eps > 1.0 / 64.0) {
    std::cerr << "pca_solve: eps = " << eps
              << " exceeds 1/64; the warm-start accuracy bound may not apply\n";
  }
  cfg.eps = eps;
  cfg.eps0 = instance.link.c_kstar * eps / 16.0;
  return init_tensor_pca(instance, cfg);
}

}  // namespace simlearn
