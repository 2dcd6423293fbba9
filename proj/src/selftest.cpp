#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "simlearn/chow_pca.hpp"
#include "simlearn/eval.hpp"
#include "simlearn/harness.hpp"
#include "simlearn/hermite.hpp"
#include "simlearn/rng.hpp"
#include "simlearn/sphere_gd.hpp"
#include "simlearn/synth.hpp"

// The verification battery. Each check is a deterministic experiment with its
// thresholds pinned in code; the acceptance-* checks are the project's exit
// criteria and the remaining suites cover the per-module properties.

namespace simlearn {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

CheckResult result(const std::string& name, bool pass, const std::string& detail) {
  return CheckResult{name, pass, detail};
}

Vector seeded_unit(int dim, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.gaussian();
  return v / v.norm();
}

/// Unit vector at prescribed inner product `a` with w_star, tilted inside the
/// span of w_star and a seeded orthogonal direction.
Vector unit_at_alignment(const Vector& w_star, double a, std::uint64_t seed) {
  Vector g = seeded_unit(static_cast<int>(w_star.size()), seed);
  g -= g.dot(w_star) * w_star;
  g.normalize();
  return a * w_star + std::sqrt(1.0 - a * a) * g;
}

// ---------------------------------------------------------------------------
// Gradient statistics: per-coordinate mean and standard error of the
// per-sample Riemannian gradient terms, plus the same for their w* component.

struct GradStats {
  Vector mean;        // g-hat
  Vector se;          // per-coordinate standard error
  double dot_mean = 0.0;  // g-hat . w*
  double dot_se = 0.0;
  std::size_t n = 0;
};

GradStats gradient_stats(const ProblemInstance& instance, const Vector& w, std::size_t n,
                         std::uint64_t seed) {
  const int d = instance.dim;
  const int k = instance.link.k_star;
  const double factor = -2.0 * std::sqrt(static_cast<double>(k)) * instance.link.c_kstar;
  Vector sum = Vector::Zero(d), sumsq = Vector::Zero(d);
  double dot_sum = 0.0, dot_sumsq = 0.0;

  const Batch batch = sample_batch(instance, n, seed);
  Vector row(d);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Map<const Vector> xi(batch.x.data() + i * static_cast<std::size_t>(d), d);
    const double proj = w.dot(xi);
    const double he_km1 = hermite_eval(k - 1, proj);
    const double a = factor * batch.y[static_cast<Eigen::Index>(i)] * he_km1;
    row = a * (xi - proj * w);
    sum += row;
    sumsq += row.cwiseProduct(row);
    const double t = row.dot(instance.w_star);
    dot_sum += t;
    dot_sumsq += t * t;
  }

  GradStats stats;
  stats.n = n;
  const double inv_n = 1.0 / static_cast<double>(n);
  stats.mean = sum * inv_n;
  stats.se = ((sumsq * inv_n - stats.mean.cwiseProduct(stats.mean)).cwiseMax(0.0) * inv_n)
                 .cwiseSqrt();
  stats.dot_mean = dot_sum * inv_n;
  const double dot_var = std::max(0.0, dot_sumsq * inv_n - stats.dot_mean * stats.dot_mean);
  stats.dot_se = std::sqrt(dot_var * inv_n);
  return stats;
}

// ---------------------------------------------------------------------------
// acceptance-01: Hermite orthonormality and the derivative recurrence.

CheckResult acceptance_hermite() {
  const std::string name = "acceptance-01-hermite-correctness";
  constexpr int kDeg = 6;
  constexpr std::size_t kDraws = 200'000;

  // Unbiased importance-sampled Gram estimate. Plain Gaussian draws would
  // have estimator SD ~ 0.42 for the (6,6) entry at this n (E[he_6^4] is
  // 35169), far above the 0.02 budget; the mixture proposal
  //   q = (phi + z^12 phi / 11!!) / 2,   weight 2 / (1 + z^12/10395),
  // keeps every per-pair SD a few 1e-3. The tilt component is sampled as
  // z = +-sqrt(2 Gamma(6.5)) and only elementary Gaussian moments enter.
  double gram[kDeg + 1][kDeg + 1] = {};
  Rng rng(20260808ULL);
  for (std::size_t i = 0; i < kDraws; ++i) {
    double z;
    if (rng.next_u64() & 1u) {
      z = rng.gaussian();
    } else {
      double gamma = 0.0;
      for (int e = 0; e < 6; ++e) {
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        gamma += -std::log(u);
      }
      const double g = rng.gaussian();
      gamma += 0.5 * g * g;
      z = (rng.next_u64() & 1u ? 1.0 : -1.0) * std::sqrt(2.0 * gamma);
    }
    const double z12 = std::pow(z, 12);
    const double weight = 2.0 / (1.0 + z12 / 10395.0);
    const HermiteSeries he = hermite_eval_all(kDeg, z);
    for (int j = 0; j <= kDeg; ++j) {
      for (int k = j; k <= kDeg; ++k) {
        gram[j][k] += he.values[static_cast<std::size_t>(j)] *
                      he.values[static_cast<std::size_t>(k)] * weight;
      }
    }
  }
  double worst = 0.0;
  for (int j = 0; j <= kDeg; ++j) {
    for (int k = j; k <= kDeg; ++k) {
      const double estimate = gram[j][k] / static_cast<double>(kDraws);
      const double target = j == k ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(estimate - target));
    }
  }
  const bool ortho_ok = worst <= 0.02;

  // he_k' = sqrt(k) he_{k-1} by central differences.
  double worst_rec = 0.0;
  Rng rec_rng(7ULL);
  constexpr double kH = 1e-5;
  for (int rep = 0; rep < 100; ++rep) {
    const double z = rec_rng.gaussian();
    for (int k = 1; k <= kDeg; ++k) {
      const double fd = (hermite_eval(k, z + kH) - hermite_eval(k, z - kH)) / (2.0 * kH);
      const double exact = std::sqrt(static_cast<double>(k)) * hermite_eval(k - 1, z);
      const double rel = std::fabs(fd - exact) / std::max(1.0, std::fabs(exact));
      worst_rec = std::max(worst_rec, rel);
    }
  }
  const bool rec_ok = worst_rec <= 1e-5;

  return result(name, ortho_ok && rec_ok,
                "max |gram - delta| = " + fmt(worst) + " (tol 0.02), max recurrence rel err = " +
                    fmt(worst_rec) + " (tol 1e-5)");
}

// ---------------------------------------------------------------------------
// acceptance-02: unfolding/folding index maps and symmetrization identities.

CheckResult acceptance_tensor() {
  const std::string name = "acceptance-02-tensor-exactness";
  Rng rng(11ULL);
  bool bit_exact = true;
  double worst_quad = 0.0, worst_sym = 0.0;

  for (int d = 2; d <= 6; ++d) {
    for (int k = 1; k <= 4; ++k) {
      Vector w(d);
      for (int i = 0; i < d; ++i) w[i] = rng.gaussian();

      // vectorize/tensorize/outer agree bitwise, and matricize is the exact
      // little-endian index map.
      const Vector vec = vectorize_power(w, k);
      const DenseTensor direct = outer(std::vector<Vector>(static_cast<std::size_t>(k), w));
      const DenseTensor round = tensorize(vec, k, d);
      for (std::size_t f = 0; f < direct.data.size(); ++f) {
        if (round.data[f] != direct.data[f]) bit_exact = false;
      }
      const int l = k / 2;
      const UnfoldedMatrix unfolded = matricize(direct, l);
      const std::size_t rows = static_cast<std::size_t>(unfolded.entries.rows());
      for (int probe = 0; probe < 100; ++probe) {
        const std::size_t flat = rng.next_u64() % direct.data.size();
        const std::size_t r = flat % rows;
        const std::size_t c = flat / rows;
        if (unfolded.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) !=
            direct.data[flat]) {
          bit_exact = false;
        }
      }

      // v^T mat_l(T) r = <T, tnsr(v) x tnsr(r)> for symmetric T.
      DenseTensor t = zero_tensor(d, k);
      for (double& entry : t.data) entry = rng.gaussian();
      t = sym(t);
      const UnfoldedMatrix mat = matricize(t, l);
      Vector v(static_cast<Eigen::Index>(checked_pow(d, l)));
      Vector r(static_cast<Eigen::Index>(checked_pow(d, k - l)));
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.gaussian();
      for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.gaussian();
      v.normalize();
      r.normalize();
      const double quad = v.transpose() * mat.entries * r;
      const DenseTensor vr_outer = [&] {
        const DenseTensor tv = tensorize(v, l, d);
        const DenseTensor tr = tensorize(r, k - l, d);
        DenseTensor prod = zero_tensor(d, k);
        for (std::size_t c = 0; c < tr.data.size(); ++c) {
          for (std::size_t rr = 0; rr < tv.data.size(); ++rr) {
            prod.data[rr + c * tv.data.size()] = tv.data[rr] * tr.data[c];
          }
        }
        return prod;
      }();
      worst_quad = std::max(worst_quad, std::fabs(quad - inner_scalar(t, vr_outer)));

      // <w^{x k}, sym T> = <w^{x k}, T>.
      DenseTensor raw = zero_tensor(d, k);
      for (double& entry : raw.data) entry = rng.gaussian();
      const double lhs = inner_scalar(direct, sym(raw));
      const double rhs = inner_scalar(direct, raw);
      worst_sym = std::max(worst_sym, std::fabs(lhs - rhs));
    }
  }
  const bool pass = bit_exact && worst_quad <= 1e-12 && worst_sym <= 1e-12;
  return result(name, pass,
                std::string("round-trips bit-exact: ") + (bit_exact ? "yes" : "NO") +
                    ", quadratic-form err = " + fmt(worst_quad) + ", sym-contraction err = " +
                    fmt(worst_sym) + " (tol 1e-12)");
}

// ---------------------------------------------------------------------------
// acceptance-03: closed-form contractions against the dense tensor route.

CheckResult acceptance_contraction() {
  const std::string name = "acceptance-03-contraction-oracle";
  Rng rng(13ULL);
  double worst_value = 0.0, worst_grad = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 7);  // 2..8
    const int k = 1 + static_cast<int>(rng.next_u64() % 5);  // 1..5
    Vector x(d), w(d);
    for (int i = 0; i < d; ++i) x[i] = rng.gaussian();
    for (int i = 0; i < d; ++i) w[i] = rng.gaussian();
    if (rep % 3 == 0) w.normalize();  // mix unit and general-norm cases

    const DenseTensor he = hermite_tensor_dense(x, k);
    const DenseTensor wk = outer(std::vector<Vector>(static_cast<std::size_t>(k), w));
    worst_value =
        std::max(worst_value, std::fabs(contract_power(x, w, k) - inner_scalar(wk, he)));

    Vector dense_grad(d);
    if (k == 1) {
      dense_grad = x;
    } else {
      const DenseTensor wk1 = outer(std::vector<Vector>(static_cast<std::size_t>(k - 1), w));
      const DenseTensor contracted = inner(wk1, he);
      for (int i = 0; i < d; ++i) dense_grad[i] = contracted.data[static_cast<std::size_t>(i)];
    }
    worst_grad = std::max(
        worst_grad, (contract_power_grad(x, w, k) - dense_grad).cwiseAbs().maxCoeff());
  }
  const bool pass = worst_value <= 1e-10 && worst_grad <= 1e-10;
  return result(name, pass,
                "value err = " + fmt(worst_value) + ", grad err = " + fmt(worst_grad) +
                    " (tol 1e-10, 100 cases)");
}

// ---------------------------------------------------------------------------
// acceptance-04: MC Riemannian gradient vs the closed-form population field.

CheckResult acceptance_gradient_oracle() {
  const std::string name = "acceptance-04-gradient-oracle";
  const LinkSpec link = make_link("pure-he2");
  const int d = 10;
  int bad_coords = 0;
  double worst_sigma = 0.0;
  for (int pair = 0; pair < 20; ++pair) {
    const ProblemInstance instance =
        make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, 1000 + static_cast<std::uint64_t>(pair));
    Rng arng(Rng::mix(77, static_cast<std::uint64_t>(pair)));
    const double a = 0.55 + 0.4 * arng.uniform();
    const Vector w = unit_at_alignment(instance.w_star, a, 2000 + static_cast<std::uint64_t>(pair));
    const GradStats stats =
        gradient_stats(instance, w, 1'000'000, Rng::mix(3000, static_cast<std::uint64_t>(pair)));
    const Vector g_star = population_g_star(link, w, instance.w_star);
    for (int j = 0; j < d; ++j) {
      const double sigmas = std::fabs(stats.mean[j] - g_star[j]) / std::max(stats.se[j], 1e-12);
      worst_sigma = std::max(worst_sigma, sigmas);
      if (sigmas > 3.0) ++bad_coords;
    }
  }
  return result(name, bad_coords == 0,
                "20 pairs x 10 coords, worst deviation = " + fmt(worst_sigma) +
                    " SE (tol 3), exceedances = " + std::to_string(bad_coords));
}

// ---------------------------------------------------------------------------
// acceptance-05: noise-gradient norm bounds and the sharpness inequality.

CheckResult acceptance_noise_sharpness() {
  const std::string name = "acceptance-05-noise-gradient-sharpness";
  const LinkSpec link = make_link("pure-he2");
  const int d = 10;
  const double q = 0.0025;
  const double sqrt_q = std::sqrt(q);
  const double kc = static_cast<double>(link.k_star) * link.c_kstar;
  const double xi_bound = 2.0 * kc * sqrt_q;
  const double sin_floor = 4.0 * kE * sqrt_q + 0.05;

  const ProblemInstance instance =
      make_instance(d, link, NoiseKind::kOrthogonalHermite, 2, q, 4242);

  bool pass = true;
  std::ostringstream detail;
  int tested = 0;
  for (const double a : {0.55, 0.65, 0.75}) {
    for (int mix = 0; mix < 2; ++mix) {
      // Tilt w inside span(w*, v) so the adversarial direction couples, plus
      // a generic component.
      Vector tangent = mix == 0 ? instance.noise.direction
                                : Vector(0.7 * instance.noise.direction +
                                         0.714142842854285 * seeded_unit(d, 99 + mix));
      tangent -= tangent.dot(instance.w_star) * instance.w_star;
      tangent.normalize();
      Vector w = a * instance.w_star + std::sqrt(1.0 - a * a) * tangent;
      w.normalize();
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - a * a));
      if (sin_theta < sin_floor || a < 1.0 - 1.0 / link.k_star) continue;
      ++tested;

      const GradStats stats = gradient_stats(instance, w, 1'000'000,
                                             Rng::mix(5000, static_cast<std::uint64_t>(tested)));
      const Vector g_star = population_g_star(link, w, instance.w_star);
      const Vector xi = stats.mean - g_star;
      const double se_norm = std::sqrt(stats.se.squaredNorm());
      if (xi.norm() > xi_bound + 3.0 * se_norm) {
        pass = false;
        detail << "||xi|| = " << fmt(xi.norm()) << " > " << fmt(xi_bound) << " + 3 SE; ";
      }
      const double xi_dot = stats.dot_mean - g_star.dot(instance.w_star);
      if (std::fabs(xi_dot) > xi_bound * sin_theta + 3.0 * stats.dot_se) {
        pass = false;
        detail << "|xi.w*| = " << fmt(std::fabs(xi_dot)) << " out of bound; ";
      }
      // Sharpness: g.w* <= -(1/2) ||g*|| sin(theta).
      const double sharp_rhs = -0.5 * g_star.norm() * sin_theta + 3.0 * stats.dot_se;
      if (stats.dot_mean > sharp_rhs) {
        pass = false;
        detail << "g.w* = " << fmt(stats.dot_mean) << " > " << fmt(sharp_rhs) << "; ";
      }
    }
  }
  if (tested == 0) {
    return result(name, false, "no test point satisfied the sharpness hypotheses");
  }
  if (detail.str().empty()) detail << tested << " test points, all bounds hold";
  return result(name, pass, detail.str());
}

// ---------------------------------------------------------------------------
// acceptance-06: warm-start alignment across seeded trials.

CheckResult acceptance_init() {
  const std::string name = "acceptance-06-init-alignment";
  const LinkSpec link = make_link("pure-he2");
  const int d = 20;
  InitConfig cfg;
  cfg.n_override = 100'000;

  int clean_hits = 0, noisy_hits = 0;
  const double q_small =
      0.5 * std::pow(link.c_kstar / (64.0 * static_cast<double>(link.k_star)), 2);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint64_t seed = 50 + static_cast<std::uint64_t>(trial);
    cfg.seed = Rng::mix(seed, 101);
    const ProblemInstance clean = make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, seed);
    if (std::fabs(*init_tensor_pca(clean, cfg).alignment) >= 0.5) ++clean_hits;
    const ProblemInstance noisy =
        make_instance(d, link, NoiseKind::kOrthogonalHermite, 2, q_small, seed);
    if (std::fabs(*init_tensor_pca(noisy, cfg).alignment) >= 0.5) ++noisy_hits;
  }
  const bool pass = clean_hits >= 9 && noisy_hits >= 8;
  return result(name, pass,
                "realizable " + std::to_string(clean_hits) + "/10 (need 9), noisy " +
                    std::to_string(noisy_hits) + "/10 (need 8)");
}

// ---------------------------------------------------------------------------
// acceptance-07: full pipeline convergence and per-step contraction.

CheckResult acceptance_end_to_end() {
  const std::string name = "acceptance-07-end-to-end";
  const LinkSpec link = make_link("pure-he2");
  const int d = 20;

  InitConfig init_cfg;
  init_cfg.n_override = 100'000;
  GDConfig gd_cfg;
  gd_cfg.batch_n = 50'000;
  gd_cfg.iters = 60;
  gd_cfg.eta = 9.0 / (40.0 * kE * 2.0 * 1.0);
  gd_cfg.record_trace = true;

  // Distance ratios against the sign-resolved target; the link is even so
  // +-w* are the same optimum. Steps only qualify while sin(theta) >= 0.2.
  std::vector<double> ratios;
  auto collect_ratios = [&ratios](const TrainReport& report, double final_align) {
    std::vector<double> aligns;
    for (const TraceRow& row : report.trace) aligns.push_back(std::fabs(row.alignment));
    aligns.push_back(final_align);
    for (std::size_t t = 0; t + 1 < aligns.size(); ++t) {
      const double sin_t = std::sqrt(std::max(0.0, 1.0 - aligns[t] * aligns[t]));
      if (sin_t < 0.2) continue;
      const double dist_sq_t = 2.0 * (1.0 - aligns[t]);
      const double dist_sq_next = 2.0 * (1.0 - aligns[t + 1]);
      if (dist_sq_t > 0.0) ratios.push_back(dist_sq_next / dist_sq_t);
    }
  };

  int clean_hits = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint64_t seed = 400 + static_cast<std::uint64_t>(trial);
    const ProblemInstance instance = make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, seed);
    init_cfg.seed = Rng::mix(seed, 101);
    gd_cfg.seed = Rng::mix(seed, 202);
    const InitReport init = init_tensor_pca(instance, init_cfg);
    const TrainReport report = train(instance, init.w0, gd_cfg);
    const double align = std::fabs(report.w_final.dot(instance.w_star));
    const double sin_final = std::sqrt(std::max(0.0, 1.0 - align * align));
    if (sin_final <= 0.05) ++clean_hits;
    collect_ratios(report, align);
  }

  // The warm start lands far inside sin(theta) < 0.2 at this n, so probe the
  // contraction regime from the guarantee's own floor, alignment 1/2.
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint64_t seed = 550 + static_cast<std::uint64_t>(trial);
    const ProblemInstance instance = make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, seed);
    const Vector w_half = unit_at_alignment(instance.w_star, 0.5, Rng::mix(seed, 9));
    GDConfig probe_cfg = gd_cfg;
    probe_cfg.seed = Rng::mix(seed, 202);
    const TrainReport report = train(instance, w_half, probe_cfg);
    collect_ratios(report, std::fabs(report.w_final.dot(instance.w_star)));
  }
  double contraction_share = 1.0, median_ratio = 0.0;
  if (!ratios.empty()) {
    std::size_t non_expanding = 0;
    for (double r : ratios) {
      if (r <= 1.0) ++non_expanding;
    }
    contraction_share = static_cast<double>(non_expanding) / static_cast<double>(ratios.size());
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    median_ratio = sorted[sorted.size() / 2];
  }

  // Noisy variant: final squared loss against 20 Q + 0.05.
  const double q = 0.01;
  int noisy_hits = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint64_t seed = 700 + static_cast<std::uint64_t>(trial);
    const ProblemInstance instance =
        make_instance(d, link, NoiseKind::kOrthogonalHermite, 2, q, seed);
    init_cfg.seed = Rng::mix(seed, 101);
    gd_cfg.seed = Rng::mix(seed, 202);
    const InitReport init = init_tensor_pca(instance, init_cfg);
    const TrainReport report = train(instance, init.w0, gd_cfg);
    const McEstimate loss =
        l2_loss_mc(instance, report.w_final, 200'000, Rng::mix(seed, 303));
    if (loss.mean <= 20.0 * q + 0.05) ++noisy_hits;
  }

  const bool pass = clean_hits >= 9 && noisy_hits >= 8 && !ratios.empty() &&
                    contraction_share >= 0.95 && median_ratio <= 0.99;
  return result(name, pass,
                "sin<=0.05: " + std::to_string(clean_hits) + "/10 (need 9); noisy loss<=0.25: " +
                    std::to_string(noisy_hits) + "/10 (need 8); contraction share = " +
                    fmt(contraction_share) + " (need 0.95), median ratio = " + fmt(median_ratio) +
                    " (need <= 0.99, population factor 0.9658)");
}

// ---------------------------------------------------------------------------
// acceptance-08: the degree-1 Chow vector carries no signal for k* = 2.

CheckResult acceptance_no_signal() {
  const std::string name = "acceptance-08-degree1-no-signal";
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance = make_instance(20, link, NoiseKind::kRealizable, 0, 0.0, 31);
  const Batch batch = sample_batch(instance, 1'000'000, 777);

  const UnfoldedMatrix degree1 = chow_matrix(batch, 1, 0);
  const double degree1_norm = degree1.entries.norm();
  const UnfoldedMatrix degree2 = chow_matrix(batch, 2, 1);
  const TopSingular top = top_left_singular(degree2);

  const bool pass = degree1_norm <= 0.01 && top.sigma1 >= 0.9;
  return result(name, pass,
                "||E_n[y x]|| = " + fmt(degree1_norm) + " (tol 0.01), degree-2 sigma1 = " +
                    fmt(top.sigma1) + " (need 0.9)");
}

// ---------------------------------------------------------------------------
// acceptance-09: init success rate is monotone in the sample count.

CheckResult acceptance_sample_trend() {
  const std::string name = "acceptance-09-sample-complexity-trend";
  const LinkSpec link = make_link("pure-he2");
  const int d = 20;
  const std::size_t grid[] = {1000, 10'000, 100'000};
  std::vector<double> rates;
  std::ostringstream detail;
  for (std::size_t n : grid) {
    InitConfig cfg;
    cfg.n_override = n;
    int hits = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const std::uint64_t seed = 90 + static_cast<std::uint64_t>(trial);
      cfg.seed = Rng::mix(seed, 101);
      const ProblemInstance instance =
          make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, seed);
      if (std::fabs(*init_tensor_pca(instance, cfg).alignment) >= 0.5) ++hits;
    }
    rates.push_back(static_cast<double>(hits) / 10.0);
    detail << "n=" << n << ": " << hits << "/10  ";
  }
  const bool pass = rates[0] <= rates[1] && rates[1] <= rates[2];
  return result(name, pass, detail.str() + (pass ? "(monotone)" : "(NOT monotone)"));
}

// ---------------------------------------------------------------------------
// acceptance-10: byte-identical reports for 1-thread and 4-thread runs.

std::string canonical_trial_json(int threads) {
  ::setenv("SIMLEARN_THREADS", std::to_string(threads).c_str(), 1);
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance = make_instance(8, link, NoiseKind::kOrthogonalHermite, 2,
                                                 0.0025, 11);
  InitConfig init_cfg;
  init_cfg.n_override = 20'000;
  init_cfg.seed = 21;
  const InitReport init = init_tensor_pca(instance, init_cfg);
  GDConfig gd_cfg;
  gd_cfg.batch_n = 5000;
  gd_cfg.iters = 10;
  gd_cfg.seed = 22;
  const TrainReport trained = train(instance, init.w0, gd_cfg);
  const EvalReport eval_report = evaluate(instance, trained.w_final, 10'000, 23);

  nlohmann::json j;
  j["init"] = to_json(init);
  j["gd"] = to_json(trained, true);
  j["eval"] = to_json(eval_report);
  return j.dump(2);
}

CheckResult acceptance_reproducibility() {
  const std::string name = "acceptance-10-reproducibility";
  const char* saved = std::getenv("SIMLEARN_THREADS");
  const std::string saved_value = saved ? saved : "";

  const std::string one = canonical_trial_json(1);
  const std::string four = canonical_trial_json(4);
  const std::string four_again = canonical_trial_json(4);

  if (saved) {
    ::setenv("SIMLEARN_THREADS", saved_value.c_str(), 1);
  } else {
    ::unsetenv("SIMLEARN_THREADS");
  }
  const bool pass = one == four && four == four_again;
  return result(name, pass,
                std::string("1-thread vs 4-thread reports ") +
                    (one == four ? "identical" : "DIFFER") + ", repeat run " +
                    (four == four_again ? "identical" : "DIFFERS"));
}

// ---------------------------------------------------------------------------
// Module property suites.

CheckResult links_normalization() {
  const std::string name = "links-normalization";
  bool pass = true;
  std::ostringstream detail;
  for (const char* builtin : {"pure-he2", "phase-square", "relu", "abs", "sigmoid-centered"}) {
    const LinkSpec link = make_link(builtin);
    Rng rng(404ULL);
    double sum = 0.0, sumsq = 0.0;
    constexpr std::size_t kN = 1'000'000;
    for (std::size_t i = 0; i < kN; ++i) {
      const double v = link.eval(rng.gaussian());
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(kN);
    const double second = sumsq / static_cast<double>(kN);
    if (std::fabs(second - 1.0) > 0.01 || std::fabs(mean) > 0.01) {
      pass = false;
      detail << builtin << ": E[s]=" << fmt(mean) << " E[s^2]=" << fmt(second) << "; ";
    }
  }
  if (detail.str().empty()) detail << "all builtins centered with unit second moment (+-0.01)";
  return result(name, pass, detail.str());
}

CheckResult links_info_exponent() {
  const std::string name = "links-info-exponent";
  const LinkSpec relu = make_link("relu");
  const LinkSpec sigmoid = make_link("sigmoid-centered");
  const LinkSpec abs_link = make_link("abs");
  const LinkSpec square = make_link("phase-square");
  const bool pass = relu.k_star == 1 && relu.c_kstar > 0.0 && sigmoid.k_star == 1 &&
                    sigmoid.c_kstar > 0.0 && abs_link.k_star == 2 && square.k_star == 2;
  return result(name, pass,
                "relu k*=" + std::to_string(relu.k_star) + " c1=" + fmt(relu.c_kstar) +
                    ", sigmoid k*=" + std::to_string(sigmoid.k_star) + ", abs k*=" +
                    std::to_string(abs_link.k_star) + ", phase-square k*=" +
                    std::to_string(square.k_star));
}

CheckResult links_derivative_moment() {
  const std::string name = "links-derivative-moment";
  bool pass = true;
  std::ostringstream detail;
  for (const char* builtin : {"pure-he2", "pure-he3", "sigmoid-centered"}) {
    const LinkSpec link = make_link(builtin);
    Rng rng(505ULL);
    double sum = 0.0;
    constexpr std::size_t kN = 200'000;
    constexpr double kH = 1e-5;
    for (std::size_t i = 0; i < kN; ++i) {
      const double z = rng.gaussian();
      const double slope = (link.eval(z + kH) - link.eval(z - kH)) / (2.0 * kH);
      sum += slope * slope;
    }
    const double estimate = sum / static_cast<double>(kN);
    const double target = link.C_kstar;  // sum k c_k^2
    if (std::fabs(estimate - target) > 0.05 * target) {
      pass = false;
      detail << builtin << ": E[(s')^2]=" << fmt(estimate) << " vs " << fmt(target) << "; ";
    }
  }
  if (detail.str().empty()) detail << "E[(s')^2] matches sum k c_k^2 within 5%";
  return result(name, pass, detail.str());
}

CheckResult synth_noise_level() {
  const std::string name = "synth-noise-level";
  const LinkSpec link = make_link("pure-he2");
  const double q = 0.04;
  bool pass = true;
  std::ostringstream detail;
  struct Case {
    NoiseKind kind;
    int degree;
    int dim;
    const char* label;
  };
  const Case cases[] = {{NoiseKind::kOrthogonalHermite, 1, 10, "oh-m1"},
                        {NoiseKind::kOrthogonalHermite, 2, 10, "oh-m2"},
                        {NoiseKind::kPartialTraceAdversary, 2, 10, "pt-k2"},
                        {NoiseKind::kPartialTraceAdversary, 4, 6, "pt-k4"},
                        {NoiseKind::kBoundedRandom, 0, 10, "bounded"}};
  for (const Case& c : cases) {
    const ProblemInstance instance = make_instance(c.dim, link, c.kind, c.degree, q, 66);
    const Batch batch = sample_batch(instance, 1'000'000, 67);
    double acc = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Eigen::Map<const Vector> xi(batch.x.data() + i * static_cast<std::size_t>(c.dim), c.dim);
      const double resid = batch.y[static_cast<Eigen::Index>(i)] -
                           link.eval(xi.dot(instance.w_star));
      acc += resid * resid;
    }
    const double level = acc / static_cast<double>(batch.size());
    if (std::fabs(level - q) > 0.03 * q) {
      pass = false;
      detail << c.label << ": " << fmt(level) << " vs " << fmt(q) << "; ";
    }
  }
  if (detail.str().empty()) detail << "E[(y - sigma)^2] = Q within 3% for all noise models";
  return result(name, pass, detail.str());
}

CheckResult synth_truncation() {
  const std::string name = "synth-truncation";
  const LinkSpec link = make_link("pure-he2");
  const double eps = 0.01;
  const double cap = default_label_cap(link, eps);
  bool pass = true;
  std::ostringstream detail;
  for (const double q : {0.0, 0.04}) {
    const NoiseKind kind = q == 0.0 ? NoiseKind::kRealizable : NoiseKind::kOrthogonalHermite;
    ProblemInstance instance = make_instance(10, link, kind, 2, q, 68, cap);
    const Batch batch = sample_batch(instance, 1'000'000, 69);
    double acc = 0.0, acc_sq = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Eigen::Map<const Vector> xi(batch.x.data() + i * 10u, 10);
      const double resid = batch.y[static_cast<Eigen::Index>(i)] -
                           link.eval(xi.dot(instance.w_star));
      acc += resid * resid;
      acc_sq += resid * resid * resid * resid;
    }
    const double mean = acc / static_cast<double>(batch.size());
    const double se = std::sqrt(std::max(0.0, acc_sq / static_cast<double>(batch.size()) -
                                                  mean * mean) /
                                static_cast<double>(batch.size()));
    if (mean > q + eps + 3.0 * se) {
      pass = false;
      detail << "q=" << q << ": excess " << fmt(mean) << "; ";
    }
  }
  if (detail.str().empty()) {
    detail << "clamping at B_y=" << fmt(cap) << " costs at most Q + eps (+3 SE)";
  }
  return result(name, pass, detail.str());
}

CheckResult synth_label_moments() {
  const std::string name = "synth-label-moments";
  const LinkSpec link = make_link("pure-he2");
  bool pass = true;
  std::ostringstream detail;
  for (const double q : {0.0, 0.04}) {
    const NoiseKind kind = q == 0.0 ? NoiseKind::kRealizable : NoiseKind::kOrthogonalHermite;
    const ProblemInstance instance = make_instance(10, link, kind, 2, q, 70);
    const Batch batch = sample_batch(instance, 1'000'000, 71);
    const double second = batch.y.squaredNorm() / static_cast<double>(batch.size());
    if (second < 0.45 || second > 2.05) {
      pass = false;
      detail << "q=" << q << ": E[y^2]=" << fmt(second) << "; ";
    }
  }
  if (detail.str().empty()) detail << "E[y^2] within [0.45, 2.05]";
  return result(name, pass, detail.str());
}

CheckResult synth_noise_orthogonality() {
  const std::string name = "synth-noise-orthogonality";
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance =
      make_instance(10, link, NoiseKind::kOrthogonalHermite, 2, 0.04, 72);
  const Batch batch = sample_batch(instance, 1'000'000, 73);
  double sum_ns = 0.0, sum_n2 = 0.0, sum_s2 = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Eigen::Map<const Vector> xi(batch.x.data() + i * 10u, 10);
    const double signal = link.eval(xi.dot(instance.w_star));
    const double noise = batch.y[static_cast<Eigen::Index>(i)] - signal;
    sum_ns += noise * signal;
    sum_n2 += noise * noise;
    sum_s2 += signal * signal;
  }
  const double n = static_cast<double>(batch.size());
  const double corr = (sum_ns / n) / std::sqrt((sum_n2 / n) * (sum_s2 / n));
  const double tol = 3.0 / std::sqrt(n);
  const bool pass = std::fabs(corr) <= tol;
  return result(name, pass, "corr(noise, signal) = " + fmt(corr) + " (tol " + fmt(tol) + ")");
}

CheckResult synth_normalizer() {
  const std::string name = "synth-normalizer";
  const Vector v10 = seeded_unit(10, 1234);
  const double z2 = noise_normalizer(2, 10, v10);

  const int d = 6, k = 4;
  const Vector v = seeded_unit(d, 55);
  const double z4 = noise_normalizer(k, d, v);
  // MC second moment of the contraction should equal Z^2.
  Rng rng(56ULL);
  double acc = 0.0;
  constexpr std::size_t kN = 1'500'000;
  Vector x(d);
  for (std::size_t i = 0; i < kN; ++i) {
    for (int j = 0; j < d; ++j) x[j] = rng.gaussian();
    const double c = partial_trace_contraction(x, v, k);
    acc += c * c;
  }
  const double mc = std::sqrt(acc / static_cast<double>(kN));
  const double bound = std::pow(static_cast<double>(d), (k - 2) / 4.0);
  const bool pass = std::fabs(z2 - 1.0) <= 1e-9 && std::fabs(mc - z4) <= 0.02 * z4 && z4 <= bound;
  return result(name, pass,
                "Z(2)=" + fmt(z2) + ", Z(4,d=6)=" + fmt(z4) + " vs MC " + fmt(mc) +
                    " (2% tol), bound d^((k-2)/4)=" + fmt(bound));
}

CheckResult synth_determinism() {
  const std::string name = "synth-determinism";
  const LinkSpec link = make_link("relu");
  const ProblemInstance instance =
      make_instance(7, link, NoiseKind::kBoundedRandom, 0, 0.01, 74);
  const char* saved = std::getenv("SIMLEARN_THREADS");
  const std::string saved_value = saved ? saved : "";

  ::setenv("SIMLEARN_THREADS", "1", 1);
  const Batch one = sample_batch(instance, 20'000, 75);
  ::setenv("SIMLEARN_THREADS", "4", 1);
  const Batch four = sample_batch(instance, 20'000, 75);
  const Batch again = sample_batch(instance, 20'000, 75);
  if (saved) {
    ::setenv("SIMLEARN_THREADS", saved_value.c_str(), 1);
  } else {
    ::unsetenv("SIMLEARN_THREADS");
  }

  const bool same = one.x == four.x && one.y == four.y && four.x == again.x && four.y == again.y;
  return result(name, same,
                same ? "batches bit-identical across thread counts and repeats"
                     : "batches DIFFER across thread counts");
}

CheckResult chow_signal() {
  const std::string name = "chow-signal";
  const LinkSpec link = make_link("pure-he2");
  const int d = 10;

  // Realizable: top singular value ~ c_k (v-hat . vec(w*)) and a wide gap.
  const ProblemInstance clean = make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, 81);
  const Batch batch = sample_batch(clean, 200'000, 82);
  const UnfoldedMatrix m = chow_matrix(batch, 2, 1);
  const TopSingular top = top_left_singular(m);
  const double align = std::fabs(top.v.dot(clean.w_star));  // l = 1: vec(w*^{x1}) = w*
  const double signal_gap = std::fabs(top.sigma1 - link.c_kstar * align);
  const double gap = top.sigma1 - top.sigma2;

  // Noisy: alignment of the top-left singular vector survives small Q.
  const double q = 0.0025;
  const ProblemInstance noisy = make_instance(d, link, NoiseKind::kOrthogonalHermite, 2, q, 83);
  const Batch noisy_batch = sample_batch(noisy, 200'000, 84);
  const TopSingular noisy_top = top_left_singular(chow_matrix(noisy_batch, 2, 1));
  const double noisy_align = std::fabs(noisy_top.v.dot(noisy.w_star));
  const double floor = 1.0 - 2.0 * std::sqrt(q) / link.c_kstar - 0.05;

  const bool pass = signal_gap <= 0.05 && align >= 0.95 && gap >= 0.3 * link.c_kstar &&
                    noisy_align >= floor;
  return result(name, pass,
                "|sigma1 - c (v.w*)| = " + fmt(signal_gap) + " (tol 0.05), gap = " + fmt(gap) +
                    " (need " + fmt(0.3 * link.c_kstar) + "), noisy align = " + fmt(noisy_align) +
                    " (need " + fmt(floor) + ")");
}

CheckResult chow_fold_alignment() {
  const std::string name = "chow-fold-alignment";
  const int d = 6, l = 2;
  const Vector w_star = seeded_unit(d, 85);
  const Vector vec = vectorize_power(w_star, l);
  bool pass = true;
  std::ostringstream detail;
  double worst_margin = 1.0;
  for (int rep = 0; rep < 10; ++rep) {
    const Vector g = seeded_unit(static_cast<int>(vec.size()), 86 + static_cast<std::uint64_t>(rep));
    Vector v_hat = 0.96 * vec + 0.04 * g;
    v_hat.normalize();
    const double eps1 = 1.0 - v_hat.dot(vec);
    if (eps1 > 1.0 / 16.0 || eps1 < 0.0) continue;
    const TopSingular top = top_left_singular(fold_rows(v_hat, d));
    const double align = std::fabs(top.v.dot(w_star));
    worst_margin = std::min(worst_margin, align - (1.0 - 2.0 * eps1));
    if (align < 1.0 - 2.0 * eps1) {
      pass = false;
      detail << "rep " << rep << ": u.w* = " << fmt(align) << " < " << fmt(1.0 - 2.0 * eps1)
             << "; ";
    }
  }
  if (detail.str().empty()) {
    detail << "u.w* >= 1 - 2 eps1 on all draws (worst margin " << fmt(worst_margin) << ")";
  }
  return result(name, pass, detail.str());
}

CheckResult chow_pca_solve() {
  const std::string name = "chow-pca-solve";
  const LinkSpec link = make_link("pure-he2");
  const int d = 15;
  const double eps = 0.05;

  InitConfig cfg;
  cfg.n_override = 200'000;
  int hits = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint64_t seed = 120 + static_cast<std::uint64_t>(trial);
    cfg.seed = Rng::mix(seed, 101);
    const ProblemInstance instance = make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, seed);
    const InitReport report = pca_solve(instance, eps, cfg);
    if (std::fabs(*report.alignment) >= 1.0 - 2.0 * eps) ++hits;
  }

  // Alignment degrades monotonically for strongly separated noise levels.
  double mean_clean = 0.0, mean_noisy = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint64_t seed = 140 + static_cast<std::uint64_t>(trial);
    cfg.seed = Rng::mix(seed, 101);
    const ProblemInstance clean = make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, seed);
    mean_clean += std::fabs(*pca_solve(clean, eps, cfg).alignment);
    const ProblemInstance noisy =
        make_instance(d, link, NoiseKind::kOrthogonalHermite, 2, 0.09, seed);
    mean_noisy += std::fabs(*pca_solve(noisy, eps, cfg).alignment);
  }
  mean_clean /= 10.0;
  mean_noisy /= 10.0;

  const bool pass = hits >= 8 && mean_clean >= mean_noisy;
  return result(name, pass,
                "|w.w*| >= 0.9: " + std::to_string(hits) + "/10 (need 8); mean align " +
                    fmt(mean_clean) + " (Q=0) vs " + fmt(mean_noisy) + " (Q=0.09)");
}

CheckResult gd_concentration_trend() {
  const std::string name = "gd-concentration-trend";
  const LinkSpec link = make_link("pure-he2");
  const int d = 10;
  const ProblemInstance instance = make_instance(d, link, NoiseKind::kRealizable, 0, 0.0, 160);
  const Vector w = unit_at_alignment(instance.w_star, 0.8, 161);
  const Vector g_star = population_g_star(link, w, instance.w_star);

  std::vector<double> errs;
  for (const std::size_t n : {std::size_t{100}, std::size_t{1000}, std::size_t{10'000}}) {
    double acc = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const Batch batch =
          sample_batch(instance, n, Rng::mix(162 + static_cast<std::uint64_t>(rep), n));
      acc += (empirical_gradient(batch, w, link) - g_star).norm();
    }
    errs.push_back(acc / 20.0);
  }
  const double r1 = errs[0] / errs[1];
  const double r2 = errs[1] / errs[2];
  const double root10 = std::sqrt(10.0);
  const bool pass = r1 >= root10 / 2.0 && r1 <= 2.0 * root10 && r2 >= root10 / 2.0 &&
                    r2 <= 2.0 * root10;
  return result(name, pass,
                "||g-hat - g|| at n=1e2/1e3/1e4: " + fmt(errs[0]) + "/" + fmt(errs[1]) + "/" +
                    fmt(errs[2]) + "; decade ratios " + fmt(r1) + ", " + fmt(r2) +
                    " (need sqrt(10) within x2)");
}

CheckResult eval_loss_consistency() {
  const std::string name = "eval-loss-consistency";
  bool pass = true;
  std::ostringstream detail;
  for (const char* builtin : {"pure-he2", "relu"}) {
    const LinkSpec link = make_link(builtin);
    const ProblemInstance instance = make_instance(8, link, NoiseKind::kRealizable, 0, 0.0, 170);
    // The closed form sums the stored coefficients; mass beyond the stored
    // degree shifts the true loss by at most 4 * tail_mass.
    const double bias = 4.0 * link.tail_mass;
    int exceed = 0;
    double worst = 0.0;
    Rng rng(171ULL);
    for (int rep = 0; rep < 50; ++rep) {
      const double a = 2.0 * rng.uniform() - 1.0;
      const Vector w = unit_at_alignment(instance.w_star, a, 172 + static_cast<std::uint64_t>(rep));
      const McEstimate mc =
          l2_loss_mc(instance, w, 20'000, Rng::mix(173, static_cast<std::uint64_t>(rep)));
      const double closed = noiseless_loss_closed(link, w.dot(instance.w_star));
      const double err = std::fabs(mc.mean - closed);
      worst = std::max(worst, err / std::max(mc.std_error, 1e-12));
      if (err > 3.0 * mc.std_error + bias) ++exceed;
    }
    if (exceed > 0) {
      pass = false;
      detail << builtin << ": " << exceed << "/50 outside 3 SE (worst " << fmt(worst) << "); ";
    }
  }
  if (detail.str().empty()) detail << "MC loss matches the closed form within 3 SE (50 w each)";
  return result(name, pass, detail.str());
}

CheckResult eval_upper_bound() {
  const std::string name = "eval-upper-bound";
  int violations = 0;
  Rng rng(180ULL);
  for (int rep = 0; rep < 50; ++rep) {
    const LinkSpec link = make_link(rep % 2 == 0 ? "pure-he2" : "relu");
    const double q = 0.2 * rng.uniform();
    const NoiseKind kind = q == 0.0 ? NoiseKind::kRealizable : NoiseKind::kOrthogonalHermite;
    const ProblemInstance instance =
        make_instance(8, link, kind, 2, q, 181 + static_cast<std::uint64_t>(rep));
    const double a = 2.0 * rng.uniform() - 1.0;
    const Vector w = unit_at_alignment(instance.w_star, a, 300 + static_cast<std::uint64_t>(rep));
    const McEstimate mc =
        l2_loss_mc(instance, w, 20'000, Rng::mix(400, static_cast<std::uint64_t>(rep)));
    const double bound = loss_upper_bound(link, instance.noise_level, w.dot(instance.w_star));
    if (mc.mean > bound + 3.0 * mc.std_error) ++violations;
  }
  return result(name, violations == 0,
                "2Q + 4(1 - sum c_k^2 a^k) dominated the MC loss in 50/" +
                    std::to_string(50 - violations) + " configs" +
                    (violations ? " (" + std::to_string(violations) + " violations)" : ""));
}

CheckResult eval_final_error() {
  const std::string name = "eval-final-error";
  const LinkSpec link = make_link("pure-he2");
  const double q = 0.0025;
  const ProblemInstance instance =
      make_instance(10, link, NoiseKind::kOrthogonalHermite, 2, q, 190);
  bool pass = true;
  std::ostringstream detail;
  for (const double a : {0.999, 0.99, 0.97}) {
    const Vector w = unit_at_alignment(instance.w_star, a, 191);
    const double sin_sq = 1.0 - a * a;
    const McEstimate mc = l2_loss_mc(instance, w, 100'000, 192);
    const double bound = 2.0 * q + 4.0 * link.C_kstar * sin_sq;
    if (mc.mean > bound + 3.0 * mc.std_error) {
      pass = false;
      detail << "a=" << a << ": " << fmt(mc.mean) << " > " << fmt(bound) << "; ";
    }
  }
  if (detail.str().empty()) detail << "loss <= 2Q + 4 C_k* sin^2(theta) (+3 SE) near w*";
  return result(name, pass, detail.str());
}

CheckResult harness_config_roundtrip() {
  const std::string name = "harness-config-roundtrip";
  ExperimentConfig config;
  config.preset = Preset::kFullPipeline;
  config.instance.dim = 20;
  config.instance.link_builtin = "pure-he2";
  config.instance.noise = NoiseKind::kOrthogonalHermite;
  config.instance.noise_degree = 2;
  config.instance.q = 0.01;
  config.init.n_override = 100'000;
  config.gd.batch_n = 50'000;
  config.gd.iters = 60;
  config.trials = 10;

  const std::string once = emit_config(config);
  const std::string twice = emit_config(parse_config(once));
  const bool stable = once == twice;
  const std::string desc1 = describe(config);
  const std::string desc2 = describe(parse_config(twice));
  const bool pass = stable && desc1 == desc2;
  return result(name, pass,
                pass ? "emit/parse/emit and describe are stable"
                     : "config round-trip NOT stable");
}

using CheckFn = CheckResult (*)();

struct NamedCheck {
  const char* name;
  CheckFn fn;
};

const NamedCheck kChecks[] = {
    {"acceptance-01-hermite-correctness", acceptance_hermite},
    {"acceptance-02-tensor-exactness", acceptance_tensor},
    {"acceptance-03-contraction-oracle", acceptance_contraction},
    {"acceptance-04-gradient-oracle", acceptance_gradient_oracle},
    {"acceptance-05-noise-gradient-sharpness", acceptance_noise_sharpness},
    {"acceptance-06-init-alignment", acceptance_init},
    {"acceptance-07-end-to-end", acceptance_end_to_end},
    {"acceptance-08-degree1-no-signal", acceptance_no_signal},
    {"acceptance-09-sample-complexity-trend", acceptance_sample_trend},
    {"acceptance-10-reproducibility", acceptance_reproducibility},
    {"links-normalization", links_normalization},
    {"links-info-exponent", links_info_exponent},
    {"links-derivative-moment", links_derivative_moment},
    {"synth-noise-level", synth_noise_level},
    {"synth-truncation", synth_truncation},
    {"synth-label-moments", synth_label_moments},
    {"synth-noise-orthogonality", synth_noise_orthogonality},
    {"synth-normalizer", synth_normalizer},
    {"synth-determinism", synth_determinism},
    {"chow-signal", chow_signal},
    {"chow-fold-alignment", chow_fold_alignment},
    {"chow-pca-solve", chow_pca_solve},
    {"gd-concentration-trend", gd_concentration_trend},
    {"eval-loss-consistency", eval_loss_consistency},
    {"eval-upper-bound", eval_upper_bound},
    {"eval-final-error", eval_final_error},
    {"harness-config-roundtrip", harness_config_roundtrip},
};

}  // namespace

std::vector<CheckResult> run_selftest(const std::string& filter) {
  std::vector<CheckResult> results;
  for (const NamedCheck& check : kChecks) {
    if (!filter.empty() && std::string(check.name).find(filter) == std::string::npos) continue;
    try {
      results.push_back(check.fn());
    } catch (const std::exception& e) {
      results.push_back(CheckResult{check.name, false, std::string("exception: ") + e.what()});
    }
  }
  return results;
}

}  // namespace simlearn
