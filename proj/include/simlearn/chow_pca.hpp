#pragma once

#include <cstdint>
#include <optional>

#include "simlearn/synth.hpp"
#include "simlearn/tensor.hpp"

namespace simlearn {

enum class SvdMethod {
  kAuto,            // full SVD when min(rows, cols) <= 512, else power iteration
  kFull,
  kPowerIteration,
};

struct InitConfig {
  int k = 0;            // Chow degree; 0 resolves to the link's k*
  double eps = 0.05;
  double eps0 = 0.0;    // 0 resolves to c_{k*}/(256 k*)
  std::optional<std::size_t> n_override;
  double sample_constant = 1.0;  // multiplier on the rate-based schedule
  SvdMethod svd = SvdMethod::kAuto;
  int power_iters = 200;
  std::uint64_t seed = 0;
};

struct InitReport {
  Vector w0;
  Vector v_hat;                      // top left singular vector of M-hat
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  std::size_t n_used = 0;
  std::optional<double> alignment;   // parity-aware w0 vs w* when w* is known
  bool sign_flipped = false;         // the held-out loss probe preferred -u
};

struct TopSingular {
  Vector v;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
};

/// M-hat = (1/n) sum_i mat_(l,k-l)(y_i He_k(x_i)), accumulated as a running
/// sum over fixed chunks merged in chunk order (bit-identical for any thread
/// count). Requires l = floor(k/2).
UnfoldedMatrix chow_matrix(const Batch& batch, int k, int l);

/// Top left singular vector with the top two singular values. The sign is
/// fixed so the largest-magnitude coordinate is positive. Zero matrices are
/// degenerate input.
TopSingular top_left_singular(const UnfoldedMatrix& m, SvdMethod method = SvdMethod::kAuto,
                              int power_iters = 200);
TopSingular top_left_singular(const Matrix& m, SvdMethod method = SvdMethod::kAuto,
                              int power_iters = 200);

/// Rate-based sample count e^k log^k(B4/eps) d^(k-l) / eps0^2 + 1/eps, scaled
/// by `sample_constant`.
std::size_t init_sample_schedule(int k, int l, int dim, double eps, double eps0, double B4,
                                 double sample_constant);

/// Tensor-PCA warm start: unfold the empirical degree-k Chow tensor, take the
/// top left singular vector, refold to d x d^(l-1) and take that matrix's top
/// left singular vector. Degree 1 degenerates to the normalized empirical
/// Chow vector. The global sign is resolved by comparing the empirical
/// truncated loss at +-u on a held-out slice.
InitReport init_tensor_pca(const ProblemInstance& instance, const InitConfig& cfg);

/// Initialization run at eps0 = c_{k*} eps / 16, which makes the warm start
/// itself an O(sqrt(Q) + eps)-accurate solution. Warns on eps > 1/64.
InitReport pca_solve(const ProblemInstance& instance, double eps, InitConfig cfg = {});

}  // namespace simlearn
