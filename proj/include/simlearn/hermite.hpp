#pragma once

#include <functional>
#include <vector>

#include "simlearn/tensor.hpp"

namespace simlearn {

/// Values he_0(z)..he_K(z) of the normalized probabilist's Hermite
/// polynomials at one point.
struct HermiteSeries {
  int max_degree = 0;
  std::vector<double> values;  // length max_degree + 1
};

inline constexpr int kMaxHermiteDegree = 64;

/// he_k(z). Normalized so that E_{z~N(0,1)}[he_j he_k] = 1{j=k}; evaluated by
/// the three-term recurrence he_{k+1} = (z he_k - sqrt(k) he_{k-1})/sqrt(k+1),
/// which folds the 1/sqrt(k!) normalization in multiplicatively and stays
/// finite for k <= 64, |z| <= 50.
double hermite_eval(int k, double z);

HermiteSeries hermite_eval_all(int max_degree, double z);

/// Dense multivariate Hermite tensor He_k(x): entry (i_1..i_k) equals
/// sqrt(a_1! ... a_d! / k!) * he_{a_1}(x_1) ... he_{a_d}(x_d) where a_j counts
/// how many of the k indices hit coordinate j.
DenseTensor hermite_tensor_dense(const Vector& x, int k);

/// <He_k(x), w^{x k}> by the closed form |w|^k he_k(w.x/|w|); w = 0 maps to
/// 0 for k >= 1 and to 1 for k = 0 (the continuous limit).
double contract_power(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> w, int k);

/// <He_k(x), w^{x(k-1)}> in O(d). For unit w this is
///   he_k(w.x) w + (1/sqrt(k)) he_{k-1}(w.x) (x - (w.x) w),
/// i.e. (1/k) grad_w <He_k(x), w^{x k}>; the general-norm form follows by
/// differentiating |w|^k he_k(w.x/|w|).
Vector contract_power_grad(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> w, int k);

/// Gauss quadrature nodes/weights for E_{z~N(0,1)}[f(z)] ~ sum w_i f(z_i)
/// (Gauss-Hermite with the probabilist's rescaling, via Golub-Welsch).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_hermite_probabilist(int order);

/// Hermite coefficients c_k = E[link(z) he_k(z)] for k = 0..max_degree.
/// `kink_at_zero` switches to split Gauss-Legendre panels on [-12,0] and
/// [0,12] against the Gaussian weight, which restores spectral accuracy for
/// links like ReLU and |z| that Gauss-Hermite only handles at ~1e-6.
std::vector<double> hermite_coefficients(const std::function<double(double)>& link,
                                         int max_degree, int quad_order,
                                         bool kink_at_zero = false);

/// Monte Carlo fallback for links too rough for quadrature.
std::vector<double> hermite_coefficients_mc(const std::function<double(double)>& link,
                                            int max_degree, std::size_t samples,
                                            std::uint64_t seed);

/// E[link(z) * weight(z)] by the same quadrature machinery (used for moment
/// constants like E[sigma^2], E[sigma^4]).
double gaussian_expectation(const std::function<double(double)>& f, int quad_order,
                            bool kink_at_zero = false);

}  // namespace simlearn
