#include "simlearn/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "simlearn/errors.hpp"
#include "simlearn/rng.hpp"

namespace simlearn {

namespace {

void require_degree(int k) {
  if (k < 0 || k > kMaxHermiteDegree) {
    throw ArgumentError("hermite degree " + std::to_string(k) + " outside [0, " +
                        std::to_string(kMaxHermiteDegree) + "]");
  }
}

/// Nodes/weights of an n-point Gauss rule from a symmetric tridiagonal Jacobi
/// matrix with zero diagonal and the given off-diagonal; weights are
/// mu_0 * (first eigenvector component)^2.
QuadratureRule golub_welsch(const std::vector<double>& offdiag, double mu0) {
  const int n = static_cast<int>(offdiag.size()) + 1;
  Matrix jacobi = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    jacobi(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
    jacobi(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double first = solver.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * first * first;
  }
  return rule;
}

QuadratureRule gauss_legendre(int order) {
  std::vector<double> offdiag(static_cast<std::size_t>(order - 1));
  for (int k = 1; k < order; ++k) {
    offdiag[static_cast<std::size_t>(k - 1)] =
        static_cast<double>(k) / std::sqrt(4.0 * k * k - 1.0);
  }
  return golub_welsch(offdiag, 2.0);  // weight 1 on [-1, 1]
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684;

/// Integrates f(z) * standard normal density over [-12, 0] and [0, 12] with a
/// Gauss-Legendre panel on each half; exact for kinks at the origin, and the
/// truncated tails are below 1e-30 in mass.
double split_gaussian_integral(const std::function<double(double)>& f, int order_per_half) {
  static const double kEdge = 12.0;
  const QuadratureRule gl = gauss_legendre(order_per_half);
  double acc = 0.0;
  for (int half = 0; half < 2; ++half) {
    const double a = half == 0 ? -kEdge : 0.0;
    const double b = half == 0 ? 0.0 : kEdge;
    const double mid = 0.5 * (a + b);
    const double rad = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double z = mid + rad * gl.nodes[i];
      acc += rad * gl.weights[i] * f(z) * kInvSqrt2Pi * std::exp(-0.5 * z * z);
    }
  }
  return acc;
}

}  // namespace

double hermite_eval(int k, double z) {
  require_degree(k);
  double prev = 1.0;  // he_0
  if (k == 0) return prev;
  double cur = z;  // he_1
  for (int m = 1; m < k; ++m) {
    const double next = (z * cur - std::sqrt(static_cast<double>(m)) * prev) /
                        std::sqrt(static_cast<double>(m + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

HermiteSeries hermite_eval_all(int max_degree, double z) {
  require_degree(max_degree);
  HermiteSeries s;
  s.max_degree = max_degree;
  s.values.resize(static_cast<std::size_t>(max_degree) + 1);
  s.values[0] = 1.0;
  if (max_degree == 0) return s;
  s.values[1] = z;
  for (int m = 1; m < max_degree; ++m) {
    s.values[static_cast<std::size_t>(m) + 1] =
        (z * s.values[static_cast<std::size_t>(m)] -
         std::sqrt(static_cast<double>(m)) * s.values[static_cast<std::size_t>(m) - 1]) /
        std::sqrt(static_cast<double>(m + 1));
  }
  return s;
}

DenseTensor hermite_tensor_dense(const Vector& x, int k) {
  require_degree(k);
  const int d = static_cast<int>(x.size());
  DenseTensor t = zero_tensor(d, k);
  if (k == 0) {
    t.data[0] = 1.0;
    return t;
  }

  // Per-coordinate he values up to degree k, plus factorials for the
  // multiplicity weight sqrt(a_1!...a_d!/k!).
  std::vector<HermiteSeries> he(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) he[static_cast<std::size_t>(j)] = hermite_eval_all(k, x[j]);
  std::vector<double> factorial(static_cast<std::size_t>(k) + 1, 1.0);
  for (int m = 1; m <= k; ++m) {
    factorial[static_cast<std::size_t>(m)] = factorial[static_cast<std::size_t>(m) - 1] * m;
  }
  const double inv_kfact = 1.0 / factorial[static_cast<std::size_t>(k)];

  std::vector<int> digits(static_cast<std::size_t>(k), 0);
  std::vector<int> counts(static_cast<std::size_t>(d), 0);
  counts[0] = k;
  const std::size_t total = t.data.size();
  for (std::size_t flat = 0;; ++flat) {
    double weight = inv_kfact;
    double prod = 1.0;
    for (int j = 0; j < d; ++j) {
      const int a = counts[static_cast<std::size_t>(j)];
      if (a == 0) continue;
      weight *= factorial[static_cast<std::size_t>(a)];
      prod *= he[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(a)];
    }
    t.data[flat] = std::sqrt(weight) * prod;

    if (flat + 1 == total) break;
    // Odometer step over the multi-index, keeping the multiplicity counts.
    for (int pos = 0;; ++pos) {
      int& digit = digits[static_cast<std::size_t>(pos)];
      --counts[static_cast<std::size_t>(digit)];
      if (digit + 1 < d) {
        ++digit;
        ++counts[static_cast<std::size_t>(digit)];
        break;
      }
      digit = 0;
      ++counts[0];
    }
  }
  return t;
}

double contract_power(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> w, int k) {
  require_degree(k);
  if (k == 0) return 1.0;
  const double norm = w.norm();
  if (norm == 0.0) return 0.0;
  return std::pow(norm, k) * hermite_eval(k, w.dot(x) / norm);
}

Vector contract_power_grad(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> w, int k) {
  require_degree(k);
  if (k == 0) throw ArgumentError("contract_power_grad: k must be >= 1");
  if (k == 1) return x;  // <He_1(x), w^{x 0}> = x regardless of w
  const double norm = w.norm();
  if (norm == 0.0) return Vector::Zero(x.size());

  const Vector u = w / norm;
  const double z = u.dot(x);
  const double he_k = hermite_eval(k, z);
  const double he_km1 = hermite_eval(k - 1, z);
  const double scale = std::pow(norm, k - 1);
  // (1/k) grad of |w|^k he_k(w.x/|w|); reduces to the unit-w closed form.
  return scale * (he_k * u + he_km1 / std::sqrt(static_cast<double>(k)) * (x - z * u));
}

QuadratureRule gauss_hermite_probabilist(int order) {
  if (order < 1) throw ArgumentError("quadrature order must be >= 1");
  std::vector<double> offdiag(static_cast<std::size_t>(order - 1));
  for (int k = 1; k < order; ++k) {
    offdiag[static_cast<std::size_t>(k - 1)] = std::sqrt(static_cast<double>(k));
  }
  return golub_welsch(offdiag, 1.0);  // total mass of N(0,1) is 1
}

std::vector<double> hermite_coefficients(const std::function<double(double)>& link,
                                         int max_degree, int quad_order, bool kink_at_zero) {
  require_degree(max_degree);
  if (quad_order < 2 * max_degree + 2) {
    throw ArgumentError("quad_order must be >= 2*max_degree + 2");
  }
  std::vector<double> coeffs(static_cast<std::size_t>(max_degree) + 1, 0.0);
  if (kink_at_zero) {
    for (int k = 0; k <= max_degree; ++k) {
      coeffs[static_cast<std::size_t>(k)] = split_gaussian_integral(
          [&](double z) { return link(z) * hermite_eval(k, z); }, quad_order);
    }
    return coeffs;
  }
  const QuadratureRule rule = gauss_hermite_probabilist(quad_order);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double z = rule.nodes[i];
    const double fz = link(z) * rule.weights[i];
    const HermiteSeries he = hermite_eval_all(max_degree, z);
    for (int k = 0; k <= max_degree; ++k) {
      coeffs[static_cast<std::size_t>(k)] += fz * he.values[static_cast<std::size_t>(k)];
    }
  }
  return coeffs;
}

std::vector<double> hermite_coefficients_mc(const std::function<double(double)>& link,
                                            int max_degree, std::size_t samples,
                                            std::uint64_t seed) {
  require_degree(max_degree);
  std::vector<double> coeffs(static_cast<std::size_t>(max_degree) + 1, 0.0);
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = rng.gaussian();
    const double fz = link(z);
    const HermiteSeries he = hermite_eval_all(max_degree, z);
    for (int k = 0; k <= max_degree; ++k) {
      coeffs[static_cast<std::size_t>(k)] += fz * he.values[static_cast<std::size_t>(k)];
    }
  }
  for (double& c : coeffs) c /= static_cast<double>(samples);
  return coeffs;
}

double gaussian_expectation(const std::function<double(double)>& f, int quad_order,
                            bool kink_at_zero) {
  if (quad_order < 2) throw ArgumentError("quad_order must be >= 2");
  if (kink_at_zero) return split_gaussian_integral(f, quad_order);
  const QuadratureRule rule = gauss_hermite_probabilist(quad_order);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(rule.nodes[i]);
  }
  return acc;
}

}  // namespace simlearn
