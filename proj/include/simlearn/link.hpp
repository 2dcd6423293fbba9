#pragma once

#include <functional>
#include <string>
#include <vector>

namespace simlearn {

/// A centered, unit-normalized link function together with its Hermite
/// metadata. `coeffs[k]` is the coefficient of he_k for the normalized link
/// (coeffs[0] == 0); the sum of squares over k >= 1 equals 1 exactly, with
/// any second-moment mass of the underlying function beyond max degree
/// reported in `tail_mass`. `eval` is consistent with `coeffs`:
/// E[eval(z) he_k(z)] == coeffs[k] for every stored k.
struct LinkSpec {
  std::string name;
  std::vector<double> coeffs;  // c_0..c_K after centering/normalization
  int k_star = 1;              // information exponent
  double c_kstar = 0.0;        // coeffs[k_star]
  double C_kstar = 0.0;        // sum_{k>=k*} k * coeffs[k]^2
  double B4 = 0.0;             // E[eval(z)^4]
  double tail_mass = 0.0;      // diagnostic: sum_{k>K} c_k^2 of the normalized link
  bool has_odd_term = false;   // any odd-degree coefficient above tol
  std::function<double(double)> eval;

  int max_degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline constexpr double kCoeffTol = 1e-6;
inline constexpr int kDefaultLinkDegree = 16;

/// Smallest k >= 1 with |coeffs[k]| > tol; InvalidLinkError when none exists.
int info_exponent(const std::vector<double>& coeffs, double tol);

/// Builtins: "pure-he<k>" (k = 1..8), "phase-square", "relu", "abs",
/// "sigmoid-centered". Throws ArgumentError on unknown names.
LinkSpec make_link(const std::string& builtin, int max_degree = kDefaultLinkDegree);

/// Link defined by an explicit raw coefficient list c_0..c_K; the list is
/// centered (c_0 dropped) and rescaled to unit mass over k >= 1.
LinkSpec make_link_from_coeffs(const std::string& name, const std::vector<double>& raw_coeffs,
                               int max_degree = kDefaultLinkDegree);

/// Link defined by a raw callable; coefficients are extracted by quadrature
/// (split panels when the callable has a kink at the origin).
LinkSpec make_link_from_callable(const std::string& name,
                                 const std::function<double(double)>& raw,
                                 bool kink_at_zero, int max_degree = kDefaultLinkDegree);

double link_eval(const LinkSpec& link, double z);

/// True when `name` resolves to a builtin.
bool is_builtin_link(const std::string& name);

}  // namespace simlearn
