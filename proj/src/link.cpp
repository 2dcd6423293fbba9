#include "simlearn/link.hpp"

#include <cmath>
#include <optional>

#include "simlearn/errors.hpp"
#include "simlearn/hermite.hpp"

namespace simlearn {

namespace {

struct Builtin {
  std::function<double(double)> raw;
  bool kink_at_zero = false;
};

std::optional<Builtin> resolve_builtin(const std::string& name) {
  if (name.rfind("pure-he", 0) == 0) {
    const int degree = std::atoi(name.c_str() + 7);
    if (degree >= 1 && degree <= 8) {
      return Builtin{[degree](double z) { return hermite_eval(degree, z); }, false};
    }
    return std::nullopt;
  }
  if (name == "phase-square") return Builtin{[](double z) { return z * z; }, false};
  if (name == "relu") return Builtin{[](double z) { return z > 0.0 ? z : 0.0; }, true};
  if (name == "abs") return Builtin{[](double z) { return std::fabs(z); }, true};
  if (name == "sigmoid-centered") {
    return Builtin{[](double z) { return 1.0 / (1.0 + std::exp(-z)) - 0.5; }, false};
  }
  return std::nullopt;
}

LinkSpec finalize(std::string name, std::vector<double> raw_coeffs,
                  std::function<double(double)> raw,
                  bool kink_at_zero) {
  const double c0 = raw_coeffs[0];
  double mass = 0.0;
  for (std::size_t k = 1; k < raw_coeffs.size(); ++k) mass += raw_coeffs[k] * raw_coeffs[k];
  if (mass <= kCoeffTol * kCoeffTol) {
    throw InvalidLinkError("link '" + name + "' has no nonzero Hermite coefficient of degree >= 1");
  }
  const double scale = 1.0 / std::sqrt(mass);

  LinkSpec link;
  link.name = std::move(name);
  link.coeffs.resize(raw_coeffs.size(), 0.0);
  for (std::size_t k = 1; k < raw_coeffs.size(); ++k) link.coeffs[k] = raw_coeffs[k] * scale;
  link.eval = [raw = std::move(raw), c0, scale](double z) { return (raw(z) - c0) * scale; };

  link.k_star = info_exponent(link.coeffs, kCoeffTol);
  link.c_kstar = link.coeffs[static_cast<std::size_t>(link.k_star)];
  for (std::size_t k = static_cast<std::size_t>(link.k_star); k < link.coeffs.size(); ++k) {
    link.C_kstar += static_cast<double>(k) * link.coeffs[k] * link.coeffs[k];
    if (k % 2 == 1 && std::fabs(link.coeffs[k]) > kCoeffTol) link.has_odd_term = true;
  }

  // Second moment of the normalized link minus the stored coefficient mass
  // (which is exactly 1) gives the tail beyond max_degree.
  const int moment_order = 2 * static_cast<int>(raw_coeffs.size()) + 64;
  const double second = gaussian_expectation(
      [&](double z) { const double v = link.eval(z); return v * v; }, moment_order, kink_at_zero);
  link.tail_mass = second - 1.0 > 0.0 ? second - 1.0 : 0.0;
  link.B4 = gaussian_expectation(
      [&](double z) { const double v = link.eval(z); return v * v * v * v; }, 2 * moment_order,
      kink_at_zero);
  return link;
}

}  // namespace

int info_exponent(const std::vector<double>& coeffs, double tol) {
  if (tol <= 0.0) throw ArgumentError("info_exponent: tol must be positive");
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    if (std::fabs(coeffs[k]) > tol) return static_cast<int>(k);
  }
  throw InvalidLinkError("no Hermite coefficient of degree >= 1 above tol");
}

LinkSpec make_link(const std::string& builtin, int max_degree) {
  const auto resolved = resolve_builtin(builtin);
  if (!resolved) throw ArgumentError("unknown builtin link '" + builtin + "'");
  return make_link_from_callable(builtin, resolved->raw, resolved->kink_at_zero, max_degree);
}

LinkSpec make_link_from_coeffs(const std::string& name, const std::vector<double>& raw_coeffs,
                               int max_degree) {
  if (raw_coeffs.empty()) throw ArgumentError("coefficient list is empty");
  if (static_cast<int>(raw_coeffs.size()) - 1 > max_degree) {
    throw ArgumentError("coefficient list exceeds max_degree " + std::to_string(max_degree));
  }
  std::vector<double> padded(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (std::size_t k = 0; k < raw_coeffs.size(); ++k) padded[k] = raw_coeffs[k];

  // The raw evaluation is the (finite) Hermite series itself.
  auto raw = [padded](double z) {
    const HermiteSeries he = hermite_eval_all(static_cast<int>(padded.size()) - 1, z);
    double acc = 0.0;
    for (std::size_t k = 0; k < padded.size(); ++k) acc += padded[k] * he.values[k];
    return acc;
  };
  return finalize(name, padded, raw, false);
}

LinkSpec make_link_from_callable(const std::string& name,
                                 const std::function<double(double)>& raw,
                                 bool kink_at_zero, int max_degree) {
  const int quad_order = std::max(2 * max_degree + 2, 120);
  std::vector<double> raw_coeffs =
      hermite_coefficients(raw, max_degree, quad_order, kink_at_zero);
  return finalize(name, std::move(raw_coeffs), raw, kink_at_zero);
}

double link_eval(const LinkSpec& link, double z) { return link.eval(z); }

bool is_builtin_link(const std::string& name) { return resolve_builtin(name).has_value(); }

}  // namespace simlearn
