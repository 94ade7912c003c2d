#include "subgauss/series.hpp"

#include <array>
#include <vector>

#include <fmt/format.h>

#include "subgauss/types.hpp"

namespace subgauss::series {
namespace {

using Poly = std::vector<double>;

std::array<Poly, kMaxCumulant + 1> build_table() {
  std::array<Poly, kMaxCumulant + 1> table;
  table[2] = {0.0, 1.0, -1.0};
  for (int n = 2; n < kMaxCumulant; ++n) {
    const Poly& k = table[n];
    Poly dk(k.size() > 1 ? k.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < k.size(); ++i) dk[i - 1] = static_cast<double>(i) * k[i];
    // multiply by p - p^2
    Poly next(dk.size() + 2, 0.0);
    for (std::size_t i = 0; i < dk.size(); ++i) {
      next[i + 1] += dk[i];
      next[i + 2] -= dk[i];
    }
    table[n + 1] = std::move(next);
  }
  return table;
}

const std::array<Poly, kMaxCumulant + 1>& table() {
  static const auto t = build_table();
  return t;
}

int top_index(const SeriesPolicy& policy) { return policy.order + 2; }

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

std::span<const double> cumulant_poly(int n) {
  if (n < 2 || n > kMaxCumulant) throw DomainError(fmt::format("cumulant index {} unsupported", n));
  return table()[n];
}

double cumulant(int n, double p) {
  auto c = cumulant_poly(n);
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * p + *it;
  return acc;
}

// g_p(t) = sum_{n>=2} kappa_n t^{n-2} / n!
double g(double p, double t, int deriv, const SeriesPolicy& policy) {
  const int top = top_index(policy);
  double acc = 0.0;
  if (deriv == 0) {
    for (int n = top; n >= 2; --n) acc = acc * t + cumulant(n, p) / factorial(n);
    return acc;
  }
  if (deriv == 1) {
    for (int n = top; n >= 3; --n) acc = acc * t + cumulant(n, p) * (n - 2) / factorial(n);
    return acc;
  }
  throw DomainError(fmt::format("series g supports derivative orders 0 and 1, got {}", deriv));
}

// f_p(t) = sum_{n>=3} (n-2) kappa_n t^n / n!, so
// f_p^{(k)}(t) = sum_{n>=max(3,k)} (n-2) kappa_n t^{n-k} / (n-k)!
double f(double p, double t, int k, const SeriesPolicy& policy) {
  if (k < 0 || k > 6) throw DomainError(fmt::format("series f supports orders 0..6, got {}", k));
  const int top = top_index(policy);
  const int lo = k > 3 ? k : 3;
  double acc = 0.0;
  for (int n = top; n >= lo; --n) {
    acc = acc * t + (n - 2) * cumulant(n, p) / factorial(n - k);
  }
  // acc now holds sum c_n t^{n-lo}; shift to t^{n-k}
  for (int i = k; i < lo; ++i) acc *= t;
  return acc;
}

}  // namespace subgauss::series
