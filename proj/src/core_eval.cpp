#include "subgauss/core_eval.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "subgauss/series.hpp"

namespace subgauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double t) {
  if (!std::isfinite(t)) throw DomainError(fmt::format("abscissa {} is not finite", t));
}

void require_order(int order, int max_order) {
  if (order < 0 || order > max_order) {
    throw DomainError(fmt::format("derivative order {} outside 0..{}", order, max_order));
  }
}

// Exponentially tilted Bernoulli(p) at tilt t:
//   L(t) = log E e^{tX},  L'(t) = q - p,  q = p e^t / (1 - p + p e^t).
// All quantities are formed from e^{-|t|} so nothing overflows.
struct Tilt {
  double log_mgf;
  double mean;  // L'
  double q;
  double qc;    // 1 - q
  double dq_dp;
  double dlog_mgf_dp;
};

Tilt tilt(double p, double t) {
  Tilt r{};
  const double pc = 1.0 - p;
  if (t <= 0.0) {
    const double e = std::exp(t);
    const double em1 = std::expm1(t);
    // denom = 1 - p + p e^t
    const double denom = t < -1.0 ? pc + p * e : 1.0 + p * em1;
    r.log_mgf = -p * t + (t < -1.0 ? std::log(denom) : std::log1p(p * em1));
    r.mean = p * pc * em1 / denom;
    r.q = p * e / denom;
    r.qc = pc / denom;
    r.dq_dp = e / (denom * denom);
    r.dlog_mgf_dp = -t + em1 / denom;
  } else {
    const double e = std::exp(-t);
    const double em1 = std::expm1(-t);
    // denom = p + (1 - p) e^{-t}
    const double denom = t > 1.0 ? p + pc * e : 1.0 + pc * em1;
    r.log_mgf = pc * t + (t > 1.0 ? std::log(denom) : std::log1p(pc * em1));
    r.mean = -p * pc * em1 / denom;
    r.q = p / denom;
    r.qc = pc * e / denom;
    r.dq_dp = e / (denom * denom);
    r.dlog_mgf_dp = -t - em1 / denom;
  }
  return r;
}

// f_p and its derivatives from the tilt:
//   f = t L' - 2L,  f' = t L'' - L',  f'' = t L''',  f''' = L''' + t L''''.
double f_direct(double p, double t, int order) {
  const Tilt s = tilt(p, t);
  const double var = s.q * s.qc;
  switch (order) {
    case 0:
      return t * s.mean - 2.0 * s.log_mgf;
    case 1:
      return t * var - s.mean;
    case 2:
      return t * var * (s.qc - s.q);
    default: {
      const double k3 = var * (s.qc - s.q);
      const double k4 = var * (1.0 - 6.0 * var);
      return k3 + t * k4;
    }
  }
}

double g_direct(double p, double t, int order) {
  if (order == 0) return tilt(p, t).log_mgf / (t * t);
  return f_direct(p, t, 0) / (t * t * t);
}

bool use_series(double t, const SeriesPolicy& policy) { return std::abs(t) < policy.seam; }

}  // namespace

double log_mgf_scalar(ProbParam p, double t) {
  require_finite(t);
  if (p.degenerate()) return 0.0;
  return tilt(p.value(), t).log_mgf;
}

double g_scalar_direct(ProbParam p, double t, int order) {
  require_finite(t);
  require_order(order, 1);
  if (p.degenerate()) return 0.0;
  if (t == 0.0) throw DomainError("closed form of g is undefined at t = 0");
  return g_direct(p.value(), t, order);
}

double g_scalar_series(ProbParam p, double t, int order, const SeriesPolicy& policy) {
  require_finite(t);
  require_order(order, 1);
  if (p.degenerate()) return 0.0;
  return series::g(p.value(), t, order, policy);
}

double g_scalar(ProbParam p, double t, int order, const SeriesPolicy& policy) {
  require_finite(t);
  require_order(order, 1);
  if (p.degenerate()) return 0.0;
  if (use_series(t, policy)) return series::g(p.value(), t, order, policy);
  return g_direct(p.value(), t, order);
}

double f_scalar(ProbParam p, double t, int order, const SeriesPolicy& policy) {
  require_finite(t);
  require_order(order, 3);
  if (p.degenerate()) return 0.0;
  if (use_series(t, policy)) return series::f(p.value(), t, order, policy);
  return f_direct(p.value(), t, order);
}

// d/dp f = t (dq/dp - 1) - 2 dL/dp,  d/dp f' = dq/dp (t (1 - 2q) - 1) + 1.
double f_scalar_dp(ProbParam p, double t, int order) {
  require_finite(t);
  require_order(order, 1);
  const double pv = p.value();
  const Tilt s = tilt(pv, t);
  if (order == 0) return t * (s.dq_dp - 1.0) - 2.0 * s.dlog_mgf_dp;
  return s.dq_dp * (t * (s.qc - s.q) - 1.0) + 1.0;
}

Abscissa t_star_scalar(ProbParam p) {
  if (p.value() == 0.0) return {kInf};
  if (p.value() == 1.0) return {-kInf};
  return {2.0 * log_odds(p.value())};
}

BoundConstant ks_const_scalar(ProbParam p) {
  if (p.degenerate()) return {0.0, true, false};
  const double pv = p.value();
  const double num = 2.0 * (0.5 - pv);
  if (num == 0.0) return {0.125, false, true};
  return {num / (4.0 * log_odds(pv)), false, false};
}

double r_frak(ProbParam p) {
  if (p.degenerate()) throw DomainError("r_frak requires 0 < p < 1");
  const double pv = p.value();
  return 2.0 * pv - 1.0 + 2.0 * (1.0 - pv) * pv * log_odds(pv);
}

double log_mgf_pair(const ParamPair& pair, double t) {
  return log_mgf_scalar(pair.p1, t) + log_mgf_scalar(pair.p2, t);
}

double g_pair(const ParamPair& pair, double t, int order, const SeriesPolicy& policy) {
  return g_scalar(pair.p1, t, order, policy) + g_scalar(pair.p2, t, order, policy);
}

double f_pair(const ParamPair& pair, double t, int order, const SeriesPolicy& policy) {
  return f_scalar(pair.p1, t, order, policy) + f_scalar(pair.p2, t, order, policy);
}

double g_pair_direct(const ParamPair& pair, double t, int order) {
  return g_scalar_direct(pair.p1, t, order) + g_scalar_direct(pair.p2, t, order);
}

double g_pair_series(const ParamPair& pair, double t, int order, const SeriesPolicy& policy) {
  return g_scalar_series(pair.p1, t, order, policy) + g_scalar_series(pair.p2, t, order, policy);
}

Abscissa t_star_pair(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const bool has_zero = p1 == 0.0 || p2 == 0.0;
  const bool has_one = p1 == 1.0 || p2 == 1.0;
  if (has_zero && has_one) return {std::numeric_limits<double>::quiet_NaN()};
  if (has_zero) return {kInf};
  if (has_one) return {-kInf};
  // odds product = 1 + (1 - p1 - p2) / (p1 p2)
  const double ratio = one_minus_sum(p1, p2) / (p1 * p2);
  if (ratio >= -0.5) return {std::log1p(ratio)};
  return {log_odds(p1) + log_odds(p2)};
}

BoundConstant ks_const_pair(const ParamPair& pair) {
  if (pair.degenerate()) return {0.0, true, false};
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const double s = one_minus_sum(p1, p2);
  if (s == 0.0) return {0.5 * (p1 * (1.0 - p1) + p2 * (1.0 - p2)), false, true};
  return {s / t_star_pair(pair).t, false, false};
}

double AtomDistribution::total_probability() const {
  double acc = 0.0;
  for (const auto& a : atoms) acc += a.probability;
  return acc;
}

double AtomDistribution::mean() const {
  double acc = 0.0;
  for (const auto& a : atoms) acc += a.location * a.probability;
  return acc;
}

void AtomDistribution::validate() const {
  for (const auto& a : atoms) {
    if (!(a.probability >= 0.0)) throw DomainError("negative atom probability");
  }
  if (std::abs(total_probability() - 1.0) > 1e-15) {
    throw DomainError(fmt::format("atom probabilities sum to {:.17g}", total_probability()));
  }
  if (std::abs(mean()) > 1e-14) throw DomainError(fmt::format("mean {:.17g} is not zero", mean()));
}

AtomDistribution atoms_pair(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const double s = one_minus_sum(p1, p2);
  return AtomDistribution{{
      {s - 1.0, (1.0 - p1) * (1.0 - p2)},
      {s, p1 * (1.0 - p2) + (1.0 - p1) * p2},
      {s + 1.0, p1 * p2},
  }};
}

double mgf_pair(const ParamPair& pair, double t) {
  require_finite(t);
  double acc = 0.0;
  for (const auto& a : atoms_pair(pair).atoms) acc += a.probability * std::exp(t * a.location);
  return acc;
}

}  // namespace subgauss
