#include "subgauss/regions.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "numeric.hpp"
#include "subgauss/core_eval.hpp"
#include "subgauss/inflections.hpp"

namespace subgauss {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kBetaSeriesLimit = 1.0;

template <std::size_t N>
double horner_even(const double (&c)[N], double t2) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * t2 + c[i];
  return acc;
}

double variance_sum(double p1, double p2) { return p1 * (1.0 - p1) + p2 * (1.0 - p2); }

}  // namespace

ParamPair CanonicalPair::restore() const {
  ParamPair out = swapped ? pair.swapped() : pair;
  return flipped ? out.reflected() : out;
}

CanonicalPair canonicalize(const ParamPair& pair) {
  CanonicalPair c{pair};
  if (one_minus_sum(pair.p1.value(), pair.p2.value()) < 0.0) {
    c.pair = pair.reflected();
    c.flipped = true;
  }
  if (c.pair.p2.value() > c.pair.p1.value()) {
    c.pair = c.pair.swapped();
    c.swapped = true;
  }
  return c;
}

bool is_canonical(const ParamPair& pair) noexcept {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  return p2 <= p1 && one_minus_sum(p1, p2) >= 0.0;
}

double alpha(ProbParam p1) {
  const double p = p1.value();
  if (p > kPPlus) throw NoAlphaBranch(fmt::format("alpha is defined on [0, p+], got {}", p));
  const double v = 0.25 * (1.0 + 2.0 * p - std::sqrt(1.0 + 12.0 * p * (1.0 - p)));
  return v > 0.0 ? v : 0.0;
}

Membership in_A(const ParamPair& pair, const SolverConfig& cfg) {
  return classify_sign(cond_A(pair), cfg.band, false);
}

double h_value(ProbParam p1, ProbParam p2) {
  if (p1.degenerate() || p2.degenerate()) {
    throw DomainError(fmt::format("h needs both parameters in (0, 1), got ({}, {})", p1.value(), p2.value()));
  }
  const double a = p1.value();
  const double b = p2.value();
  return t_star_pair({p1, p2}).t - 2.0 * one_minus_sum(a, b) / variance_sum(a, b);
}

double beta_solve(ProbParam p1, const SolverConfig& cfg) {
  const double p = p1.value();
  if (p <= 0.0 || p >= kPPlus) throw NoRoot(fmt::format("no beta root for p1 = {} outside (0, p+)", p));
  auto h = [&](double x) { return h_value(p1, x); };

  const double top = std::min(p, 1.0 - p);
  // h has a triple zero at 1 - p1 when p1 > 1/2; back off geometrically until
  // its sign is resolved.
  double gap = cfg.bracket_shrink * top;
  double hi = top - gap;
  while (!(h(hi) < 0.0)) {
    gap *= 4.0;
    if (gap >= top) throw SolverError(fmt::format("h never negative below {} for p1 = {}", top, p));
    hi = top - gap;
  }
  double lo = std::min(1e-3, 0.5 * hi);
  while (!(h(lo) > 0.0)) {
    lo *= 1e-4;
    if (lo < kTiny) throw SolverError(fmt::format("beta({}) underflows: h still negative at {}", p, kTiny));
  }
  return detail::bisect(h, lo, hi, 4.0 * std::numeric_limits<double>::epsilon(), cfg.root_tol, true);
}

double beta_j(double tau) {
  if (!(tau > 0.0)) throw DomainError(fmt::format("tau must be positive, got {}", tau));
  if (tau < kBetaSeriesLimit) {
    // 1/2 - tau/12 + sum_k c_k tau^(2k+1)
    static constexpr double c[] = {1.0 / 720.0,
                                   -1.0 / 30240.0,
                                   1.0 / 1209600.0,
                                   -1.0 / 47900160.0,
                                   691.0 / 1307674368000.0,
                                   -1.0 / 74724249600.0,
                                   3617.0 / 10670622842880000.0,
                                   -43867.0 / 5109094217170944000.0,
                                   174611.0 / 802857662698291200000.0,
                                   -77683.0 / 14101100039391805440000.0};
    const double t2 = tau * tau;
    return 0.5 - tau / 12.0 + tau * t2 * horner_even(c, t2);
  }
  return 1.0 / tau - 1.0 / std::expm1(tau);
}

double beta_minus_dj(double tau) {
  if (!(tau > 0.0)) throw DomainError(fmt::format("tau must be positive, got {}", tau));
  const double t2 = tau * tau;
  if (tau < kBetaSeriesLimit) {
    static constexpr double c[] = {1.0 / 12.0,
                                   -1.0 / 240.0,
                                   1.0 / 6048.0,
                                   -1.0 / 172800.0,
                                   1.0 / 5322240.0,
                                   -691.0 / 118879488000.0,
                                   1.0 / 5748019200.0,
                                   -3617.0 / 711374856192000.0,
                                   43867.0 / 300534953951232000.0,
                                   -174611.0 / 42255666457804800000.0,
                                   77683.0 / 671480954256752640000.0};
    return horner_even(c, t2);
  }
  // e^tau / (e^tau - 1)^2 = 1 / (4 sinh^2(tau/2))
  const double s = std::sinh(0.5 * tau);
  return 1.0 / t2 - 1.0 / (4.0 * s * s);
}

ParamPair beta_param(double tau) {
  const double j = beta_j(tau);
  const double r = std::sqrt(beta_minus_dj(tau));
  if (tau <= 2.0) return {j + r, j - r};
  // j - r cancels for large tau; use (j^2 - r^2) / (j + r) with
  // j^2 - r^2 = (coth(tau/2) - 2/tau) / expm1(tau).
  const double v = (1.0 / std::tanh(0.5 * tau) - 2.0 / tau) / std::expm1(tau) / (j + r);
  return {j + r, v};
}

ParamPair beta_param_limit() noexcept { return {kPPlus, kPMinus}; }

double beta_tau_for(double p1) {
  if (!(p1 > 0.0 && p1 < kPPlus)) throw DomainError(fmt::format("no beta parameter for p1 = {}", p1));
  auto u = [](double tau) { return beta_j(tau) + std::sqrt(beta_minus_dj(tau)); };
  double lo = 1e-8;
  double hi = 1.0;
  while (u(hi) > p1) {
    hi *= 2.0;
    if (hi > 1e6) throw SolverError(fmt::format("tau bracket for p1 = {} exceeds 1e6", p1));
  }
  if (u(lo) < p1) lo = 1e-14;
  return detail::bisect([&](double tau) { return u(tau) - p1; }, lo, hi, 1e-15, 0.0, true);
}

double b_expression(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  return std::abs(t_star_pair(pair).t) - 2.0 * std::abs(one_minus_sum(p1, p2)) / variance_sum(p1, p2);
}

Membership in_B(const ParamPair& pair, const SolverConfig& cfg) {
  if (pair.degenerate()) return Membership::outside;
  if (one_minus_sum(pair.p1.value(), pair.p2.value()) == 0.0) return Membership::inside;
  return classify_sign(b_expression(pair), cfg.band, true);
}

DRoots d_roots(ProbParam p1) {
  const double p = p1.value();
  const double a = 12.0 * p * p + 12.0 * p + 1.0;
  const double b = 2.0 * p * (6.0 * p - 7.0);
  const double c = p * p;
  const auto roots = real_roots({c, b, a});
  DRoots out;
  if (roots.size() == 2) {
    out.lower = roots[0];
    out.upper = roots[1];
  } else if (roots.size() == 1) {
    out.lower = roots[0];
    out.upper = roots[0];
  }
  return out;
}

Membership in_D(const ParamPair& pair, const SolverConfig& cfg) {
  return classify_sign(disc_D(canonicalize(pair).pair), cfg.band, true);
}

std::size_t BoundaryCurve::solved_count() const {
  std::size_t n = 0;
  for (const auto& pt : points) n += pt.solved ? 1 : 0;
  return n;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw DomainError(fmt::format("grid needs at least 2 points, got {}", n));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

BoundaryCurve alpha_trace(const std::vector<double>& p1_grid) {
  BoundaryCurve curve{"alpha", {}};
  for (double p1 : p1_grid) {
    CurvePoint pt{p1};
    try {
      pt.p2 = alpha(p1);
      pt.residual = pt.p2 > 0.0 ? std::abs(cond_A({p1, pt.p2})) : 0.0;
    } catch (const std::exception&) {
      pt.solved = false;
    }
    curve.points.push_back(pt);
  }
  return curve;
}

BoundaryCurve beta_trace(const std::vector<double>& p1_grid) {
  BoundaryCurve curve{"beta", {}};
  for (double p1 : p1_grid) {
    CurvePoint pt{p1};
    try {
      const ParamPair b = beta_param(beta_tau_for(p1));
      pt.p2 = b.p2.value();
      pt.residual = std::abs(h_value(p1, pt.p2));
    } catch (const std::exception&) {
      pt.solved = false;
    }
    curve.points.push_back(pt);
  }
  return curve;
}

BoundaryCurve d_trace(const std::vector<double>& p1_grid, bool upper) {
  BoundaryCurve curve{upper ? "d_upper" : "d_lower", {}};
  for (double p1 : p1_grid) {
    CurvePoint pt{p1};
    try {
      const DRoots r = d_roots(p1);
      const auto& root = upper ? r.upper : r.lower;
      if (root) {
        pt.p2 = *root;
        pt.residual = std::abs(disc_D({p1, pt.p2}));
      } else {
        pt.solved = false;
      }
    } catch (const std::exception&) {
      pt.solved = false;
    }
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace subgauss
