#include "subgauss/gamma_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "numeric.hpp"
#include "parallel.hpp"
#include "subgauss/core_eval.hpp"
#include "subgauss/inflections.hpp"

namespace subgauss {
namespace {

constexpr double kFloor = 1e-300;

double next_point(double lo, double hi) { return hi / lo > 4.0 ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi); }

struct Polish {
  double p2;
  double t;
  double f;
  double fp;
  bool ok;
};

// Newton on (log p2, t) for f = f' = 0 at fixed p1.
Polish newton_polish(double p1, double p2, double t, double p2_max, const SolverConfig& cfg) {
  const SeriesPolicy& sp = cfg.series;
  double y = std::log(p2);
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    const ParamPair pair{p1, p2};
    const double f = f_pair(pair, t, 0, sp);
    const double fp = f_pair(pair, t, 1, sp);
    if (std::abs(f) <= cfg.root_tol && std::abs(fp) <= cfg.root_tol) return {p2, t, f, fp, true};
    const double fpp = f_pair(pair, t, 2, sp);
    const double a = p2 * f_scalar_dp(p2, t, 0);
    const double c = p2 * f_scalar_dp(p2, t, 1);
    // [a fp; c fpp] [dy dt]^T = -[f fp]^T
    const double det = a * fpp - fp * c;
    if (det == 0.0 || !std::isfinite(det)) break;
    double dy = -(f * fpp - fp * fp) / det;
    double dt = -(a * fp - c * f) / det;
    double scale = 1.0;
    for (int k = 0; k < 30; ++k) {
      const double ny = y + scale * dy;
      const double nt = t + scale * dt;
      if (std::exp(ny) < p2_max && nt > 0.0) break;
      scale *= 0.5;
    }
    y += scale * dy;
    t += scale * dt;
    p2 = std::exp(y);
    if (std::abs(scale * dy) <= 4.0 * std::numeric_limits<double>::epsilon() &&
        std::abs(scale * dt) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) {
      const ParamPair last{p1, p2};
      return {p2, t, f_pair(last, t, 0, sp), f_pair(last, t, 1, sp), true};
    }
  }
  const ParamPair last{p1, p2};
  return {p2, t, f_pair(last, t, 0, sp), f_pair(last, t, 1, sp), false};
}

GammaSolution refine_crossing(double p1, double lo, double hi, double p2_max, const SolverConfig& cfg) {
  // lo dips, hi does not
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = next_point(lo, hi);
    if (!(mid > lo && mid < hi)) break;
    if (has_dip(mid_min({p1, mid}, cfg), cfg)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const MidMinResult at_lo = mid_min({p1, lo}, cfg);
  GammaSolution sol{p1, hi, at_lo.t_min};
  const Polish pol = newton_polish(p1, hi, at_lo.t_min, p2_max, cfg);
  const double tstar = t_star_pair({p1, pol.p2}).t;
  const bool inside = pol.t > 0.5 * tstar && pol.t < tstar;
  const bool close = std::abs(pol.p2 - hi) <= 1e-6 * hi + 1e-300;
  if (pol.ok && inside && close) {
    sol.gamma = pol.p2;
    sol.t_hat = pol.t;
    sol.residual_f = pol.f;
    sol.residual_fprime = pol.fp;
    sol.polished = true;
    return sol;
  }
  const ParamPair pair{p1, sol.gamma};
  sol.residual_f = f_pair(pair, sol.t_hat, 0, cfg.series);
  sol.residual_fprime = f_pair(pair, sol.t_hat, 1, cfg.series);
  return sol;
}

}  // namespace

double p_threshold(double t) {
  if (!(t > 0.0)) throw DomainError(fmt::format("p_threshold needs t > 0, got {}", t));
  return 1.0 / (1.0 + std::exp(0.5 * t));
}

double s_of(ProbParam p1, double t) {
  if (!(t > 0.0)) throw DomainError(fmt::format("s_of needs t > 0, got {}", t));
  const double p = p1.value();
  return (1.0 - p) / (1.0 + p * std::expm1(t));
}

double r_of(ProbParam p1, double t, const SolverConfig& cfg) {
  const double p = p1.value();
  const double pt = p_threshold(t);
  const double u = beta_param(t).p1.value();
  if (p < pt || p >= u) {
    throw DomainError(fmt::format("r_of needs p_t = {} <= p1 < u(t) = {}, got {}", pt, u, p));
  }
  auto f = [&](double p2) { return f_pair({p1, p2}, t, 0, cfg.series); };
  const double s = s_of(p1, t);
  double gap = cfg.bracket_shrink * s;
  while (!(f(s - gap) > 0.0)) {
    gap *= 4.0;
    if (gap >= s) throw SolverError(fmt::format("f not positive below s_t = {} at p1 = {}, t = {}", s, p, t));
  }
  if (!(f(0.0) < 0.0)) throw SolverError(fmt::format("f({}, 0; {}) is not negative", p, t));
  return detail::bisect(f, 0.0, s - gap, 1e-15, cfg.root_tol);
}

MidMinResult mid_min(const ParamPair& pair, const SolverConfig& cfg) {
  const double tstar = t_star_pair(pair).t;
  if (!(tstar > 0.0) || !std::isfinite(tstar)) {
    throw DomainError(fmt::format("mid_min needs a finite t* > 0, got {}", tstar));
  }
  auto f = [&](double t) { return f_pair(pair, t, 0, cfg.series); };
  const int n = cfg.mid_scan;
  const double a = 0.5 * tstar;
  std::vector<double> ts(static_cast<std::size_t>(n));
  std::vector<double> fs(ts.size());
  MidMinResult best{};
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    ts[k] = i + 1 == n ? tstar : a + (tstar - a) * i / (n - 1);
    fs[k] = i + 1 == n ? 0.0 : f(ts[k]);
    best.f_scale = std::max(best.f_scale, std::abs(fs[k]));
  }
  // f = t L' - 2 L summed over both parameters, with |L'| < 1 for each.
  const double terms = 2.0 * tstar + 2.0 * (std::abs(log_mgf_scalar(pair.p1, tstar)) +
                                            std::abs(log_mgf_scalar(pair.p2, tstar)));
  best.f_noise = 64.0 * std::numeric_limits<double>::epsilon() * terms;
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
    const bool right_ok = i + 1 == ts.size() || fs[i] <= fs[i + 1];
    if (left_ok && right_ok) minima.push_back(i);
  }
  // Refine the deepest few; plateaus of rounding noise can produce many.
  std::sort(minima.begin(), minima.end(), [&](std::size_t x, std::size_t y) { return fs[x] < fs[y]; });
  if (minima.size() > 8) minima.resize(8);
  best.f_min = std::numeric_limits<double>::infinity();
  for (std::size_t i : minima) {
    const double lo = ts[i == 0 ? 0 : i - 1];
    const double hi = ts[std::min(i + 1, ts.size() - 1)];
    auto [t, v] = detail::golden_min(f, lo, hi, cfg.t_tol);
    if (fs[i] < v) {
      t = ts[i];
      v = fs[i];
    }
    if (v < best.f_min) {
      best.f_min = v;
      best.t_min = t;
      best.bracket = {lo, hi};
    }
  }
  return best;
}

bool has_dip(const MidMinResult& m, const SolverConfig& cfg) {
  return m.f_min < -std::max(cfg.dip_tol * m.f_scale, m.f_noise);
}

GammaSolution gamma_solve(ProbParam p1, const SolverConfig& cfg) {
  const double p = p1.value();
  if (!(p > 0.0 && p < kPPlus)) throw NoGamma(fmt::format("gamma is defined on (0, p+), got p1 = {}", p));
  const double top = std::min(p, 1.0 - p);
  const double upper = top * (1.0 - cfg.bracket_shrink);
  double lower;
  try {
    lower = beta_solve(p1, cfg);
  } catch (const SolverError&) {
    lower = kFloor;
  }
  if (!(lower < upper)) throw NoGamma(fmt::format("empty bracket [{}, {}) at p1 = {}", lower, upper, p));

  const int n = cfg.gamma_prescan;
  const bool geometric = upper / lower > 10.0;
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<char> dips(xs.size());
  for (int k = 0; k < n; ++k) {
    const double frac = static_cast<double>(k) / (n - 1);
    double x = geometric ? std::exp(std::log(lower) + frac * (std::log(upper) - std::log(lower)))
                         : lower + frac * (upper - lower);
    if (k == 0) x = lower;
    if (k + 1 == n) x = upper;
    xs[static_cast<std::size_t>(k)] = x;
    dips[static_cast<std::size_t>(k)] = has_dip(mid_min({p1, x}, cfg), cfg) ? 1 : 0;
  }
  if (!dips.front()) {
    throw SolverError(fmt::format("f shows no dip at the lower bracket p2 = {:.17g} for p1 = {}", lower, p));
  }
  std::vector<std::size_t> ups;
  int changes = 0;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (dips[k] != dips[k - 1]) ++changes;
    if (dips[k - 1] && !dips[k]) ups.push_back(k);
  }
  if (ups.empty()) {
    throw NoGamma(fmt::format("f still dips at the upper bracket p2 = {:.17g} for p1 = {}", upper, p));
  }
  const std::size_t k = ups.front();
  GammaSolution sol = refine_crossing(p, xs[k - 1], xs[k], top, cfg);
  if (changes > 1) {
    throw MultiCross(fmt::format("{} sign changes of the dip indicator for p1 = {}; smallest crossing {:.17g}",
                                 changes, p, sol.gamma),
                     sol, changes);
  }
  return sol;
}

BoundaryCurve gamma_trace(const std::vector<double>& p1_grid, const SolverConfig& cfg) {
  BoundaryCurve curve{"gamma", std::vector<CurvePoint>(p1_grid.size())};
  detail::parallel_for(p1_grid.size(), [&](std::size_t i) {
    CurvePoint& pt = curve.points[i];
    pt.p1 = p1_grid[i];
    auto fill = [&](const GammaSolution& s) {
      pt.p2 = s.gamma;
      pt.residual = std::max(std::abs(s.residual_f), std::abs(s.residual_fprime));
      pt.solved = true;
    };
    try {
      fill(gamma_solve(pt.p1, cfg));
    } catch (const MultiCross& e) {
      fill(e.smallest());
    } catch (const std::exception&) {
      pt.p2 = std::numeric_limits<double>::quiet_NaN();
      pt.residual = std::numeric_limits<double>::quiet_NaN();
      pt.solved = false;
    }
  });
  return curve;
}

Membership in_C(const ParamPair& pair, const SolverConfig& cfg, const GammaSolution* gamma) {
  if (pair.degenerate()) return Membership::outside;
  const ParamPair c = canonicalize(pair).pair;
  const double p1 = c.p1.value();
  const double p2 = c.p2.value();
  if (one_minus_sum(p1, p2) == 0.0) return p1 <= kPPlus ? Membership::inside : Membership::outside;
  if (p1 == p2) return p1 < 0.5 ? Membership::inside : Membership::outside;
  if (in_D(c, cfg) == Membership::inside) return Membership::inside;
  if (in_B(c, cfg) == Membership::outside) return Membership::outside;
  if (p1 >= kPPlus) return Membership::outside;

  GammaSolution local;
  if (gamma == nullptr || gamma->p1 != p1) {
    try {
      local = gamma_solve(c.p1, cfg);
    } catch (const MultiCross& e) {
      local = e.smallest();
    } catch (const SolverError&) {
      // Decide from the pair itself.
      return has_dip(mid_min(c, cfg), cfg) ? Membership::outside : Membership::inside;
    }
    gamma = &local;
  }
  const double d = p2 - gamma->gamma;
  if (std::abs(d) <= cfg.band_p) return Membership::band;
  return d > 0.0 ? Membership::inside : Membership::outside;
}

RegionReport classify(const ParamPair& pair, const SolverConfig& cfg) {
  RegionReport r;
  r.canonical = canonicalize(pair);
  const ParamPair& c = r.canonical.pair;
  r.cond_A = cond_A(c);
  r.disc_D = disc_D(c);
  r.in_A = in_A(c, cfg);
  r.in_D = in_D(c, cfg);
  if (!c.degenerate()) r.b_expression = b_expression(c);
  r.in_B = in_B(c, cfg);

  const double p1 = c.p1.value();
  const double p2 = c.p2.value();
  const bool needs_gamma = !c.degenerate() && p1 != p2 && one_minus_sum(p1, p2) != 0.0 &&
                           r.in_D != Membership::inside && r.in_B != Membership::outside && p1 < kPPlus;
  if (needs_gamma) {
    try {
      r.gamma_used = gamma_solve(c.p1, cfg);
    } catch (const MultiCross& e) {
      r.gamma_used = e.smallest();
    } catch (const SolverError&) {
    }
  }
  r.in_C = in_C(c, cfg, r.gamma_used ? &*r.gamma_used : nullptr);
  return r;
}

}  // namespace subgauss
