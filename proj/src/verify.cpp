#include "subgauss/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "numeric.hpp"
#include "parallel.hpp"
#include "subgauss/core_eval.hpp"
#include "subgauss/gamma_solver.hpp"
#include "subgauss/inflections.hpp"
#include "subgauss/regions.hpp"

namespace subgauss {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_with_zero(double v, double zero) {
  if (std::abs(v) <= zero) return 0;
  return v > 0.0 ? 1 : -1;
}

std::vector<double> geomspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::exp(a + (b - a) * i / (n - 1)));
  return out;
}

// log sum_i w_i exp(t x_i)
double log_mgf_atoms(const AtomDistribution& d, double t) {
  double top = -kInf;
  for (const auto& a : d.atoms) {
    if (a.probability > 0.0) top = std::max(top, std::log(a.probability) + t * a.location);
  }
  double acc = 0.0;
  for (const auto& a : d.atoms) {
    if (a.probability > 0.0) acc += std::exp(std::log(a.probability) + t * a.location - top);
  }
  return top + std::log(acc);
}

// Rounding level of g' = (t L' - 2 L) / t^3 given |L|; |L'| <= 1.
double f_noise(double t, double abs_log_mgf) {
  const double at = std::abs(t);
  return 64.0 * std::numeric_limits<double>::epsilon() * (3.0 * at + 2.0 * abs_log_mgf) / (at * at * at);
}

AtomDistribution scalar_atoms(double p) { return AtomDistribution{{{-p, 1.0 - p}, {1.0 - p, p}}}; }

// Abscissa beyond which the dominant atom fixes the sign of f: there
// f ~ -t x - 2 log P for the extreme atom (x, P).
double tail_extent(const AtomDistribution& d, bool positive, double floor) {
  double x = 0.0;
  double prob = 1.0;
  for (const auto& a : d.atoms) {
    if (a.probability <= 0.0) continue;
    if (positive ? a.location > x : a.location < x) {
      x = a.location;
      prob = a.probability;
    }
  }
  if (x == 0.0) return floor;
  return std::max(floor, 2.0 * 2.0 * std::abs(std::log(prob)) / std::abs(x));
}

UnimodalityResult oracle_with_atoms(const std::function<double(double)>& deriv, double tstar,
                                    const AtomDistribution& atoms, const SolverConfig& cfg,
                                    const std::function<double(double)>& noise) {
  std::vector<double> centres{0.0};
  if (std::isfinite(tstar)) {
    centres.push_back(0.5 * tstar);
    centres.push_back(tstar);
  }
  const double lo = -tail_extent(atoms, false, cfg.t_max);
  const double hi = tail_extent(atoms, true, cfg.t_max);
  return sign_oracle(deriv, centres, lo, hi, cfg, noise);
}

std::vector<double> sample_grid(const std::vector<double>& centres, double t_min, double t_max, int n) {
  std::vector<double> g;
  const int n_tail = std::max(64, n / 4);
  for (double x : geomspace(1e-6, t_max, n_tail)) g.push_back(x);
  for (double x : geomspace(1e-6, -t_min, n_tail)) g.push_back(-x);
  double block_lo = 0.0;
  double block_hi = 0.0;
  for (double c : centres) {
    block_lo = std::min(block_lo, c);
    block_hi = std::max(block_hi, c);
  }
  block_lo -= 1.0;
  block_hi += 1.0;
  for (int i = 0; i < n; ++i) g.push_back(block_lo + (block_hi - block_lo) * i / (n - 1));
  for (double c : centres) {
    for (double d : geomspace(1e-9, 0.5, 64)) {
      g.push_back(c - d);
      g.push_back(c + d);
    }
    g.push_back(c);
  }
  g.push_back(0.0);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  g.erase(std::remove_if(g.begin(), g.end(), [&](double t) { return t < t_min || t > t_max; }), g.end());
  return g;
}

template <class Fn>
double refine_change(const Fn& fn, double lo, double hi, double width) {
  double flo = fn(lo);
  for (int it = 0; it < 200 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Check make_check(std::string name, std::string location, bool ok, double max_error) {
  Check c;
  c.name = std::move(name);
  c.location = std::move(location);
  c.status = ok ? CheckStatus::confirmed : CheckStatus::discrepant;
  c.max_error = max_error;
  return c;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// gamma for a grid column, solved on first use.
class ColumnGamma {
 public:
  explicit ColumnGamma(double p1) : p1_(p1) {}

  const GammaSolution* get(const SolverConfig& cfg) {
    if (!tried_) {
      tried_ = true;
      if (p1_ > 0.0 && p1_ < kPPlus) {
        try {
          sol_ = gamma_solve(p1_, cfg);
        } catch (const MultiCross& e) {
          sol_ = e.smallest();
        } catch (const SolverError&) {
        }
      }
    }
    return sol_ ? &*sol_ : nullptr;
  }

 private:
  double p1_;
  bool tried_ = false;
  std::optional<GammaSolution> sol_;
};

bool needs_gamma(const ParamPair& c, const SolverConfig& cfg) {
  const double p1 = c.p1.value();
  const double p2 = c.p2.value();
  if (c.degenerate() || p1 == p2 || one_minus_sum(p1, p2) == 0.0 || p1 >= kPPlus) return false;
  return in_D(c, cfg) != Membership::inside && in_B(c, cfg) != Membership::outside;
}

Membership column_in_C(const ParamPair& c, ColumnGamma& col, const SolverConfig& cfg) {
  const GammaSolution* g = needs_gamma(c, cfg) ? col.get(cfg) : nullptr;
  return in_C(c, cfg, g);
}

}  // namespace

UnimodalityResult sign_oracle(const std::function<double(double)>& deriv, const std::vector<double>& centres,
                              double t_min, double t_max, const SolverConfig& cfg,
                              const std::function<double(double)>& noise) {
  UnimodalityResult out;
  std::vector<double> ts = sample_grid(centres, t_min, t_max, cfg.oracle_points);
  std::vector<double> vs(ts.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vs[i] = deriv(ts[i]);
    scale = std::max(scale, std::abs(vs[i]));
  }
  const double zero_rel = cfg.zero_tol * scale;
  auto zero_at = [&](double t) { return noise ? std::max(zero_rel, noise(t)) : zero_rel; };

  // Shallow excursions across zero between samples: refine every local
  // extremum on the wrong side of zero.
  std::vector<std::pair<double, double>> extra;
  for (std::size_t i = 1; i + 1 < ts.size() && extra.size() < 256; ++i) {
    const double zero = zero_at(ts[i]);
    const bool local_min = vs[i] <= vs[i - 1] && vs[i] <= vs[i + 1] && vs[i] >= -zero;
    const bool local_max = vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] && vs[i] <= zero;
    if (!local_min && !local_max) continue;
    if (local_min) {
      auto [t, v] = detail::golden_min(deriv, ts[i - 1], ts[i + 1], cfg.t_tol);
      if (v < -zero_at(t)) extra.emplace_back(t, v);
    }
    if (local_max) {
      auto [t, v] = detail::golden_min([&](double x) { return -deriv(x); }, ts[i - 1], ts[i + 1], cfg.t_tol);
      if (-v > zero_at(t)) extra.emplace_back(t, -v);
    }
  }
  if (!extra.empty()) {
    std::vector<std::pair<double, double>> merged;
    merged.reserve(ts.size() + extra.size());
    for (std::size_t i = 0; i < ts.size(); ++i) merged.emplace_back(ts[i], vs[i]);
    merged.insert(merged.end(), extra.begin(), extra.end());
    std::sort(merged.begin(), merged.end());
    ts.clear();
    vs.clear();
    for (const auto& [t, v] : merged) {
      if (!ts.empty() && t == ts.back()) continue;
      ts.push_back(t);
      vs.push_back(v);
    }
  }

  SignPattern& pat = out.pattern;
  pat.grid = ts;
  pat.signs.resize(ts.size());
  std::size_t last = ts.size();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    pat.signs[i] = sign_with_zero(vs[i], zero_at(ts[i]));
    if (pat.signs[i] == 0) continue;
    if (last != ts.size() && pat.signs[i] != pat.signs[last]) {
      const Direction dir = pat.signs[i] > 0 ? Direction::up : Direction::down;
      const double at = refine_change(deriv, ts[last], ts[i], cfg.refine_width);
      pat.changes.push_back({std::max(ts[last], at - 0.5 * cfg.refine_width),
                             std::min(ts[i], at + 0.5 * cfg.refine_width), dir});
    }
    last = i;
  }
  // Beyond the grid the extreme atoms fix the sign: + towards -inf, - towards +inf.
  int first_sign = 0;
  int last_sign = 0;
  for (int s : pat.signs) {
    if (s != 0) {
      if (first_sign == 0) first_sign = s;
      last_sign = s;
    }
  }
  if (first_sign < 0) pat.changes.insert(pat.changes.begin(), {-kInf, ts.front(), Direction::up});
  if (last_sign > 0) pat.changes.push_back({ts.back(), kInf, Direction::down});

  out.unimodal = pat.changes.size() == 1 && pat.changes.front().direction == Direction::down;
  if (out.unimodal && std::isfinite(pat.changes.front().lo) && std::isfinite(pat.changes.front().hi)) {
    out.mode = 0.5 * (pat.changes.front().lo + pat.changes.front().hi);
  }
  return out;
}

UnimodalityResult unimodality_oracle(const ParamPair& pair, const SolverConfig& cfg) {
  auto deriv = [&](double t) { return g_pair(pair, t, 1, cfg.series); };
  auto noise = [&](double t) {
    if (std::abs(t) < cfg.series.seam) return 0.0;
    const double l = std::abs(log_mgf_scalar(pair.p1, t)) + std::abs(log_mgf_scalar(pair.p2, t));
    return f_noise(t, l);
  };
  return oracle_with_atoms(deriv, t_star_pair(pair).t, atoms_pair(pair), cfg, noise);
}

UnimodalityResult unimodality_oracle(ProbParam p, const SolverConfig& cfg) {
  auto deriv = [&](double t) { return g_scalar(p, t, 1, cfg.series); };
  auto noise = [&](double t) {
    return std::abs(t) < cfg.series.seam ? 0.0 : f_noise(t, std::abs(log_mgf_scalar(p, t)));
  };
  return oracle_with_atoms(deriv, t_star_scalar(p).t, scalar_atoms(p.value()), cfg, noise);
}

std::optional<double> positive_slope_witness(const ParamPair& pair, const SolverConfig& cfg) {
  const double tstar = t_star_pair(pair).t;
  if (!std::isfinite(tstar)) return std::nullopt;
  auto deriv = [&](double t) { return g_pair(pair, t, 1, cfg.series); };
  const double extent = tail_extent(atoms_pair(pair), true, cfg.t_max);
  std::vector<double> ts;
  for (double d : geomspace(1e-9, std::max(1.0, extent - tstar), 1024)) ts.push_back(tstar + d);
  std::vector<double> vs(ts.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vs[i] = deriv(ts[i]);
    scale = std::max(scale, std::abs(vs[i]));
  }
  const double zero = cfg.zero_tol * scale;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (vs[i] > zero) return ts[i];
  }
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1]) {
      auto [t, v] = detail::golden_min([&](double x) { return -deriv(x); }, ts[i - 1], ts[i + 1], cfg.t_tol);
      if (-v > zero) return t;
    }
  }
  return std::nullopt;
}

namespace {

KsCheck ks_scan(const AtomDistribution& atoms, double c, double tstar, int n, double t_range) {
  KsCheck out{-kInf, 0.0, 0.0};
  auto excess = [&](double t) { return log_mgf_atoms(atoms, t) - c * t * t; };
  for (int i = 0; i < n; ++i) {
    const double t = -t_range + 2.0 * t_range * i / (n - 1);
    const double e = excess(t);
    if (e > out.max_excess) {
      out.max_excess = e;
      out.argmax_t = t;
    }
  }
  if (std::isfinite(tstar)) {
    out.excess_at_t_star = excess(tstar);
    if (out.excess_at_t_star > out.max_excess) {
      out.max_excess = out.excess_at_t_star;
      out.argmax_t = tstar;
    }
  }
  return out;
}

}  // namespace

KsCheck ks_check(const ParamPair& pair, const SolverConfig&, int n, double t_range) {
  return ks_scan(atoms_pair(pair), ks_const_pair(pair).value, t_star_pair(pair).t, n, t_range);
}

KsCheck ks_check(ProbParam p, const SolverConfig&, int n, double t_range) {
  return ks_scan(scalar_atoms(p.value()), ks_const_scalar(p).value, t_star_scalar(p).t, n, t_range);
}

std::string_view to_string(FdTarget t) noexcept {
  switch (t) {
    case FdTarget::g_scalar_1:
      return "g_scalar_1";
    case FdTarget::g_pair_1:
      return "g_pair_1";
    case FdTarget::f_scalar_1:
      return "f_scalar_1";
    case FdTarget::f_scalar_2:
      return "f_scalar_2";
    case FdTarget::f_scalar_3:
      return "f_scalar_3";
    case FdTarget::f_pair_1:
      return "f_pair_1";
    case FdTarget::f_pair_2:
      return "f_pair_2";
    case FdTarget::f_pair_3:
      return "f_pair_3";
  }
  return "g_scalar_1";
}

double fd_check(FdTarget target, const std::vector<FdPoint>& points, double h, const SolverConfig& cfg) {
  const SeriesPolicy& sp = cfg.series;
  double worst = 0.0;
  for (const auto& pt : points) {
    std::function<double(double)> lower;
    std::function<double(double)> analytic;
    const ParamPair& pr = pt.pair;
    switch (target) {
      case FdTarget::g_scalar_1:
        lower = [&](double t) { return g_scalar(pr.p1, t, 0, sp); };
        analytic = [&](double t) { return g_scalar(pr.p1, t, 1, sp); };
        break;
      case FdTarget::g_pair_1:
        lower = [&](double t) { return g_pair(pr, t, 0, sp); };
        analytic = [&](double t) { return g_pair(pr, t, 1, sp); };
        break;
      case FdTarget::f_scalar_1:
      case FdTarget::f_scalar_2:
      case FdTarget::f_scalar_3: {
        const int k = target == FdTarget::f_scalar_1 ? 1 : target == FdTarget::f_scalar_2 ? 2 : 3;
        lower = [&, k](double t) { return f_scalar(pr.p1, t, k - 1, sp); };
        analytic = [&, k](double t) { return f_scalar(pr.p1, t, k, sp); };
        break;
      }
      case FdTarget::f_pair_1:
      case FdTarget::f_pair_2:
      case FdTarget::f_pair_3: {
        const int k = target == FdTarget::f_pair_1 ? 1 : target == FdTarget::f_pair_2 ? 2 : 3;
        lower = [&, k](double t) { return f_pair(pr, t, k - 1, sp); };
        analytic = [&, k](double t) { return f_pair(pr, t, k, sp); };
        break;
      }
    }
    auto central = [&](double step) { return (lower(pt.t + step) - lower(pt.t - step)) / (2.0 * step); };
    const double rich = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    const double a = analytic(pt.t);
    const double floor = 1e-3 * std::max(1.0, std::abs(lower(pt.t)));
    worst = std::max(worst, std::abs(a - rich) / std::max(std::abs(a), floor));
  }
  return worst;
}

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::confirmed:
      return "confirmed";
    case CheckStatus::discrepant:
      return "discrepant";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

bool ConsistencyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

void ConsistencyReport::append(const ConsistencyReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::vector<ParamPair> canonical_grid(int n) {
  if (n < 1) throw DomainError(fmt::format("grid size must be positive, got {}", n));
  std::vector<ParamPair> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double p1 = (i + 0.5) / n;
    const double top = std::min(p1, 1.0 - p1);
    for (int j = 0; j < n; ++j) out.emplace_back(p1, (j + 0.5) / n * top);
  }
  return out;
}

RegionCounts region_sweep(int n, const SolverConfig& cfg) {
  const auto grid = canonical_grid(n);
  std::vector<RegionCounts> per(static_cast<std::size_t>(n));
  detail::parallel_for(per.size(), [&](std::size_t i) {
    RegionCounts& rc = per[i];
    ColumnGamma col(grid[i * static_cast<std::size_t>(n)].p1.value());
    for (int j = 0; j < n; ++j) {
      const ParamPair& c = grid[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
      ++rc.points;
      const Membership a = in_A(c, cfg);
      const Membership b = in_B(c, cfg);
      const Membership d = in_D(c, cfg);
      const Membership cc = column_in_C(c, col, cfg);
      if (a == Membership::band || b == Membership::band || d == Membership::band || cc == Membership::band) {
        ++rc.skipped_band;
        continue;
      }
      rc.d_not_c += d == Membership::inside && cc != Membership::inside;
      rc.c_not_b += cc == Membership::inside && b != Membership::inside;
      rc.b_not_a += b == Membership::inside && a != Membership::inside;
      rc.d_not_a += d == Membership::inside && a != Membership::inside;
    }
  });
  RegionCounts total;
  for (const auto& rc : per) {
    total.points += rc.points;
    total.skipped_band += rc.skipped_band;
    total.d_not_c += rc.d_not_c;
    total.c_not_b += rc.c_not_b;
    total.b_not_a += rc.b_not_a;
    total.d_not_a += rc.d_not_a;
  }
  return total;
}

ConsistencyReport region_consistency(int grid_n, const SolverConfig& cfg) {
  ConsistencyReport rep;
  rep.seed = cfg.seed;
  const RegionCounts rc = region_sweep(grid_n, cfg);
  auto inclusion = [&](const char* name, long count) {
    Check c = make_check(name, "nested region chain", count == 0, static_cast<double>(count));
    c.witnesses = {{"grid_n", grid_n}, {"points", static_cast<double>(rc.points)},
                   {"skipped_band", static_cast<double>(rc.skipped_band)}, {"violations", static_cast<double>(count)}};
    rep.checks.push_back(c);
  };
  inclusion("D subset of C", rc.d_not_c);
  inclusion("C subset of B", rc.c_not_b);
  inclusion("B subset of A", rc.b_not_a);
  inclusion("D subset of A", rc.d_not_a);

  // f'''(0) = (1 - p1 - p2) A and its sign against membership in A.
  double worst = 0.0;
  long sign_mismatch = 0;
  for (const auto& c : canonical_grid(grid_n)) {
    const double f3 = f_pair(c, 0.0, 3, cfg.series);
    const double expected = one_minus_sum(c.p1.value(), c.p2.value()) * cond_A(c);
    worst = std::max(worst, std::abs(f3 - expected));
    const Membership a = in_A(c, cfg);
    if (a != Membership::band && (f3 > 0.0) != (a == Membership::inside)) ++sign_mismatch;
  }
  Check third = make_check("third derivative at origin", "positivity of g' on the negative axis",
                           worst <= 1e-12 && sign_mismatch == 0, worst);
  third.witnesses = {{"sign_mismatches", static_cast<double>(sign_mismatch)}};
  rep.checks.push_back(third);

  // sign f'(t*) = -sign(p2 - beta(p1)) on vertical sections
  long slope_mismatch = 0;
  long slope_points = 0;
  for (int i = 0; i < grid_n; ++i) {
    const double p1 = (i + 0.5) / grid_n;
    const double top = std::min(p1, 1.0 - p1);
    std::optional<double> beta;
    if (p1 < kPPlus) {
      try {
        beta = beta_solve(p1, cfg);
      } catch (const SolverError&) {
        beta = 0.0;  // below every representable p2
      }
    }
    for (int j = 0; j < grid_n; ++j) {
      const double p2 = (j + 0.5) / grid_n * top;
      const ParamPair pr{p1, p2};
      const double slope = f_pair(pr, t_star_pair(pr).t, 1, cfg.series);
      const int expected = beta ? (std::abs(p2 - *beta) <= cfg.band_p ? 0 : (p2 > *beta ? -1 : 1)) : 1;
      if (expected == 0) continue;
      ++slope_points;
      if ((slope > 0.0 ? 1 : -1) != expected) ++slope_mismatch;
    }
  }
  Check slope = make_check("slope at t* against beta", "negativity of g' beyond t*", slope_mismatch == 0,
                           static_cast<double>(slope_mismatch));
  slope.witnesses = {{"points", static_cast<double>(slope_points)}};
  rep.checks.push_back(slope);
  return rep;
}

AgreementCounts oracle_agreement(int n, const SolverConfig& cfg) {
  const auto grid = canonical_grid(n);
  std::vector<AgreementCounts> per(static_cast<std::size_t>(n));
  detail::parallel_for(per.size(), [&](std::size_t i) {
    AgreementCounts& ac = per[i];
    ColumnGamma col(grid[i * static_cast<std::size_t>(n)].p1.value());
    for (int j = 0; j < n; ++j) {
      const ParamPair& c = grid[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
      ++ac.points;
      const Membership m = column_in_C(c, col, cfg);
      if (m == Membership::band) {
        ++ac.skipped_band;
        continue;
      }
      const bool uni = unimodality_oracle(c, cfg).unimodal;
      if (uni != (m == Membership::inside)) {
        ++ac.disagreements;
        if (ac.witnesses.size() < 8) ac.witnesses.push_back(c);
      }
    }
  });
  AgreementCounts total;
  for (const auto& ac : per) {
    total.points += ac.points;
    total.skipped_band += ac.skipped_band;
    total.disagreements += ac.disagreements;
    for (const auto& w : ac.witnesses) {
      if (total.witnesses.size() < 8) total.witnesses.push_back(w);
    }
  }
  return total;
}

ConsistencyReport core_suite(const SolverConfig& cfg) {
  ConsistencyReport rep;
  rep.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> up(0.01, 0.99);
  std::uniform_real_distribution<double> ut(-50.0, 50.0);
  const SeriesPolicy& sp = cfg.series;

  double add = 0.0;
  double refl = 0.0;
  double swap = 0.0;
  double ft3 = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const ParamPair pr{up(rng), up(rng)};
    const double t = ut(rng);
    const double g = g_pair(pr, t, 0, sp);
    add = std::max(add, std::abs(g - g_scalar(pr.p1, t, 0, sp) - g_scalar(pr.p2, t, 0, sp)));
    refl = std::max(refl, std::abs(g_pair(pr.reflected(), t, 0, sp) - g_pair(pr, -t, 0, sp)));
    swap = std::max(swap, std::abs(g_pair(pr.swapped(), t, 0, sp) - g));
    if (std::abs(t) >= sp.seam) {
      const double lhs = f_pair(pr, t, 0, sp);
      const double rhs = t * t * t * g_pair(pr, t, 1, sp);
      ft3 = std::max(ft3, std::abs(lhs - rhs) / (1.0 + std::abs(t * t * t)));
    }
  }
  rep.checks.push_back(make_check("additivity", "pair function as a sum", add <= 1e-13, add));
  rep.checks.push_back(make_check("reflection", "distribution of -X", refl <= 1e-13, refl));
  rep.checks.push_back(make_check("swap symmetry", "pair function as a sum", swap == 0.0, swap));
  rep.checks.push_back(make_check("f = t^3 g'", "definition of f", ft3 <= 1e-11, ft3));

  double mgf = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ParamPair pr{up(rng), up(rng)};
    for (int i = 0; i <= 120; ++i) {
      const double t = -30.0 + 0.5 * i;
      const double m = mgf_pair(pr, t);
      mgf = std::max(mgf, std::abs(m - std::exp(t * t * g_pair(pr, t, 0, sp))) / m);
    }
  }
  rep.checks.push_back(make_check("mgf identity", "atoms of the pair sum", mgf <= 1e-12, mgf));

  double crit = 0.0;
  for (int k = 0; k < 500; ++k) {
    const ParamPair pr{up(rng), up(rng)};
    const double ts = t_star_pair(pr).t;
    crit = std::max(crit, std::abs(g_pair(pr, ts, 1, sp)));
    crit = std::max(crit, std::abs(g_pair(pr, ts, 0, sp) - ks_const_pair(pr).value));
  }
  rep.checks.push_back(make_check("critical point", "maximiser of g", crit <= 1e-11, crit));

  double seam = 0.0;
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const ParamPair pr{i / 20.0, j / 20.0};
      for (double s : {0.9, 0.95, 1.0, 1.05, 1.1}) {
        for (double sign : {-1.0, 1.0}) {
          const double t = sign * s * sp.seam;
          for (int order : {0, 1}) {
            seam = std::max(seam, std::abs(g_pair_direct(pr, t, order) - g_pair_series(pr, t, order, sp)));
          }
        }
      }
    }
  }
  rep.checks.push_back(make_check("seam continuity", "removable singularity at t = 0", seam <= 1e-11, seam));

  std::vector<FdPoint> pts;
  std::uniform_real_distribution<double> uf(-8.0, 8.0);
  for (int k = 0; k < 200; ++k) pts.push_back({{up(rng), up(rng)}, uf(rng)});
  double fd = 0.0;
  for (FdTarget tg : {FdTarget::g_scalar_1, FdTarget::g_pair_1, FdTarget::f_scalar_1, FdTarget::f_scalar_2,
                      FdTarget::f_scalar_3, FdTarget::f_pair_1, FdTarget::f_pair_2, FdTarget::f_pair_3}) {
    fd = std::max(fd, fd_check(tg, pts, 1e-5, cfg));
  }
  rep.checks.push_back(make_check("finite differences", "derivatives of f", fd <= 1e-6, fd));

  double f3 = 0.0;
  for (int k = 0; k < 500; ++k) {
    const ParamPair pr{up(rng), up(rng)};
    f3 = std::max(f3, std::abs(f_pair(pr, 0.0, 3, sp) -
                               one_minus_sum(pr.p1.value(), pr.p2.value()) * cond_A(pr)));
  }
  rep.checks.push_back(make_check("third derivative at origin", "positivity of g' on the negative axis",
                                  f3 <= 1e-12, f3));
  return rep;
}

ConsistencyReport regions_suite(int grid_n, const SolverConfig& cfg) {
  ConsistencyReport rep = region_consistency(grid_n, cfg);

  double h_err = 0.0;
  double t_err = 0.0;
  double inv_err = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const double tau = 0.1 * k;
    const ParamPair b = beta_param(tau);
    h_err = std::max(h_err, std::abs(h_value(b.p1, b.p2)));
    t_err = std::max(t_err, std::abs(t_star_pair(b).t - tau));
    inv_err = std::max(inv_err, std::abs(beta_solve(b.p1, cfg) - b.p2.value()));
  }
  rep.checks.push_back(make_check("beta parametrisation: h = 0", "parametrised beta curve", h_err <= 1e-8, h_err));
  rep.checks.push_back(make_check("beta parametrisation: t* = tau", "parametrised beta curve", t_err <= 1e-8, t_err));
  rep.checks.push_back(make_check("beta_solve inverts the parametrisation", "parametrised beta curve",
                                  inv_err <= 1e-7, inv_err));

  double d_res = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double p1 = i / 200.0;
    const DRoots r = d_roots(p1);
    for (const auto& root : {r.lower, r.upper}) {
      if (root && *root >= 0.0 && *root <= 1.0) d_res = std::max(d_res, std::abs(disc_D({p1, *root})));
    }
  }
  rep.checks.push_back(make_check("d_roots residuals", "lower boundary of D", d_res <= 1e-10, d_res));

  const double meet = std::max(std::abs(alpha(kPPlus) - kPMinus), std::abs(beta_param_limit().p2.value() - kPMinus));
  rep.checks.push_back(make_check("alpha and beta meet at (p+, p-)", "corner of A and B", meet <= 1e-8, meet));

  std::mt19937_64 rng(cfg.seed ^ 0x5eedULL);
  std::uniform_real_distribution<double> up(0.001, 0.999);
  long mism = 0;
  double b_err = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const ParamPair pr{up(rng), up(rng)};
    const ParamPair c = canonicalize(pr).pair;
    if (in_A(pr, cfg) != in_A(c, cfg)) ++mism;
    if (in_B(pr, cfg) != in_B(c, cfg)) ++mism;
    if (in_D(pr, cfg) != in_D(c, cfg)) ++mism;
    b_err = std::max(b_err, std::abs(b_expression(pr) - b_expression(c)));
  }
  Check inv = make_check("membership invariant under symmetries", "reduction to the triangle",
                         mism == 0 && b_err <= 1e-12, std::max(b_err, static_cast<double>(mism)));
  rep.checks.push_back(inv);
  return rep;
}

ConsistencyReport gamma_suite(int grid_n, const SolverConfig& cfg) {
  ConsistencyReport rep;
  rep.seed = cfg.seed;
  const auto grid = linspace(0.05, kPPlus - 1e-3, 64);
  const BoundaryCurve curve = gamma_trace(grid, cfg);
  double res = 0.0;
  long bad_t = 0;
  long below_beta = 0;
  for (const auto& pt : curve.points) {
    if (!pt.solved) continue;
    res = std::max(res, pt.residual);
    if (pt.p2 < beta_solve(pt.p1, cfg) * (1.0 - 1e-9)) ++below_beta;
  }
  for (double p1 : grid) {
    try {
      const GammaSolution s = gamma_solve(p1, cfg);
      const double ts = t_star_pair({p1, s.gamma}).t;
      if (!(s.t_hat > 0.5 * ts && s.t_hat < ts)) ++bad_t;
    } catch (const SolverError&) {
    }
  }
  const double frac = static_cast<double>(curve.solved_count()) / static_cast<double>(curve.points.size());
  Check c = make_check("gamma residuals", "double-root system for gamma",
                       res <= 1e-9 && bad_t == 0 && below_beta == 0 && frac >= 0.95, res);
  c.witnesses = {{"solved_fraction", frac}, {"t_hat_outside", static_cast<double>(bad_t)},
                 {"below_beta", static_cast<double>(below_beta)}};
  rep.checks.push_back(c);

  double s_err = 0.0;
  for (int i = 1; i < 50; ++i) {
    for (int j = 1; j <= 40; ++j) {
      const double p1 = i / 50.0;
      const double t = 0.25 * j;
      const double s = s_of(p1, t);
      if (s > 0.0 && s < 1.0) s_err = std::max(s_err, std::abs(t_star_pair({p1, s}).t - t));
    }
  }
  rep.checks.push_back(make_check("s_t identity", "level sets of t*", s_err <= 1e-12, s_err));

  // Sign pattern of p2 -> f(p1, p2; t): - on (0, r), + on (r, s), - beyond s.
  long pattern_bad = 0;
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const double pt = p_threshold(t);
    const double u = beta_param(t).p1.value();
    for (int k = 1; k < 8; ++k) {
      const double p1 = pt + (u - pt) * k / 8.0;
      const double r = r_of(p1, t, cfg);
      const double s = s_of(p1, t);
      const double top = std::min(p1, 1.0 - p1);
      if (!(r > 0.0 && r < s)) {
        ++pattern_bad;
        continue;
      }
      for (int m = 1; m < 200; ++m) {
        const double p2 = top * m / 200.0;
        if (std::abs(p2 - r) < 1e-6 || std::abs(p2 - s) < 1e-6) continue;
        const double v = f_pair({p1, p2}, t, 0, cfg.series);
        const int expected = p2 < r ? -1 : (p2 < s ? 1 : -1);
        if (std::abs(v) > 1e-14 && (v > 0.0 ? 1 : -1) != expected) ++pattern_bad;
      }
    }
  }
  rep.checks.push_back(make_check("sign pattern in p2 at fixed t", "zeros r_t and s_t", pattern_bad == 0,
                                  static_cast<double>(pattern_bad)));

  const AgreementCounts ag = oracle_agreement(grid_n, cfg);
  Check agree = make_check("oracle agrees with in_C", "characterisation of C", ag.disagreements == 0,
                           static_cast<double>(ag.disagreements));
  agree.witnesses = {{"points", static_cast<double>(ag.points)}, {"skipped_band", static_cast<double>(ag.skipped_band)}};
  for (const auto& w : ag.witnesses) {
    agree.witnesses.emplace_back("p1", w.p1.value());
    agree.witnesses.emplace_back("p2", w.p2.value());
  }
  rep.checks.push_back(agree);
  return rep;
}

double delta_closed_form(double p1) {
  const double r3 = std::sqrt(3.0);
  return ((7.0 - 4.0 * r3) * p1 - (6.0 - r3) * p1 * p1) / (1.0 + 12.0 * p1 * (1.0 - p1));
}

ConsistencyReport paper_consistency(const SolverConfig& cfg) {
  ConsistencyReport rep;
  rep.seed = cfg.seed;

  {
    // (i) closed-form lower boundary of D against the zero set of disc_D
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double p1 = 0.005 * i;
      const DRoots r = d_roots(p1);
      if (r.lower) worst = std::max(worst, std::abs(delta_closed_form(p1) - *r.lower));
    }
    Check c = make_check("(i) closed-form lower boundary of D", "explicit lower boundary of D", worst <= 1e-8, worst);
    c.witnesses = {{"p1", 0.3},
                   {"closed_form", delta_closed_form(0.3)},
                   {"root_of_disc_D", d_roots(0.3).lower.value_or(std::nan(""))},
                   {"closed_form_at_p_plus", delta_closed_form(kPPlus)},
                   {"disc_D_at_p_plus_p_minus", disc_D({kPPlus, kPMinus})}};
    c.asserted = false;
    rep.checks.push_back(c);
  }
  {
    // (ii) closed-form roots of the quadratic against the stable quadratic formula
    const ParamPair w{0.45, 0.05};
    const auto closed = x_pm_closed_form(w);
    const auto roots = real_roots(pair_poly(w));
    double worst = 0.0;
    if (closed.size() == 2 && roots.size() == 2) {
      worst = std::max(rel_err(closed[0], roots[0]), rel_err(closed[1], roots[1]));
    } else {
      worst = kInf;
    }
    Check c = make_check("(ii) closed-form roots x+-", "extra inflection abscissas", worst <= 1e-10, worst);
    c.witnesses = {{"p1", 0.45},
                   {"p2", 0.05},
                   {"closed_form_minus", closed.size() == 2 ? closed[0] : std::nan("")},
                   {"closed_form_plus", closed.size() == 2 ? closed[1] : std::nan("")},
                   {"root_minus", roots.size() == 2 ? roots[0] : std::nan("")},
                   {"root_plus", roots.size() == 2 ? roots[1] : std::nan("")}};
    c.asserted = false;
    rep.checks.push_back(c);
  }
  {
    // (iii) sign of disc_D against the sign of the true discriminant on the triangle
    long disagree = 0;
    long total = 0;
    std::optional<ParamPair> first;
    for (const auto& pr : canonical_grid(200)) {
      if (pr.p1 == pr.p2) continue;
      ++total;
      const bool d_pos = disc_D(pr) > 0.0;
      const bool t_pos = true_discriminant(pr) > 0.0;
      if (d_pos != t_pos) {
        ++disagree;
        if (!first) first = pr;
      }
    }
    Check c = make_check("(iii) sign of disc_D vs discriminant of P", "inflection classification", disagree == 0,
                         static_cast<double>(disagree));
    c.witnesses = {{"grid_points", static_cast<double>(total)}, {"disagreements", static_cast<double>(disagree)}};
    if (first) {
      c.witnesses.emplace_back("first_p1", first->p1.value());
      c.witnesses.emplace_back("first_p2", first->p2.value());
      c.witnesses.emplace_back("first_disc_D", disc_D(*first));
      c.witnesses.emplace_back("first_true_disc", true_discriminant(*first));
    }
    c.asserted = false;
    rep.checks.push_back(c);
  }
  {
    // (iv) alpha with p1 in the radicand: alpha(p+) = p-, alpha(1/2) = 0 and
    // cond_A(p1, alpha(p1)) = 0 on (1/2, p+].
    double worst = std::max(std::abs(alpha(kPPlus) - kPMinus), std::abs(alpha(0.5)));
    for (int i = 1; i <= 100; ++i) {
      const double p1 = 0.5 + (kPPlus - 0.5) * i / 100.0;
      worst = std::max(worst, std::abs(cond_A({p1, alpha(p1)})));
    }
    Check c = make_check("(iv) alpha radicand read with p1", "boundary of A", worst <= 1e-12, worst);
    c.witnesses = {{"alpha_at_p_plus", alpha(kPPlus)}, {"p_minus", kPMinus}};
    rep.checks.push_back(c);
  }
  {
    // (v) identities along the parametrised beta curve
    double worst = 0.0;
    for (int k = 1; k <= 60; ++k) {
      const double tau = 0.1 * k;
      const ParamPair b = beta_param(tau);
      worst = std::max({worst, std::abs(h_value(b.p1, b.p2)), std::abs(t_star_pair(b).t - tau)});
    }
    Check c = make_check("(v) beta curve: h = 0 and t* = tau", "parametrised beta curve", worst <= 1e-8, worst);
    const ParamPair b2 = beta_param(2.0);
    c.witnesses = {{"tau", 2.0}, {"u", b2.p1.value()}, {"v", b2.p2.value()}};
    rep.checks.push_back(c);
  }
  {
    // (vi) c1^2 - 4 c0 c2 = (p1 - p2)^2 (disc_D - 24 p1^2 p2^2)
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> up(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const ParamPair pr{up(rng), up(rng)};
      const double direct = pair_poly(pr).discriminant();
      worst = std::max(worst, std::abs(direct - true_discriminant(pr)));
    }
    Check c = make_check("(vi) discriminant factorisation", "inflection classification", worst <= 1e-14, worst);
    c.witnesses = {{"disc_at_p_plus_p_minus", true_discriminant({kPPlus, kPMinus})}};
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace subgauss
