#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "subgauss/config.hpp"
#include "subgauss/regions.hpp"
#include "subgauss/types.hpp"

// The set C and its lower boundary gamma. For canonical (p1, p2) with
// p1 < p+, f_{p1,p2} stays positive on (0, t*) exactly when p2 > gamma(p1);
// on the curve itself f has a double zero at an interior point t_hat:
//
//   f(t_hat) = f'(t_hat) = 0,   t*/2 < t_hat < t*.

namespace subgauss {

/// 1 / (1 + e^{t/2}), t > 0.
double p_threshold(double t);

/// (1 - p1) / (1 + p1 (e^t - 1)), the p2 with t*_{p1,p2} = t.
double s_of(ProbParam p1, double t);

/// Zero of p2 -> f_{p1,p2}(t) in (0, s_of(p1, t)) for p_threshold(t) <= p1 < u(t).
double r_of(ProbParam p1, double t, const SolverConfig& cfg = {});

struct MidMinResult {
  double t_min = 0.0;
  double f_min = 0.0;
  std::pair<double, double> bracket;
  double f_scale = 0.0;  ///< max |f| over the scan
  double f_noise = 0.0;  ///< rounding level of f near t*, where f vanishes exactly
};

/// Minimum of f over [t*/2, t*] for a canonical interior pair with t* > 0.
MidMinResult mid_min(const ParamPair& pair, const SolverConfig& cfg = {});

/// f dips below zero on (t*/2, t*) by more than dip_tol relative to its scale
/// and by more than its rounding level.
bool has_dip(const MidMinResult& m, const SolverConfig& cfg);

struct GammaSolution {
  double p1 = 0.0;
  double gamma = 0.0;
  double t_hat = 0.0;
  double residual_f = 0.0;
  double residual_fprime = 0.0;
  bool polished = false;  ///< the Newton step converged (otherwise bisection only)
};

/// No crossing in [beta(p1), min(p1, 1 - p1)).
class NoGamma : public SolverError {
 public:
  using SolverError::SolverError;
};

/// More than one sign change of the dip indicator; carries the solution at
/// the smallest crossing.
class MultiCross : public SolverError {
 public:
  MultiCross(const std::string& what, GammaSolution smallest, int crossings)
      : SolverError(what), smallest_(smallest), crossings_(crossings) {}

  const GammaSolution& smallest() const noexcept { return smallest_; }
  int crossings() const noexcept { return crossings_; }

 private:
  GammaSolution smallest_;
  int crossings_;
};

GammaSolution gamma_solve(ProbParam p1, const SolverConfig& cfg = {});

/// Pointwise solves in grid order; failures become unsolved points.
BoundaryCurve gamma_trace(const std::vector<double>& p1_grid, const SolverConfig& cfg = {});

/// Membership in C. `gamma` may carry a solution for the canonical p1 to
/// avoid re-solving.
Membership in_C(const ParamPair& pair, const SolverConfig& cfg = {}, const GammaSolution* gamma = nullptr);

struct RegionReport {
  Membership in_A = Membership::band;
  Membership in_B = Membership::band;
  Membership in_C = Membership::band;
  Membership in_D = Membership::band;
  CanonicalPair canonical{ParamPair{0.0, 0.0}};
  double cond_A = 0.0;
  double b_expression = 0.0;
  double disc_D = 0.0;
  std::optional<GammaSolution> gamma_used;
};

RegionReport classify(const ParamPair& pair, const SolverConfig& cfg = {});

}  // namespace subgauss
