#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subgauss/config.hpp"
#include "subgauss/types.hpp"

// Symmetry reduction onto the triangle
//   { 0 <= p2 <= min(p1, 1 - p1) }
// and the sets
//   A = { cond_A >= 0 },
//   B = { |t*| <= 2 |1 - p1 - p2| / (p1(1-p1) + p2(1-p2)) },
//   D = { disc_D <= 0 }  (evaluated on canonical coordinates).

namespace subgauss {

/// alpha is only defined up to p+.
class NoAlphaBranch : public DomainError {
 public:
  using DomainError::DomainError;
};

struct CanonicalPair {
  ParamPair pair;
  bool flipped = false;  ///< p -> 1 - p applied to both coordinates
  bool swapped = false;  ///< coordinates exchanged after the flip

  /// Undo the recorded transforms.
  ParamPair restore() const;
};

CanonicalPair canonicalize(const ParamPair& pair);

bool is_canonical(const ParamPair& pair) noexcept;

/// max{0, [1 + 2 p1 - sqrt(1 + 12 p1 (1 - p1))] / 4} on [0, p+].
double alpha(ProbParam p1);

Membership in_A(const ParamPair& pair, const SolverConfig& cfg = {});

/// log odds product minus 2 (1 - p1 - p2) / (p1(1-p1) + p2(1-p2)).
double h_value(ProbParam p1, ProbParam p2);

/// Root in p2 of h_value(p1, .) below min(p1, 1 - p1), for 0 < p1 < p+.
/// Throws NoRoot when p1 >= p+ and SolverError when the root underflows.
double beta_solve(ProbParam p1, const SolverConfig& cfg = {});

/// j(tau) (1, 1) + sqrt(-j'(tau)) (1, -1), j(tau) = 1/tau - 1/(e^tau - 1).
ParamPair beta_param(double tau);

/// The tau -> 0 end point of beta_param, which is (p+, p-).
ParamPair beta_param_limit() noexcept;

/// j and -j' separately (tau > 0).
double beta_j(double tau);
double beta_minus_dj(double tau);

/// Inverse of tau -> first coordinate of beta_param.
double beta_tau_for(double p1);

/// Expression |t*| - 2|1 - p1 - p2| / V that is <= 0 on B.
double b_expression(const ParamPair& pair);

Membership in_B(const ParamPair& pair, const SolverConfig& cfg = {});

struct DRoots {
  std::optional<double> lower;
  std::optional<double> upper;
};

/// Roots in p2 of disc_D(p1, p2) = 0; empty when p1 > 2 - sqrt 2.
DRoots d_roots(ProbParam p1);

Membership in_D(const ParamPair& pair, const SolverConfig& cfg = {});

struct CurvePoint {
  double p1 = 0.0;
  double p2 = 0.0;
  double residual = 0.0;
  bool solved = true;
};

struct BoundaryCurve {
  std::string label;  ///< alpha, beta, gamma, d_lower or d_upper
  std::vector<CurvePoint> points;

  std::size_t solved_count() const;
};

/// Evenly spaced grid with n >= 2 points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

BoundaryCurve alpha_trace(const std::vector<double>& p1_grid);
BoundaryCurve beta_trace(const std::vector<double>& p1_grid);
BoundaryCurve d_trace(const std::vector<double>& p1_grid, bool upper);

}  // namespace subgauss
