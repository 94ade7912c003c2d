#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subgauss {

/// Thrown when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A pair on the edge of the canonical triangle that needs the dedicated
/// boundary routine instead of the interior one.
class BoundaryCase : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numeric routine (bracketing, iteration) could not deliver its result.
/// The message carries the diagnostics.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRoot : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Probability parameter of a generalised Bernoulli variable.
///
/// Values within 1e-15 outside [0, 1] are clamped; anything further out
/// (or non-finite) is rejected.
class ProbParam {
 public:
  static constexpr double kSlack = 1e-15;

  ProbParam(double p);  // NOLINT(google-explicit-constructor): validated conversion

  double value() const noexcept { return p_; }
  double complement() const noexcept { return 1.0 - p_; }
  /// Endpoints describe the constant variable X = 0.
  bool degenerate() const noexcept { return p_ == 0.0 || p_ == 1.0; }

  friend bool operator==(ProbParam a, ProbParam b) noexcept { return a.p_ == b.p_; }

 private:
  double p_;
};

struct ParamPair {
  ProbParam p1;
  ProbParam p2;

  ParamPair(ProbParam a, ProbParam b) : p1(a), p2(b) {}

  bool degenerate() const noexcept { return p1.degenerate() || p2.degenerate(); }
  ParamPair swapped() const { return {p2, p1}; }
  /// Parameters of -X1, -X2.
  ParamPair reflected() const { return {p1.complement(), p2.complement()}; }

  friend bool operator==(const ParamPair&, const ParamPair&) = default;
};

/// Laplace-transform argument. Infinite values mark the endpoint cases of
/// the critical abscissa; NaN marks an undefined one.
struct Abscissa {
  double t = 0.0;

  bool finite() const noexcept { return std::isfinite(t); }
  bool infinite() const noexcept { return std::isinf(t); }
  bool undefined() const noexcept { return std::isnan(t); }
};

/// Sharp sub-Gaussian constant together with how it was obtained.
struct BoundConstant {
  double value = 0.0;
  bool degenerate = false;  ///< some parameter at an endpoint
  bool limit = false;       ///< removable singularity (t* = 0) filled by its limit
};

/// Three-valued region membership.
enum class Membership { inside, outside, band };

std::string_view to_string(Membership m) noexcept;

/// Classify `value` against zero: inside when `inside_if_negative` and the
/// value is below -band (or above +band otherwise).
Membership classify_sign(double value, double band, bool inside_if_negative) noexcept;

/// (1 - p1 - p2) evaluated without avoidable rounding.
double one_minus_sum(double p1, double p2) noexcept;

/// log((1 - p) / p) for p in (0, 1), accurate near 1/2 and near the endpoints.
double log_odds(double p) noexcept;

}  // namespace subgauss
