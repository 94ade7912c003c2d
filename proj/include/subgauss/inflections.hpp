#pragma once

#include <numbers>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "subgauss/config.hpp"
#include "subgauss/types.hpp"

// Convexity structure of f_{p1,p2}. Its second derivative factors as
//
//   f''(t) = t e^t [p1 + p2 - 1 + p1 p2 (e^{2t} - 1)] / (D1^3 D2^3) * P(e^t),
//   Di = 1 + pi (e^t - 1),
//
// with P a quadratic whose coefficients are returned by pair_poly.

namespace subgauss {

/// c0 + c1 x + c2 x^2
struct QuadCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const noexcept { return c0 + x * (c1 + x * c2); }
  double discriminant() const noexcept { return c1 * c1 - 4.0 * c0 * c2; }
};

/// Real roots in ascending order (zero, one or two entries). A double root
/// is reported once.
std::vector<double> real_roots(const QuadCoeffs& q);

/// 2 p1 p2 - p1 (2 p1 - 1) - p2 (2 p2 - 1)
double cond_A(const ParamPair& pair);

/// 12 p1 p2 (p1 p2 + p1 + p2) - 14 p1 p2 + p1^2 + p2^2
double disc_D(const ParamPair& pair);

QuadCoeffs pair_poly(const ParamPair& pair);

/// c1^2 - 4 c0 c2 of pair_poly, evaluated through the factorisation
/// (p1 - p2)^2 [disc_D - 24 p1^2 p2^2].
double true_discriminant(const ParamPair& pair);

/// Scalar factor in front of P(e^t) in f''.
double f2_prefactor(const ParamPair& pair, double t);

/// Roots of P from the closed form that takes (p1 - p2) sqrt(disc_D)
/// as the square root of the discriminant. Empty when disc_D < 0.
/// Kept for comparison against real_roots(pair_poly(pair)).
std::vector<double> x_pm_closed_form(const ParamPair& pair);

enum class ShapeClass { TwoInflections, DegenerateThree, FourNegA, FourPosA, Diagonal, AntiDiagonalSym };

std::string_view to_string(ShapeClass c) noexcept;

struct ShapeReport {
  ShapeClass shape;
  /// Class implied by the sign of disc_D and cond_A alone.
  ShapeClass by_disc_D;
  /// The two classifications differ.
  bool override_applied = false;
  double disc_D = 0.0;
  double true_disc = 0.0;
  double cond_A = 0.0;
};

enum class Transition { concave_to_convex, convex_to_concave };

std::string_view to_string(Transition t) noexcept;

struct Inflection {
  double t;
  Transition transition;
};

struct InflectionSet {
  std::vector<Inflection> points;  ///< strictly increasing in t
};

/// Requires a canonical pair: 0 < p2 <= p1 and p1 + p2 < 1. Throws
/// BoundaryCase on p1 + p2 = 1 or p2 = 0, DomainError if not canonical.
ShapeReport shape_class(const ParamPair& pair);
InflectionSet inflection_set(const ParamPair& pair);

struct BoundaryInflections {
  InflectionSet set;
  /// Positive zero of f_{p1,1-p1}; present only for p1 > p+.
  std::optional<double> t_dagger;
  QuadCoeffs poly;
  double discriminant = 0.0;
};

/// Boundary polynomial of the anti-diagonal pair (p1, 1 - p1).
QuadCoeffs boundary_poly(ProbParam p1);

/// Anti-diagonal pair (p1, 1 - p1) with p1 >= 1/2.
BoundaryInflections boundary_inflections(ProbParam p1, const SolverConfig& cfg = {});

inline constexpr double kPPlus = (3.0 + std::numbers::sqrt3) / 6.0;
inline constexpr double kPMinus = (3.0 - std::numbers::sqrt3) / 6.0;

/// ((3 + sqrt 3) / 6, (3 - sqrt 3) / 6)
std::pair<double, double> p_plus_minus() noexcept;

}  // namespace subgauss
