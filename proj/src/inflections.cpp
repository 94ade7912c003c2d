#include "subgauss/inflections.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "numeric.hpp"
#include "subgauss/core_eval.hpp"

namespace subgauss {
namespace {

void require_canonical_interior(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  if (p2 > p1 || p1 + p2 > 1.0) {
    throw DomainError(fmt::format("({}, {}) is not canonical; canonicalize first", p1, p2));
  }
  if (p2 == 0.0 || one_minus_sum(p1, p2) == 0.0) {
    throw BoundaryCase(fmt::format("({}, {}) lies on the edge of the triangle; use boundary_inflections", p1, p2));
  }
}

ShapeClass class_from(bool extra_roots, double a) {
  if (!extra_roots) return ShapeClass::TwoInflections;
  if (a == 0.0) return ShapeClass::DegenerateThree;
  return a < 0.0 ? ShapeClass::FourNegA : ShapeClass::FourPosA;
}

// Alternating transitions, the first one read off the sign of f'' to the left.
InflectionSet with_transitions(const ParamPair& pair, std::vector<double> ts) {
  std::sort(ts.begin(), ts.end());
  InflectionSet out;
  if (ts.empty()) return out;
  const double left = f_pair(pair, ts.front() - 1.0, 2);
  Transition next = left < 0.0 ? Transition::concave_to_convex : Transition::convex_to_concave;
  for (double t : ts) {
    out.points.push_back({t, next});
    next = next == Transition::concave_to_convex ? Transition::convex_to_concave : Transition::concave_to_convex;
  }
  return out;
}

}  // namespace

std::vector<double> real_roots(const QuadCoeffs& q) {
  if (q.c2 == 0.0) {
    if (q.c1 == 0.0) return {};
    return {-q.c0 / q.c1};
  }
  const double disc = q.discriminant();
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-q.c1 / (2.0 * q.c2)};
  const double s = std::sqrt(disc);
  const double w = -0.5 * (q.c1 + std::copysign(s, q.c1));
  double r1 = w / q.c2;
  double r2 = w != 0.0 ? q.c0 / w : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

double cond_A(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  return 2.0 * p1 * p2 - p1 * (2.0 * p1 - 1.0) - p2 * (2.0 * p2 - 1.0);
}

double disc_D(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const double m = p1 * p2;
  return 12.0 * m * (m + p1 + p2) - 14.0 * m + p1 * p1 + p2 * p2;
}

QuadCoeffs pair_poly(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const double m = p1 * p2;
  const double w = 2.0 * m - p1 - p2;
  return {(1.0 - p1) * (1.0 - p2) * w, 4.0 * m * (p1 + p2 - m) - 6.0 * m + p1 * p1 + p2 * p2, m * w};
}

double true_discriminant(const ParamPair& pair) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const double d = p1 - p2;
  const double m = p1 * p2;
  return d * d * (disc_D(pair) - 24.0 * m * m);
}

double f2_prefactor(const ParamPair& pair, double t) {
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const double em1 = std::expm1(t);
  const double d1 = 1.0 + p1 * em1;
  const double d2 = 1.0 + p2 * em1;
  const double bracket = -one_minus_sum(p1, p2) + p1 * p2 * std::expm1(2.0 * t);
  return t * std::exp(t) * bracket / (d1 * d1 * d1 * d2 * d2 * d2);
}

std::vector<double> x_pm_closed_form(const ParamPair& pair) {
  const double d = disc_D(pair);
  if (d < 0.0) return {};
  const double p1 = pair.p1.value();
  const double p2 = pair.p2.value();
  const QuadCoeffs q = pair_poly(pair);
  const double den = 2.0 * p1 * p2 * (p1 + p2 - 2.0 * p1 * p2);
  const double r = (p1 - p2) * std::sqrt(d);
  double lo = (q.c1 - r) / den;
  double hi = (q.c1 + r) / den;
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

std::string_view to_string(ShapeClass c) noexcept {
  switch (c) {
    case ShapeClass::TwoInflections:
      return "TwoInflections";
    case ShapeClass::DegenerateThree:
      return "DegenerateThree";
    case ShapeClass::FourNegA:
      return "FourNegA";
    case ShapeClass::FourPosA:
      return "FourPosA";
    case ShapeClass::Diagonal:
      return "Diagonal";
    case ShapeClass::AntiDiagonalSym:
      return "AntiDiagonalSym";
  }
  return "TwoInflections";
}

std::string_view to_string(Transition t) noexcept {
  return t == Transition::concave_to_convex ? "concave_to_convex" : "convex_to_concave";
}

ShapeReport shape_class(const ParamPair& pair) {
  require_canonical_interior(pair);
  ShapeReport r{};
  r.disc_D = disc_D(pair);
  r.true_disc = true_discriminant(pair);
  r.cond_A = cond_A(pair);
  if (pair.p1 == pair.p2) {
    r.shape = ShapeClass::Diagonal;
    r.by_disc_D = ShapeClass::Diagonal;
    return r;
  }
  // Both roots of P share a sign (their product is the odds product > 0), so
  // they are positive exactly when c1 > 0.
  const bool extra = r.true_disc > 0.0 && pair_poly(pair).c1 > 0.0;
  r.shape = class_from(extra, r.cond_A);
  r.by_disc_D = class_from(r.disc_D > 0.0, r.cond_A);
  r.override_applied = r.shape != r.by_disc_D;
  return r;
}

InflectionSet inflection_set(const ParamPair& pair) {
  const ShapeReport shape = shape_class(pair);
  const double half = 0.5 * t_star_pair(pair).t;
  std::vector<double> ts{0.0, half};
  switch (shape.shape) {
    case ShapeClass::Diagonal:
    case ShapeClass::TwoInflections:
    case ShapeClass::AntiDiagonalSym:
      break;
    case ShapeClass::DegenerateThree:
      ts.push_back(2.0 * half);
      break;
    case ShapeClass::FourNegA:
    case ShapeClass::FourPosA:
      for (double x : real_roots(pair_poly(pair))) ts.push_back(std::log(x));
      break;
  }
  return with_transitions(pair, std::move(ts));
}

QuadCoeffs boundary_poly(ProbParam p1) {
  const double p = p1.value();
  const double pq = p * (1.0 - p);
  const double c = -pq * (1.0 - 2.0 * pq);
  return {c, 1.0 - 4.0 * p * (1.0 - 2.0 * p * p + p * p * p), c};
}

BoundaryInflections boundary_inflections(ProbParam p1, const SolverConfig& cfg) {
  const double p = p1.value();
  if (p < 0.5) throw DomainError(fmt::format("boundary_inflections needs p1 >= 1/2, got {}; reflect first", p));
  BoundaryInflections out;
  out.poly = boundary_poly(p1);
  const double pq = p * (1.0 - p);
  const double d = 1.0 - 2.0 * p;
  out.discriminant = d * d * (1.0 + 2.0 * pq) * (1.0 - 6.0 * pq);
  if (p <= kPPlus || p == 1.0) return out;

  const ParamPair pair{p1, 1.0 - p};
  std::vector<double> ts;
  for (double x : real_roots(out.poly)) {
    if (x > 0.0) ts.push_back(std::log(x));
  }
  out.set = with_transitions(pair, std::move(ts));

  auto f = [&](double t) { return f_pair(pair, t, 0, cfg.series); };
  // f > 0 just right of the origin (positive fourth derivative); walk out
  // geometrically until it turns negative.
  double lo = 1e-3;
  while (!(f(lo) > 0.0) && lo > 1e-8) lo *= 0.5;
  if (!(f(lo) > 0.0)) throw SolverError(fmt::format("f is not positive near 0 for p1 = {}", p));
  double hi = lo;
  double limit = cfg.t_max;
  while (f(hi) >= 0.0) {
    hi *= 1.5;
    if (hi > limit) {
      if (limit >= 16.0 * cfg.t_max) {
        throw NoRoot(fmt::format("no sign change of f on (0, {}] for p1 = {}", limit, p));
      }
      limit *= 2.0;
    }
  }
  lo = hi / 1.5;
  out.t_dagger = detail::bisect(f, lo, hi, cfg.t_tol, 1e-13);
  return out;
}

std::pair<double, double> p_plus_minus() noexcept {
  return {kPPlus, kPMinus};
}

}  // namespace subgauss
