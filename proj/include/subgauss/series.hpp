#pragma once

#include <span>

#include "subgauss/config.hpp"

namespace subgauss::series {

/// Largest cumulant index held in the coefficient table.
inline constexpr int kMaxCumulant = 20;

/// Coefficients, in ascending powers of p, of the n-th cumulant of a
/// Bernoulli(p) variable (2 <= n <= kMaxCumulant).
///
/// Generated from kappa_2 = p(1-p) by kappa_{n+1} = p(1-p) d(kappa_n)/dp, so
/// all coefficients are integers held exactly.
std::span<const double> cumulant_poly(int n);

double cumulant(int n, double p);

/// Taylor expansion about t = 0 of g_p (deriv 0) or g_p' (deriv 1), keeping
/// powers of t up to `policy.order`.
double g(double p, double t, int deriv, const SeriesPolicy& policy);

/// Taylor expansion about t = 0 of the k-th derivative of f_p(t) = t^3 g_p'(t),
/// truncated consistently with g.
double f(double p, double t, int k, const SeriesPolicy& policy);

}  // namespace subgauss::series
