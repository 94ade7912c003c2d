#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include <fmt/format.h>

#include "subgauss/types.hpp"

namespace subgauss::detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Bisection on [lo, hi] where fn(lo), fn(hi) have opposite signs. Stops when
/// |fn| <= ftol, the bracket is narrower than xtol, or the midpoint is no
/// longer representable. `geometric` bisects at sqrt(lo * hi) (lo > 0).
inline double bisect(const std::function<double(double)>& fn, double lo, double hi, double xtol, double ftol,
                     bool geometric = false) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (sign_of(flo) == sign_of(fhi)) {
    throw NoRoot(fmt::format("no sign change on [{:.17g}, {:.17g}]: f = {:.3e}, {:.3e}", lo, hi, flo, fhi));
  }
  for (int it = 0; it < 4000; ++it) {
    const double mid = geometric && hi / lo > 4.0 ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    const double scale = geometric ? lo : std::max(1.0, std::abs(lo));
    if (hi - lo <= xtol * scale && std::min(std::abs(flo), std::abs(fhi)) <= ftol) break;
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

/// Golden-section minimisation of fn on [a, b]; returns (argmin, min).
inline std::pair<double, double> golden_min(const std::function<double(double)>& fn, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
    if (!(c < d)) break;
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace subgauss::detail
