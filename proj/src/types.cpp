#include "subgauss/types.hpp"

#include <fmt/format.h>

namespace subgauss {

ProbParam::ProbParam(double p) : p_(p) {
  if (!std::isfinite(p) || p < -kSlack || p > 1.0 + kSlack) {
    throw DomainError(fmt::format("probability {} outside [0, 1]", p));
  }
  if (p_ < 0.0) p_ = 0.0;
  if (p_ > 1.0) p_ = 1.0;
}

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::inside:
      return "inside";
    case Membership::outside:
      return "outside";
    case Membership::band:
      return "band";
  }
  return "band";
}

Membership classify_sign(double value, double band, bool inside_if_negative) noexcept {
  if (std::isnan(value)) return Membership::band;
  if (std::abs(value) <= band) return Membership::band;
  const bool negative = value < 0.0;
  return negative == inside_if_negative ? Membership::inside : Membership::outside;
}

double one_minus_sum(double p1, double p2) noexcept {
  // 1 - p is exact for p >= 1/2, and the final subtraction is exact when the
  // operands are close.
  if (p1 >= p2) return (1.0 - p1) - p2;
  return (1.0 - p2) - p1;
}

double log_odds(double p) noexcept {
  if (p <= 0.5) return std::log1p((1.0 - 2.0 * p) / p);
  return -std::log1p((2.0 * p - 1.0) / (1.0 - p));
}

}  // namespace subgauss
