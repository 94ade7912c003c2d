#include "subgauss/config.hpp"

#include <cmath>

#include <fmt/format.h>

#include "subgauss/types.hpp"

namespace subgauss {

void SeriesPolicy::validate() const {
  if (!(seam > 0.0) || !std::isfinite(seam)) throw DomainError(fmt::format("series seam {} must be positive", seam));
  if (order < 6 || order > 16 || order % 2 != 0) {
    throw DomainError(fmt::format("series order {} must be even and within [6, 16]", order));
  }
}

void SolverConfig::validate() const {
  series.validate();
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(fmt::format("{} must be positive, got {}", name, v));
  };
  positive(root_tol, "root_tol");
  positive(t_tol, "t_tol");
  positive(band, "band");
  positive(band_p, "band_p");
  positive(zero_tol, "zero_tol");
  positive(dip_tol, "dip_tol");
  positive(bracket_shrink, "bracket_shrink");
  positive(t_max, "t_max");
  positive(refine_width, "refine_width");
  if (mid_scan < 8) throw DomainError("mid_scan must be at least 8");
  if (gamma_prescan < 4) throw DomainError("gamma_prescan must be at least 4");
  if (oracle_points < 64) throw DomainError("oracle_points must be at least 64");
  if (newton_max_iter < 1) throw DomainError("newton_max_iter must be at least 1");
}

}  // namespace subgauss
