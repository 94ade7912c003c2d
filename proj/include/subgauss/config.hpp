#pragma once

#include <cstdint>

namespace subgauss {

/// Switch-over between the closed forms and the cumulant series that fills
/// the removable singularity of g at t = 0.
struct SeriesPolicy {
  double seam = 1e-2;  ///< series is used for |t| < seam
  int order = 8;       ///< highest power of t retained in the series of g

  /// Throws DomainError unless seam > 0 and order is even in [6, 16].
  void validate() const;
};

/// Tolerances, brackets and grid sizes for every numeric routine.
/// Defaults reproduce the documented behaviour; every field may be overridden.
struct SolverConfig {
  SeriesPolicy series;

  double root_tol = 1e-12;        ///< residual target for scalar root finders
  double t_tol = 1e-12;           ///< abscissa tolerance of golden-section searches
  double band = 1e-9;             ///< indeterminate band for the A, B, D expressions
  double band_p = 1e-7;           ///< indeterminate band |p2 - gamma(p1)|
  double zero_tol = 1e-12;        ///< relative zero threshold in sign patterns
  double dip_tol = 1e-12;         ///< relative threshold for a negative interior minimum of f
  double bracket_shrink = 1e-9;   ///< relative shrink of open brackets
  double t_max = 60.0;            ///< tail cut-off for abscissa scans
  int mid_scan = 512;             ///< scan points for the minimum of f on [t*/2, t*]
  int gamma_prescan = 64;         ///< p2 samples for crossing detection in gamma_solve
  int oracle_points = 2048;       ///< base points of the unimodality sign grid
  double refine_width = 1e-10;    ///< width to which sign changes are bracketed
  int newton_max_iter = 40;
  std::uint64_t seed = 20240601;  ///< seed for randomised sweeps

  void validate() const;
};

}  // namespace subgauss
