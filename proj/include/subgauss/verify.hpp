#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subgauss/config.hpp"
#include "subgauss/types.hpp"

namespace subgauss {

enum class Direction { up, down };  ///< up: - to +, down: + to -

struct SignChange {
  double lo;
  double hi;
  Direction direction;
};

struct SignPattern {
  std::vector<double> grid;
  std::vector<int> signs;  ///< -1, 0, +1
  std::vector<SignChange> changes;
};

struct UnimodalityResult {
  bool unimodal = false;
  SignPattern pattern;
  std::optional<double> mode;
};

/// Sign analysis of a derivative on a graded grid. `centres` are abscissas
/// around which the grid is clustered, `t_min`/`t_max` the tail extent.
/// A sample counts as zero when |value| is within zero_tol of the largest
/// sampled |value| or within `noise(t)`, if given.
UnimodalityResult sign_oracle(const std::function<double(double)>& deriv, const std::vector<double>& centres,
                              double t_min, double t_max, const SolverConfig& cfg,
                              const std::function<double(double)>& noise = {});

UnimodalityResult unimodality_oracle(const ParamPair& pair, const SolverConfig& cfg = {});
UnimodalityResult unimodality_oracle(ProbParam p, const SolverConfig& cfg = {});

/// Some t > t* with g'(t) > 0, searched on a graded grid beyond t*.
std::optional<double> positive_slope_witness(const ParamPair& pair, const SolverConfig& cfg = {});

struct KsCheck {
  double max_excess = 0.0;
  double argmax_t = 0.0;
  double excess_at_t_star = 0.0;
};

/// max over t in [-t_range, t_range] (n points plus t*) of
/// log E exp(tX) - c t^2, with log E exp(tX) summed over the atoms.
KsCheck ks_check(const ParamPair& pair, const SolverConfig& cfg = {}, int n = 2048, double t_range = 30.0);
KsCheck ks_check(ProbParam p, const SolverConfig& cfg = {}, int n = 2048, double t_range = 30.0);

enum class FdTarget { g_scalar_1, g_pair_1, f_scalar_1, f_scalar_2, f_scalar_3, f_pair_1, f_pair_2, f_pair_3 };

std::string_view to_string(FdTarget t) noexcept;

struct FdPoint {
  ParamPair pair;  ///< p2 ignored for scalar targets
  double t;
};

/// Worst relative error of the analytic derivative against a Richardson
/// extrapolated central difference of the next lower order (step h).
/// Errors are relative to max(|analytic|, 1e-3 max(1, |F(t)|)).
double fd_check(FdTarget target, const std::vector<FdPoint>& points, double h = 1e-5,
                const SolverConfig& cfg = {});

enum class CheckStatus { confirmed, discrepant, inconclusive };

std::string_view to_string(CheckStatus s) noexcept;

struct Check {
  std::string name;
  std::string location;
  CheckStatus status = CheckStatus::inconclusive;
  double max_error = 0.0;
  std::vector<std::pair<std::string, double>> witnesses;
  bool asserted = true;  ///< counts towards pass/fail

  bool passed() const noexcept { return !asserted || status == CheckStatus::confirmed; }
};

struct ConsistencyReport {
  std::vector<Check> checks;
  std::uint64_t seed = 0;

  bool passed() const noexcept;
  void append(const ConsistencyReport& other);
};

/// Interior grid of the triangle: p1 = (i + 1/2)/n, p2 = (j + 1/2)/n min(p1, 1 - p1).
std::vector<ParamPair> canonical_grid(int n);

struct RegionCounts {
  long points = 0;
  long skipped_band = 0;
  long d_not_c = 0;
  long c_not_b = 0;
  long b_not_a = 0;
  long d_not_a = 0;
};

/// Inclusion sweep over canonical_grid(n). Points where any membership is
/// in its band are skipped.
RegionCounts region_sweep(int n, const SolverConfig& cfg = {});

ConsistencyReport region_consistency(int grid_n, const SolverConfig& cfg = {});

/// Oracle against in_C on canonical_grid(n), band-excluded.
struct AgreementCounts {
  long points = 0;
  long skipped_band = 0;
  long disagreements = 0;
  std::vector<ParamPair> witnesses;
};

AgreementCounts oracle_agreement(int n, const SolverConfig& cfg = {});

ConsistencyReport core_suite(const SolverConfig& cfg = {});
ConsistencyReport regions_suite(int grid_n, const SolverConfig& cfg = {});
ConsistencyReport gamma_suite(int grid_n, const SolverConfig& cfg = {});
ConsistencyReport paper_consistency(const SolverConfig& cfg = {});

/// Closed form of the lower boundary of D, kept for comparison.
double delta_closed_form(double p1);

}  // namespace subgauss
