#pragma once

#include <vector>

#include "subgauss/config.hpp"
#include "subgauss/types.hpp"

// Evaluation of the log-Laplace transform of generalised Bernoulli and
// two-term Poisson-binomial variables, the normalised functions
//
//   g_p(t) = log E exp(tX) / t^2,      f_p(t) = t^3 g_p'(t),
//
// their pair sums, the maximising abscissa t* and the sharp constants.
//
// For |t| below the series seam g, g' and f^{(k)} come from the cumulant
// expansion; elsewhere from closed forms written in terms of
// expm1/log1p so that neither large |t| nor small |t| loses accuracy.

namespace subgauss {

double log_mgf_scalar(ProbParam p, double t);

/// g_p (order 0) or g_p' (order 1).
double g_scalar(ProbParam p, double t, int order = 0, const SeriesPolicy& policy = {});

/// k-th derivative (0..3) of f_p.
double f_scalar(ProbParam p, double t, int order = 0, const SeriesPolicy& policy = {});

/// Closed-form evaluation regardless of the seam (undefined at t = 0).
double g_scalar_direct(ProbParam p, double t, int order = 0);
/// Series evaluation regardless of the seam.
double g_scalar_series(ProbParam p, double t, int order = 0, const SeriesPolicy& policy = {});

/// Partial derivative with respect to p of f_p (order 0) or f_p' (order 1).
double f_scalar_dp(ProbParam p, double t, int order = 0);

/// 2 log((1-p)/p); +inf at p = 0 and -inf at p = 1.
Abscissa t_star_scalar(ProbParam p);

/// (1-2p) / (4 log((1-p)/p)), with the limit 1/8 at p = 1/2.
BoundConstant ks_const_scalar(ProbParam p);

/// f_p'(t*) = 2p - 1 + 2p(1-p) log((1-p)/p).
double r_frak(ProbParam p);

double log_mgf_pair(const ParamPair& pair, double t);
double g_pair(const ParamPair& pair, double t, int order = 0, const SeriesPolicy& policy = {});
double f_pair(const ParamPair& pair, double t, int order = 0, const SeriesPolicy& policy = {});
double g_pair_direct(const ParamPair& pair, double t, int order = 0);
double g_pair_series(const ParamPair& pair, double t, int order = 0, const SeriesPolicy& policy = {});

/// log[(1-p1)/p1 * (1-p2)/p2]. Infinite when a parameter sits at an
/// endpoint, NaN when one is 0 and the other 1.
Abscissa t_star_pair(const ParamPair& pair);

/// (1-p1-p2) / t*, with the limit [p1(1-p1) + p2(1-p2)]/2 on p1 + p2 = 1.
BoundConstant ks_const_pair(const ParamPair& pair);

struct Atom {
  double location;
  double probability;
};

/// Finitely supported distribution of a centred random variable.
struct AtomDistribution {
  std::vector<Atom> atoms;

  double total_probability() const;
  double mean() const;
  /// Throws DomainError if probabilities are negative, do not sum to one
  /// within 1e-15, or the mean differs from zero by more than 1e-14.
  void validate() const;
};

/// The three atoms of X1 + X2 with Xi ~ Ber(pi) independent.
AtomDistribution atoms_pair(const ParamPair& pair);

/// E exp(tX) summed directly over the atoms.
double mgf_pair(const ParamPair& pair, double t);

}  // namespace subgauss
