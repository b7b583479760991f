#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netadopt/degree_dist.hpp"
#include "netadopt/game.hpp"
#include "netadopt/io_util.hpp"

namespace netadopt {

/** Per-degree early-adoption probabilities, defined on the support of the
 * degree distribution the strategy was built for. */
struct MeanFieldStrategy {
    std::vector<int> degrees;  // ascending, mirrors the distribution support
    std::vector<double> mu;    // values in [0,1]

    double at(int degree) const;
};

/** A mean-field equilibrium: the strategy, its informational access, and the
 * double-threshold labels.  d_lower/d_upper use 0 and kDegreeInf sentinels;
 * full early adoption (alpha = 1) is labeled d_lower = d_upper = kDegreeInf.
 */
struct MeanFieldEquilibrium {
    MeanFieldStrategy strategy;
    double alpha_star = 0.0;
    int d_lower = 0;
    int d_upper = kDegreeInf;
    std::vector<std::pair<int, double>> mixing;  // degrees with interior mu
};

struct SolverOptions {
    double alpha_tol = 1e-10;
    int max_iterations = 200;
    double indiff_tol = kIndiffTol;
};

/// Raised when the fixed-point iteration cannot pin alpha* down to tolerance
/// or the assembled strategy fails the consistency check.
struct SolveError : std::runtime_error {
    SolveError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg + " (bracket [" + format_real(lo) + ", " +
                             format_real(hi) + "])"),
          bracket_lo(lo),
          bracket_hi(hi) {}
    double bracket_lo;
    double bracket_hi;
};

/** Computes the mean-field equilibrium for a policy and degree distribution.
 *
 * The neighbor adoption probability alpha* is the unique fixed point of the
 * best-response mass: both Phi_max(a) = sum of edge-perspective mass with
 * delta_payoff(a,d) >= 0 and its strict-> variant are nonincreasing in a, so
 * alpha* = sup { a : Phi_max(a) >= a } is found by bisection.  Strategy
 * weights at indifferent degrees are then filled in ascending degree order
 * until the edge-perspective mass of early adopters meets alpha*.
 *
 * When a_bar - P0 >= p*(A1H - P1) every agent weakly prefers adopting at
 * alpha = 1 and the solver returns that corner directly.
 */
MeanFieldEquilibrium solve_equilibrium(const GameParams& params,
                                       const PricingPolicy& policy,
                                       const DegreeDistribution& f,
                                       const SolverOptions& opts = {});

/// The stored (d_lower, d_upper) pair.
std::pair<int, int> thresholds(const MeanFieldEquilibrium& eq);

/// alpha(mu): probability that a random neighbor adopts early.
double informational_access(const MeanFieldStrategy& mu,
                            const EdgePerspectiveDistribution& f_tilde);

/// beta(mu): population fraction adopting early.
double early_fraction(const MeanFieldStrategy& mu, const DegreeDistribution& f);

/// alpha(mu)/beta(mu); empty when beta = 0.
std::optional<double> informational_efficiency(const MeanFieldStrategy& mu,
                                               const DegreeDistribution& f);

/// CSV: '#'-prefixed alpha_star/d_L/d_U lines, then degree,mu,delta_payoff.
std::string equilibrium_csv(const MeanFieldEquilibrium& eq,
                            const GameParams& params,
                            const PricingPolicy& policy,
                            const DegreeDistribution& f);

/** Classifies every integer degree 1..d_top against alpha and assigns the
 * double-threshold labels.  Exposed for reuse by the profit and optimizer
 * search paths; labels follow the convention above. */
std::pair<int, int> label_thresholds(const std::vector<Action>& actions_1_to_dtop);

}  // namespace netadopt
