#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netadopt/degree_dist.hpp"
#include "netadopt/equilibrium.hpp"
#include "netadopt/game.hpp"
#include "netadopt/profit.hpp"

namespace netadopt {

enum class PolicyClass { two_price, referral, full };

struct OptimizerOptions {
    int price_grid = 400;    // points on the price axis, endpoints included
    int weight_grid = 1024;  // mixing-weight scan per adoption pattern
    int alpha_grid = 800;    // informational-access scan per price point
    double price_refine_tol = 1e-6;
    std::optional<int> referral_cap;
    bool monopolist_informed = true;
};

struct TraceEntry {
    PricingPolicy policy;
    int d_lower = 0;
    int d_upper = kDegreeInf;
    int mixing_degree = 0;  // 0 when the pattern has no interior weight
    double mixing_weight = 0.0;
    double profit = 0.0;
    bool feasible = true;
};

struct OptimizationResult {
    PricingPolicy best_policy;
    double best_profit = 0.0;
    MeanFieldEquilibrium equilibrium;  // adoption pattern sustained in the limit
    std::vector<TraceEntry> trace;
    std::string diagnostic;  // nonempty when no feasible pattern was found
};

/** Best two-price policy (eta = 0).  The surplus-extracting prices
 * (a_bar, A1H) are optimal within the class for every degree distribution,
 * so the search maximizes the limit-profit functional over lower-threshold
 * adoption patterns at those prices.
 */
OptimizationResult optimize_two_price(const GameParams& params,
                                      const DegreeDistribution& f,
                                      const OptimizerOptions& opts = {});

/** Best referral policy (P0 = P1 = P, eta >= 0).  For each price on the grid
 * the inner search sweeps the informational access alpha; the adoption
 * pattern and the fee eta follow from the marginal degree's indifference
 * (degrees activate in order of the fee each requires, so the pattern at a
 * given alpha is the one whose early-adopter mass crosses alpha).  The best
 * price is then refined by golden section.  With a referral cap the required
 * fee is no longer monotone in degree and triple-threshold patterns arise
 * naturally from the same activation ordering.
 */
OptimizationResult optimize_referral(const GameParams& params,
                                     const DegreeDistribution& f,
                                     const OptimizerOptions& opts = {});

/** Best unrestricted policy (P0, P1, eta).  Scans P1 on a grid; for each
 * double-threshold pattern with one mixing degree the marginal-degree
 * indifference pins P0 as a function of eta, profit is linear in eta, and
 * the remaining weak best responses bound eta to an interval, so the inner
 * problem is solved at an interval endpoint (either the second marginal
 * degree's indifference or eta = 0).  Intended for small supports.
 */
OptimizationResult optimize_full(const GameParams& params,
                                 const DegreeDistribution& f,
                                 const OptimizerOptions& opts = {});

/// optimize_referral with a cap on the number of referral payments.
OptimizationResult optimize_capped_referral(const GameParams& params,
                                            const DegreeDistribution& f,
                                            int referral_cap,
                                            const OptimizerOptions& opts = {});

/// CSV: P0,P1,eta,d_L,d_U,mixing_degree,mixing_weight,profit.
std::string trace_csv(const OptimizationResult& result);

}  // namespace netadopt
