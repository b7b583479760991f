#pragma once

#include <optional>
#include <string>

#include "netadopt/degree_dist.hpp"
#include "netadopt/equilibrium.hpp"
#include "netadopt/game.hpp"

namespace netadopt {

enum class Quality { high, low };

/** Per-capita profit components at an equilibrium.  gamma_high and phi_high
 * are the high-quality-state late-adopter fraction and expected referral
 * count; both are zero in the low state.  For an uninformed monopolist the
 * revenue_late and referral_cost fields carry the prior-weighted expected
 * values so that total = revenue_early + revenue_late - referral_cost always
 * holds exactly.
 */
struct ProfitBreakdown {
    double beta = 0.0;
    double gamma_high = 0.0;
    double phi_high = 0.0;
    double revenue_early = 0.0;
    double revenue_late = 0.0;
    double referral_cost = 0.0;
    double total = 0.0;
};

/// Fraction of agents who defer and end up informed when the quality is
/// high: sum over d of f(d) * (1 - mu(d)) * (1 - (1-alpha)^d).
double late_adopter_fraction(const MeanFieldEquilibrium& eq,
                             const DegreeDistribution& f);

/// Expected number of referral payments per capita when the quality is high.
double expected_referral_payments(const MeanFieldEquilibrium& eq,
                                  const DegreeDistribution& f,
                                  std::optional<int> cap);

/// Solves the equilibrium under the policy and evaluates the profit
/// components.  A late price above A1H shuts down late adoption, so gamma
/// and phi are zero in that case.
ProfitBreakdown profit_at_policy(const GameParams& params,
                                 const PricingPolicy& policy,
                                 const DegreeDistribution& f,
                                 const SolverOptions& opts = {});

/** Which adoption patterns a limit-profit evaluation may range over.
 *
 * lower_threshold restricts to patterns reachable with the referral fee held
 * at zero (two-price policies: low degrees adopt, high degrees defer);
 * all_double_threshold admits every double-threshold pattern, matching limits
 * where the referral fee may approach from above.
 */
enum class PatternClass { lower_threshold, all_double_threshold };

struct LimitProfit {
    double value = 0.0;
    /// True when some adoption weight was pinned down only by the limit
    /// convention (a degree indifferent over the whole weight range), as at
    /// surplus-extracting corner policies.
    bool knife_edge = false;
};

/** Profit at a policy under the limit convention: prices are approached from
 * below and the referral fee from above, which resolves consumer
 * indifference in the seller's favor.  Realized constructively: enumerate
 * double-threshold patterns with at most one mixing degree that are weak
 * best responses at the policy itself, and take the supremum of the profit
 * functional over them.  Intended for desk-scale supports; cost grows with
 * the square of the support size.
 */
LimitProfit limit_profit(const GameParams& params, const PricingPolicy& policy,
                         const DegreeDistribution& f,
                         PatternClass pattern_class = PatternClass::all_double_threshold);

/// Consumption value per capita; prices and referral fees are transfers and
/// net out.  theta = high: beta*(A0H+A1H) + gamma_H*A1H; low: beta*A0L.
double welfare(const GameParams& params, const MeanFieldEquilibrium& eq,
               const DegreeDistribution& f, Quality theta);

/// CSV row block "param,beta,gamma_H,phi_H,profit" for one sweep point.
std::string profit_sweep_row(double param, const ProfitBreakdown& pb);

}  // namespace netadopt
