#pragma once

#include <optional>
#include <string>

namespace netadopt {

/// Tolerance separating floating-point noise from true payoff indifference.
inline constexpr double kIndiffTol = 1e-9;

/** Diagnostic values for the payoff restrictions on a parameter set.
 *
 * assumption1: expected second-period value of an uninformed agent is
 * negative, p*A1H + (1-p)*A1L < 0 (learning matters).
 * assumption2: a_bar < p*A1H and p*A0H + (1-p)*A0L < 0 (early adoption is
 * never a dominant choice absent incentives).
 */
struct ParamsAudit {
    double uninformed_late_value = 0.0;  // p*A1H + (1-p)*A1L
    double a_bar = 0.0;                  // p*(A0H+A1H) + (1-p)*A0L
    double informed_late_bound = 0.0;    // p*A1H
    double early_expected_value = 0.0;   // p*A0H + (1-p)*A0L
    bool signs_ok = false;
    bool assumption1_ok = false;
    bool assumption2_ok = false;
    bool ok() const { return signs_ok && assumption1_ok && assumption2_ok; }
};

ParamsAudit audit_game_params(double a0_high, double a1_high, double a0_low,
                              double a1_low, double prior_high);

/** Payoff constants of the adoption game.  Construction validates the sign
 * constraints and both payoff assumptions and throws std::invalid_argument
 * when violated.  a_bar = p*(A0H + A1H) + (1-p)*A0L is derived.
 */
struct GameParams {
    double a0_high;
    double a1_high;
    double a0_low;
    double a1_low;
    double prior_high;
    double a_bar;

    GameParams(double a0h, double a1h, double a0l, double a1l, double p);

    /// The default parameter set used throughout the numerical experiments.
    static GameParams baseline();
};

/** A dynamic pricing policy (P0, P1, eta).  P0 may be negative (the seller
 * can pay early adopters); P1 and eta must be nonnegative.  referral_cap, if
 * set, bounds the number of referral payments a single early adopter can
 * collect.  monopolist_informed selects whether profit is computed knowing
 * the quality is high or in expectation over the prior.
 */
struct PricingPolicy {
    double p0 = 0.0;
    double p1 = 0.0;
    double eta = 0.0;
    std::optional<int> referral_cap;
    bool monopolist_informed = true;

    void validate() const;  // throws std::invalid_argument
};

/// E[min(Binomial(d, success), cap)]; the linear value success*d when the cap
/// is absent or >= d.  Exact summation for d <= 64, log-gamma terms above.
double expected_capped_referrals(int d, double success, std::optional<int> cap);

/// Expected payoff of adopting at t=0 for a degree-d agent when each
/// neighbor independently adopts early with probability alpha.
double payoff_adopt(const GameParams& params, const PricingPolicy& policy,
                    double alpha, int d);

/// Expected payoff of deferring: adopt at t=1 only if informed and the
/// quality is high.
double payoff_defer(const GameParams& params, const PricingPolicy& policy,
                    double alpha, int d);

double delta_payoff(const GameParams& params, const PricingPolicy& policy,
                    double alpha, int d);

enum class Action { adopt, defer, indifferent };

Action best_response(const GameParams& params, const PricingPolicy& policy,
                     double alpha, int d, double tol = kIndiffTol);

std::string to_string(Action a);

}  // namespace netadopt
