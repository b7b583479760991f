#include "netadopt/game.hpp"

#include <cmath>
#include <stdexcept>

#include "netadopt/io_util.hpp"

namespace netadopt {

ParamsAudit audit_game_params(double a0_high, double a1_high, double a0_low,
                              double a1_low, double prior_high) {
    ParamsAudit audit;
    const double p = prior_high;
    audit.uninformed_late_value = p * a1_high + (1.0 - p) * a1_low;
    audit.a_bar = p * (a0_high + a1_high) + (1.0 - p) * a0_low;
    audit.informed_late_bound = p * a1_high;
    audit.early_expected_value = p * a0_high + (1.0 - p) * a0_low;
    audit.signs_ok = a0_high > 0.0 && a1_high > 0.0 && a0_low < 0.0 && a1_low < 0.0 &&
                     p > 0.0 && p < 1.0;
    audit.assumption1_ok = audit.uninformed_late_value < 0.0;
    audit.assumption2_ok =
        audit.a_bar < audit.informed_late_bound && audit.early_expected_value < 0.0;
    return audit;
}

GameParams::GameParams(double a0h, double a1h, double a0l, double a1l, double p)
    : a0_high(a0h), a1_high(a1h), a0_low(a0l), a1_low(a1l), prior_high(p),
      a_bar(p * (a0h + a1h) + (1.0 - p) * a0l) {
    const ParamsAudit audit = audit_game_params(a0h, a1h, a0l, a1l, p);
    if (!audit.signs_ok)
        throw std::invalid_argument(
            "game params need A0H>0, A1H>0, A0L<0, A1L<0 and p in (0,1)");
    if (!audit.assumption1_ok)
        throw std::invalid_argument("assumption 1 violated: p*A1H + (1-p)*A1L = " +
                                    format_real(audit.uninformed_late_value) + " >= 0");
    if (!audit.assumption2_ok)
        throw std::invalid_argument(
            "assumption 2 violated: need a_bar < p*A1H and p*A0H + (1-p)*A0L < 0");
}

GameParams GameParams::baseline() { return GameParams(10.0, 20.0, -10.0, -20.0, 0.4); }

void PricingPolicy::validate() const {
    if (p1 < 0.0)
        throw std::invalid_argument("second-period price must be nonnegative, got " +
                                    format_real(p1));
    if (eta < 0.0)
        throw std::invalid_argument("referral payment must be nonnegative, got " +
                                    format_real(eta));
    if (referral_cap && *referral_cap < 1)
        throw std::invalid_argument("referral cap must be >= 1");
    if (!std::isfinite(p0) || !std::isfinite(p1) || !std::isfinite(eta))
        throw std::invalid_argument("policy values must be finite");
}

double expected_capped_referrals(int d, double success, std::optional<int> cap) {
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    if (success < 0.0) success = 0.0;
    if (success > 1.0) success = 1.0;
    if (!cap || *cap >= d) return success * static_cast<double>(d);
    const int c = *cap;
    if (success == 0.0) return 0.0;
    if (success == 1.0) return static_cast<double>(c);

    // E[min(X, c)] = c - sum_{k<c} (c-k) P(X=k); only the low tail is needed.
    const double s = success, q = 1.0 - success;
    double shortfall = 0.0;
    if (d <= 64) {
        double binom = 1.0;  // C(d, k)
        for (int k = 0; k < c; ++k) {
            if (k > 0) binom *= static_cast<double>(d - k + 1) / static_cast<double>(k);
            shortfall += (c - k) * binom * std::pow(s, k) * std::pow(q, d - k);
        }
    } else {
        // Per-term log-gamma evaluation stays finite where the d<=64 product
        // of powers would underflow.
        const double lg_d1 = std::lgamma(static_cast<double>(d) + 1.0);
        const double log_s = std::log(s), log_q = std::log1p(-s);
        for (int k = 0; k < c; ++k) {
            const double log_pmf = lg_d1 - std::lgamma(static_cast<double>(k) + 1.0) -
                                   std::lgamma(static_cast<double>(d - k) + 1.0) +
                                   k * log_s + (d - k) * log_q;
            shortfall += (c - k) * std::exp(log_pmf);
        }
    }
    return static_cast<double>(c) - shortfall;
}

double payoff_adopt(const GameParams& params, const PricingPolicy& policy,
                    double alpha, int d) {
    const double referrals = expected_capped_referrals(d, 1.0 - alpha, policy.referral_cap);
    return params.a_bar - policy.p0 + policy.eta * params.prior_high * referrals;
}

double payoff_defer(const GameParams& params, const PricingPolicy& policy,
                    double alpha, int d) {
    const double informed = 1.0 - std::pow(1.0 - alpha, d);
    return params.prior_high * (params.a1_high - policy.p1) * informed;
}

double delta_payoff(const GameParams& params, const PricingPolicy& policy,
                    double alpha, int d) {
    return payoff_adopt(params, policy, alpha, d) - payoff_defer(params, policy, alpha, d);
}

Action best_response(const GameParams& params, const PricingPolicy& policy,
                     double alpha, int d, double tol) {
    const double delta = delta_payoff(params, policy, alpha, d);
    if (delta > tol) return Action::adopt;
    if (delta < -tol) return Action::defer;
    return Action::indifferent;
}

std::string to_string(Action a) {
    switch (a) {
        case Action::adopt: return "adopt";
        case Action::defer: return "defer";
        case Action::indifferent: return "indifferent";
    }
    return "?";
}

}  // namespace netadopt
