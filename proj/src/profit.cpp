#include "netadopt/profit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "search_util.hpp"

namespace netadopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct PatternValue {
    double beta = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    double total = kNegInf;
};

// Profit functional of a fixed adoption pattern held at informational access
// alpha.  A late price above A1H shuts down late adoption (and with it every
// referral payment).
PatternValue pattern_value(const GameParams& params, const PricingPolicy& policy,
                           const DegreeDistribution& f, const std::vector<double>& mu,
                           double alpha) {
    PatternValue v;
    const bool late_active = policy.p1 <= params.a1_high;
    double gamma = 0.0, phi = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const int d = f.degrees()[i];
        v.beta += f.probs()[i] * mu[i];
        gamma += f.probs()[i] * (1.0 - mu[i]) * (1.0 - std::pow(1.0 - alpha, d));
        phi += f.probs()[i] * mu[i] *
               expected_capped_referrals(d, 1.0 - alpha, policy.referral_cap);
    }
    v.gamma = late_active ? gamma : 0.0;
    v.phi = late_active ? phi : 0.0;
    const double scale = policy.monopolist_informed ? 1.0 : params.prior_high;
    v.total = v.beta * policy.p0 + scale * (v.gamma * policy.p1 - v.phi * policy.eta);
    return v;
}

}  // namespace

double late_adopter_fraction(const MeanFieldEquilibrium& eq, const DegreeDistribution& f) {
    double gamma = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        gamma += f.probs()[i] * (1.0 - eq.strategy.mu[i]) *
                 (1.0 - std::pow(1.0 - eq.alpha_star, f.degrees()[i]));
    return gamma;
}

double expected_referral_payments(const MeanFieldEquilibrium& eq,
                                  const DegreeDistribution& f, std::optional<int> cap) {
    double phi = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        phi += f.probs()[i] * eq.strategy.mu[i] *
               expected_capped_referrals(f.degrees()[i], 1.0 - eq.alpha_star, cap);
    return phi;
}

ProfitBreakdown profit_at_policy(const GameParams& params, const PricingPolicy& policy,
                                 const DegreeDistribution& f, const SolverOptions& opts) {
    const MeanFieldEquilibrium eq = solve_equilibrium(params, policy, f, opts);
    const bool late_active = policy.p1 <= params.a1_high;
    ProfitBreakdown pb;
    pb.beta = early_fraction(eq.strategy, f);
    pb.gamma_high = late_active ? late_adopter_fraction(eq, f) : 0.0;
    pb.phi_high =
        late_active ? expected_referral_payments(eq, f, policy.referral_cap) : 0.0;
    const double scale = policy.monopolist_informed ? 1.0 : params.prior_high;
    pb.revenue_early = pb.beta * policy.p0;
    pb.revenue_late = scale * pb.gamma_high * policy.p1;
    pb.referral_cost = scale * pb.phi_high * policy.eta;
    pb.total = pb.revenue_early + pb.revenue_late - pb.referral_cost;
    return pb;
}

LimitProfit limit_profit(const GameParams& params, const PricingPolicy& policy,
                         const DegreeDistribution& f, PatternClass pattern_class) {
    policy.validate();
    const EdgePerspectiveDistribution f_tilde = edge_perspective(f);
    const std::size_t n = f.size();
    const double tol = kIndiffTol;

    std::vector<double> prefix_t(n + 1, 0.0);  // edge mass of degrees below index
    for (std::size_t i = 0; i < n; ++i) prefix_t[i + 1] = prefix_t[i] + f_tilde.probs()[i];

    // Weak best response of the whole pattern at its own alpha.
    auto verified = [&](const std::vector<double>& mu, double alpha) {
        for (std::size_t i = 0; i < n; ++i) {
            const double delta = delta_payoff(params, policy, alpha, f.degrees()[i]);
            if (mu[i] >= 1.0 - 1e-12) {
                if (delta < -tol) return false;
            } else if (mu[i] <= 1e-12) {
                if (delta > tol) return false;
            } else if (std::abs(delta) > tol) {
                return false;
            }
        }
        return true;
    };

    LimitProfit result;
    double best = kNegInf;
    bool any = false;

    auto consider = [&](const std::vector<double>& mu, double alpha) {
        if (!verified(mu, alpha)) return;
        const double total = pattern_value(params, policy, f, mu, alpha).total;
        any = true;
        if (total > best) best = total;
    };

    std::vector<double> mu(n, 0.0);
    // Pattern structure: support indices [0,i) adopt, [j,n) adopt, the rest
    // defer except at most one mixing index m in [i,j).
    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t j_min = i;
        for (std::size_t j = j_min; j <= n; ++j) {
            if (pattern_class == PatternClass::lower_threshold && j != n) continue;
            auto base_mu = [&] {
                for (std::size_t k = 0; k < n; ++k) mu[k] = (k < i || k >= j) ? 1.0 : 0.0;
            };
            const double base_alpha = prefix_t[i] + (prefix_t[n] - prefix_t[j]);

            base_mu();
            consider(mu, base_alpha);  // no mixing

            std::vector<std::size_t> mix_candidates;
            if (i < j) {
                mix_candidates.push_back(i);
                // The upper valley end may mix only when upper thresholds are
                // admissible at all.
                if (j - 1 != i && pattern_class == PatternClass::all_double_threshold)
                    mix_candidates.push_back(j - 1);
            }
            for (std::size_t m : mix_candidates) {
                const double tm = f_tilde.probs()[m];
                if (tm <= 0.0) continue;
                const int dm = f.degrees()[m];
                auto alpha_of = [&](double w) { return base_alpha + tm * w; };
                auto gap = [&](double w) {
                    return delta_payoff(params, policy, alpha_of(w), dm);
                };
                const double g0 = gap(0.0), g1 = gap(1.0);
                auto consider_w = [&](double w) {
                    base_mu();
                    mu[m] = w;
                    consider(mu, alpha_of(w));
                };
                if (std::abs(g0) <= tol && std::abs(g1) <= tol) {
                    // The mixing degree is indifferent over the whole weight
                    // range (surplus-extracting corner policy): scan the
                    // profit itself, then refine around the best cell.
                    result.knife_edge = true;
                    const int grid = 10000;
                    double best_w = 0.0, best_val = kNegInf;
                    for (int g = 0; g <= grid; ++g) {
                        const double w = static_cast<double>(g) / grid;
                        base_mu();
                        mu[m] = w;
                        if (!verified(mu, alpha_of(w))) continue;
                        const double val =
                            pattern_value(params, policy, f, mu, alpha_of(w)).total;
                        if (val > best_val) { best_val = val; best_w = w; }
                    }
                    if (best_val > kNegInf) {
                        const double span = 1.0 / grid;
                        auto profit_w = [&](double w) {
                            base_mu();
                            mu[m] = w;
                            if (!verified(mu, alpha_of(w))) return kNegInf;
                            return pattern_value(params, policy, f, mu, alpha_of(w)).total;
                        };
                        auto [w_ref, val_ref] = detail::golden_max(
                            profit_w, std::max(0.0, best_w - span),
                            std::min(1.0, best_w + span), 1e-10);
                        consider_w(best_w);
                        consider_w(w_ref);
                        (void)val_ref;
                    }
                } else if (g0 >= -tol && g1 <= tol) {
                    // delta_payoff falls in alpha, so the indifference point
                    // in w is unique; bisect it out.
                    double wl = 0.0, wh = 1.0;
                    for (int step = 0; step < 100 && wh - wl > 1e-14; ++step) {
                        const double wm = 0.5 * (wl + wh);
                        if (gap(wm) >= 0.0)
                            wl = wm;
                        else
                            wh = wm;
                    }
                    consider_w(0.5 * (wl + wh));
                    consider_w(wl);
                }
            }
        }
    }

    // The solver's own equilibrium is always a weak-best-response pattern;
    // keeping it as a candidate makes the enumeration robust at corners.
    if (pattern_class == PatternClass::all_double_threshold) {
        try {
            const MeanFieldEquilibrium eq = solve_equilibrium(params, policy, f);
            consider(eq.strategy.mu, eq.alpha_star);
        } catch (const SolveError&) {
        }
    }

    result.value = any ? best : 0.0;
    return result;
}

double welfare(const GameParams& params, const MeanFieldEquilibrium& eq,
               const DegreeDistribution& f, Quality theta) {
    const double beta = early_fraction(eq.strategy, f);
    if (theta == Quality::low) return beta * params.a0_low;
    const double gamma = late_adopter_fraction(eq, f);
    return beta * (params.a0_high + params.a1_high) + gamma * params.a1_high;
}

std::string profit_sweep_row(double param, const ProfitBreakdown& pb) {
    std::ostringstream out;
    out << format_real(param) << "," << format_real(pb.beta) << ","
        << format_real(pb.gamma_high) << "," << format_real(pb.phi_high) << ","
        << format_real(pb.total) << "\n";
    return out.str();
}

}  // namespace netadopt
