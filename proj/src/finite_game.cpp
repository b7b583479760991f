#include "netadopt/finite_game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "netadopt/io_util.hpp"

namespace netadopt {

namespace {

constexpr double kDeviationTol = 1e-12;

double capped(int count, const std::optional<int>& cap) {
    if (!cap) return static_cast<double>(count);
    return static_cast<double>(std::min(count, *cap));
}

// Expected payoff (over the quality state) of an early adopter with
// late_neighbors neighbors who deferred; when the quality is high each of
// them learns from this agent and adopts, earning a referral.
double early_payoff(const GameParams& g, const PricingPolicy& pol, int late_neighbors) {
    const double refs = capped(late_neighbors, pol.referral_cap);
    return g.a_bar - pol.p0 + g.prior_high * pol.eta * refs;
}

// Expected payoff of a deferring agent who is informed iff some neighbor
// adopted early; a rational informed agent buys late only at a price within
// the high value.
double defer_payoff(const GameParams& g, const PricingPolicy& pol, bool informed) {
    if (!informed) return 0.0;
    return g.prior_high * std::max(g.a1_high - pol.p1, 0.0);
}

std::vector<double> complete_payoffs(int n, int adopters, const GameParams& g,
                                     const PricingPolicy& pol) {
    std::vector<double> payoffs(static_cast<std::size_t>(n));
    const double early = early_payoff(g, pol, n - adopters);
    const double late = defer_payoff(g, pol, adopters >= 1);
    for (int i = 0; i < n; ++i)
        payoffs[static_cast<std::size_t>(i)] = i < adopters ? early : late;
    return payoffs;
}

bool complete_is_nash(int n, int adopters, const GameParams& g, const PricingPolicy& pol) {
    if (adopters >= 1) {
        const double now = early_payoff(g, pol, n - adopters);
        const double dev = defer_payoff(g, pol, adopters - 1 >= 1);
        if (dev > now + kDeviationTol) return false;
    }
    if (adopters < n) {
        const double now = defer_payoff(g, pol, adopters >= 1);
        const double dev = early_payoff(g, pol, n - adopters - 1);
        if (dev > now + kDeviationTol) return false;
    }
    return true;
}

}  // namespace

std::vector<ProfileOutcome> enumerate_profiles(Topology topology, int n,
                                               const GameParams& params,
                                               const PricingPolicy& policy) {
    policy.validate();
    if (n < 2) throw std::invalid_argument("finite game needs n >= 2");
    std::vector<ProfileOutcome> out;

    if (topology == Topology::complete) {
        if (n > 20) throw std::invalid_argument("complete-network enumeration capped at n = 20");
        // Symmetry: one representative per early-adopter count (first k adopt).
        for (int k = 0; k <= n; ++k) {
            ProfileOutcome po;
            po.adopt_early.assign(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < k; ++i) po.adopt_early[static_cast<std::size_t>(i)] = 1;
            po.payoffs = complete_payoffs(n, k, params, policy);
            po.is_nash = complete_is_nash(n, k, params, policy);
            out.push_back(std::move(po));
        }
        return out;
    }

    if (n > 12) throw std::invalid_argument("star-network enumeration capped at n = 12");
    // Agent n-1 (last index) is the center; the periphery only sees the center.
    const int periph = n - 1;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        ProfileOutcome po;
        po.adopt_early.assign(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            po.adopt_early[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
        const bool center_early = po.adopt_early[static_cast<std::size_t>(periph)] != 0;
        int periph_early = 0;
        for (int i = 0; i < periph; ++i) periph_early += po.adopt_early[static_cast<std::size_t>(i)];

        po.payoffs.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < periph; ++i) {
            po.payoffs[static_cast<std::size_t>(i)] =
                po.adopt_early[static_cast<std::size_t>(i)]
                    ? early_payoff(params, policy, center_early ? 0 : 1)
                    : defer_payoff(params, policy, center_early);
        }
        po.payoffs[static_cast<std::size_t>(periph)] =
            center_early ? early_payoff(params, policy, periph - periph_early)
                         : defer_payoff(params, policy, periph_early >= 1);

        po.is_nash = true;
        for (int i = 0; i < n && po.is_nash; ++i) {
            double dev;
            if (i < periph) {
                dev = po.adopt_early[static_cast<std::size_t>(i)]
                          ? defer_payoff(params, policy, center_early)
                          : early_payoff(params, policy, center_early ? 0 : 1);
            } else {
                dev = center_early ? defer_payoff(params, policy, periph_early >= 1)
                                   : early_payoff(params, policy, periph - periph_early);
            }
            if (dev > po.payoffs[static_cast<std::size_t>(i)] + kDeviationTol)
                po.is_nash = false;
        }
        out.push_back(std::move(po));
    }
    // Lexicographic order over profiles (deferring first).
    std::sort(out.begin(), out.end(), [](const ProfileOutcome& a, const ProfileOutcome& b) {
        return a.adopt_early < b.adopt_early;
    });
    return out;
}

std::vector<ProfileOutcome> enumerate_pure_nash(Topology topology, int n,
                                                const GameParams& params,
                                                const PricingPolicy& policy) {
    std::vector<ProfileOutcome> all = enumerate_profiles(topology, n, params, policy);
    std::vector<ProfileOutcome> nash;
    for (auto& po : all)
        if (po.is_nash) nash.push_back(std::move(po));
    return nash;
}

MixedSolution symmetric_mixed_complete(int n, const GameParams& params,
                                       const PricingPolicy& policy) {
    policy.validate();
    if (n < 2) throw std::invalid_argument("complete network needs n >= 2");
    const int d = n - 1;
    auto gap = [&](double w) {
        const double refs = expected_capped_referrals(d, 1.0 - w, policy.referral_cap);
        const double adopt = params.a_bar - policy.p0 +
                             params.prior_high * policy.eta * refs;
        const double defer = params.prior_high * (params.a1_high - policy.p1) *
                             (1.0 - std::pow(1.0 - w, d));
        return adopt - defer;
    };
    if (gap(0.0) <= 0.0) return {0.0, false};
    if (gap(1.0) >= 0.0) return {1.0, false};
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), true};
}

StarMixedProfile star_mixed_profile(int n, const GameParams& params,
                                    const PricingPolicy& policy) {
    policy.validate();
    if (n < 3) throw std::invalid_argument("star network needs n >= 3");
    StarMixedProfile profile;

    // Center indifference depends only on the periphery weight w'.
    auto center_gap = [&](double wp) {
        const double refs = expected_capped_referrals(n - 1, 1.0 - wp, policy.referral_cap);
        return params.a_bar - policy.p0 + params.prior_high * policy.eta * refs -
               params.prior_high * (params.a1_high - policy.p1) *
                   (1.0 - std::pow(1.0 - wp, n - 1));
    };
    // Periphery indifference depends only on the center weight w.
    auto periph_gap = [&](double w) {
        const double refs = expected_capped_referrals(1, 1.0 - w, policy.referral_cap);
        return params.a_bar - policy.p0 + params.prior_high * policy.eta * refs -
               params.prior_high * (params.a1_high - policy.p1) * w;
    };

    auto root = [](auto&& gap) -> std::optional<double> {
        const double g0 = gap(0.0), g1 = gap(1.0);
        if (g0 == 0.0) return 0.0;
        if (g1 == 0.0) return 1.0;
        if ((g0 > 0.0) == (g1 > 0.0)) return std::nullopt;
        double lo = 0.0, hi = 1.0;
        const bool falling = g0 > 0.0;
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g = gap(mid);
            if ((falling && g >= 0.0) || (!falling && g <= 0.0))
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    profile.periphery_weight = root(center_gap);
    profile.center_weight = root(periph_gap);
    return profile;
}

std::string finite_csv(Topology topology, int n, const std::vector<ProfileOutcome>& profiles) {
    std::ostringstream out;
    out << "topology,n,profile,is_nash,payoff_vector\n";
    const char* topo = topology == Topology::complete ? "complete" : "star";
    for (const auto& po : profiles) {
        out << topo << "," << n << ",";
        for (auto a : po.adopt_early) out << (a ? '1' : '0');
        out << "," << (po.is_nash ? 1 : 0) << ",";
        for (std::size_t i = 0; i < po.payoffs.size(); ++i) {
            if (i) out << ';';
            out << format_real(po.payoffs[i]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace netadopt
