#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netadopt/profit.hpp"
#include "oracles.hpp"

using namespace netadopt;

TEST_CASE("late adopters and referral counts at the regular(1) equilibrium") {
    const GameParams g = GameParams::baseline();
    const PricingPolicy pol;
    const DegreeDistribution f = make_regular(1);
    const MeanFieldEquilibrium eq = solve_equilibrium(g, pol, f);

    CHECK(late_adopter_fraction(eq, f) == doctest::Approx(0.1875).epsilon(1e-8));
    CHECK(expected_referral_payments(eq, f, std::nullopt) ==
          doctest::Approx(0.1875).epsilon(1e-8));
    CHECK(expected_referral_payments(eq, f, 5) ==
          doctest::Approx(expected_referral_payments(eq, f, std::nullopt)));

    MeanFieldEquilibrium all_in = eq;
    all_in.strategy.mu = {1.0};
    all_in.alpha_star = 1.0;
    CHECK(late_adopter_fraction(all_in, f) == doctest::Approx(0.0));

    MeanFieldEquilibrium nobody = eq;
    nobody.strategy.mu = {0.0};
    nobody.alpha_star = 0.0;
    CHECK(late_adopter_fraction(nobody, f) == doctest::Approx(0.0));
    CHECK(expected_referral_payments(nobody, f, std::nullopt) == doctest::Approx(0.0));
}

TEST_CASE("profit decomposition identity") {
    oracles::InstanceGen gen(777u);
    for (int trial = 0; trial < 40; ++trial) {
        const GameParams g = gen.params();
        const DegreeDistribution f = gen.distribution();
        PricingPolicy pol = gen.policy(g);
        pol.monopolist_informed = trial % 2 == 0;
        const ProfitBreakdown pb = profit_at_policy(g, pol, f);
        CHECK(std::abs(pb.total - (pb.revenue_early + pb.revenue_late - pb.referral_cost)) <=
              1e-12);
        CHECK(pb.beta >= -1e-12);
        CHECK(pb.gamma_high >= -1e-12);
        CHECK(pb.phi_high >= -1e-12);
    }
}

TEST_CASE("profit at zero prices is zero; regular identity") {
    const GameParams g = GameParams::baseline();
    const ProfitBreakdown zero = profit_at_policy(g, PricingPolicy{}, make_regular(1));
    CHECK(zero.total == doctest::Approx(0.0));

    // On a d-regular network: total = a(P0 - eta(1-a)d) + (1-a)(1-(1-a)^d)P1.
    for (const int d : {2, 5, 9}) {
        PricingPolicy pol{1.0, 12.0, 0.8, std::nullopt, true};
        const DegreeDistribution f = make_regular(d);
        const MeanFieldEquilibrium eq = solve_equilibrium(g, pol, f);
        const double a = eq.alpha_star;
        const ProfitBreakdown pb = profit_at_policy(g, pol, f);
        const double want = a * (pol.p0 - pol.eta * (1.0 - a) * d) +
                            (1.0 - a) * (1.0 - std::pow(1.0 - a, d)) * pol.p1;
        CHECK(pb.total == doctest::Approx(want).epsilon(1e-9));

        PricingPolicy blind = pol;
        blind.monopolist_informed = false;
        const ProfitBreakdown un = profit_at_policy(g, blind, f);
        const double want_un = a * pol.p0 +
                               g.prior_high * ((1.0 - a) * (1.0 - std::pow(1.0 - a, d)) * pol.p1 -
                                               a * pol.eta * (1.0 - a) * d);
        CHECK(un.total == doctest::Approx(want_un).epsilon(1e-9));

        // Uninformed profit = first-period revenue + prior * second-period terms.
        CHECK(un.revenue_early == doctest::Approx(pb.revenue_early).epsilon(1e-9));
        CHECK(un.revenue_late == doctest::Approx(g.prior_high * pb.revenue_late).epsilon(1e-9));
        CHECK(un.referral_cost ==
              doctest::Approx(g.prior_high * pb.referral_cost).epsilon(1e-9));
    }
}

TEST_CASE("limit profit on regular(1) at the surplus-extracting prices") {
    const GameParams g = GameParams::baseline();
    PricingPolicy pol{6.0, 20.0, 0.0, std::nullopt, true};
    const LimitProfit lp = limit_profit(g, pol, make_regular(1));
    CHECK(lp.value == doctest::Approx(8.45).epsilon(1e-9));
    CHECK(lp.knife_edge);

    // Restricting to lower-threshold patterns changes nothing on one degree.
    const LimitProfit lower = limit_profit(g, pol, make_regular(1), PatternClass::lower_threshold);
    CHECK(lower.value == doctest::Approx(8.45).epsilon(1e-9));
}

TEST_CASE("limit profit is zero above the early surplus") {
    const GameParams g = GameParams::baseline();
    PricingPolicy pol{7.5, 14.0, 0.0, std::nullopt, true};
    CHECK(limit_profit(g, pol, make_two_degree(2, 6, 0.3)).value == doctest::Approx(0.0));
}

TEST_CASE("two-degree referral policy approaches the full late surplus") {
    const GameParams g = GameParams::baseline();
    double prev = 0.0;
    struct Proxy { double q; int d_u; };
    for (const Proxy proxy : {Proxy{0.01, 10000}, Proxy{0.003, 100000}, Proxy{0.001, 1000000}}) {
        const DegreeDistribution f = make_two_degree(1, proxy.d_u, proxy.q);
        const auto tilde = edge_perspective(f);
        const double eta_plus =
            (g.a1_high - g.a_bar) / (g.prior_high * (1.0 - tilde.prob(proxy.d_u)) * proxy.d_u);
        PricingPolicy pol{g.a1_high, g.a1_high, eta_plus, std::nullopt, true};
        const double value = limit_profit(g, pol, f).value;
        CHECK(value > prev);
        prev = value;
    }
    CHECK(prev > 19.9);
    CHECK(prev <= g.a1_high + 1e-9);
}

TEST_CASE("surplus-extracting two-price policy dominates dominated price pairs") {
    const GameParams g = GameParams::baseline();
    oracles::InstanceGen gen(5150u);
    for (int trial = 0; trial < 8; ++trial) {
        const DegreeDistribution f = gen.distribution();
        PricingPolicy opt{g.a_bar, g.a1_high, 0.0, std::nullopt, true};
        const double best = limit_profit(g, opt, f, PatternClass::lower_threshold).value;
        for (int k = 0; k < 12; ++k) {
            PricingPolicy pol{g.a_bar - gen.uniform(1e-3, 6.0),
                              gen.uniform(0.0, g.a1_high - 1e-3), 0.0, std::nullopt, true};
            CHECK(best >= limit_profit(g, pol, f, PatternClass::lower_threshold).value - 1e-9);
        }
    }
}

TEST_CASE("limit profit ignores zero-mass degrees") {
    const GameParams g = GameParams::baseline();
    PricingPolicy pol{4.0, 15.0, 0.6, std::nullopt, true};
    const DegreeDistribution f = make_two_degree(3, 8, 0.25);
    const DegreeDistribution padded =
        DegreeDistribution::from_pmf({{3, 0.75}, {5, 0.0}, {8, 0.25}, {11, 0.0}});
    CHECK(limit_profit(g, pol, f).value ==
          doctest::Approx(limit_profit(g, pol, padded).value).epsilon(1e-10));
}

TEST_CASE("on regular networks referral fees waste surplus at fixed access") {
    const GameParams g = GameParams::baseline();
    for (const int d : {3, 8}) {
        const DegreeDistribution f = make_regular(d);
        PricingPolicy with_fee{5.0, 16.0, 1.2, std::nullopt, true};
        const MeanFieldEquilibrium eq = solve_equilibrium(g, with_fee, f);
        REQUIRE(eq.alpha_star > 0.0);
        REQUIRE(eq.alpha_star < 1.0);
        const double alpha = eq.alpha_star;

        // Same access with the fee folded into the first-period price.
        PricingPolicy no_fee = with_fee;
        no_fee.eta = 0.0;
        no_fee.p0 = with_fee.p0 - g.prior_high * with_fee.eta * (1.0 - alpha) * d;
        const MeanFieldEquilibrium eq2 = solve_equilibrium(g, no_fee, f);
        // the substituted root matches up to the fixed point's conditioning
        CHECK(std::abs(eq2.alpha_star - alpha) <= 1e-5);
        CHECK(profit_at_policy(g, no_fee, f).total >
              profit_at_policy(g, with_fee, f).total);
    }
}

TEST_CASE("welfare") {
    const GameParams g = GameParams::baseline();
    const DegreeDistribution f = make_regular(1);
    const MeanFieldEquilibrium eq = solve_equilibrium(g, PricingPolicy{}, f);
    CHECK(welfare(g, eq, f, Quality::high) == doctest::Approx(26.25).epsilon(1e-8));
    CHECK(welfare(g, eq, f, Quality::low) ==
          doctest::Approx(0.75 * g.a0_low).epsilon(1e-8));

    MeanFieldEquilibrium nobody = eq;
    nobody.strategy.mu = {0.0};
    nobody.alpha_star = 0.0;
    CHECK(welfare(g, nobody, f, Quality::high) == doctest::Approx(0.0));

    MeanFieldEquilibrium half = eq;
    half.strategy.mu = {0.5};
    half.alpha_star = 0.5;
    CHECK(welfare(g, half, f, Quality::low) == doctest::Approx(0.5 * g.a0_low));
}
