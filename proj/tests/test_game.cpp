#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netadopt/game.hpp"
#include "oracles.hpp"

using namespace netadopt;

TEST_CASE("parameter audit and validation") {
    const ParamsAudit audit = audit_game_params(10, 20, -10, -20, 0.4);
    CHECK(audit.ok());
    CHECK(audit.uninformed_late_value == doctest::Approx(-4.0));
    CHECK(audit.a_bar == doctest::Approx(6.0));
    CHECK(audit.informed_late_bound == doctest::Approx(8.0));
    CHECK(audit.early_expected_value == doctest::Approx(-2.0));

    const GameParams g = GameParams::baseline();
    CHECK(g.a_bar == doctest::Approx(6.0));

    // Assumption 1 fails: uninformed late value nonnegative.
    CHECK_THROWS_AS(GameParams(10, 20, -10, -5, 0.5), std::invalid_argument);
    // Assumption 2 fails: early expected value nonnegative.
    CHECK_THROWS_AS(GameParams(10, 20, -2, -20, 0.5), std::invalid_argument);
    // Sign constraint.
    CHECK_THROWS_AS(GameParams(-1, 20, -10, -20, 0.4), std::invalid_argument);
}

TEST_CASE("policy validation") {
    PricingPolicy pol;
    pol.p1 = -0.5;
    CHECK_THROWS_WITH_AS(pol.validate(),
                         "second-period price must be nonnegative, got -0.5",
                         std::invalid_argument);
    pol = PricingPolicy{};
    pol.eta = -1.0;
    CHECK_THROWS_AS(pol.validate(), std::invalid_argument);
    pol = PricingPolicy{};
    pol.referral_cap = 0;
    CHECK_THROWS_AS(pol.validate(), std::invalid_argument);
    pol = PricingPolicy{-3.0, 2.0, 1.0, std::nullopt, true};
    CHECK_NOTHROW(pol.validate());  // negative first-period price is allowed
}

TEST_CASE("adoption payoff") {
    const GameParams g = GameParams::baseline();
    PricingPolicy pol;
    CHECK(payoff_adopt(g, pol, 0.3, 3) == doctest::Approx(6.0));

    pol.eta = 1.0;
    CHECK(payoff_adopt(g, pol, 0.5, 4) == doctest::Approx(6.8));

    pol.referral_cap = 1;
    CHECK(payoff_adopt(g, pol, 0.5, 2) == doctest::Approx(6.3));
}

TEST_CASE("deferral payoff") {
    const GameParams g = GameParams::baseline();
    PricingPolicy pol;
    CHECK(payoff_defer(g, pol, 0.0, 7) == doctest::Approx(0.0));
    CHECK(payoff_defer(g, pol, 1.0, 1) == doctest::Approx(8.0));
    CHECK(payoff_defer(g, pol, 0.5, 2) == doctest::Approx(6.0));
}

TEST_CASE("adoption gain in degree: decreasing without referrals, discrete convex") {
    const GameParams g = GameParams::baseline();
    PricingPolicy pol;
    CHECK(delta_payoff(g, pol, 0.75, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(delta_payoff(g, pol, 0.5, 1) == doctest::Approx(-2.0 + 8.0 * 0.5));

    for (const double alpha : {0.1, 0.35, 0.6, 0.9})
        for (int d = 1; d < 30; ++d) {
            const double step = delta_payoff(g, pol, alpha, d + 1) -
                                delta_payoff(g, pol, alpha, d);
            CHECK(step <= 0.0);
            // strictly decreasing until the free-riding term saturates
            if (std::pow(1.0 - alpha, d) > 1e-12) CHECK(step < 0.0);
        }

    PricingPolicy with_refs{1.0, 3.0, 2.5, std::nullopt, true};
    for (const double alpha : {0.1, 0.35, 0.6, 0.9})
        for (int d = 2; d < 40; ++d) {
            const double second_diff = delta_payoff(g, with_refs, alpha, d + 1) -
                                       2.0 * delta_payoff(g, with_refs, alpha, d) +
                                       delta_payoff(g, with_refs, alpha, d - 1);
            CHECK(second_diff >= -1e-12);
        }
}

TEST_CASE("best response classification") {
    const GameParams g = GameParams::baseline();
    PricingPolicy pol;
    CHECK(best_response(g, pol, 0.1, 1) == Action::adopt);   // gain +1 range
    CHECK(best_response(g, pol, 0.9, 2) == Action::defer);
    CHECK(best_response(g, pol, 0.75, 1) == Action::indifferent);
}

TEST_CASE("capped referral expectation") {
    CHECK(expected_capped_referrals(4, 0.3, std::nullopt) == doctest::Approx(1.2));
    CHECK(expected_capped_referrals(4, 0.3, 4) == doctest::Approx(1.2));
    CHECK(expected_capped_referrals(4, 0.3, 9) == doctest::Approx(1.2));
    CHECK(expected_capped_referrals(2, 0.5, 1) == doctest::Approx(0.75));

    SUBCASE("matches enumeration oracle for d <= 20") {
        for (int d = 1; d <= 20; ++d)
            for (int cap = 1; cap <= d; ++cap)
                for (const double s : {0.05, 0.3, 0.5, 0.77, 0.99}) {
                    const double got = expected_capped_referrals(d, s, cap);
                    const double want = oracles::capped_binomial_mean(d, s, cap);
                    CHECK(got == doctest::Approx(want).epsilon(1e-10));
                }
    }

    SUBCASE("nondecreasing in the cap") {
        for (const int d : {7, 33, 80, 150}) {
            double prev = 0.0;
            for (int cap = 1; cap <= d; ++cap) {
                const double v = expected_capped_referrals(d, 0.37, cap);
                CHECK(v >= prev - 1e-12);
                prev = v;
            }
            CHECK(prev == doctest::Approx(0.37 * d).epsilon(1e-9));
        }
    }

    SUBCASE("large-d path is continuous with the small-d path") {
        for (int cap = 1; cap <= 30; cap += 7)
            for (const double s : {0.02, 0.4, 0.93}) {
                // d=64 uses exact summation, d=65 the log-gamma form.
                const double lo = expected_capped_referrals(64, s, std::min(cap, 64));
                const double hi = expected_capped_referrals(65, s, std::min(cap, 64));
                CHECK(hi >= lo - 1e-9);
            }
        // extreme succcess probability where naive products underflow
        const double v = expected_capped_referrals(200, 1e-6, 3);
        CHECK(v == doctest::Approx(200 * 1e-6).epsilon(1e-3));
    }
}
