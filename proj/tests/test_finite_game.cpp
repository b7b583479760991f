#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netadopt/equilibrium.hpp"
#include "netadopt/finite_game.hpp"
#include "oracles.hpp"

using namespace netadopt;

namespace {

bool contains_profile(const std::vector<ProfileOutcome>& set,
                      const std::vector<std::uint8_t>& profile) {
    for (const auto& po : set)
        if (po.adopt_early == profile) return true;
    return false;
}

}  // namespace

TEST_CASE("star n=3 with zero prices: both screening profiles are Nash") {
    const GameParams g = GameParams::baseline();
    const PricingPolicy pol;
    const auto nash = enumerate_pure_nash(Topology::star, 3, g, pol);

    // periphery experiments, center free-rides
    REQUIRE(contains_profile(nash, {1, 1, 0}));
    // center experiments, periphery free-rides
    REQUIRE(contains_profile(nash, {0, 0, 1}));

    for (const auto& po : enumerate_profiles(Topology::star, 3, g, pol)) {
        if (po.adopt_early == std::vector<std::uint8_t>{1, 1, 0}) {
            CHECK(po.payoffs[0] == doctest::Approx(6.0));  // early surplus
            CHECK(po.payoffs[2] == doctest::Approx(8.0));  // informed late value
        }
        if (po.adopt_early == std::vector<std::uint8_t>{0, 0, 1}) {
            CHECK(po.payoffs[2] == doctest::Approx(6.0));
            CHECK(po.payoffs[0] == doctest::Approx(8.0));
        }
    }
}

TEST_CASE("complete n=3 with zero prices: single-experimenter profiles are Nash") {
    const GameParams g = GameParams::baseline();
    const auto all = enumerate_profiles(Topology::complete, 3, g, PricingPolicy{});
    REQUIRE(all.size() == 4);  // one representative per adopter count
    for (const auto& po : all) {
        int adopters = 0;
        for (auto a : po.adopt_early) adopters += a;
        if (adopters == 1) {
            CHECK(po.is_nash);
        } else if (adopters == 0) {
            // deviating to adopt alone yields a_bar = 6 > 0
            CHECK_FALSE(po.is_nash);
        } else if (adopters == 3) {
            // deviating to defer yields p*A1H = 8 > 6
            CHECK_FALSE(po.is_nash);
        }
    }
}

TEST_CASE("enumeration bounds") {
    const GameParams g = GameParams::baseline();
    CHECK_THROWS_AS(enumerate_profiles(Topology::complete, 21, g, PricingPolicy{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_profiles(Topology::star, 13, g, PricingPolicy{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_profiles(Topology::star, 1, g, PricingPolicy{}),
                    std::invalid_argument);
}

TEST_CASE("symmetric mixing on the complete network") {
    const GameParams g = GameParams::baseline();
    const MixedSolution two = symmetric_mixed_complete(2, g, PricingPolicy{});
    REQUIRE(two.interior);
    CHECK(two.omega == doctest::Approx(0.75).epsilon(1e-10));

    SUBCASE("matches the mean-field access on the (n-1)-regular network") {
        oracles::InstanceGen gen(60601u);
        for (int n = 2; n <= 10; ++n) {
            for (int k = 0; k < 4; ++k) {
                const GameParams params = gen.params();
                const PricingPolicy pol = gen.policy(params);
                const MixedSolution mixed = symmetric_mixed_complete(n, params, pol);
                const double alpha =
                    solve_equilibrium(params, pol, make_regular(n - 1)).alpha_star;
                CHECK(std::abs(mixed.omega - alpha) <= 1e-8);
            }
        }
    }

    SUBCASE("a fee above the late value raises the mixing weight") {
        PricingPolicy pol;
        pol.eta = 25.0;
        const MixedSolution high = symmetric_mixed_complete(4, g, pol);
        const MixedSolution base = symmetric_mixed_complete(4, g, PricingPolicy{});
        REQUIRE(high.interior);
        REQUIRE(base.interior);
        CHECK(high.omega > base.omega);
    }
}

TEST_CASE("star screening profiles track the mean-field regime") {
    const GameParams g = GameParams::baseline();
    const DegreeDistribution star_class = make_two_degree(1, 2, 1.0 / 3.0);

    SUBCASE("no referrals: lower-threshold regime, periphery adopts") {
        const MeanFieldEquilibrium eq = solve_equilibrium(g, PricingPolicy{}, star_class);
        CHECK(eq.d_upper == kDegreeInf);  // lower-threshold regime
        const auto nash = enumerate_pure_nash(Topology::star, 3, g, PricingPolicy{});
        CHECK(contains_profile(nash, {1, 1, 0}));
    }
    SUBCASE("large fee: upper-threshold regime, center adopts") {
        PricingPolicy pol;
        pol.eta = 30.0;
        const MeanFieldEquilibrium eq = solve_equilibrium(g, pol, star_class);
        CHECK(eq.d_lower == 0);  // upper-threshold regime
        const auto nash = enumerate_pure_nash(Topology::star, 3, g, pol);
        CHECK(contains_profile(nash, {0, 0, 1}));
    }
}

TEST_CASE("star mixed roots solve the decoupled indifference conditions") {
    const GameParams g = GameParams::baseline();
    const StarMixedProfile mixed = star_mixed_profile(3, g, PricingPolicy{});
    // Periphery weight makes the center indifferent: a_bar = p*A1H*(1-(1-w')^2).
    REQUIRE(mixed.periphery_weight.has_value());
    const double wp = *mixed.periphery_weight;
    CHECK(g.a_bar == doctest::Approx(8.0 * (1.0 - std::pow(1.0 - wp, 2))).epsilon(1e-9));
    // Center weight makes the periphery indifferent: a_bar = p*A1H*w.
    REQUIRE(mixed.center_weight.has_value());
    CHECK(*mixed.center_weight == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("finite csv layout") {
    const GameParams g = GameParams::baseline();
    const auto profiles = enumerate_profiles(Topology::star, 3, g, PricingPolicy{});
    const std::string csv = finite_csv(Topology::star, 3, profiles);
    CHECK(csv.rfind("topology,n,profile,is_nash,payoff_vector\n", 0) == 0);
    CHECK(csv.find("star,3,110,1,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);  // header + 8 profiles
}
