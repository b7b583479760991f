#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netadopt/game.hpp"

namespace netadopt {

enum class Topology { complete, star };

/** One pure-strategy profile with exact expected payoffs (expectation over
 * the quality state only; actions are deterministic).  For the star, the
 * last agent is the center.  For the complete network, profiles are reduced
 * by symmetry to one representative per early-adopter count.
 */
struct ProfileOutcome {
    std::vector<std::uint8_t> adopt_early;
    std::vector<double> payoffs;
    bool is_nash = false;
};

/// All (symmetry-reduced) pure profiles with payoffs and Nash flags.
/// Bounds: n <= 20 on the complete network, n <= 12 on the star.
std::vector<ProfileOutcome> enumerate_profiles(Topology topology, int n,
                                               const GameParams& params,
                                               const PricingPolicy& policy);

/// The Nash subset of enumerate_profiles.
std::vector<ProfileOutcome> enumerate_pure_nash(Topology topology, int n,
                                                const GameParams& params,
                                                const PricingPolicy& policy);

struct MixedSolution {
    double omega = 0.0;
    bool interior = false;  // false: no interior root, omega is the corner
};

/// Symmetric mixed weight on the complete network: the root of
/// a_bar - P0 + p*eta*E[referrals] = p*(1 - (1-w)^(n-1))*(A1H - P1).
MixedSolution symmetric_mixed_complete(int n, const GameParams& params,
                                       const PricingPolicy& policy);

/// Mixed profile on the star where both the center and the periphery are
/// indifferent.  The two indifference conditions separate: the center's
/// depends only on the periphery weight and vice versa.  Each root is
/// reported when it exists; no claim of completeness.
struct StarMixedProfile {
    std::optional<double> center_weight;
    std::optional<double> periphery_weight;
};

StarMixedProfile star_mixed_profile(int n, const GameParams& params,
                                    const PricingPolicy& policy);

/// CSV: topology,n,profile,is_nash,payoff_vector (profile as a 01 string,
/// payoffs separated by ';').
std::string finite_csv(Topology topology, int n,
                       const std::vector<ProfileOutcome>& profiles);

}  // namespace netadopt
