#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netadopt/degree_dist.hpp"
#include "netadopt/game.hpp"

namespace netadopt::cli {

struct DistributionSpec {
    std::string kind;  // regular | two_degree | jackson_rogers | pmf
    int d = 0;
    int d_l = 0;
    int d_u = 0;
    double q = 0.0;
    double m = 0.0;
    double r = 0.0;
    int d_max = 200;
    std::string file;
    bool operator==(const DistributionSpec&) const = default;
};

struct SweepSpec {
    std::string variable;
    double from = 0.0;
    double to = 0.0;
    double step = 1.0;
    bool operator==(const SweepSpec&) const = default;
};

struct FiniteSpec {
    std::string topology = "star";
    int n = 3;
    bool operator==(const FiniteSpec&) const = default;
};

/** One experiment: parameters, network, policy (or policy class), and output
 * settings.  Serializes to bracketed-section key=value text; command-line
 * flags override file values.  All computations driven by a config are
 * deterministic, so repeated runs produce byte-identical files.
 */
struct ExperimentConfig {
    double a0h = 10.0, a1h = 20.0, a0l = -10.0, a1l = -20.0, p = 0.4;
    std::optional<DistributionSpec> distribution;
    double p0 = 0.0, p1 = 0.0, eta = 0.0;
    std::optional<int> cap;
    bool uninformed = false;
    std::string policy_class = "two_price";
    int price_grid = 400;
    std::optional<SweepSpec> sweep;
    FiniteSpec finite;
    std::vector<double> figure_curves_m = {3.0, 7.0, 12.0};
    std::vector<int> figure_caps = {2, 5, 10, 20};
    std::string out_dir = ".";
    bool svg = false;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the bracketed-section key=value format; unknown sections or keys
/// are rejected by name.
ExperimentConfig parse_config(const std::string& text);

std::string serialize_config(const ExperimentConfig& cfg);

/// "regular:5", "two_degree:6,13,0.1", "jackson_rogers:7,2,200" (alias jr),
/// or "pmf:file.csv".
DistributionSpec parse_distribution_arg(const std::string& arg);

DegreeDistribution build_distribution(const DistributionSpec& spec);
GameParams build_params(const ExperimentConfig& cfg);
PricingPolicy build_policy(const ExperimentConfig& cfg);

}  // namespace netadopt::cli
