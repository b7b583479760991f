#include "cli_commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "figures.hpp"
#include "netadopt/finite_game.hpp"
#include "netadopt/io_util.hpp"
#include "netadopt/optimizer.hpp"
#include "netadopt/profit.hpp"

namespace netadopt::cli {

namespace {

const DistributionSpec& require_distribution(const ExperimentConfig& cfg) {
    if (!cfg.distribution)
        throw std::invalid_argument(
            "missing distribution: set --dist or a [distribution] config section");
    return *cfg.distribution;
}

std::string policy_comment(const PricingPolicy& pol) {
    std::ostringstream out;
    out << "# policy,P0=" << format_real(pol.p0) << ",P1=" << format_real(pol.p1)
        << ",eta=" << format_real(pol.eta);
    if (pol.referral_cap) out << ",cap=" << *pol.referral_cap;
    out << ",informed=" << (pol.monopolist_informed ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace

std::string write_output(const ExperimentConfig& cfg, const std::string& file_name,
                         const std::string& content) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / file_name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << "\n";
    return path.string();
}

int run_solve(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const PricingPolicy pol = build_policy(cfg);
    const DegreeDistribution f = build_distribution(require_distribution(cfg));

    const MeanFieldEquilibrium eq = solve_equilibrium(g, pol, f);
    write_output(cfg, "equilibrium.csv", equilibrium_csv(eq, g, pol, f));

    const double beta = early_fraction(eq.strategy, f);
    const auto efficiency = informational_efficiency(eq.strategy, f);
    std::cout << "alpha_star=" << format_real(eq.alpha_star) << "\n";
    std::cout << "d_L=" << format_degree(eq.d_lower) << "\n";
    std::cout << "d_U=" << format_degree(eq.d_upper) << "\n";
    std::cout << "beta=" << format_real(beta) << "\n";
    std::cout << "efficiency="
              << (efficiency ? format_real(*efficiency) : std::string("undefined")) << "\n";
    return kExitOk;
}

int run_profit(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const PricingPolicy base = build_policy(cfg);
    const DegreeDistribution f = build_distribution(require_distribution(cfg));

    std::ostringstream csv;
    csv << policy_comment(base);
    csv << "# params,a0h=" << format_real(g.a0_high) << ",a1h=" << format_real(g.a1_high)
        << ",a0l=" << format_real(g.a0_low) << ",a1l=" << format_real(g.a1_low)
        << ",p=" << format_real(g.prior_high) << ",a_bar=" << format_real(g.a_bar) << "\n";
    csv << "param,beta,gamma_H,phi_H,profit\n";

    if (cfg.sweep) {
        const SweepSpec& sweep = *cfg.sweep;
        if (sweep.variable != "P0" && sweep.variable != "P1" && sweep.variable != "eta")
            throw std::invalid_argument("profit sweep variable must be P0, P1 or eta");
        for (double v = sweep.from; v <= sweep.to + 1e-9; v += sweep.step) {
            PricingPolicy pol = base;
            if (sweep.variable == "P0") pol.p0 = v;
            if (sweep.variable == "P1") pol.p1 = v;
            if (sweep.variable == "eta") pol.eta = v;
            csv << profit_sweep_row(v, profit_at_policy(g, pol, f));
        }
    } else {
        const ProfitBreakdown pb = profit_at_policy(g, base, f);
        csv << profit_sweep_row(0.0, pb);
        const MeanFieldEquilibrium eq = solve_equilibrium(g, base, f);
        std::cout << "beta=" << format_real(pb.beta) << "\n";
        std::cout << "gamma_H=" << format_real(pb.gamma_high) << "\n";
        std::cout << "phi_H=" << format_real(pb.phi_high) << "\n";
        std::cout << "profit=" << format_real(pb.total) << "\n";
        std::cout << "welfare_H=" << format_real(welfare(g, eq, f, Quality::high)) << "\n";
        std::cout << "welfare_L=" << format_real(welfare(g, eq, f, Quality::low)) << "\n";
        const LimitProfit lp = limit_profit(g, base, f);
        std::cout << "limit_profit=" << format_real(lp.value)
                  << (lp.knife_edge ? " (knife-edge policy)" : "") << "\n";
    }
    write_output(cfg, "profit.csv", csv.str());
    return kExitOk;
}

int run_optimize(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const DegreeDistribution f = build_distribution(require_distribution(cfg));
    OptimizerOptions opts;
    opts.price_grid = cfg.price_grid;
    opts.monopolist_informed = !cfg.uninformed;
    opts.referral_cap = cfg.cap;

    OptimizationResult result;
    if (cfg.policy_class == "two_price") {
        result = optimize_two_price(g, f, opts);
    } else if (cfg.policy_class == "referral") {
        result = optimize_referral(g, f, opts);
    } else if (cfg.policy_class == "full") {
        result = optimize_full(g, f, opts);
    } else if (cfg.policy_class == "capped_referral") {
        if (!cfg.cap)
            throw std::invalid_argument("capped_referral optimization needs --cap");
        result = optimize_capped_referral(g, f, *cfg.cap, opts);
    } else {
        throw std::invalid_argument("unknown policy class '" + cfg.policy_class +
                                    "' (two_price, referral, capped_referral, full)");
    }

    write_output(cfg, "optimize_trace.csv", trace_csv(result));
    if (!result.diagnostic.empty()) {
        std::cerr << "optimization failed: " << result.diagnostic << "\n";
        return kExitComputeError;
    }
    std::cout << "class=" << cfg.policy_class << "\n";
    std::cout << "P0=" << format_real(result.best_policy.p0) << "\n";
    std::cout << "P1=" << format_real(result.best_policy.p1) << "\n";
    std::cout << "eta=" << format_real(result.best_policy.eta) << "\n";
    std::cout << "profit=" << format_real(result.best_profit) << "\n";
    std::cout << "alpha_star=" << format_real(result.equilibrium.alpha_star) << "\n";
    std::cout << "d_L=" << format_degree(result.equilibrium.d_lower) << "\n";
    std::cout << "d_U=" << format_degree(result.equilibrium.d_upper) << "\n";
    return kExitOk;
}

int run_figure(int id, const ExperimentConfig& cfg) {
    const FigureOutput fig = make_figure(id, cfg);
    write_output(cfg, fig.name + ".csv", fig.csv);
    if (cfg.svg)
        for (const auto& [stem, content] : fig.svgs)
            write_output(cfg, stem + ".svg", content);
    return kExitOk;
}

int run_finite(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const PricingPolicy pol = build_policy(cfg);
    Topology topology;
    if (cfg.finite.topology == "complete")
        topology = Topology::complete;
    else if (cfg.finite.topology == "star")
        topology = Topology::star;
    else
        throw std::invalid_argument("finite topology must be 'complete' or 'star'");

    const auto profiles = enumerate_profiles(topology, cfg.finite.n, g, pol);
    std::ostringstream csv;
    csv << policy_comment(pol);
    csv << finite_csv(topology, cfg.finite.n, profiles);
    write_output(cfg, "finite.csv", csv.str());

    int nash = 0;
    for (const auto& po : profiles) nash += po.is_nash ? 1 : 0;
    std::cout << "profiles=" << profiles.size() << "\n";
    std::cout << "pure_nash=" << nash << "\n";
    if (topology == Topology::complete) {
        const MixedSolution mixed = symmetric_mixed_complete(cfg.finite.n, g, pol);
        std::cout << "symmetric_mixed_omega=" << format_real(mixed.omega)
                  << (mixed.interior ? "" : " (corner)") << "\n";
    } else {
        const StarMixedProfile mixed = star_mixed_profile(cfg.finite.n, g, pol);
        std::cout << "center_mix="
                  << (mixed.center_weight ? format_real(*mixed.center_weight)
                                          : std::string("none"))
                  << "\n";
        std::cout << "periphery_mix="
                  << (mixed.periphery_weight ? format_real(*mixed.periphery_weight)
                                             : std::string("none"))
                  << "\n";
    }
    return kExitOk;
}

int run_dist(const ExperimentConfig& cfg) {
    const DistributionSpec& spec = require_distribution(cfg);
    const DegreeDistribution f = build_distribution(spec);
    write_output(cfg, "dist.csv", distribution_csv(f));
    const Moments mom = moments(f);
    std::cout << "support=" << f.size() << "\n";
    std::cout << "mean=" << format_real(mom.mean) << "\n";
    std::cout << "std_dev=" << format_real(mom.std_dev) << "\n";
    if (spec.kind == "jackson_rogers")
        std::cout << "analytic_mean=" << format_real(jackson_rogers_analytic_mean(spec.m, spec.r))
                  << "\n";
    return kExitOk;
}

}  // namespace netadopt::cli
