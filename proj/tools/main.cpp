#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_commands.hpp"
#include "netadopt/equilibrium.hpp"
#include "netadopt/io_util.hpp"

using namespace netadopt;
using namespace netadopt::cli;

namespace {

struct Flags {
    std::string config_file;
    std::string params;
    std::string dist;
    std::string policy;
    std::string out_dir;
    std::string policy_class;
    int cap = 0;
    bool uninformed = false;
    bool svg = false;
    int figure_id = 0;
    std::string topology;
    int n = 0;
};

ExperimentConfig assemble(const Flags& flags, const CLI::App& app) {
    ExperimentConfig cfg;
    if (!flags.config_file.empty()) {
        std::ifstream in(flags.config_file);
        if (!in)
            throw std::invalid_argument("cannot open config file '" + flags.config_file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        cfg = parse_config(buf.str());
    }
    if (app.count("--params") > 0) {
        const auto cells = split(flags.params, ',');
        if (cells.size() != 5)
            throw std::invalid_argument("--params needs a0h,a1h,a0l,a1l,p");
        cfg.a0h = parse_real(cells[0], "a0h");
        cfg.a1h = parse_real(cells[1], "a1h");
        cfg.a0l = parse_real(cells[2], "a0l");
        cfg.a1l = parse_real(cells[3], "a1l");
        cfg.p = parse_real(cells[4], "p");
    }
    if (app.count("--dist") > 0) cfg.distribution = parse_distribution_arg(flags.dist);
    if (app.count("--policy") > 0) {
        const auto cells = split(flags.policy, ',');
        if (cells.size() != 3)
            throw std::invalid_argument("--policy needs p0,p1,eta");
        cfg.p0 = parse_real(cells[0], "p0");
        cfg.p1 = parse_real(cells[1], "p1");
        cfg.eta = parse_real(cells[2], "eta");
    }
    if (app.count("--out") > 0) cfg.out_dir = flags.out_dir;
    if (app.count("--svg") > 0) cfg.svg = flags.svg;
    if (app.count("--cap") > 0) cfg.cap = flags.cap;
    if (app.count("--uninformed") > 0) cfg.uninformed = flags.uninformed;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean-field technology-adoption equilibria, pricing and referral design"};
    app.require_subcommand(1);

    Flags flags;
    app.add_option("--config", flags.config_file, "config file (key=value sections)");
    app.add_option("--params", flags.params, "game parameters a0h,a1h,a0l,a1l,p");
    app.add_option("--dist", flags.dist,
                   "distribution, e.g. regular:5 | two_degree:6,13,0.1 | jr:7,2,200 | pmf:FILE");
    app.add_option("--policy", flags.policy, "pricing policy p0,p1,eta");
    app.add_option("--cap", flags.cap, "referral cap (max payments per early adopter)");
    app.add_flag("--uninformed", flags.uninformed, "monopolist does not observe quality");
    app.add_option("--out", flags.out_dir, "output directory");
    app.add_flag("--svg", flags.svg, "also write SVG plots");

    CLI::App* solve = app.add_subcommand("solve", "solve the mean-field equilibrium");
    CLI::App* profit = app.add_subcommand("profit", "profit breakdown at a policy");
    CLI::App* optimize = app.add_subcommand("optimize", "optimize over a policy class");
    optimize->add_option("--class", flags.policy_class,
                         "two_price | referral | capped_referral | full");
    CLI::App* figure = app.add_subcommand("figure", "reproduce an experiment figure");
    figure->add_option("--id", flags.figure_id, "figure id (2..8)")->required();
    CLI::App* finite = app.add_subcommand("finite", "exact Nash analysis of small networks");
    finite->add_option("--topology", flags.topology, "complete | star");
    finite->add_option("--n", flags.n, "number of agents");
    CLI::App* dist = app.add_subcommand("dist", "construct and export a degree distribution");
    for (CLI::App* sub : {solve, profit, optimize, figure, finite, dist})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        ExperimentConfig cfg = assemble(flags, app);
        if (optimize->count("--class") > 0) cfg.policy_class = flags.policy_class;
        if (finite->count("--topology") > 0) cfg.finite.topology = flags.topology;
        if (finite->count("--n") > 0) cfg.finite.n = flags.n;

        if (app.got_subcommand("solve")) return run_solve(cfg);
        if (app.got_subcommand("profit")) return run_profit(cfg);
        if (app.got_subcommand("optimize")) return run_optimize(cfg);
        if (app.got_subcommand("figure")) return run_figure(flags.figure_id, cfg);
        if (app.got_subcommand("finite")) return run_finite(cfg);
        if (app.got_subcommand("dist")) return run_dist(cfg);
        (void)solve;
        (void)profit;
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const SolveError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitComputeError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeError;
    }
}
