#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_config.hpp"
#include "netadopt/io_util.hpp"
#include "figures.hpp"

using namespace netadopt;
using namespace netadopt::cli;

TEST_CASE("config round trip is the identity") {
    ExperimentConfig cfg;
    cfg.a0h = 9.5;
    cfg.p = 0.45;
    DistributionSpec dist;
    dist.kind = "jackson_rogers";
    dist.m = 7.25;
    dist.r = 2.0;
    dist.d_max = 150;
    cfg.distribution = dist;
    cfg.p0 = -1.25;
    cfg.p1 = 17.0;
    cfg.eta = 0.375;
    cfg.cap = 4;
    cfg.uninformed = true;
    cfg.policy_class = "referral";
    cfg.price_grid = 250;
    cfg.sweep = SweepSpec{"m", 2.0, 15.0, 0.5};
    cfg.finite = FiniteSpec{"complete", 6};
    cfg.figure_curves_m = {3.0, 7.0};
    cfg.figure_caps = {1, 5};
    cfg.out_dir = "results";
    cfg.svg = true;

    const std::string text = serialize_config(cfg);
    const ExperimentConfig back = parse_config(text);
    CHECK(back == cfg);
    CHECK(serialize_config(back) == text);

    const ExperimentConfig defaults = parse_config(serialize_config(ExperimentConfig{}));
    CHECK(defaults == ExperimentConfig{});
}

TEST_CASE("config parsing rejects unknown keys by name") {
    CHECK_THROWS_WITH_AS(parse_config("[params]\nbogus=1\n"),
                         "unknown [params] key 'bogus'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("[nope]\n"), "unknown config section [nope]",
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_config("a0h=10\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[sweep]\nfrom=3\nto=1\nvariable=m\n"),
                    std::invalid_argument);
}

TEST_CASE("distribution argument parsing") {
    DistributionSpec reg = parse_distribution_arg("regular:5");
    CHECK(reg.kind == "regular");
    CHECK(reg.d == 5);
    CHECK(build_distribution(reg).prob(5) == doctest::Approx(1.0));

    DistributionSpec two = parse_distribution_arg("two_degree:6,13,0.1");
    CHECK(build_distribution(two).prob(6) == doctest::Approx(0.9));

    DistributionSpec jr = parse_distribution_arg("jr:7,2,200");
    CHECK(jr.kind == "jackson_rogers");
    CHECK(jr.d_max == 200);

    CHECK_THROWS_AS(parse_distribution_arg("regular"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution_arg("blob:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_distribution_arg("two_degree:6"), std::invalid_argument);
}

TEST_CASE("figure data is deterministic and carries parameter metadata") {
    ExperimentConfig cfg;
    cfg.sweep = SweepSpec{"d", 2.0, 5.0, 1.0};
    const FigureOutput first = make_figure(2, cfg);
    const FigureOutput second = make_figure(2, cfg);
    CHECK(first.csv == second.csv);
    CHECK(first.csv.find("# params,") == 0);
    CHECK(first.csv.find("d,profit_two_price,profit_referral\n") != std::string::npos);
    REQUIRE(first.svgs.size() == 1);
    CHECK(first.svgs[0].second.find("<svg") == 0);
    CHECK(first.svgs[0].second.find("polyline") != std::string::npos);

    CHECK_THROWS_AS(make_figure(9, cfg), std::invalid_argument);
    CHECK_THROWS_AS(make_figure(1, cfg), std::invalid_argument);
}

TEST_CASE("figure 6 panel columns") {
    ExperimentConfig cfg;
    cfg.sweep = SweepSpec{"d_l", 5.0, 7.0, 1.0};
    const FigureOutput fig = make_figure(6, cfg);
    CHECK(fig.csv.find("d_l,mean_degree,std_dev,profit_two_price,profit_referral\n") !=
          std::string::npos);
    // constant spread along the shift: std_dev column repeats
    const auto lines = split(fig.csv, '\n');
    std::string sd;
    for (const auto& line : lines) {
        if (line.empty() || line[0] == '#' || line[0] == 'd') continue;
        const auto cells = split(line, ',');
        REQUIRE(cells.size() == 5);
        if (sd.empty())
            sd = cells[2];
        else
            CHECK(cells[2] == sd);
    }
}

TEST_CASE("params flag validation flows through build_params") {
    ExperimentConfig cfg;
    cfg.a0l = 5.0;  // breaks the sign constraints
    CHECK_THROWS_AS(build_params(cfg), std::invalid_argument);
}
