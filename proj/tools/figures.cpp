#include "figures.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "netadopt/io_util.hpp"
#include "netadopt/optimizer.hpp"
#include "netadopt/svg.hpp"

namespace netadopt::cli {

namespace {

std::vector<double> sweep_values(const ExperimentConfig& cfg, double from, double to,
                                 double step) {
    if (cfg.sweep) {
        from = cfg.sweep->from;
        to = cfg.sweep->to;
        step = cfg.sweep->step;
    }
    std::vector<double> values;
    for (double v = from; v <= to + 1e-9; v += step) values.push_back(v);
    return values;
}

// Evaluate one job per index on a couple of worker threads; results land in
// index order so the output does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 4u);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
        });
    for (auto& t : pool) t.join();
}

std::string params_comment(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "# params,a0h=" << format_real(cfg.a0h) << ",a1h=" << format_real(cfg.a1h)
        << ",a0l=" << format_real(cfg.a0l) << ",a1l=" << format_real(cfg.a1l)
        << ",p=" << format_real(cfg.p) << "\n";
    return out.str();
}

OptimizerOptions options_for(const ExperimentConfig& cfg) {
    OptimizerOptions opts;
    opts.price_grid = cfg.price_grid;
    opts.monopolist_informed = !cfg.uninformed;
    return opts;
}

struct OptimaPair {
    double two_price = 0.0;
    double referral = 0.0;
};

OptimaPair optima(const GameParams& g, const DegreeDistribution& f,
                  const OptimizerOptions& opts) {
    return {optimize_two_price(g, f, opts).best_profit,
            optimize_referral(g, f, opts).best_profit};
}

FigureOutput regular_profits(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const OptimizerOptions opts = options_for(cfg);
    const std::vector<double> degrees = sweep_values(cfg, 2, 50, 1);
    std::vector<OptimaPair> rows(degrees.size());
    parallel_for(degrees.size(), [&](std::size_t i) {
        rows[i] = optima(g, make_regular(static_cast<int>(degrees[i])), opts);
    });

    FigureOutput out;
    out.name = "fig2";
    std::ostringstream csv;
    csv << params_comment(cfg);
    csv << "# late_surplus," << format_real(cfg.a1h) << "\n";
    csv << "d,profit_two_price,profit_referral\n";
    Series tp{"two-price", {}, {}}, rf{"referral", {}, {}}, cap{"A1H", {}, {}};
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        csv << format_real(degrees[i]) << "," << format_real(rows[i].two_price) << ","
            << format_real(rows[i].referral) << "\n";
        tp.x.push_back(degrees[i]);
        tp.y.push_back(rows[i].two_price);
        rf.x.push_back(degrees[i]);
        rf.y.push_back(rows[i].referral);
        cap.x.push_back(degrees[i]);
        cap.y.push_back(cfg.a1h);
    }
    out.csv = csv.str();
    out.svgs.emplace_back("fig2", line_plot_svg("Optimal profit on regular networks",
                                                "degree d", "profit", {tp, rf, cap}));
    return out;
}

FigureOutput family_profits(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const OptimizerOptions opts = options_for(cfg);
    const int d_max = cfg.distribution ? cfg.distribution->d_max : 200;
    const double r = cfg.distribution && cfg.distribution->r > 0 ? cfg.distribution->r : 2.0;
    const std::vector<double> ms = sweep_values(cfg, 2, 15, 1);
    std::vector<OptimaPair> rows(ms.size());
    parallel_for(ms.size(), [&](std::size_t i) {
        rows[i] = optima(g, make_jackson_rogers(ms[i], r, d_max), opts);
    });

    FigureOutput out;
    out.name = "fig3";
    std::ostringstream csv;
    csv << params_comment(cfg);
    csv << "# family,r=" << format_real(r) << ",d_max=" << d_max << "\n";
    csv << "m,profit_two_price,profit_referral\n";
    Series tp{"two-price", {}, {}}, rf{"referral", {}, {}};
    for (std::size_t i = 0; i < ms.size(); ++i) {
        csv << format_real(ms[i]) << "," << format_real(rows[i].two_price) << ","
            << format_real(rows[i].referral) << "\n";
        tp.x.push_back(ms[i]);
        tp.y.push_back(rows[i].two_price);
        rf.x.push_back(ms[i]);
        rf.y.push_back(rows[i].referral);
    }
    out.csv = csv.str();
    out.svgs.emplace_back("fig3", line_plot_svg("Optimal profit vs average degree",
                                                "average degree m", "profit", {tp, rf}));
    return out;
}

FigureOutput family_dispersion(const ExperimentConfig& cfg) {
    const int d_max = cfg.distribution ? cfg.distribution->d_max : 200;
    const double r = cfg.distribution && cfg.distribution->r > 0 ? cfg.distribution->r : 2.0;
    const std::vector<double> ms = sweep_values(cfg, 2, 15, 1);

    FigureOutput out;
    out.name = "fig4";
    std::ostringstream csv;
    csv << "# family,r=" << format_real(r) << ",d_max=" << d_max << "\n";
    csv << "m,mean_truncated,std_dev\n";
    Series sd{"std dev", {}, {}};
    for (const double m : ms) {
        const Moments mom = moments(make_jackson_rogers(m, r, d_max));
        csv << format_real(m) << "," << format_real(mom.mean) << ","
            << format_real(mom.std_dev) << "\n";
        sd.x.push_back(m);
        sd.y.push_back(mom.std_dev);
    }
    out.csv = csv.str();
    out.svgs.emplace_back("fig4", line_plot_svg("Degree dispersion vs average degree",
                                                "average degree m", "std dev of degree",
                                                {sd}));
    return out;
}

FigureOutput variance_profits(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const OptimizerOptions opts = options_for(cfg);
    const int d_max = cfg.distribution ? cfg.distribution->d_max : 200;
    const std::vector<double> inv_rs = sweep_values(cfg, 0.05, 1.0, 0.05);
    const std::vector<double>& curve_ms = cfg.figure_curves_m;

    std::vector<std::vector<OptimaPair>> rows(curve_ms.size());
    for (auto& row : rows) row.resize(inv_rs.size());
    parallel_for(curve_ms.size() * inv_rs.size(), [&](std::size_t idx) {
        const std::size_t mi = idx / inv_rs.size();
        const std::size_t ri = idx % inv_rs.size();
        rows[mi][ri] =
            optima(g, make_jackson_rogers(curve_ms[mi], 1.0 / inv_rs[ri], d_max), opts);
    });

    FigureOutput out;
    out.name = "fig5";
    std::ostringstream csv;
    csv << params_comment(cfg);
    csv << "# d_max," << d_max << "\n";
    csv << "inv_r";
    for (const double m : curve_ms)
        csv << ",two_price_m" << format_real(m) << ",referral_m" << format_real(m);
    csv << "\n";
    std::vector<Series> series;
    for (const double m : curve_ms) {
        series.push_back({"two-price m=" + format_real(m), {}, {}});
        series.push_back({"referral m=" + format_real(m), {}, {}});
    }
    for (std::size_t ri = 0; ri < inv_rs.size(); ++ri) {
        csv << format_real(inv_rs[ri]);
        for (std::size_t mi = 0; mi < curve_ms.size(); ++mi) {
            csv << "," << format_real(rows[mi][ri].two_price) << ","
                << format_real(rows[mi][ri].referral);
            series[2 * mi].x.push_back(inv_rs[ri]);
            series[2 * mi].y.push_back(rows[mi][ri].two_price);
            series[2 * mi + 1].x.push_back(inv_rs[ri]);
            series[2 * mi + 1].y.push_back(rows[mi][ri].referral);
        }
        csv << "\n";
    }
    out.csv = csv.str();
    out.svgs.emplace_back("fig5", line_plot_svg("Optimal profit vs degree spread 1/r",
                                                "1/r", "profit", series));
    return out;
}

FigureOutput two_degree_shifted(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const OptimizerOptions opts = options_for(cfg);
    const std::vector<double> dls = sweep_values(cfg, 5, 20, 1);
    std::vector<OptimaPair> rows(dls.size());
    std::vector<Moments> mom(dls.size());
    parallel_for(dls.size(), [&](std::size_t i) {
        const int d_l = static_cast<int>(dls[i]);
        const DegreeDistribution f = make_two_degree(d_l, d_l + 7, 0.1);
        rows[i] = optima(g, f, opts);
        mom[i] = moments(f);
    });

    FigureOutput out;
    out.name = "fig6";
    std::ostringstream csv;
    csv << params_comment(cfg);
    csv << "# family,two_degree d_u=d_l+7 q=0.1\n";
    csv << "d_l,mean_degree,std_dev,profit_two_price,profit_referral\n";
    Series tp{"two-price", {}, {}}, rf{"referral", {}, {}};
    for (std::size_t i = 0; i < dls.size(); ++i) {
        csv << format_real(dls[i]) << "," << format_real(mom[i].mean) << ","
            << format_real(mom[i].std_dev) << "," << format_real(rows[i].two_price) << ","
            << format_real(rows[i].referral) << "\n";
        tp.x.push_back(mom[i].mean);
        tp.y.push_back(rows[i].two_price);
        rf.x.push_back(mom[i].mean);
        rf.y.push_back(rows[i].referral);
    }
    out.csv = csv.str();
    out.svgs.emplace_back("fig6",
                          line_plot_svg("Optimal profit, mean-shifted two-degree network",
                                        "mean degree", "profit", {tp, rf}));
    return out;
}

FigureOutput two_degree_spread(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const OptimizerOptions opts = options_for(cfg);
    const std::vector<double> dus = sweep_values(cfg, 12, 190, 2);
    std::vector<OptimaPair> rows(dus.size());
    std::vector<Moments> mom(dus.size());
    parallel_for(dus.size(), [&](std::size_t i) {
        const DegreeDistribution f = make_two_degree(6, static_cast<int>(dus[i]), 0.1);
        rows[i] = optima(g, f, opts);
        mom[i] = moments(f);
    });

    FigureOutput out;
    out.name = "fig7";
    std::ostringstream csv;
    csv << params_comment(cfg);
    csv << "# family,two_degree d_l=6 q=0.1\n";
    csv << "d_u,mean_degree,std_dev,profit_two_price,profit_referral\n";
    Series tp{"two-price", {}, {}}, rf{"referral", {}, {}};
    for (std::size_t i = 0; i < dus.size(); ++i) {
        csv << format_real(dus[i]) << "," << format_real(mom[i].mean) << ","
            << format_real(mom[i].std_dev) << "," << format_real(rows[i].two_price) << ","
            << format_real(rows[i].referral) << "\n";
        tp.x.push_back(mom[i].mean);
        tp.y.push_back(rows[i].two_price);
        rf.x.push_back(mom[i].mean);
        rf.y.push_back(rows[i].referral);
    }
    out.csv = csv.str();
    out.svgs.emplace_back("fig7",
                          line_plot_svg("Optimal profit, spread two-degree network",
                                        "mean degree", "profit", {tp, rf}));
    return out;
}

FigureOutput capped_profits(const ExperimentConfig& cfg) {
    const GameParams g = build_params(cfg);
    const OptimizerOptions opts = options_for(cfg);
    const int d_max = cfg.distribution ? cfg.distribution->d_max : 200;
    const double r = cfg.distribution && cfg.distribution->r > 0 ? cfg.distribution->r : 2.0;
    const std::vector<double> ms = sweep_values(cfg, 2, 15, 1);
    const std::vector<int>& caps = cfg.figure_caps;

    std::vector<std::vector<double>> rows(ms.size());
    for (auto& row : rows) row.resize(caps.size() + 1);
    parallel_for(ms.size() * (caps.size() + 1), [&](std::size_t idx) {
        const std::size_t mi = idx / (caps.size() + 1);
        const std::size_t ci = idx % (caps.size() + 1);
        const DegreeDistribution f = make_jackson_rogers(ms[mi], r, d_max);
        rows[mi][ci] = ci < caps.size()
                           ? optimize_capped_referral(g, f, caps[ci], opts).best_profit
                           : optimize_referral(g, f, opts).best_profit;
    });

    FigureOutput out;
    out.name = "fig8";
    std::ostringstream csv;
    csv << params_comment(cfg);
    csv << "# family,r=" << format_real(r) << ",d_max=" << d_max << "\n";
    csv << "m";
    for (const int cap : caps) csv << ",profit_cap" << cap;
    csv << ",profit_uncapped\n";
    std::vector<Series> series;
    for (const int cap : caps) series.push_back({"cap " + std::to_string(cap), {}, {}});
    series.push_back({"uncapped", {}, {}});
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        csv << format_real(ms[mi]);
        for (std::size_t ci = 0; ci < caps.size() + 1; ++ci) {
            csv << "," << format_real(rows[mi][ci]);
            series[ci].x.push_back(ms[mi]);
            series[ci].y.push_back(rows[mi][ci]);
        }
        csv << "\n";
    }
    out.csv = csv.str();
    out.svgs.emplace_back("fig8", line_plot_svg("Capped referral profit vs average degree",
                                                "average degree m", "profit", series));
    return out;
}

}  // namespace

FigureOutput make_figure(int id, const ExperimentConfig& cfg) {
    switch (id) {
        case 2: return regular_profits(cfg);
        case 3: return family_profits(cfg);
        case 4: return family_dispersion(cfg);
        case 5: return variance_profits(cfg);
        case 6: return two_degree_shifted(cfg);
        case 7: return two_degree_spread(cfg);
        case 8: return capped_profits(cfg);
        default:
            throw std::invalid_argument("unknown figure id " + std::to_string(id) +
                                        " (expected 2..8)");
    }
}

}  // namespace netadopt::cli
