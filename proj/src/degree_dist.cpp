#include "netadopt/degree_dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "netadopt/io_util.hpp"

namespace netadopt {

namespace {

void check_mass(const std::vector<double>& probs) {
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("degree probability must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > DegreeDistribution::kMassTol)
        throw std::invalid_argument("degree probabilities must sum to 1, got " +
                                    format_real(total));
}

}  // namespace

DegreeDistribution DegreeDistribution::from_pmf(std::vector<std::pair<int, double>> pmf,
                                                bool renormalize) {
    if (pmf.empty()) throw std::invalid_argument("degree distribution needs support");
    std::sort(pmf.begin(), pmf.end());
    DegreeDistribution f;
    f.degrees_.reserve(pmf.size());
    f.probs_.reserve(pmf.size());
    for (const auto& [d, p] : pmf) {
        if (d < 1)
            throw std::invalid_argument("degree must be >= 1 (degree-0 agents are excluded)");
        if (!f.degrees_.empty() && f.degrees_.back() == d)
            throw std::invalid_argument("duplicate degree " + std::to_string(d));
        f.degrees_.push_back(d);
        f.probs_.push_back(p);
    }
    if (renormalize) {
        double total = 0.0;
        for (double p : f.probs_) {
            if (p < 0.0) throw std::invalid_argument("degree weight must be nonnegative");
            total += p;
        }
        if (total <= 0.0) throw std::invalid_argument("degree weights must have positive mass");
        for (double& p : f.probs_) p /= total;
    }
    check_mass(f.probs_);
    f.d_max_ = f.degrees_.back();
    return f;
}

double DegreeDistribution::prob(int degree) const {
    auto it = std::lower_bound(degrees_.begin(), degrees_.end(), degree);
    if (it == degrees_.end() || *it != degree) return 0.0;
    return probs_[static_cast<std::size_t>(it - degrees_.begin())];
}

double EdgePerspectiveDistribution::prob(int degree) const {
    auto it = std::lower_bound(degrees_.begin(), degrees_.end(), degree);
    if (it == degrees_.end() || *it != degree) return 0.0;
    return probs_[static_cast<std::size_t>(it - degrees_.begin())];
}

DegreeDistribution make_regular(int d) {
    if (d < 1) throw std::invalid_argument("regular degree must be >= 1");
    return DegreeDistribution::from_pmf({{d, 1.0}});
}

DegreeDistribution make_two_degree(int d_l, int d_u, double q) {
    if (d_l < 1) throw std::invalid_argument("lower degree must be >= 1");
    if (d_l > d_u) throw std::invalid_argument("two-degree support needs d_l <= d_u");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must lie in [0,1]");
    if (d_l == d_u) return make_regular(d_l);
    return DegreeDistribution::from_pmf({{d_l, 1.0 - q}, {d_u, q}});
}

double jackson_rogers_cdf(double m, double r, int d) {
    if (d <= 0) return 0.0;
    return 1.0 - std::pow(r * m / (d + r * m), 1.0 + r);
}

double jackson_rogers_analytic_mean(double m, double /*r*/) { return m; }

DegreeDistribution make_jackson_rogers(double m, double r, int d_max) {
    if (!(m > 0.0)) throw std::invalid_argument("average degree m must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    if (d_max < 1) throw std::invalid_argument("d_max must be >= 1");
    std::vector<std::pair<int, double>> pmf;
    pmf.reserve(static_cast<std::size_t>(d_max));
    double prev = 0.0;
    for (int d = 1; d <= d_max; ++d) {
        const double cur = jackson_rogers_cdf(m, r, d);
        pmf.emplace_back(d, cur - prev);
        prev = cur;
    }
    return DegreeDistribution::from_pmf(std::move(pmf), /*renormalize=*/true);
}

EdgePerspectiveDistribution edge_perspective(const DegreeDistribution& f) {
    // Mean degree by summation in ascending degree order, then one division
    // per entry; keeps the transform deterministic across platforms.
    double mean = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        mean += static_cast<double>(f.degrees()[i]) * f.probs()[i];
    EdgePerspectiveDistribution tilde;
    tilde.degrees_ = f.degrees();
    tilde.probs_.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        tilde.probs_[i] = static_cast<double>(f.degrees()[i]) * f.probs()[i] / mean;
    return tilde;
}

Moments moments(const DegreeDistribution& f) {
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = static_cast<double>(f.degrees()[i]);
        mean += d * f.probs()[i];
        second += d * d * f.probs()[i];
    }
    const double var = std::max(0.0, second - mean * mean);
    return {mean, std::sqrt(var)};
}

bool fosd_dominates(const EdgePerspectiveDistribution& g,
                    const EdgePerspectiveDistribution& h, double tol) {
    // Walk the union of supports; g dominates iff its CDF never exceeds h's.
    std::size_t ig = 0, ih = 0;
    double cg = 0.0, ch = 0.0;
    while (ig < g.degrees().size() || ih < h.degrees().size()) {
        int d;
        if (ih == h.degrees().size())
            d = g.degrees()[ig];
        else if (ig == g.degrees().size())
            d = h.degrees()[ih];
        else
            d = std::min(g.degrees()[ig], h.degrees()[ih]);
        while (ig < g.degrees().size() && g.degrees()[ig] <= d) cg += g.probs()[ig++];
        while (ih < h.degrees().size() && h.degrees()[ih] <= d) ch += h.probs()[ih++];
        if (cg > ch + tol) return false;
    }
    return true;
}

std::string distribution_csv(const DegreeDistribution& f) {
    std::ostringstream out;
    out << "degree,probability\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << f.degrees()[i] << "," << format_real(f.probs()[i]) << "\n";
    return out.str();
}

DegreeDistribution distribution_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, double>> pmf;
    bool header_seen = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line.find("degree") != std::string::npos) continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 2)
            throw std::invalid_argument("distribution CSV rows need 2 columns, got '" + line + "'");
        pmf.emplace_back(parse_int(cells[0], "degree"), parse_real(cells[1], "probability"));
    }
    return DegreeDistribution::from_pmf(std::move(pmf));
}

}  // namespace netadopt
