#include "netadopt/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace netadopt {

namespace {

double phi_max(const GameParams& params, const PricingPolicy& policy,
               const EdgePerspectiveDistribution& f_tilde, double alpha) {
    double mass = 0.0;
    for (std::size_t i = 0; i < f_tilde.degrees().size(); ++i)
        if (delta_payoff(params, policy, alpha, f_tilde.degrees()[i]) >= 0.0)
            mass += f_tilde.probs()[i];
    return mass;
}

MeanFieldEquilibrium full_adoption(const DegreeDistribution& f) {
    MeanFieldEquilibrium eq;
    eq.strategy.degrees = f.degrees();
    eq.strategy.mu.assign(f.size(), 1.0);
    eq.alpha_star = 1.0;
    eq.d_lower = kDegreeInf;
    eq.d_upper = kDegreeInf;
    return eq;
}

}  // namespace

double MeanFieldStrategy::at(int degree) const {
    auto it = std::lower_bound(degrees.begin(), degrees.end(), degree);
    if (it == degrees.end() || *it != degree)
        throw std::invalid_argument("degree " + std::to_string(degree) +
                                    " is not in the strategy's support");
    return mu[static_cast<std::size_t>(it - degrees.begin())];
}

std::pair<int, int> label_thresholds(const std::vector<Action>& actions) {
    const int top = static_cast<int>(actions.size());
    auto at = [&](int d) { return actions[static_cast<std::size_t>(d - 1)]; };

    int prefix_end = 0;
    while (prefix_end < top && at(prefix_end + 1) == Action::adopt) ++prefix_end;
    if (prefix_end == top) return {kDegreeInf, kDegreeInf};

    int suffix_start = top + 1;
    while (suffix_start > 1 && at(suffix_start - 1) == Action::adopt) --suffix_start;

    int d_upper;
    if (suffix_start <= top) {
        d_upper = suffix_start - 1;
    } else if (at(top) == Action::indifferent) {
        // Mixing at the top of the support is an upper threshold only when a
        // strict defer region separates it from the adopt prefix; otherwise
        // it is the lower threshold's own mixing degree.
        bool defer_between = false;
        for (int d = prefix_end + 1; d < top; ++d)
            if (at(d) == Action::defer) defer_between = true;
        d_upper = defer_between ? top : kDegreeInf;
    } else {
        d_upper = kDegreeInf;
    }

    int d_lower;
    if (prefix_end >= 1)
        d_lower = prefix_end + 1;
    else if (at(1) == Action::defer)
        d_lower = 0;
    else
        d_lower = d_upper <= 1 ? 0 : 1;
    return {d_lower, d_upper};
}

MeanFieldEquilibrium solve_equilibrium(const GameParams& params,
                                       const PricingPolicy& policy,
                                       const DegreeDistribution& f,
                                       const SolverOptions& opts) {
    policy.validate();

    // Corner: every agent weakly prefers adopting even with all neighbors
    // informed, so alpha = 1 regardless of the distribution.
    if (params.a_bar - policy.p0 >= params.prior_high * (params.a1_high - policy.p1))
        return full_adoption(f);

    const EdgePerspectiveDistribution f_tilde = edge_perspective(f);

    // alpha* = sup { a : Phi_max(a) >= a }; Phi_max is nonincreasing, so the
    // predicate flips exactly once.
    double lo = 0.0, hi = 1.0;
    int it = 0;
    while (hi - lo > opts.alpha_tol && it < opts.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        if (phi_max(params, policy, f_tilde, mid) >= mid)
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    if (hi - lo > opts.alpha_tol)
        throw SolveError("equilibrium bisection did not converge", lo, hi);
    const double alpha = lo;

    // Classify against both bracket ends: a degree counts as strict only if
    // its preference survives on the far side of the bracket, which keeps
    // degrees whose indifference point lies inside the bracket mixable.
    const int d_top = f.d_max();
    std::vector<Action> actions(static_cast<std::size_t>(d_top), Action::indifferent);
    for (int d = 1; d <= d_top; ++d) {
        if (delta_payoff(params, policy, hi, d) > opts.indiff_tol)
            actions[static_cast<std::size_t>(d - 1)] = Action::adopt;
        else if (delta_payoff(params, policy, lo, d) < -opts.indiff_tol)
            actions[static_cast<std::size_t>(d - 1)] = Action::defer;
    }

    MeanFieldEquilibrium eq;
    eq.alpha_star = alpha;
    eq.strategy.degrees = f.degrees();
    eq.strategy.mu.assign(f.size(), 0.0);

    double strict_mass = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (actions[static_cast<std::size_t>(f.degrees()[i] - 1)] == Action::adopt) {
            eq.strategy.mu[i] = 1.0;
            strict_mass += f_tilde.probs()[i];
        }

    // Interior weights at indifferent degrees, filled in ascending degree
    // order until the edge-perspective adopter mass meets alpha*.
    double residual = alpha - strict_mass;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (actions[static_cast<std::size_t>(f.degrees()[i] - 1)] != Action::indifferent)
            continue;
        if (f_tilde.probs()[i] <= 0.0) continue;
        const double w = std::clamp(residual / f_tilde.probs()[i], 0.0, 1.0);
        eq.strategy.mu[i] = w;
        residual -= w * f_tilde.probs()[i];
        if (w > 0.0 && w < 1.0) eq.mixing.emplace_back(f.degrees()[i], w);
    }

    const double achieved = informational_access(eq.strategy, f_tilde);
    if (std::abs(achieved - alpha) > 1e-7)
        throw SolveError("equilibrium strategy is inconsistent with alpha* = " +
                             format_real(alpha) + ", achieved " + format_real(achieved),
                         lo, hi);

    std::tie(eq.d_lower, eq.d_upper) = label_thresholds(actions);
    return eq;
}

std::pair<int, int> thresholds(const MeanFieldEquilibrium& eq) {
    return {eq.d_lower, eq.d_upper};
}

double informational_access(const MeanFieldStrategy& mu,
                            const EdgePerspectiveDistribution& f_tilde) {
    if (mu.degrees != f_tilde.degrees())
        throw std::invalid_argument("strategy and edge-perspective supports differ");
    double alpha = 0.0;
    for (std::size_t i = 0; i < mu.mu.size(); ++i) alpha += f_tilde.probs()[i] * mu.mu[i];
    return alpha;
}

double early_fraction(const MeanFieldStrategy& mu, const DegreeDistribution& f) {
    if (mu.degrees != f.degrees())
        throw std::invalid_argument("strategy and distribution supports differ");
    double beta = 0.0;
    for (std::size_t i = 0; i < mu.mu.size(); ++i) beta += f.probs()[i] * mu.mu[i];
    return beta;
}

std::optional<double> informational_efficiency(const MeanFieldStrategy& mu,
                                               const DegreeDistribution& f) {
    const double beta = early_fraction(mu, f);
    if (beta <= 0.0) return std::nullopt;
    return informational_access(mu, edge_perspective(f)) / beta;
}

std::string equilibrium_csv(const MeanFieldEquilibrium& eq, const GameParams& params,
                            const PricingPolicy& policy, const DegreeDistribution& f) {
    std::ostringstream out;
    out << "# alpha_star," << format_real(eq.alpha_star) << "\n";
    out << "# d_L," << format_degree(eq.d_lower) << "\n";
    out << "# d_U," << format_degree(eq.d_upper) << "\n";
    out << "degree,mu,delta_payoff\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const int d = f.degrees()[i];
        out << d << "," << format_real(eq.strategy.mu[i]) << ","
            << format_real(delta_payoff(params, policy, eq.alpha_star, d)) << "\n";
    }
    return out.str();
}

}  // namespace netadopt
