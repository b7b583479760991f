#include "netadopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "search_util.hpp"

namespace netadopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kProfitTieTol = 1e-12;
constexpr double kMassTol = 1e-11;

struct Support {
    std::vector<int> deg;
    std::vector<double> fm;  // f(d)
    std::vector<double> tm;  // edge-perspective mass
    std::size_t n = 0;
    int d_top = 0;

    explicit Support(const DegreeDistribution& f)
        : deg(f.degrees()), fm(f.probs()), n(f.size()), d_top(f.d_max()) {
        const EdgePerspectiveDistribution t = edge_perspective(f);
        tm = t.probs();
    }
};

// A fully specified candidate: policy, sustained pattern, profit.
struct Candidate {
    bool valid = false;
    PricingPolicy policy;
    double profit = kNegInf;
    std::vector<double> mu;
    double alpha = 0.0;
    int mix_idx = -1;  // support index of the interior-weight degree, -1 if none
    double mix_w = 0.0;
};

// Deterministic ordering: profit first, then smaller eta, larger P1, larger P0.
bool better(const Candidate& a, const Candidate& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.profit > b.profit + kProfitTieTol) return true;
    if (a.profit < b.profit - kProfitTieTol) return false;
    if (a.policy.eta < b.policy.eta - 1e-15) return true;
    if (a.policy.eta > b.policy.eta + 1e-15) return false;
    if (a.policy.p1 > b.policy.p1 + 1e-15) return true;
    if (a.policy.p1 < b.policy.p1 - 1e-15) return false;
    return a.policy.p0 > b.policy.p0 + 1e-15;
}

double informed_scale(const OptimizerOptions& opts, const GameParams& params) {
    return opts.monopolist_informed ? 1.0 : params.prior_high;
}

// Referral expectations per support degree at neighbor-miss probability s.
void referral_row(const Support& s, double miss, std::optional<int> cap,
                  std::vector<double>& out) {
    out.resize(s.n);
    for (std::size_t i = 0; i < s.n; ++i)
        out[i] = expected_capped_referrals(s.deg[i], miss, cap);
}

void power_row(const Support& s, double miss, std::vector<double>& out) {
    out.resize(s.n);
    for (std::size_t i = 0; i < s.n; ++i)
        out[i] = std::pow(miss, s.deg[i]);
}

/* Referral-class evaluation at a fixed price P and informational access
 * alpha.  Writing the early-adoption gain as C(d) + eta * p * B(d) with
 * B(d) the expected referral count, each degree activates once eta passes
 * -C(d)/(p B(d)); walking degrees in activation order until their edge mass
 * crosses alpha yields the unique sustainable pattern, its marginal (mixing)
 * degree, and the fee the marginal degree's indifference requires.  Degrees
 * whose C(d) is already positive must adopt outright, so alpha below their
 * mass is infeasible.  With a cap, B(d) is no longer proportional to d and
 * the activation order can interleave, which is exactly the three-threshold
 * behavior capped referrals allow.
 */
Candidate eval_referral_point(const GameParams& params, const Support& s, double price,
                              double alpha, const std::vector<double>& powers,
                              const std::vector<double>& referrals,
                              const OptimizerOptions& opts) {
    Candidate cand;
    const double p = params.prior_high;
    const double late_gain = params.a1_high - price;

    double strict_mass = 0.0;
    std::vector<double> c(s.n), r(s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        c[i] = params.a_bar - price - p * (1.0 - powers[i]) * late_gain;
        r[i] = p * referrals[i];
        if (c[i] > 1e-12) strict_mass += s.tm[i];
    }
    if (strict_mass > alpha + kMassTol) return cand;  // forced adopters exceed alpha

    std::vector<std::size_t> order;
    order.reserve(s.n);
    std::vector<double> activation(s.n, 0.0);
    for (std::size_t i = 0; i < s.n; ++i) {
        if (c[i] > 1e-12) continue;
        order.push_back(i);
        activation[i] = r[i] > 0.0 ? std::max(0.0, -c[i] / r[i]) : kNegInf;
        if (r[i] <= 0.0 && c[i] < -1e-12) activation[i] = std::numeric_limits<double>::max();
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (activation[a] != activation[b]) return activation[a] < activation[b];
        return s.deg[a] < s.deg[b];
    });

    cand.mu.assign(s.n, 0.0);
    double eta = 0.0;
    double covered = strict_mass;
    for (std::size_t i = 0; i < s.n; ++i)
        if (c[i] > 1e-12) cand.mu[i] = 1.0;
    for (std::size_t i : order) {
        if (covered >= alpha - kMassTol) break;
        const double need = alpha - covered;
        if (activation[i] == std::numeric_limits<double>::max()) return cand;  // no fee works
        if (s.tm[i] <= 0.0) continue;
        if (need >= s.tm[i] - kMassTol) {
            cand.mu[i] = 1.0;
            covered += s.tm[i];
            eta = activation[i];
        } else {
            cand.mu[i] = need / s.tm[i];
            cand.mix_idx = static_cast<int>(i);
            cand.mix_w = cand.mu[i];
            eta = activation[i];
            covered = alpha;
        }
    }
    if (covered < alpha - kMassTol) return cand;

    double beta = 0.0, gamma = 0.0, phi = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        beta += s.fm[i] * cand.mu[i];
        gamma += s.fm[i] * (1.0 - cand.mu[i]) * (1.0 - powers[i]);
        phi += s.fm[i] * cand.mu[i] * referrals[i];
    }
    const double scale = informed_scale(opts, params);
    cand.valid = true;
    cand.alpha = alpha;
    cand.policy = PricingPolicy{price, price, eta, opts.referral_cap,
                                opts.monopolist_informed};
    cand.profit = beta * price + scale * (gamma * price - phi * eta);
    return cand;
}

// Rows of powers/referral expectations for the shared alpha grid, built once
// per optimize call and reused across the whole price grid.
struct AlphaGridCache {
    const Support& s;
    std::optional<int> cap;
    int grid;
    std::vector<std::vector<double>> powers;
    std::vector<std::vector<double>> referrals;

    AlphaGridCache(const Support& sup, std::optional<int> c, int g)
        : s(sup), cap(c), grid(g), powers(g), referrals(g) {
        for (int j = 0; j < g; ++j) {
            const double alpha = static_cast<double>(j) / g;
            power_row(s, 1.0 - alpha, powers[j]);
            referral_row(s, 1.0 - alpha, cap, referrals[j]);
        }
    }
};

Candidate eval_referral_alpha(const GameParams& params, const Support& s, double price,
                              double alpha, const OptimizerOptions& opts,
                              std::vector<double>& pow_buf, std::vector<double>& ref_buf) {
    power_row(s, 1.0 - alpha, pow_buf);
    referral_row(s, 1.0 - alpha, opts.referral_cap, ref_buf);
    return eval_referral_point(params, s, price, alpha, pow_buf, ref_buf, opts);
}

Candidate corner_candidate(const GameParams& params, const Support& s, double price,
                           const OptimizerOptions& opts) {
    Candidate cand;
    if (params.a_bar - price < params.prior_high * (params.a1_high - price)) return cand;
    cand.valid = true;
    cand.alpha = 1.0;
    cand.mu.assign(s.n, 1.0);
    cand.policy =
        PricingPolicy{price, price, 0.0, opts.referral_cap, opts.monopolist_informed};
    cand.profit = price;
    return cand;
}

// Best referral candidate at one price: alpha-grid scan, golden refinement
// around the best cell, then a polish pass at the winning pattern's exact
// mass boundaries (patterns with no interior weight sit exactly there).
Candidate referral_inner(const GameParams& params, const Support& s, double price,
                         const OptimizerOptions& opts, const AlphaGridCache* cache) {
    Candidate best = corner_candidate(params, s, price, opts);
    std::vector<double> pow_buf, ref_buf;
    const int grid = std::max(16, opts.alpha_grid);
    int best_j = -1;
    for (int j = 0; j < grid; ++j) {
        const double alpha = static_cast<double>(j) / grid;
        Candidate cand =
            cache && cache->grid == grid
                ? eval_referral_point(params, s, price, alpha, cache->powers[j],
                                      cache->referrals[j], opts)
                : eval_referral_alpha(params, s, price, alpha, opts, pow_buf, ref_buf);
        if (better(cand, best)) {
            best = cand;
            best_j = j;
        }
    }
    if (best_j >= 0) {
        const double lo = std::max(0.0, (best_j - 1.0) / grid);
        const double hi = std::min(1.0 - 1e-12, (best_j + 1.0) / grid);
        auto profit_at = [&](double a) {
            const Candidate cand =
                eval_referral_alpha(params, s, price, a, opts, pow_buf, ref_buf);
            return cand.valid ? cand.profit : kNegInf;
        };
        auto [a_ref, val] = detail::golden_max(profit_at, lo, hi, 1e-10);
        (void)val;
        Candidate cand = eval_referral_alpha(params, s, price, a_ref, opts, pow_buf, ref_buf);
        if (better(cand, best)) best = cand;
    }
    if (best.valid && !best.mu.empty()) {
        // Exact boundary alphas of the winning pattern.
        double boundary = 0.0;
        for (std::size_t i = 0; i < s.n; ++i)
            if (best.mu[i] >= 1.0 - 1e-12) boundary += s.tm[i];
        for (const double a : {boundary, std::min(1.0 - 1e-15, best.alpha)}) {
            if (a < 0.0 || a >= 1.0) continue;
            Candidate cand = eval_referral_alpha(params, s, price, a, opts, pow_buf, ref_buf);
            if (better(cand, best)) best = cand;
        }
    }
    return best;
}

std::vector<Action> actions_from_policy(const GameParams& params,
                                        const PricingPolicy& policy, double alpha,
                                        int d_top) {
    std::vector<Action> actions(static_cast<std::size_t>(d_top));
    for (int d = 1; d <= d_top; ++d)
        actions[static_cast<std::size_t>(d - 1)] =
            best_response(params, policy, alpha, d);
    return actions;
}

MeanFieldEquilibrium candidate_equilibrium(const Support& s, const Candidate& cand,
                                           const std::vector<Action>& actions) {
    MeanFieldEquilibrium eq;
    eq.strategy.degrees = s.deg;
    eq.strategy.mu = cand.mu;
    eq.alpha_star = cand.alpha;
    std::tie(eq.d_lower, eq.d_upper) = label_thresholds(actions);
    for (std::size_t i = 0; i < s.n; ++i)
        if (cand.mu[i] > 1e-12 && cand.mu[i] < 1.0 - 1e-12)
            eq.mixing.emplace_back(s.deg[i], cand.mu[i]);
    return eq;
}

TraceEntry trace_from_candidate(const GameParams& params, const Support& s,
                                const Candidate& cand) {
    TraceEntry e;
    e.policy = cand.policy;
    e.profit = cand.valid ? cand.profit : 0.0;
    e.feasible = cand.valid;
    if (cand.valid) {
        const auto actions = actions_from_policy(params, cand.policy, cand.alpha, s.d_top);
        std::tie(e.d_lower, e.d_upper) = label_thresholds(actions);
        if (cand.mix_idx >= 0) {
            e.mixing_degree = s.deg[static_cast<std::size_t>(cand.mix_idx)];
            e.mixing_weight = cand.mix_w;
        }
    }
    return e;
}

OptimizationResult finish(const GameParams& params, const Support& s, Candidate best,
                          std::vector<TraceEntry> trace, const std::string& diag) {
    OptimizationResult result;
    result.trace = std::move(trace);
    if (!best.valid) {
        result.best_policy = PricingPolicy{};
        result.best_profit = 0.0;
        result.diagnostic = diag.empty() ? "no feasible adoption pattern found" : diag;
        result.equilibrium.strategy.degrees = s.deg;
        result.equilibrium.strategy.mu.assign(s.n, 0.0);
        return result;
    }
    result.best_policy = best.policy;
    result.best_profit = best.profit;
    result.equilibrium = candidate_equilibrium(
        s, best, actions_from_policy(params, best.policy, best.alpha, s.d_top));
    return result;
}

/* Full-class evaluation of one pattern at fixed P1 and mixing weight w.
 * The mixing degree's indifference pins P0 as a function of eta; every other
 * degree's weak best response is then linear in eta, giving an interval
 * [eta_lo, eta_hi].  Profit is linear in eta as well, so the optimum sits at
 * an endpoint: either eta = 0 / a second degree's indifference (eta_hi) or
 * the smallest feasible fee.
 */
Candidate eval_full_pattern(const GameParams& params, const Support& s, double p1,
                            std::size_t i, std::size_t j, std::size_t m, double w,
                            const OptimizerOptions& opts, std::vector<double>& pow_buf,
                            std::vector<double>& ref_buf) {
    Candidate cand;
    const double p = params.prior_high;

    double alpha = s.tm[m] * w;
    for (std::size_t k = 0; k < s.n; ++k)
        if (k < i || k >= j) alpha += s.tm[k];
    if (alpha > 1.0) alpha = 1.0;
    const double miss = 1.0 - alpha;

    power_row(s, miss, pow_buf);
    referral_row(s, miss, opts.referral_cap, ref_buf);

    const double rm = p * ref_buf[m];
    const double wm = 1.0 - pow_buf[m];
    const double late_gain = params.a1_high - p1;

    double eta_lo = 0.0, eta_hi = std::numeric_limits<double>::max();
    for (std::size_t k = 0; k < s.n; ++k) {
        if (k == m) continue;
        const bool adopts = k < i || k >= j;
        const double coef = p * ref_buf[k] - rm;
        const double c0 = p * late_gain * (wm - (1.0 - pow_buf[k]));
        // adopts: need coef*eta + c0 >= -tol; defers: <= tol.
        if (std::abs(coef) < 1e-14) {
            if (adopts ? c0 < -kIndiffTol : c0 > kIndiffTol) return cand;
            continue;
        }
        const double bound_adopt = (-kIndiffTol - c0) / coef;
        const double bound_defer = (kIndiffTol - c0) / coef;
        if (adopts) {
            if (coef > 0.0)
                eta_lo = std::max(eta_lo, bound_adopt);
            else
                eta_hi = std::min(eta_hi, bound_adopt);
        } else {
            if (coef > 0.0)
                eta_hi = std::min(eta_hi, bound_defer);
            else
                eta_lo = std::max(eta_lo, bound_defer);
        }
    }
    if (eta_lo > eta_hi + 1e-12) return cand;
    eta_hi = std::max(eta_hi, eta_lo);

    cand.mu.assign(s.n, 0.0);
    double beta = 0.0, gamma = 0.0, phi = 0.0;
    for (std::size_t k = 0; k < s.n; ++k) {
        cand.mu[k] = (k < i || k >= j) ? 1.0 : 0.0;
        if (k == m) cand.mu[k] = w;
        beta += s.fm[k] * cand.mu[k];
        gamma += s.fm[k] * (1.0 - cand.mu[k]) * (1.0 - pow_buf[k]);
        phi += s.fm[k] * cand.mu[k] * ref_buf[k];
    }

    const double scale = informed_scale(opts, params);
    // P0(eta) = a_bar + eta*rm - p*wm*late_gain, so profit slope in eta is
    // beta*rm - scale*phi.
    const double slope = beta * rm - scale * phi;
    double eta = slope > 1e-15 ? eta_hi : eta_lo;
    if (eta == std::numeric_limits<double>::max()) return cand;  // unbounded direction
    eta = std::max(0.0, eta);
    const double p0 = params.a_bar + eta * rm - p * wm * late_gain;

    cand.valid = true;
    cand.alpha = alpha;
    cand.policy = PricingPolicy{p0, p1, eta, opts.referral_cap, opts.monopolist_informed};
    cand.profit = beta * p0 + scale * (gamma * p1 - phi * eta);
    if (w > 1e-12 && w < 1.0 - 1e-12) {
        cand.mix_idx = static_cast<int>(m);
        cand.mix_w = w;
    }
    return cand;
}

Candidate full_inner(const GameParams& params, const Support& s, double p1,
                     const OptimizerOptions& opts) {
    Candidate best;
    std::vector<double> pow_buf, ref_buf;
    const int wg = std::max(8, opts.weight_grid / 8);
    for (std::size_t i = 0; i <= s.n; ++i) {
        for (std::size_t j = i; j <= s.n; ++j) {
            std::vector<std::size_t> mixes;
            if (i < j) {
                mixes.push_back(i);
                if (j - 1 != i) mixes.push_back(j - 1);
            } else if (i == s.n) {
                // all-adopt pattern: bind at the top degree with full weight
                mixes.push_back(s.n - 1);
            }
            for (std::size_t m : mixes) {
                const bool all_adopt = i == s.n;
                auto eval_w = [&](double w) {
                    return eval_full_pattern(params, s, p1, all_adopt ? s.n - 1 : i,
                                             all_adopt ? s.n : j, m, w, opts, pow_buf,
                                             ref_buf);
                };
                if (all_adopt) {
                    Candidate cand = eval_w(1.0);
                    if (better(cand, best)) best = cand;
                    continue;
                }
                int best_g = -1;
                for (int g = 0; g <= wg; ++g) {
                    Candidate cand = eval_w(static_cast<double>(g) / wg);
                    if (better(cand, best)) {
                        best = cand;
                        best_g = g;
                    }
                }
                if (best_g >= 0) {
                    auto profit_w = [&](double w) {
                        const Candidate cand = eval_w(w);
                        return cand.valid ? cand.profit : kNegInf;
                    };
                    auto [w_ref, val] = detail::golden_max(
                        profit_w, std::max(0.0, (best_g - 1.0) / wg),
                        std::min(1.0, (best_g + 1.0) / wg), 1e-12);
                    (void)val;
                    Candidate cand = eval_w(w_ref);
                    if (better(cand, best)) best = cand;
                }
            }
        }
    }
    return best;
}

}  // namespace

OptimizationResult optimize_two_price(const GameParams& params,
                                      const DegreeDistribution& f,
                                      const OptimizerOptions& opts) {
    const Support s(f);
    const double p0 = params.a_bar, p1 = params.a1_high;
    const double scale = informed_scale(opts, params);

    std::vector<double> prefix_t(s.n + 1, 0.0), prefix_f(s.n + 1, 0.0);
    for (std::size_t i = 0; i < s.n; ++i) {
        prefix_t[i + 1] = prefix_t[i] + s.tm[i];
        prefix_f[i + 1] = prefix_f[i] + s.fm[i];
    }

    // Lower-threshold pattern: indices below k adopt, degree k mixes with
    // weight w.  Value of the limit-profit functional at prices (a_bar, A1H).
    auto value = [&](std::size_t k, double w, Candidate& out) {
        const double alpha = prefix_t[k] + s.tm[k] * w;
        const double beta = prefix_f[k] + s.fm[k] * w;
        double gamma = s.fm[k] * (1.0 - w) * (1.0 - std::pow(1.0 - alpha, s.deg[k]));
        for (std::size_t i = k + 1; i < s.n; ++i)
            gamma += s.fm[i] * (1.0 - std::pow(1.0 - alpha, s.deg[i]));
        out.valid = true;
        out.alpha = alpha;
        out.profit = beta * p0 + scale * gamma * p1;
        out.policy = PricingPolicy{p0, p1, 0.0, std::nullopt, opts.monopolist_informed};
        out.mu.assign(s.n, 0.0);
        for (std::size_t i = 0; i < k; ++i) out.mu[i] = 1.0;
        out.mu[k] = w;
        if (w > 1e-12 && w < 1.0 - 1e-12) {
            out.mix_idx = static_cast<int>(k);
            out.mix_w = w;
        }
        return out.profit;
    };

    Candidate best;
    std::vector<TraceEntry> trace;
    Candidate scratch;
    for (std::size_t k = 0; k < s.n; ++k) {
        Candidate k_best;
        int best_g = -1;
        const int wg = std::max(16, opts.weight_grid);
        for (int g = 0; g <= wg; ++g) {
            scratch = Candidate{};
            value(k, static_cast<double>(g) / wg, scratch);
            if (better(scratch, k_best)) {
                k_best = scratch;
                best_g = g;
            }
        }
        auto profit_w = [&](double w) {
            Candidate c;
            return value(k, w, c);
        };
        auto [w_ref, val] = detail::golden_max(profit_w,
                                               std::max(0.0, (best_g - 1.0) / wg),
                                               std::min(1.0, (best_g + 1.0) / wg), 1e-12);
        (void)val;
        scratch = Candidate{};
        value(k, w_ref, scratch);
        if (better(scratch, k_best)) k_best = scratch;

        // Pattern labels: everything below the mixing degree adopts.
        TraceEntry e;
        e.policy = k_best.policy;
        e.profit = k_best.profit;
        e.d_lower = k_best.alpha >= 1.0 - 1e-12 ? kDegreeInf : s.deg[k];
        e.d_upper = kDegreeInf;
        if (k_best.mix_idx >= 0) {
            e.mixing_degree = s.deg[static_cast<std::size_t>(k_best.mix_idx)];
            e.mixing_weight = k_best.mix_w;
        }
        trace.push_back(e);
        if (better(k_best, best)) best = k_best;
    }

    OptimizationResult result;
    result.trace = std::move(trace);
    result.best_policy = best.policy;
    result.best_profit = best.profit;

    std::vector<Action> actions(static_cast<std::size_t>(s.d_top), Action::defer);
    const int mix_deg = best.mix_idx >= 0 ? s.deg[static_cast<std::size_t>(best.mix_idx)]
                                          : 0;
    int lowest_defer = kDegreeInf;
    for (std::size_t i = 0; i < s.n; ++i)
        if (best.mu[i] <= 1e-12) { lowest_defer = s.deg[i]; break; }
    for (int d = 1; d <= s.d_top; ++d) {
        if (d == mix_deg)
            actions[static_cast<std::size_t>(d - 1)] = Action::indifferent;
        else if (d < std::min(lowest_defer, mix_deg == 0 ? kDegreeInf : mix_deg))
            actions[static_cast<std::size_t>(d - 1)] = Action::adopt;
        else if (lowest_defer == kDegreeInf && d != mix_deg)
            actions[static_cast<std::size_t>(d - 1)] = Action::adopt;
    }
    result.equilibrium = candidate_equilibrium(s, best, actions);
    return result;
}

OptimizationResult optimize_referral(const GameParams& params,
                                     const DegreeDistribution& f,
                                     const OptimizerOptions& opts) {
    const Support s(f);
    const int grid = std::max(2, opts.price_grid - 1);
    const AlphaGridCache cache(s, opts.referral_cap, std::max(16, opts.alpha_grid));

    Candidate best;
    int best_i = -1;
    std::vector<TraceEntry> trace;
    trace.reserve(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
        const double price = params.a1_high * static_cast<double>(i) / grid;
        Candidate cand = referral_inner(params, s, price, opts, &cache);
        trace.push_back(trace_from_candidate(params, s, cand));
        if (better(cand, best)) {
            best = cand;
            best_i = i;
        }
    }
    if (best_i >= 0) {
        const double step = params.a1_high / grid;
        const double lo = std::max(0.0, best.policy.p0 - step);
        const double hi = std::min(params.a1_high, best.policy.p0 + step);
        auto profit_p = [&](double price) {
            const Candidate cand = referral_inner(params, s, price, opts, &cache);
            return cand.valid ? cand.profit : kNegInf;
        };
        auto [p_ref, val] = detail::golden_max(profit_p, lo, hi, opts.price_refine_tol);
        (void)val;
        Candidate cand = referral_inner(params, s, p_ref, opts, &cache);
        if (better(cand, best)) best = cand;
    }
    return finish(params, s, best, std::move(trace),
                  best.valid ? "" : "no feasible referral pattern on the price grid");
}

OptimizationResult optimize_full(const GameParams& params, const DegreeDistribution& f,
                                 const OptimizerOptions& opts) {
    const Support s(f);
    const int grid = std::max(2, opts.price_grid - 1);

    Candidate best;
    std::vector<TraceEntry> trace;
    trace.reserve(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
        const double p1 = params.a1_high * static_cast<double>(i) / grid;
        Candidate cand = full_inner(params, s, p1, opts);
        trace.push_back(trace_from_candidate(params, s, cand));
        if (better(cand, best)) best = cand;
    }
    if (best.valid) {
        const double step = params.a1_high / grid;
        auto profit_p1 = [&](double p1) {
            const Candidate cand = full_inner(params, s, p1, opts);
            return cand.valid ? cand.profit : kNegInf;
        };
        auto [p_ref, val] = detail::golden_max(
            profit_p1, std::max(0.0, best.policy.p1 - step),
            std::min(params.a1_high, best.policy.p1 + step), opts.price_refine_tol);
        (void)val;
        Candidate cand = full_inner(params, s, p_ref, opts);
        if (better(cand, best)) best = cand;
    }
    return finish(params, s, best, std::move(trace),
                  best.valid ? "" : "no feasible pattern on the P1 grid");
}

OptimizationResult optimize_capped_referral(const GameParams& params,
                                            const DegreeDistribution& f, int referral_cap,
                                            const OptimizerOptions& opts) {
    if (referral_cap < 1) throw std::invalid_argument("referral cap must be >= 1");
    OptimizerOptions capped = opts;
    capped.referral_cap = referral_cap;
    return optimize_referral(params, f, capped);
}

std::string trace_csv(const OptimizationResult& result) {
    std::ostringstream out;
    out << "P0,P1,eta,d_L,d_U,mixing_degree,mixing_weight,profit\n";
    for (const TraceEntry& e : result.trace) {
        out << format_real(e.policy.p0) << "," << format_real(e.policy.p1) << ","
            << format_real(e.policy.eta) << "," << format_degree(e.d_lower) << ","
            << format_degree(e.d_upper) << "," << e.mixing_degree << ","
            << format_real(e.mixing_weight) << ","
            << (e.feasible ? format_real(e.profit) : "nan") << "\n";
    }
    return out.str();
}

}  // namespace netadopt
