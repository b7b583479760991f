#pragma once

#include <string>
#include <utility>
#include <vector>

namespace netadopt {

/** Probability mass over node degrees.
 *
 * Degrees are positive integers; degree-0 agents are excluded from the model
 * so no mass may sit at 0.  Masses are stored in ascending degree order and
 * must sum to one within kMassTol.  Zero-mass degrees are legal and are kept
 * as explicit support entries.  Instances are immutable after construction
 * and safe to share across threads.
 */
class DegreeDistribution {
  public:
    static constexpr double kMassTol = 1e-12;

    /// Builds a distribution from (degree, probability) pairs.  Pairs may be
    /// unordered; duplicates are rejected.  With renormalize=true the weights
    /// are scaled to sum to one first.
    static DegreeDistribution from_pmf(std::vector<std::pair<int, double>> pmf,
                                       bool renormalize = false);

    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<double>& probs() const { return probs_; }
    int d_max() const { return d_max_; }
    std::size_t size() const { return degrees_.size(); }

    /// Probability at a degree (0 for degrees outside the support).
    double prob(int degree) const;

  private:
    DegreeDistribution() = default;
    std::vector<int> degrees_;
    std::vector<double> probs_;
    int d_max_ = 0;
};

/** Degree distribution of a random neighbor: mass proportional to d*f(d). */
class EdgePerspectiveDistribution {
  public:
    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<double>& probs() const { return probs_; }
    double prob(int degree) const;

  private:
    friend EdgePerspectiveDistribution edge_perspective(const DegreeDistribution&);
    std::vector<int> degrees_;
    std::vector<double> probs_;
};

/// Point mass at degree d (a d-regular network).
DegreeDistribution make_regular(int d);

/// Mass q at d_u and 1-q at d_l, with 1 <= d_l <= d_u.
DegreeDistribution make_two_degree(int d_l, int d_u, double q);

/// Truncation of the two-parameter network-formation family with CDF
/// F(d) = 1 - (rm/(d+rm))^(1+r) to degrees 1..d_max, renormalized over that
/// support.  m is the average degree of the untruncated distribution.
DegreeDistribution make_jackson_rogers(double m, double r, int d_max = 200);

/// Untruncated CDF of the family above, F(d) for integer d >= 0.
double jackson_rogers_cdf(double m, double r, int d);

/// Mean of the untruncated (analytic) distribution; equals m for every r.
double jackson_rogers_analytic_mean(double m, double r);

EdgePerspectiveDistribution edge_perspective(const DegreeDistribution& f);

struct Moments {
    double mean = 0.0;
    double std_dev = 0.0;
};

Moments moments(const DegreeDistribution& f);

/// True iff g first-order stochastically dominates h (weakly): the CDF of g
/// lies at or below the CDF of h at every degree, within tol.
bool fosd_dominates(const EdgePerspectiveDistribution& g,
                    const EdgePerspectiveDistribution& h, double tol = 1e-12);

/// CSV with header "degree,probability", rows ascending, 17 significant digits.
std::string distribution_csv(const DegreeDistribution& f);

/// Parses the CSV format written by distribution_csv ('#' lines are skipped).
DegreeDistribution distribution_from_csv(const std::string& text);

}  // namespace netadopt
