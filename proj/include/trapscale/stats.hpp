#ifndef TRAPSCALE_STATS_HPP
#define TRAPSCALE_STATS_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "trapscale/rng.hpp"

namespace trapscale::stats {

// Sorted sample vector with the comparison machinery the verification
// battery needs: ECDF, KS distances, empirical Laplace transform.
class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> samples);

    const std::vector<double>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

    // P{X <= x} under the empirical measure.
    double ecdf(double x) const;

    double quantile(double p) const;

private:
    std::vector<double> samples_;
};

// Two-sided KS statistic against an analytic CDF; the supremum is taken from
// both sides of every jump of the ECDF.
double ks_statistic(const EmpiricalDistribution& a,
                    const std::function<double(double)>& cdf);

// Two-sample KS statistic.
double ks_statistic(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// Asymptotic Kolmogorov critical value: c(level)/sqrt(n) one-sample,
// c(level)*sqrt((n+m)/(n*m)) two-sample.  Pass m = 0 for the one-sample form.
double ks_threshold(std::size_t n, std::size_t m, double level);

struct MeanWithError {
    double mean = 0.0;
    double se = 0.0;
};

// Sample mean and standard error of exp(-lambda * X).
MeanWithError empirical_laplace(const EmpiricalDistribution& a, double lambda);

MeanWithError sample_mean(const std::vector<double>& xs);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool overlaps(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }
};

// Normal-approximation binomial confidence interval, clamped to [0,1].
Interval binomial_ci(std::size_t successes, std::size_t n, double level);

// Percentile bootstrap for an arbitrary statistic of the sample.
Interval bootstrap_ci(const std::vector<double>& samples,
                      const std::function<double(const std::vector<double>&)>& statistic,
                      double level, std::size_t reps, rng::Stream& stream);

// Pearson chi-square goodness of fit.  Returns the p-value; dof defaults to
// (#bins - 1).  Expected counts must be positive.
double chi_square_pvalue(const std::vector<double>& observed,
                         const std::vector<double>& expected, int dof = -1);

// Chi-square fit of integer counts against a geometric law on {1,2,...} with
// the given success probability, pooling sparse tail bins.
double geometric_chi_square_pvalue(const std::vector<long long>& values, double success,
                                   double min_expected = 5.0);

// Spearman rank correlation of consecutive pairs; returns the two-sided
// p-value of the large-sample normal test for zero correlation.
double spearman_pvalue(const std::vector<double>& x, const std::vector<double>& y);

// Pool-adjacent-violators: least-squares nonincreasing fit.
std::vector<double> isotonic_nonincreasing(const std::vector<double>& values);

} // namespace trapscale::stats

#endif
