#include "trapscale/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "trapscale/numerics.hpp"

namespace trapscale::stats {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty())
        throw std::domain_error("EmpiricalDistribution: need at least one sample");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::ecdf(double x) const {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::quantile(double p) const {
    if (p < 0.0 || p > 1.0) throw std::domain_error("quantile: p outside [0,1]");
    const auto n = samples_.size();
    const std::size_t k = std::min<std::size_t>(n - 1, static_cast<std::size_t>(p * n));
    return samples_[k];
}

double ks_statistic(const EmpiricalDistribution& a,
                    const std::function<double(double)>& cdf) {
    const auto& xs = a.samples();
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

double ks_statistic(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    const auto& xa = a.samples();
    const auto& xb = b.samples();
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < xa.size() && j < xb.size()) {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] <= x) ++i;
        while (j < xb.size() && xb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_threshold(std::size_t n, std::size_t m, double level) {
    if (level != 0.05 && level != 0.01)
        throw std::domain_error("ks_threshold: level must be 0.05 or 0.01");
    if (n == 0) throw std::domain_error("ks_threshold: empty sample");
    const double c = numerics::kolmogorov_critical(level);
    if (m == 0) return c / std::sqrt(static_cast<double>(n));
    return c * std::sqrt(static_cast<double>(n + m) /
                         (static_cast<double>(n) * static_cast<double>(m)));
}

MeanWithError empirical_laplace(const EmpiricalDistribution& a, double lambda) {
    if (lambda < 0.0) throw std::domain_error("empirical_laplace: lambda must be >= 0");
    std::vector<double> vals;
    vals.reserve(a.size());
    for (double x : a.samples()) vals.push_back(std::exp(-lambda * x));
    return sample_mean(vals);
}

MeanWithError sample_mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::domain_error("sample_mean: empty input");
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

Interval binomial_ci(std::size_t successes, std::size_t n, double level) {
    if (n == 0) throw std::domain_error("binomial_ci: n must be positive");
    if (successes > n) throw std::domain_error("binomial_ci: successes exceed n");
    const double z = (level == 0.95) ? 1.959963984540054
                   : (level == 0.99) ? 2.5758293035489004
                                     : throw std::domain_error("binomial_ci: level must be 0.95 or 0.99");
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double half = z * std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(n)) /
                                      static_cast<double>(n));
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

Interval bootstrap_ci(const std::vector<double>& samples,
                      const std::function<double(const std::vector<double>&)>& statistic,
                      double level, std::size_t reps, rng::Stream& stream) {
    if (samples.empty()) throw std::domain_error("bootstrap_ci: empty sample");
    std::vector<double> stat(reps);
    std::vector<double> resample(samples.size());
    for (std::size_t r = 0; r < reps; ++r) {
        for (auto& v : resample) {
            const auto k = static_cast<std::size_t>(stream.uniform() * samples.size());
            v = samples[std::min(k, samples.size() - 1)];
        }
        stat[r] = statistic(resample);
    }
    std::sort(stat.begin(), stat.end());
    const double tail = 0.5 * (1.0 - level);
    const auto lo = static_cast<std::size_t>(tail * (reps - 1));
    const auto hi = static_cast<std::size_t>((1.0 - tail) * (reps - 1));
    return {stat[lo], stat[hi]};
}

double chi_square_pvalue(const std::vector<double>& observed,
                         const std::vector<double>& expected, int dof) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::domain_error("chi_square_pvalue: size mismatch");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::domain_error("chi_square_pvalue: nonpositive expected count");
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    const int k = dof >= 0 ? dof : static_cast<int>(observed.size()) - 1;
    return numerics::chi_square_sf(stat, k);
}

double geometric_chi_square_pvalue(const std::vector<long long>& values, double success,
                                   double min_expected) {
    if (values.empty()) throw std::domain_error("geometric_chi_square_pvalue: empty sample");
    if (success <= 0.0 || success >= 1.0)
        throw std::domain_error("geometric_chi_square_pvalue: success probability outside (0,1)");
    const double n = static_cast<double>(values.size());
    // bins {1},{2},...,{kmax-1},{>=kmax}, pooled so every expected count is large enough
    std::vector<double> obs, exp;
    long long k = 1;
    double tail = 1.0; // P{X >= k}
    std::vector<long long> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    std::size_t idx = 0;
    while (true) {
        const double p_k = tail * success;
        const double e_tail = n * (tail - p_k);
        if (e_tail < min_expected) {
            // final pooled bin {>= k}
            obs.push_back(static_cast<double>(sorted.size() - idx));
            exp.push_back(n * tail);
            break;
        }
        std::size_t count = 0;
        while (idx < sorted.size() && sorted[idx] == k) { ++count; ++idx; }
        obs.push_back(static_cast<double>(count));
        exp.push_back(n * p_k);
        tail -= p_k;
        ++k;
    }
    return chi_square_pvalue(obs, exp);
}

namespace {

std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman_pvalue(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 10)
        throw std::domain_error("spearman_pvalue: need matched samples of size >= 10");
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    const double rho = sxy / std::sqrt(sxx * syy);
    const double z = rho * std::sqrt(n - 1.0);
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

std::vector<double> isotonic_nonincreasing(const std::vector<double>& values) {
    // PAVA on the negated sequence gives the nonincreasing fit.
    std::vector<double> level;
    std::vector<double> weight;
    for (double v : values) {
        level.push_back(v);
        weight.push_back(1.0);
        while (level.size() > 1 && level[level.size() - 2] < level.back()) {
            const double w = weight[weight.size() - 2] + weight.back();
            const double l = (level[level.size() - 2] * weight[weight.size() - 2] +
                              level.back() * weight.back()) / w;
            level.pop_back();
            weight.pop_back();
            level.back() = l;
            weight.back() = w;
        }
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < level.size(); ++i)
        for (std::size_t k = 0; k < static_cast<std::size_t>(weight[i]); ++k)
            out.push_back(level[i]);
    return out;
}

} // namespace trapscale::stats
