#include "trapscale/ageing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trapscale/limits.hpp"
#include "trapscale/numerics.hpp"
#include "trapscale/parallel.hpp"

namespace trapscale::ageing {

SegmentDecomposition segment_decomposition(const TrapEnvironment& e, const WalkParams& params,
                                           double v, int horizon_j, rng::Stream& stream) {
    if (!(params.mu > 0.0))
        throw std::domain_error("segment_decomposition: requires mu > 0 (transient walk)");
    if (!(v > 0.0)) throw std::domain_error("segment_decomposition: v must be > 0");
    if (horizon_j < 1) throw std::domain_error("segment_decomposition: horizon must be >= 1");
    const auto [p, q] = walk::jump_probability(params);
    const double threshold =
        v * std::pow(static_cast<double>(params.big_n), 1.0 - params.beta);

    SegmentDecomposition d;
    d.threshold_v = v;
    d.deep_sites.push_back(0);
    d.travel.push_back(0.0); // nothing travels into x_0
    d.hit_times.push_back(0.0);

    double clock = 0.0; // total elapsed time, accumulated independently
    std::uint64_t steps = 0;
    Site trap = 0;
    for (int j = 1; j <= horizon_j; ++j) {
        const Site target = env::next_deep_site(e, trap, threshold);
        double sitting = 0.0, excursions = 0.0, travel = 0.0;
        long long visits = 0;
        while (true) {
            ++visits;
            const double hold = stream.exponential(e.tau_at(trap));
            sitting += hold;
            clock += hold;
            // one departure: either an excursion returning to the trap or
            // the final passage to the next deep trap
            double leg = 0.0;
            Site z = trap + (stream.bernoulli(p) ? 1 : -1);
            while (z != trap && z != target) {
                const double h = stream.exponential(e.tau_at(z));
                leg += h;
                clock += h;
                z += stream.bernoulli(p) ? 1 : -1;
                if (++steps > params.step_budget)
                    throw walk::step_budget_error(
                        "segment_decomposition: step budget exhausted in segment " +
                        std::to_string(j));
            }
            if (z == target) {
                travel = leg;
                break;
            }
            excursions += leg;
        }
        d.sitting.push_back(sitting);
        d.excursions.push_back(excursions);
        d.local_counts.push_back(visits);
        d.travel.push_back(travel);
        d.deep_sites.push_back(target);
        d.hit_times.push_back(clock);
        trap = target;
    }
    return d;
}

double sample_S_limit(double alpha, double mu, rng::Stream& stream) {
    if (!(mu > 0.0)) throw std::domain_error("sample_S_limit: mu must be > 0");
    const double pareto = env::sample_pareto(alpha, stream.uniform());
    return pareto * stream.exponential(1.0 / mu);
}

namespace {

// alpha Int_1^inf dz/(z^(alpha+1)(1+z c)) = Int_0^1 s^(1/alpha)/(s^(1/alpha)+c) ds
// via the substitution s = z^-alpha; the mapped integrand is smooth on [0,1].
double u_transform_value(double alpha, double mu, double lambda,
                         const std::function<double(const std::function<double(double)>&)>& quad) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("u_laplace_limit: alpha must lie in (0,1)");
    if (!(mu > 0.0)) throw std::domain_error("u_laplace_limit: mu must be > 0");
    if (lambda < 0.0) throw std::domain_error("u_laplace_limit: lambda must be >= 0");
    if (lambda == 0.0) return 1.0;
    const double c = lambda / mu;
    const double integral = quad([&](double s) {
        if (s <= 0.0) return 0.0;
        const double z = std::pow(s, 1.0 / alpha);
        return z / (z + c);
    });
    const double reflection = alpha * std::numbers::pi / std::sin(alpha * std::numbers::pi);
    return 1.0 / (reflection * std::pow(c, alpha) + integral);
}

} // namespace

double u_laplace_limit(double alpha, double mu, double lambda) {
    return u_transform_value(alpha, mu, lambda, [](const std::function<double(double)>& f) {
        return numerics::integrate_adaptive(f, 0.0, 1.0, 1e-12);
    });
}

double u_laplace_limit_gauss(double alpha, double mu, double lambda) {
    return u_transform_value(alpha, mu, lambda, [](const std::function<double(double)>& f) {
        return numerics::integrate_gauss64(f, 0.0, 1.0);
    });
}

double conditional_laplace_truncated(double alpha, double y, double lambda) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("conditional_laplace_truncated: alpha must lie in (0,1)");
    if (!(y > 1.0)) throw std::domain_error("conditional_laplace_truncated: y must exceed 1");
    if (lambda < 0.0) throw std::domain_error("conditional_laplace_truncated: lambda >= 0");
    // Int_1^inf e^(-lambda z) alpha z^(-alpha-1) dz = Int_0^1 e^(-lambda s^(-1/alpha)) ds
    double tail_integral = 1.0;
    if (lambda > 0.0) {
        tail_integral = numerics::integrate_adaptive(
            [&](double s) {
                if (s <= 0.0) return 0.0;
                return std::exp(-lambda * std::pow(s, -1.0 / alpha));
            },
            0.0, 1.0, 1e-12);
    }
    const double coeff = 1.0 - std::tgamma(1.0 - alpha) * std::pow(lambda, alpha) - tail_integral;
    return 1.0 + std::pow(y, -alpha) * coeff;
}

TailEstimate xi_tail_renewal(double t, double v, const std::vector<double>& u_pool,
                             double alpha, double mu, int j_max, std::size_t n_mc,
                             double truncation_tolerance, rng::Stream& stream) {
    if (u_pool.empty()) throw std::domain_error("xi_tail_renewal: empty travel-time pool");
    if (!(v > 0.0)) throw std::domain_error("xi_tail_renewal: v must be > 0");
    const double target = t / v;
    std::size_t hits = 0, unresolved = 0;
    for (std::size_t trial = 0; trial < n_mc; ++trial) {
        double total = 0.0;
        bool resolved = false;
        for (int j = 1; j <= j_max; ++j) {
            const auto pick = static_cast<std::size_t>(stream.uniform() * u_pool.size());
            total += u_pool[std::min(pick, u_pool.size() - 1)];
            if (total >= target) { resolved = true; break; } // landed in a travel period
            total += sample_S_limit(alpha, mu, stream);
            if (total >= target) { // landed while sitting in trap j
                ++hits;
                resolved = true;
                break;
            }
        }
        if (!resolved) ++unresolved;
    }
    const double remainder = static_cast<double>(unresolved) / static_cast<double>(n_mc);
    if (remainder > truncation_tolerance)
        throw std::runtime_error("xi_tail_renewal: truncation remainder " +
                                 std::to_string(remainder) +
                                 " above tolerance; increase j_max");
    TailEstimate est;
    est.n = n_mc;
    est.estimate = static_cast<double>(hits) / static_cast<double>(n_mc);
    est.ci = stats::binomial_ci(hits, n_mc, 0.95);
    return est;
}

TailEstimate xi_tail_direct(double alpha, const WalkParams& params, double t, double v,
                            std::size_t reps, std::uint64_t seed, int workers) {
    const double a_frac = alpha / (alpha + 1.0);
    if (!(params.beta < a_frac && params.mu > 0.0))
        throw std::domain_error("xi_tail_direct: requires the slow-drift regime "
                                "(beta < alpha/(alpha+1), mu > 0)");
    const auto obs = walk::ensemble_at_time(alpha, params, t, 0.0, reps, seed, workers);
    const double threshold =
        v * std::pow(static_cast<double>(params.big_n), 1.0 - params.beta);
    std::size_t hits = 0;
    for (const auto& o : obs)
        if (o.tau > threshold) ++hits;
    TailEstimate est;
    est.n = reps;
    est.estimate = static_cast<double>(hits) / static_cast<double>(reps);
    est.ci = stats::binomial_ci(hits, reps, 0.95);
    return est;
}

namespace {

void flag_monotone(XiCurve& curve) {
    // nested events {xi_t > v}: raw estimates may wiggle within noise, but a
    // violation beyond the CI width is flagged
    for (std::size_t k = 1; k < curve.estimates.size(); ++k) {
        const auto& prev = curve.estimates[k - 1];
        const auto& cur = curve.estimates[k];
        if (cur.estimate > prev.estimate && !cur.ci.overlaps(prev.ci))
            curve.monotone_within_ci = false;
    }
}

} // namespace

XiCurve xi_curve_direct(double alpha, const WalkParams& params, double t,
                        const std::vector<double>& v_grid, std::size_t reps,
                        std::uint64_t seed, int workers) {
    XiCurve curve;
    curve.v_grid = v_grid;
    for (std::size_t k = 0; k < v_grid.size(); ++k)
        curve.estimates.push_back(
            xi_tail_direct(alpha, params, t, v_grid[k], reps, rng::mix_key(seed, k), workers));
    flag_monotone(curve);
    return curve;
}

XiCurve xi_curve_renewal(double t, const std::vector<double>& v_grid,
                         const std::vector<double>& u_pool, double alpha, double mu,
                         int j_max, std::size_t n_mc, double truncation_tolerance,
                         rng::Stream& stream) {
    XiCurve curve;
    curve.v_grid = v_grid;
    for (double v : v_grid)
        curve.estimates.push_back(
            xi_tail_renewal(t, v, u_pool, alpha, mu, j_max, n_mc, truncation_tolerance, stream));
    flag_monotone(curve);
    return curve;
}

StayPutEstimate stay_put_probability(double alpha, const WalkParams& params, double t,
                                     double window_exponent, std::size_t reps,
                                     std::uint64_t seed, int workers) {
    const double n = static_cast<double>(params.big_n);
    const double window = std::pow(n, -window_exponent);
    const auto obs = walk::ensemble_at_time(alpha, params, t, window, reps, seed, workers);
    std::size_t stayed = 0;
    std::vector<double> conditional;
    conditional.reserve(reps);
    for (const auto& o : obs) {
        if (o.stayed) ++stayed;
        conditional.push_back(std::exp(-std::pow(n, 1.0 - window_exponent) / o.tau));
    }
    StayPutEstimate est;
    est.direct.n = reps;
    est.direct.estimate = static_cast<double>(stayed) / static_cast<double>(reps);
    est.direct.ci = stats::binomial_ci(stayed, reps, 0.95);
    est.conditional = stats::sample_mean(conditional);
    return est;
}

double sample_zeta_limit(double alpha, double theta, double t, double window,
                         double cutoff, rng::Stream& stream) {
    return limits::sample_fin(alpha, theta, t, window, cutoff, stream).weight;
}

SegmentPools harvest_segments(double alpha, const WalkParams& params, double v,
                              int horizon_j, std::size_t reps, std::uint64_t seed,
                              int workers) {
    std::vector<SegmentDecomposition> decs(reps);
    parallel::parallel_for(reps, workers, [&](std::size_t rep) {
        const TrapEnvironment e(alpha, rng::mix_key(seed, 2 * rep));
        auto stream = rng::derive_stream(seed, 2 * rep + 1);
        decs[rep] = segment_decomposition(e, params, v, horizon_j, stream);
    });
    const double n = static_cast<double>(params.big_n);
    const double vn = v * n;
    const double beta_scale = std::pow(n, params.beta);
    const double gap_scale = std::pow(n, alpha * (1.0 - params.beta));
    SegmentPools pools;
    for (const auto& d : decs) {
        std::vector<double> travel_rep;
        for (std::size_t j = 1; j < d.travel.size(); ++j) {
            pools.travel.push_back(d.travel[j] / vn);
            travel_rep.push_back(d.travel[j] / vn);
        }
        for (std::size_t j = 1; j < d.sitting.size(); ++j)
            pools.sitting.push_back(d.sitting[j] / vn);
        for (const double r : d.excursions) pools.excursions.push_back(r / n);
        for (const long long c : d.local_counts)
            pools.local_counts.push_back(static_cast<double>(c) / beta_scale);
        for (std::size_t j = 0; j + 1 < d.deep_sites.size(); ++j)
            pools.gaps.push_back(
                static_cast<double>(d.deep_sites[j + 1] - d.deep_sites[j]) / gap_scale);
        pools.travel_by_rep.push_back(std::move(travel_rep));
    }
    return pools;
}

} // namespace trapscale::ageing
