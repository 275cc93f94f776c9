#include "trapscale/walk.hpp"

#include <algorithm>
#include <cmath>

#include "trapscale/parallel.hpp"

namespace trapscale::walk {

JumpProbability jump_probability(const WalkParams& params) {
    if (params.big_n < 1) throw std::domain_error("jump_probability: N must be >= 1");
    if (params.beta < 0.0) throw std::domain_error("jump_probability: beta must be >= 0");
    if (params.mu < 0.0) throw std::domain_error("jump_probability: mu must be >= 0");
    const double bias = params.mu * std::pow(static_cast<double>(params.big_n), -params.beta);
    if (bias > 1.0)
        throw std::domain_error("jump_probability: beta = 0 requires mu <= 1 (p would exceed 1)");
    const double p = 0.5 * (1.0 + bias);
    return {p, 1.0 - p};
}

PathSample simulate_until(const TrapEnvironment& e, const WalkParams& params,
                          double t_max, rng::Stream& stream) {
    if (!(t_max > 0.0)) throw std::domain_error("simulate_until: t_max must be > 0");
    const auto [p, q] = jump_probability(params);
    const double horizon = static_cast<double>(params.big_n) * t_max;
    PathSample path;
    path.horizon = horizon;
    path.big_n = params.big_n;
    path.events.push_back({0, 0.0});
    Site z = 0;
    double t = 0.0;
    std::uint64_t steps = 0;
    while (true) {
        const double hold = stream.exponential(e.tau_at(z));
        if (t + hold > horizon) break; // walker sits at z through the horizon
        t += hold;
        z += stream.bernoulli(p) ? 1 : -1;
        path.events.push_back({z, t});
        if (++steps > params.step_budget)
            throw step_budget_error("simulate_until: step budget exhausted at t=" +
                                    std::to_string(t / params.big_n));
    }
    return path;
}

Site position_at(const PathSample& path, double t) {
    const double raw = t * static_cast<double>(path.big_n);
    if (t < 0.0 || raw > path.horizon)
        throw std::out_of_range("position_at: query time outside [0, horizon/N]");
    auto it = std::upper_bound(path.events.begin(), path.events.end(), raw,
                               [](double v, const Event& ev) { return v < ev.time; });
    return std::prev(it)->site;
}

HittingResult hitting_time(const TrapEnvironment& e, const WalkParams& params,
                           Site x, rng::Stream& stream) {
    if (x < 1) throw std::domain_error("hitting_time: x must be >= 1");
    const auto [p, q] = jump_probability(params);
    HittingResult result;
    result.field.barrier = x;
    double t = 0.0;
    Site z = 0;
    result.field.counts[0] = 1;
    std::uint64_t steps = 0;
    while (true) {
        t += stream.exponential(e.tau_at(z));
        z += stream.bernoulli(p) ? 1 : -1;
        if (z == x) break;
        ++result.field.counts[z];
        if (++steps > params.step_budget)
            throw step_budget_error("hitting_time: step budget exhausted before reaching x=" +
                                    std::to_string(x));
    }
    result.time = t;
    return result;
}

Site backtrack_depth(const PathSample& path, double t) {
    const double raw = t * static_cast<double>(path.big_n);
    if (t < 0.0 || raw > path.horizon)
        throw std::out_of_range("backtrack_depth: query time outside [0, horizon/N]");
    Site run_max = 0, depth = 0;
    for (const auto& ev : path.events) {
        if (ev.time > raw) break;
        run_max = std::max(run_max, ev.site);
        depth = std::max(depth, run_max - ev.site);
    }
    return depth;
}

double min_walk_probability(const WalkParams& params, Site x) {
    if (x < 0) throw std::domain_error("min_walk_probability: x must be >= 0");
    if (x == 0) return 1.0;
    if (params.mu == 0.0) return 1.0;
    const auto [p, q] = jump_probability(params);
    if (q == 0.0) return 0.0;
    return std::pow(q / p, static_cast<double>(x));
}

namespace {

// Embedded walk from the origin until it first hits x; returns visit counts.
std::unordered_map<Site, long long> embedded_local_times(const WalkParams& params, Site x,
                                                         rng::Stream& stream) {
    const auto [p, q] = jump_probability(params);
    std::unordered_map<Site, long long> counts;
    Site z = 0;
    counts[0] = 1;
    std::uint64_t steps = 0;
    while (true) {
        z += stream.bernoulli(p) ? 1 : -1;
        if (z == x) break;
        ++counts[z];
        if (++steps > params.step_budget)
            throw step_budget_error("embedded walk: step budget exhausted before x=" +
                                    std::to_string(x));
    }
    return counts;
}

// Height above the floor beyond which a return has probability < 2^-40.
Site escape_height(const WalkParams& params) {
    const auto [p, q] = jump_probability(params);
    if (q == 0.0) return 1;
    return static_cast<Site>(std::ceil(40.0 * std::log(2.0) / std::log(p / q)));
}

} // namespace

double local_time_functional(const WalkParams& params, Site x,
                             const std::function<double(double)>& psi,
                             rng::Stream& stream, bool restrict_nonnegative) {
    if (x < 1) throw std::domain_error("local_time_functional: x must be >= 1");
    const auto counts = embedded_local_times(params, x, stream);
    const double scale = std::pow(static_cast<double>(params.big_n), params.beta);
    double sum = 0.0;
    for (const auto& [z, count] : counts) {
        if (restrict_nonnegative && z < 0) continue;
        sum += psi(static_cast<double>(count) / scale);
    }
    return sum / static_cast<double>(x);
}

long long local_time_at_origin(const WalkParams& params, rng::Stream& stream) {
    if (!(params.mu > 0.0))
        throw std::domain_error("local_time_at_origin: requires mu > 0 (transient walk)");
    const auto [p, q] = jump_probability(params);
    const Site barrier = escape_height(params);
    Site z = 0;
    long long visits = 1;
    std::uint64_t steps = 0;
    while (z < barrier) {
        z += stream.bernoulli(p) ? 1 : -1;
        if (z == 0) ++visits;
        if (++steps > params.step_budget)
            throw step_budget_error("local_time_at_origin: step budget exhausted");
    }
    return visits;
}

Site embedded_walk_min(const WalkParams& params, rng::Stream& stream) {
    if (!(params.mu > 0.0))
        throw std::domain_error("embedded_walk_min: requires mu > 0 (transient walk)");
    const auto [p, q] = jump_probability(params);
    const Site barrier = escape_height(params);
    Site z = 0, low = 0;
    std::uint64_t steps = 0;
    while (z < low + barrier) {
        z += stream.bernoulli(p) ? 1 : -1;
        low = std::min(low, z);
        if (++steps > params.step_budget)
            throw step_budget_error("embedded_walk_min: step budget exhausted");
    }
    return low;
}

std::vector<TimeObservation> ensemble_at_time(double alpha, const WalkParams& params,
                                              double t, double stay_window,
                                              std::size_t reps, std::uint64_t seed,
                                              int workers) {
    std::vector<TimeObservation> out(reps);
    parallel::parallel_for(reps, workers, [&](std::size_t rep) {
        const TrapEnvironment e(alpha, rng::mix_key(seed, 2 * rep));
        auto stream = rng::derive_stream(seed, 2 * rep + 1);
        const auto path = simulate_until(e, params, t + stay_window, stream);
        const Site z = position_at(path, t);
        TimeObservation obs;
        obs.position = static_cast<double>(z);
        obs.tau = e.tau_at(z);
        if (stay_window > 0.0) {
            // stayed put iff no arrival falls in (N t, N (t + window)]
            const double n = static_cast<double>(path.big_n);
            const auto cmp = [](double v, const Event& ev) { return v < ev.time; };
            const auto first = std::upper_bound(path.events.begin(), path.events.end(),
                                                n * t, cmp);
            const auto last = std::upper_bound(path.events.begin(), path.events.end(),
                                               n * (t + stay_window), cmp);
            obs.stayed = first == last;
        }
        out[rep] = obs;
    });
    return out;
}

} // namespace trapscale::walk
