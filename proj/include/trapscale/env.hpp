#ifndef TRAPSCALE_ENV_HPP
#define TRAPSCALE_ENV_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "trapscale/rng.hpp"

namespace trapscale::env {

using Site = std::int64_t;

// Exact Pareto: P{tau > x} = x^{-alpha} for x >= 1, realized by inverse CDF.
double sample_pareto(double alpha, double u);

// Lazily realized trap environment (tau_z : z in Z).  tau_at is a pure
// function of (seed, z): sites can be served in any order, from any worker,
// and a regenerated window is bit-identical.  The cache is an optimization
// only and is not shared across threads; give each worker its own copy.
class TrapEnvironment {
public:
    TrapEnvironment(double alpha, std::uint64_t seed);

    double alpha() const { return alpha_; }
    std::uint64_t seed() const { return seed_; }

    double tau_at(Site z) const;

private:
    double alpha_;
    std::uint64_t seed_;
    mutable std::unordered_map<Site, double> cache_;
};

// Deep-trap sequence of the ageing analysis: x_0 = 0 unconditionally,
// then every site in (0, max_site] with tau above the threshold, ascending.
std::vector<Site> deep_trap_positions(const TrapEnvironment& e, double threshold,
                                      Site max_site);

// First site strictly beyond `from` whose tau exceeds the threshold.
// scan_limit guards against unbounded scans for absurd thresholds.
Site next_deep_site(const TrapEnvironment& e, Site from, double threshold,
                    Site scan_limit = 100000000);

} // namespace trapscale::env

#endif
