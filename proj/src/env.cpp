#include "trapscale/env.hpp"

#include <cmath>
#include <stdexcept>

namespace trapscale::env {

double sample_pareto(double alpha, double u) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("sample_pareto: alpha must lie in (0,1)");
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("sample_pareto: u must lie in (0,1)");
    return std::pow(u, -1.0 / alpha);
}

TrapEnvironment::TrapEnvironment(double alpha, std::uint64_t seed)
    : alpha_(alpha), seed_(seed) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("TrapEnvironment: alpha must lie in (0,1)");
}

double TrapEnvironment::tau_at(Site z) const {
    const auto it = cache_.find(z);
    if (it != cache_.end()) return it->second;
    const std::uint64_t bits = rng::mix_key(seed_, static_cast<std::uint64_t>(z));
    const double tau = sample_pareto(alpha_, rng::to_unit_open(bits));
    cache_.emplace(z, tau);
    return tau;
}

std::vector<Site> deep_trap_positions(const TrapEnvironment& e, double threshold,
                                      Site max_site) {
    if (!(threshold > 0.0)) throw std::domain_error("deep_trap_positions: threshold must be > 0");
    if (max_site <= 0) throw std::domain_error("deep_trap_positions: max_site must be > 0");
    std::vector<Site> out{0};
    for (Site z = 1; z <= max_site; ++z)
        if (e.tau_at(z) > threshold) out.push_back(z);
    return out;
}

Site next_deep_site(const TrapEnvironment& e, Site from, double threshold, Site scan_limit) {
    for (Site z = from + 1; z <= from + scan_limit; ++z)
        if (e.tau_at(z) > threshold) return z;
    throw std::runtime_error("next_deep_site: no trap above threshold within scan limit");
}

} // namespace trapscale::env
