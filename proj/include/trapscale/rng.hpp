#ifndef TRAPSCALE_RNG_HPP
#define TRAPSCALE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace trapscale::rng {

// SplitMix64 finalizer (Vigna / Steele et al.); also used as a keyed hash so
// that values indexed by (seed, site) or (seed, replication) can be produced
// in any order without storing state.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(splitmix64(seed ^ 0x632be59bd9b4e019ULL) ^ splitmix64(salt));
}

// Uniform in the open interval (0,1); both endpoints excluded so that
// logs and inverse CDFs stay finite.
inline double to_unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Sequential pseudo-random stream (SplitMix64 state walk).  Streams for
// independent replications are derived from (master seed, index), so ensembles
// can be generated in any order or in parallel with identical results.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return to_unit_open(next_u64()); }

    // mean-1 exponential
    double exponential() { return -std::log(uniform()); }

    double exponential(double mean) { return mean * exponential(); }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

inline Stream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    return Stream(mix_key(master_seed, index));
}

} // namespace trapscale::rng

#endif
