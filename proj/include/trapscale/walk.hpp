#ifndef TRAPSCALE_WALK_HPP
#define TRAPSCALE_WALK_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "trapscale/env.hpp"
#include "trapscale/rng.hpp"

namespace trapscale::walk {

using env::Site;
using env::TrapEnvironment;

struct step_budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simulation parameters of the rescaled walk X^(N): jump bias p - 1/2 =
// mu / (2 N^beta), time rescaling t -> N t.
struct WalkParams {
    long long big_n = 10000;
    double beta = 0.2;
    double mu = 1.0;
    std::uint64_t step_budget = 1000000000ULL;
};

struct JumpProbability {
    double p;
    double q;
};

// p = (1 + mu N^-beta)/2, q = 1 - p; rejects parameters with p > 1.
JumpProbability jump_probability(const WalkParams& params);

struct Event {
    Site site;
    double time; // arrival time on the unrescaled X-clock
};

// One trajectory.  Times are stored unrescaled; division by N happens only
// at query boundaries.
struct PathSample {
    std::vector<Event> events; // first event is (0, 0); sites step by +-1
    double horizon = 0.0;      // unrescaled simulation end time
    long long big_n = 1;       // rescaling used to interpret query times
};

// Visit counts of the embedded walk strictly before the first hit of the
// barrier; the start index 0 counts.
struct LocalTimeField {
    std::unordered_map<Site, long long> counts;
    Site barrier = 0;
};

// Simulate from site 0 at time 0 until the unrescaled clock passes
// N * t_max.  Holding times are exponential with mean tau_z per visit.
PathSample simulate_until(const TrapEnvironment& e, const WalkParams& params,
                          double t_max, rng::Stream& stream);

// Site occupied at rescaled time t (right-continuous step lookup).
Site position_at(const PathSample& path, double t);

struct HittingResult {
    double time; // T_x, unrescaled
    LocalTimeField field;
};

// Run until the first arrival at x >= 1; returns the elapsed unrescaled time
// and the local-time field of the embedded walk.
HittingResult hitting_time(const TrapEnvironment& e, const WalkParams& params,
                           Site x, rng::Stream& stream);

// sup_{v<=t} (running max - current position) of the rescaled path.
Site backtrack_depth(const PathSample& path, double t);

// Exact gambler's-ruin probability P{min_k S_k <= -x} = (q/p)^x for the
// embedded walk; 1 in the recurrent case mu = 0.
double min_walk_probability(const WalkParams& params, Site x);

// Normalized local-time functional (1/x) sum_{z<x} psi(l(z)/N^beta) of the
// embedded walk run until it first hits x.  Unvisited sites contribute
// nothing, so psi(0) = 0 is expected of admissible psi; with
// restrict_nonnegative only sites in [0,x) enter the sum.
double local_time_functional(const WalkParams& params, Site x,
                             const std::function<double(double)>& psi,
                             rng::Stream& stream, bool restrict_nonnegative = false);

// Total number of visits of the transient embedded walk to the origin,
// distributed geometric((2p-1)) on {1,2,...}.  Requires mu > 0; the walk is
// followed until the return probability drops below 2^-40.
long long local_time_at_origin(const WalkParams& params, rng::Stream& stream);

// Overall minimum of the embedded walk, tracked until return below the
// running floor has probability below 2^-40.  Requires mu > 0.
Site embedded_walk_min(const WalkParams& params, rng::Stream& stream);

// One replication = fresh environment + fresh walk, both derived from
// (seed, replication index); the theorems average over the environment.
struct TimeObservation {
    double position = 0.0; // X^(N)_t, unrescaled site as a real
    double tau = 0.0;      // trap depth at that site
    bool stayed = false;   // no jump during [t, t + stay_window], rescaled
};

// Ensemble of observations of the walk at rescaled time t.  stay_window = 0
// skips the stay-put bookkeeping.  Replications run in parallel over derived
// substreams; results are indexed by replication and independent of
// scheduling.
std::vector<TimeObservation> ensemble_at_time(double alpha, const WalkParams& params,
                                              double t, double stay_window,
                                              std::size_t reps, std::uint64_t seed,
                                              int workers = 0);

} // namespace trapscale::walk

#endif
