#ifndef TRAPSCALE_AGEING_HPP
#define TRAPSCALE_AGEING_HPP

#include <cstdint>
#include <vector>

#include "trapscale/env.hpp"
#include "trapscale/rng.hpp"
#include "trapscale/stats.hpp"
#include "trapscale/walk.hpp"

namespace trapscale::ageing {

using env::Site;
using env::TrapEnvironment;
using walk::WalkParams;

// Deep-trap decomposition of one trajectory run until the J-th deep trap.
// Index conventions, for traps x_0 = 0 < x_1 < ... < x_J with depth above
// v N^(1-beta) (x_0 unconditionally):
//   sitting[j]     S_j, total time at x_j before first hitting x_{j+1}
//   excursions[j]  R_j, time in excursions from x_j that return to x_j
//   travel[j]      U_j, final passage into x_j (travel[0] = 0)
//   local_counts[j] number of embedded-walk visits to x_j before x_{j+1}
// so that the first-hitting time of x_j is
//   sum_{i<j} (travel[i] + sitting[i] + excursions[i]) + travel[j],
// exactly, per replication.  All times are unrescaled.
struct SegmentDecomposition {
    double threshold_v = 1.0;
    std::vector<Site> deep_sites;
    std::vector<double> travel;
    std::vector<double> sitting;
    std::vector<double> excursions;
    std::vector<long long> local_counts;
    std::vector<double> hit_times; // independently accumulated clock at each arrival
};

SegmentDecomposition segment_decomposition(const TrapEnvironment& e, const WalkParams& params,
                                           double v, int horizon_j, rng::Stream& stream);

// Limit of S^(N)_j/(vN): Pareto(alpha) times an independent Exp(1/mu).
double sample_S_limit(double alpha, double mu, rng::Stream& stream);

// Laplace transform of the limiting travel time U:
// ( (alpha pi/sin(alpha pi)) (lambda/mu)^alpha
//   + alpha Int_1^inf dz / (z^(alpha+1) (1 + z lambda/mu)) )^(-1),
// evaluated by adaptive quadrature after mapping to [0,1].
double u_laplace_limit(double alpha, double mu, double lambda);

// Same integral through the fixed Gauss-Legendre rule; the two routes must
// agree and serve as each other's oracle.
double u_laplace_limit_gauss(double alpha, double mu, double lambda);

// Two-term expansion of E[exp(-(lambda/y) tau) | tau <= y]:
// 1 + y^-alpha (1 - Gamma(1-alpha) lambda^alpha - Int_1^inf e^(-lambda z)
// alpha z^(-alpha-1) dz).
double conditional_laplace_truncated(double alpha, double y, double lambda);

struct TailEstimate {
    double estimate = 0.0;
    stats::Interval ci;
    std::size_t n = 0;
};

// Renewal-representation estimate of P{xi_t > v}: travel periods resampled
// from the harvested pool, trap periods from the limit sampler.  Errors out
// if more than truncation_tolerance of the trials fail to resolve within
// j_max renewal steps.
TailEstimate xi_tail_renewal(double t, double v, const std::vector<double>& u_pool,
                             double alpha, double mu, int j_max, std::size_t n_mc,
                             double truncation_tolerance, rng::Stream& stream);

// Direct estimate of P{tau at the walker's position > v N^(1-beta)} at
// rescaled time t, over an ensemble of environments.
TailEstimate xi_tail_direct(double alpha, const WalkParams& params, double t, double v,
                            std::size_t reps, std::uint64_t seed, int workers = 0);

// Tail curve over a v-grid with isotonic flagging, as emitted by the CLI.
struct XiCurve {
    std::vector<double> v_grid;
    std::vector<TailEstimate> estimates;
    bool monotone_within_ci = true;
};

XiCurve xi_curve_direct(double alpha, const WalkParams& params, double t,
                        const std::vector<double>& v_grid, std::size_t reps,
                        std::uint64_t seed, int workers = 0);

XiCurve xi_curve_renewal(double t, const std::vector<double>& v_grid,
                         const std::vector<double>& u_pool, double alpha, double mu,
                         int j_max, std::size_t n_mc, double truncation_tolerance,
                         rng::Stream& stream);

// Stay-put probability over [t, t + N^(-window_exponent)] in rescaled time:
// the direct frequency and the environment-conditional form
// E exp(-N^(1-we)/tau_{X_t}), which the exponential holding law makes exact.
struct StayPutEstimate {
    TailEstimate direct;
    stats::MeanWithError conditional;
};

StayPutEstimate stay_put_probability(double alpha, const WalkParams& params, double t,
                                     double window_exponent, std::size_t reps,
                                     std::uint64_t seed, int workers = 0);

// zeta_t = rho({Fin^theta_t}): the occupied-atom mass of the FIN diffusion.
double sample_zeta_limit(double alpha, double theta, double t, double window,
                         double cutoff, rng::Stream& stream);

// Pooled per-segment observables harvested from an ensemble of replications,
// rescaled to their limit normalizations.
struct SegmentPools {
    std::vector<double> travel;            // U_j/(vN), j >= 1
    std::vector<double> sitting;           // S_j/(vN), j >= 1
    std::vector<double> excursions;        // R_j/N, all j
    std::vector<double> local_counts;      // l_{j+1}(x_j)/N^beta, all j
    std::vector<double> gaps;              // (x_{j+1}-x_j)/N^(alpha(1-beta)), all j
    std::vector<std::vector<double>> travel_by_rep; // U_1..U_J per replication, rescaled
};

SegmentPools harvest_segments(double alpha, const WalkParams& params, double v,
                              int horizon_j, std::size_t reps, std::uint64_t seed,
                              int workers = 0);

} // namespace trapscale::ageing

#endif
