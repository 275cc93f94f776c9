#ifndef TRAPSCALE_LIMITS_HPP
#define TRAPSCALE_LIMITS_HPP

#include <stdexcept>
#include <vector>

#include "trapscale/rng.hpp"

namespace trapscale::limits {

struct window_exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One-sided stable draw S with E exp(-lambda S) = exp(-lambda^alpha)
// (Kanter's representation).
double sample_one_sided_stable(double alpha, rng::Stream& stream);

// Marginal of the subordinator normalized as E exp(-lambda Sub_t)
// = exp(-t Gamma(1-alpha) lambda^alpha).
double subordinator_marginal(double alpha, double t, rng::Stream& stream);

// Deterministic map behind the inverse marginal: (s / sub1)^alpha, where
// sub1 is a draw of Sub_1.  Exposed so couplings can share the draw.
double inverse_subordinator_from_sub1(double alpha, double s, double sub1);

// Marginal of the right-continuous inverse Sub^-1 at time s.
double inverse_subordinator_marginal(double alpha, double s, rng::Stream& stream);

struct SubordinatorPath {
    std::vector<double> grid;   // increasing, starts at 0
    std::vector<double> values; // nondecreasing, starts at 0
};

SubordinatorPath subordinator_path(double alpha, const std::vector<double>& grid,
                                   rng::Stream& stream);

// Smallest grid time whose value exceeds s (resolution = grid step).
double invert_path(const SubordinatorPath& path, double s);

struct Atom {
    double position;
    double weight;
};

// Truncated realization of the two-sided stable measure rho: atoms of a
// Poisson point process with intensity alpha w^{-1-alpha} dw dx restricted
// to (lo,hi) x (cutoff,inf), sorted by position.
struct AtomicMeasure {
    std::vector<Atom> atoms;
    double lo = 0.0;
    double hi = 0.0;
    double cutoff = 0.0;

    // Total weight carried by atoms with position in (a, b].
    double mass_in(double a, double b) const;
};

AtomicMeasure sample_stable_measure(double alpha, double lo, double hi, double cutoff,
                                    rng::Stream& stream);

// Extends the window, sampling atoms only in the new region; existing atoms
// are kept, which is consistent with the restriction property of the PPP.
void extend_measure(AtomicMeasure& m, double alpha, double new_lo, double new_hi,
                    rng::Stream& stream);

// Mean mass per unit length removed by the cutoff: alpha eps^(1-alpha)/(1-alpha).
double truncation_bias_per_length(double alpha, double cutoff);

// Scale function of Brownian motion with drift mu; the identity when mu = 0.
double stone_scale_u(double mu, double x);

enum class ScaleMode { identity, exponential_u };

// Markov chain on the atoms of a speed measure, distributed as the
// time-changed Brownian motion with drift mu restricted to the atoms.
struct StoneChainSpec {
    AtomicMeasure measure;
    double mu = 0.0;
    ScaleMode mode = ScaleMode::identity;
};

StoneChainSpec make_stone_chain(AtomicMeasure measure, double mu);

// Exit statistics of drift-mu Brownian motion started between two neighbours
// at the given gaps.  With mu = 0 they reduce to the classical gap ratios
// P(right) = gl/(gl+gr) and mean = 2 w gl gr/(gl+gr).
double stone_right_probability(double mu, double gap_left, double gap_right);
double stone_mean_holding(double mu, double weight, double gap_left, double gap_right);

// Spec-indexed accessors (i must have both neighbours inside the window).
double chain_right_probability(const StoneChainSpec& spec, std::size_t i);
double chain_mean_holding(const StoneChainSpec& spec, std::size_t i);

struct ChainStep {
    std::size_t next;
    double holding;
};

// One transition from atom i: exponential holding with the stated mean, then
// a jump to a neighbour.  Throws window_exhausted_error on boundary atoms.
ChainStep stone_chain_step(const StoneChainSpec& spec, std::size_t i, rng::Stream& stream);

struct FinSample {
    double value = 0.0;        // position of the occupied atom at time t
    double weight = 0.0;       // rho-mass of that atom
    double start_offset = 0.0; // position of the first atom entered
};

// Marginal of the Fontes-Isopi-Newman diffusion with drift mu at time t,
// realized as the Stone chain on a truncated stable measure.  The window is
// extended automatically (bounded number of times) if the chain reaches it.
FinSample sample_fin(double alpha, double mu, double t, double window, double cutoff,
                     rng::Stream& stream);

// mu^alpha / Gamma(1+alpha): the constant in front of the inverse
// subordinator in the slow-drift scaling limit.
double scaling_constant_a(double alpha, double mu);

} // namespace trapscale::limits

#endif
