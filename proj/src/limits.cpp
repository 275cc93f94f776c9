#include "trapscale/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trapscale::limits {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("stable sampler: alpha must lie in (0,1)");
}

long long poisson_draw(double mean, rng::Stream& stream) {
    // inversion for small means, normal tail capped otherwise
    if (mean < 60.0) {
        const double limit = std::exp(-mean);
        long long k = 0;
        double prod = stream.uniform();
        while (prod > limit) {
            prod *= stream.uniform();
            ++k;
        }
        return k;
    }
    // sum of two halves keeps the inversion loop short
    return poisson_draw(0.5 * mean, stream) + poisson_draw(mean - 0.5 * mean, stream);
}

} // namespace

double sample_one_sided_stable(double alpha, rng::Stream& stream) {
    require_alpha(alpha);
    // Kanter: S = (a(pi U)/W)^((1-alpha)/alpha) with
    // a(th) = sin(alpha th)^(alpha/(1-alpha)) sin((1-alpha) th) / sin(th)^(1/(1-alpha))
    const double theta = std::numbers::pi * stream.uniform();
    const double w = stream.exponential();
    const double log_a = (alpha * std::log(std::sin(alpha * theta)) +
                          (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * theta)) -
                          std::log(std::sin(theta))) / (1.0 - alpha);
    return std::exp((1.0 - alpha) / alpha * (log_a - std::log(w)));
}

double subordinator_marginal(double alpha, double t, rng::Stream& stream) {
    require_alpha(alpha);
    if (!(t > 0.0)) throw std::domain_error("subordinator_marginal: t must be > 0");
    const double scale = std::pow(t * std::tgamma(1.0 - alpha), 1.0 / alpha);
    return scale * sample_one_sided_stable(alpha, stream);
}

double inverse_subordinator_from_sub1(double alpha, double s, double sub1) {
    require_alpha(alpha);
    if (!(s > 0.0)) throw std::domain_error("inverse subordinator: s must be > 0");
    return std::pow(s / sub1, alpha);
}

double inverse_subordinator_marginal(double alpha, double s, rng::Stream& stream) {
    return inverse_subordinator_from_sub1(alpha, s, subordinator_marginal(alpha, 1.0, stream));
}

SubordinatorPath subordinator_path(double alpha, const std::vector<double>& grid,
                                   rng::Stream& stream) {
    if (grid.size() < 2 || grid.front() != 0.0)
        throw std::domain_error("subordinator_path: grid must start at 0 with >= 2 points");
    SubordinatorPath path;
    path.grid = grid;
    path.values.resize(grid.size());
    path.values[0] = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double dt = grid[k] - grid[k - 1];
        if (!(dt > 0.0)) throw std::domain_error("subordinator_path: grid must increase");
        path.values[k] = path.values[k - 1] + subordinator_marginal(alpha, dt, stream);
    }
    return path;
}

double invert_path(const SubordinatorPath& path, double s) {
    const auto it = std::upper_bound(path.values.begin(), path.values.end(), s);
    if (it == path.values.end())
        throw std::out_of_range("invert_path: s above the path's final value");
    return path.grid[static_cast<std::size_t>(it - path.values.begin())];
}

double AtomicMeasure::mass_in(double a, double b) const {
    double total = 0.0;
    for (const auto& atom : atoms)
        if (atom.position > a && atom.position <= b) total += atom.weight;
    return total;
}

namespace {

std::vector<Atom> sample_atoms(double alpha, double lo, double hi, double cutoff,
                               rng::Stream& stream) {
    // atom count over (lo,hi) x (cutoff,inf) is Poisson((hi-lo) cutoff^-alpha);
    // weights are Pareto above the cutoff, positions uniform
    const double mean = (hi - lo) * std::pow(cutoff, -alpha);
    const long long count = poisson_draw(mean, stream);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    for (long long k = 0; k < count; ++k) {
        const double pos = lo + (hi - lo) * stream.uniform();
        const double w = cutoff * std::pow(stream.uniform(), -1.0 / alpha);
        atoms.push_back({pos, w});
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    // collapse position ties (probability-zero events, but keep the invariant)
    std::vector<Atom> out;
    for (const auto& a : atoms) {
        if (!out.empty() && out.back().position == a.position) out.back().weight += a.weight;
        else out.push_back(a);
    }
    return out;
}

} // namespace

AtomicMeasure sample_stable_measure(double alpha, double lo, double hi, double cutoff,
                                    rng::Stream& stream) {
    require_alpha(alpha);
    if (!(lo < hi)) throw std::domain_error("sample_stable_measure: need lo < hi");
    if (!(cutoff > 0.0)) throw std::domain_error("sample_stable_measure: cutoff must be > 0");
    AtomicMeasure m;
    m.lo = lo;
    m.hi = hi;
    m.cutoff = cutoff;
    m.atoms = sample_atoms(alpha, lo, hi, cutoff, stream);
    return m;
}

void extend_measure(AtomicMeasure& m, double alpha, double new_lo, double new_hi,
                    rng::Stream& stream) {
    if (new_lo > m.lo || new_hi < m.hi)
        throw std::domain_error("extend_measure: window may only grow");
    std::vector<Atom> merged = std::move(m.atoms);
    if (new_lo < m.lo) {
        auto left = sample_atoms(alpha, new_lo, m.lo, m.cutoff, stream);
        merged.insert(merged.begin(), left.begin(), left.end());
    }
    if (new_hi > m.hi) {
        auto right = sample_atoms(alpha, m.hi, new_hi, m.cutoff, stream);
        merged.insert(merged.end(), right.begin(), right.end());
    }
    m.atoms = std::move(merged);
    m.lo = new_lo;
    m.hi = new_hi;
}

double truncation_bias_per_length(double alpha, double cutoff) {
    return alpha * std::pow(cutoff, 1.0 - alpha) / (1.0 - alpha);
}

double stone_scale_u(double mu, double x) {
    if (mu < 0.0) throw std::domain_error("stone_scale_u: mu must be >= 0");
    if (mu == 0.0) return x;
    return -std::expm1(-2.0 * mu * x) / (2.0 * mu);
}

StoneChainSpec make_stone_chain(AtomicMeasure measure, double mu) {
    if (mu < 0.0) throw std::domain_error("make_stone_chain: mu must be >= 0");
    StoneChainSpec spec;
    spec.measure = std::move(measure);
    spec.mu = mu;
    spec.mode = mu > 0.0 ? ScaleMode::exponential_u : ScaleMode::identity;
    return spec;
}

double stone_right_probability(double mu, double gap_left, double gap_right) {
    if (!(gap_left > 0.0 && gap_right > 0.0))
        throw std::domain_error("stone_right_probability: gaps must be positive");
    if (mu == 0.0) return gap_left / (gap_left + gap_right);
    const double a = 2.0 * mu * gap_left, b = 2.0 * mu * gap_right;
    return std::expm1(-a) / std::expm1(-a - b);
}

double stone_mean_holding(double mu, double weight, double gap_left, double gap_right) {
    if (!(gap_left > 0.0 && gap_right > 0.0))
        throw std::domain_error("stone_mean_holding: gaps must be positive");
    if (mu == 0.0) return 2.0 * weight * gap_left * gap_right / (gap_left + gap_right);
    const double a = 2.0 * mu * gap_left, b = 2.0 * mu * gap_right;
    return weight / mu * std::expm1(-a) * std::expm1(-b) / std::expm1(-a - b);
}

namespace {

void require_interior(const StoneChainSpec& spec, std::size_t i) {
    if (i == 0 || i + 1 >= spec.measure.atoms.size())
        throw window_exhausted_error("stone chain: atom has no neighbour inside the window");
}

} // namespace

double chain_right_probability(const StoneChainSpec& spec, std::size_t i) {
    require_interior(spec, i);
    const auto& a = spec.measure.atoms;
    return stone_right_probability(spec.mu, a[i].position - a[i - 1].position,
                                   a[i + 1].position - a[i].position);
}

double chain_mean_holding(const StoneChainSpec& spec, std::size_t i) {
    require_interior(spec, i);
    const auto& a = spec.measure.atoms;
    return stone_mean_holding(spec.mu, a[i].weight, a[i].position - a[i - 1].position,
                              a[i + 1].position - a[i].position);
}

ChainStep stone_chain_step(const StoneChainSpec& spec, std::size_t i, rng::Stream& stream) {
    const double mean = chain_mean_holding(spec, i);
    const double p_right = chain_right_probability(spec, i);
    ChainStep step;
    step.holding = stream.exponential(mean);
    step.next = stream.bernoulli(p_right) ? i + 1 : i - 1;
    return step;
}

namespace {

std::size_t index_of_position(const AtomicMeasure& m, double position) {
    const auto it = std::lower_bound(m.atoms.begin(), m.atoms.end(), position,
                                     [](const Atom& a, double p) { return a.position < p; });
    return static_cast<std::size_t>(it - m.atoms.begin());
}

} // namespace

FinSample sample_fin(double alpha, double mu, double t, double window, double cutoff,
                     rng::Stream& stream) {
    require_alpha(alpha);
    if (!(t > 0.0)) throw std::domain_error("sample_fin: t must be > 0");
    if (!(window > 0.0)) throw std::domain_error("sample_fin: window must be > 0");
    constexpr int max_extensions = 64;
    StoneChainSpec spec =
        make_stone_chain(sample_stable_measure(alpha, -window, window, cutoff, stream), mu);
    int extensions = 0;
    const auto grow = [&](bool left, bool right) {
        if (++extensions > max_extensions)
            throw window_exhausted_error("sample_fin: window extension limit reached");
        auto& m = spec.measure;
        const double span = m.hi - m.lo;
        extend_measure(m, alpha, left ? m.lo - 0.5 * span : m.lo,
                       right ? m.hi + 0.5 * span : m.hi, stream);
    };

    // B started at the origin enters one of the two flanking atoms with the
    // exit probabilities of the drift-mu motion.
    std::size_t i;
    while (true) {
        const auto& atoms = spec.measure.atoms;
        const std::size_t right = index_of_position(spec.measure, 0.0);
        if (right == 0) { grow(true, false); continue; }
        if (right >= atoms.size()) { grow(false, true); continue; }
        const double gap_left = 0.0 - atoms[right - 1].position;
        const double gap_right = atoms[right].position - 0.0;
        i = stream.bernoulli(stone_right_probability(mu, gap_left, gap_right)) ? right
                                                                               : right - 1;
        break;
    }

    FinSample out;
    out.start_offset = spec.measure.atoms[i].position;
    double clock = 0.0;
    while (true) {
        if (i == 0 || i + 1 >= spec.measure.atoms.size()) {
            const double pos = spec.measure.atoms[i].position;
            grow(i == 0, i + 1 >= spec.measure.atoms.size());
            i = index_of_position(spec.measure, pos);
            continue;
        }
        const auto step = stone_chain_step(spec, i, stream);
        if (clock + step.holding > t) break;
        clock += step.holding;
        i = step.next;
    }
    out.value = spec.measure.atoms[i].position;
    out.weight = spec.measure.atoms[i].weight;
    return out;
}

double scaling_constant_a(double alpha, double mu) {
    require_alpha(alpha);
    if (!(mu > 0.0)) throw std::domain_error("scaling_constant_a: mu must be > 0");
    return std::pow(mu, alpha) / std::tgamma(1.0 + alpha);
}

} // namespace trapscale::limits
