#ifndef TRAPSCALE_NUMERICS_HPP
#define TRAPSCALE_NUMERICS_HPP

#include <functional>

namespace trapscale::numerics {

// Adaptive Simpson quadrature on [a,b] with absolute tolerance tol.
// Throws std::runtime_error when the recursion depth limit is reached
// before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b, double tol = 1e-12);

// Fixed 64-node Gauss-Legendre rule on [a,b]; used as the second,
// independent quadrature route where two rules must agree.
double integrate_gauss64(const std::function<double(double)>& f,
                         double a, double b);

// Regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with k degrees of freedom.
double chi_square_sf(double x, int dof);

// Kolmogorov distribution K(x) = P{sup|bridge| <= x} via the alternating series.
double kolmogorov_cdf(double x);

// Upper critical value c with 1 - K(c) = level, solved from the series.
double kolmogorov_critical(double level);

} // namespace trapscale::numerics

#endif
