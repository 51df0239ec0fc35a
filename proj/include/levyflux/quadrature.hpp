#pragma once

#include <functional>

namespace levyflux::quad {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a, b]. Throws numerical_error if the error
// estimate stays above tolerance.
double integrate(const Fn& f, double a, double b, double abs_tol = 1e-9);

// \int_0^t g(s)/s ds for g bounded with g(0+) = 0.  The kernel ds/s appears in
// every fluctuation identity here; the substitution s = t u^2 (lower half) and
// its mirror at the s = t end keep the transformed integrand bounded whenever
// g vanishes at least like sqrt(s) at the origin.
double time_kernel(const Fn& g, double t, double abs_tol = 1e-8);

// Plain \int_0^t F(s) ds routed through the same substitutions, for integrands
// that are steep at either endpoint (entrance-law convolutions).
double time_integral(const Fn& F, double t, double abs_tol = 1e-8);

// \int_0^infty h(t) dt via t = e^v with automatic window search, for the
// Laplace-in-t transforms whose tails decay only like t^{-3/2}.
double halfline_log(const Fn& h, double abs_tol = 1e-9);

// Oscillatory integral \int_0^U f(u) du by fixed Gauss-Legendre panels, panel
// count tied to the oscillation frequency bound.
double panels(const Fn& f, double U, double freq, int min_panels = 32);

} // namespace levyflux::quad
