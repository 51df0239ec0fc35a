#pragma once

#include "levyflux/model.hpp"

#include <complex>
#include <vector>

namespace levyflux {

enum class DensityMethod { closed_form, series, fourier };

// Tabulated marginal density with its grid.  Grids are sorted but not
// necessarily uniform (heavy tails and support edges get graded nodes).
struct DensityGrid {
    double t = 0.0;
    std::vector<double> x_values;
    std::vector<double> p_values;
    DensityMethod method_tag = DensityMethod::closed_form;

    // trapezoidal mass on the tabulated grid
    double integral() const;
};

DensityMethod density_method(const SpectrallyPositiveModel&);

// p_t(x).  Closed form for Brownian-with-drift and gamma-minus-drift, Fourier
// inversion of the characteristic function otherwise.  Throws no_density_error
// for atom-bearing laws (finite activity plus drift).
double density(const SpectrallyPositiveModel&, double t, double x);

// Fourier route unconditionally (also where a closed form exists), used as the
// second leg of the dual-method checks.
double fourier_density(const SpectrallyPositiveModel&, double t, double x);

// P(X_t > x); closed forms where available, Gil-Pelaez inversion otherwise.
double cdf_upper(const SpectrallyPositiveModel&, double t, double x);

// E e^{i u X_t} by analytic continuation of the Laplace exponent.
std::complex<double> characteristic_function(const SpectrallyPositiveModel&, double t, double u);

// Entrance law of the excursion measure reflected at the supremum:
// q_t(x) = (x/t) p_t(-x), x >= 0.
double entrance_law_q(const SpectrallyPositiveModel&, double t, double x);

// Mass of the atom at -ct for finite-activity models with drift -c
// (e^{-rate*t} for compound Poisson, 1 for pure drift, 0 otherwise).
double atom_at_minus_ct(const SpectrallyPositiveModel&, double t);

// Default tabulation: 2048 points spanning mean +/- 12 standard deviations,
// with graded nodes at a gamma support edge and quantile-flavoured stretching
// for the stable heavy tail.
DensityGrid make_default_grid(const SpectrallyPositiveModel&, double t, int n = 2048);

} // namespace levyflux
