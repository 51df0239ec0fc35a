#pragma once

#include "levyflux/model.hpp"

namespace levyflux {

enum class MomentKind { mean, neg_part_mean, neg_truncated_mean };

// mean = t * E X_1; neg_part_mean = E[max(-X_t,0)]; neg_truncated_mean =
// E[X_t 1{X_t<=0}].  The truncated kinds need a density.
double model_moments(const SpectrallyPositiveModel&, double t, MomentKind);

// Truncated expectations used by the fluctuation quadratures.  Closed forms
// for the Brownian and gamma-minus-drift families, density quadrature for the
// rest.
double prob_positive(const SpectrallyPositiveModel&, double t);            // P(X_t > 0)
double neg_part_mean(const SpectrallyPositiveModel&, double t);            // E[X_t^-]
double exp_upper(const SpectrallyPositiveModel&, double t, double lam);    // E[e^{-lam X_t} 1{X_t>0}]
double exp_lower(const SpectrallyPositiveModel&, double t, double lam);    // E[e^{ lam X_t} 1{X_t<=0}]
double negx_exp_lower(const SpectrallyPositiveModel&, double t, double lam); // E[(-X_t)e^{lam X_t}1{X_t<=0}]
double pow_upper(const SpectrallyPositiveModel&, double t, int k);         // E[X_t^k 1{X_t>=0}]
double pow_neg_lower(const SpectrallyPositiveModel&, double t, int k);     // E[(-X_t)^k 1{X_t<=0}]

} // namespace levyflux
