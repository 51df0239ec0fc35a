#pragma once

#include <complex>
#include <variant>

namespace levyflux {

// Jump size distributions for compound Poisson jumps.
struct ExponentialSizes { double mean = 1.0; };
struct GammaSizes { double shape = 1.0; double scale = 1.0; };
struct DeterministicSizes { double size = 1.0; };
using CpSizeDist = std::variant<ExponentialSizes, GammaSizes, DeterministicSizes>;

struct NoJumps {};
struct CompoundPoissonJumps { double rate = 1.0; CpSizeDist sizes = ExponentialSizes{}; };
struct GammaSubordinatorJumps { double shape_rate = 1.0; double scale = 1.0; };
struct StablePositiveJumps { double alpha = 1.5; double scale = 1.0; };
using JumpSpec = std::variant<NoJumps, CompoundPoissonJumps, GammaSubordinatorJumps, StablePositiveJumps>;

// Spectrally positive Levy process X_t = drift*t + sigma W_t + (positive jumps),
// gaussian_coef = sigma^2.  For the stable family, where a pathwise linear part
// is not defined, drift is the mean rate E X_1.
//
// Sign convention everywhere: phi(lam) = log E exp(-lam X_1), lam >= 0.
struct SpectrallyPositiveModel {
    double drift = 0.0;
    double gaussian_coef = 0.0;
    JumpSpec jumps = NoJumps{};

    bool bounded_variation() const;
    bool has_density() const;
    bool is_pure_drift() const;

    double jump_mean_rate() const;   // mean jump mass per unit time
    double jump_msq_rate() const;    // second-moment rate; +inf for stable
    double mean_rate() const;        // E X_1
    double variance_rate() const;    // Var X_1; +inf for stable

    // Throws validation_error when an invariant fails (negative jump sizes,
    // subordinator, bad parameters).
    void validate() const;
};

double cp_size_mean(const CpSizeDist&);
double cp_size_msq(const CpSizeDist&);
std::complex<double> cp_size_laplace(const CpSizeDist&, std::complex<double> z);
double cp_size_laplace(const CpSizeDist&, double z);

// phi(lam) = log E e^{-lam X_1}; rejects lam < 0.
double laplace_exponent(const SpectrallyPositiveModel&, double lam);
// Analytic continuation used by the Fourier engine (Re z >= 0 or z = -iu).
std::complex<double> laplace_exponent(const SpectrallyPositiveModel&, std::complex<double> z);
double laplace_exponent_derivative(const SpectrallyPositiveModel&, double lam);

// rho = largest root of phi(s) = 0; zero when E X_1 <= 0.
double largest_root(const SpectrallyPositiveModel&);

// Inverse of phi restricted to [rho, infinity); inverse_laplace_exponent(0) = rho.
double inverse_laplace_exponent(const SpectrallyPositiveModel&, double q);

} // namespace levyflux
