#include "levyflux/model.hpp"
#include "levyflux/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyflux {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
T phi_impl(const SpectrallyPositiveModel& m, T z) {
    T phi = -m.drift * z + 0.5 * m.gaussian_coef * z * z;
    if (const auto* cp = std::get_if<CompoundPoissonJumps>(&m.jumps)) {
        phi += cp->rate * (cp_size_laplace(cp->sizes, z) - 1.0);
    } else if (const auto* g = std::get_if<GammaSubordinatorJumps>(&m.jumps)) {
        phi += -g->shape_rate * std::log(1.0 + g->scale * z);
    } else if (const auto* s = std::get_if<StablePositiveJumps>(&m.jumps)) {
        phi += s->scale * std::pow(z, s->alpha);
    }
    return phi;
}

} // namespace

double cp_size_mean(const CpSizeDist& d) {
    return std::visit([](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ExponentialSizes>) return v.mean;
        else if constexpr (std::is_same_v<V, GammaSizes>) return v.shape * v.scale;
        else return v.size;
    }, d);
}

double cp_size_msq(const CpSizeDist& d) {
    return std::visit([](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ExponentialSizes>) return 2.0 * v.mean * v.mean;
        else if constexpr (std::is_same_v<V, GammaSizes>)
            return v.shape * (v.shape + 1.0) * v.scale * v.scale;
        else return v.size * v.size;
    }, d);
}

std::complex<double> cp_size_laplace(const CpSizeDist& d, std::complex<double> z) {
    return std::visit([&](const auto& v) -> std::complex<double> {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ExponentialSizes>) return 1.0 / (1.0 + v.mean * z);
        else if constexpr (std::is_same_v<V, GammaSizes>)
            return std::pow(1.0 + v.scale * z, -v.shape);
        else return std::exp(-z * v.size);
    }, d);
}

double cp_size_laplace(const CpSizeDist& d, double z) {
    return cp_size_laplace(d, std::complex<double>(z, 0.0)).real();
}

bool SpectrallyPositiveModel::bounded_variation() const {
    if (gaussian_coef > 0.0) return false;
    if (std::holds_alternative<StablePositiveJumps>(jumps)) return false;
    return true; // none, compound Poisson, gamma subordinator jumps
}

bool SpectrallyPositiveModel::has_density() const {
    if (gaussian_coef > 0.0) return true;
    if (std::holds_alternative<GammaSubordinatorJumps>(jumps)) return true;
    if (std::holds_alternative<StablePositiveJumps>(jumps)) return true;
    return false; // finite activity plus drift: atom at -ct
}

bool SpectrallyPositiveModel::is_pure_drift() const {
    return gaussian_coef == 0.0 && std::holds_alternative<NoJumps>(jumps);
}

double SpectrallyPositiveModel::jump_mean_rate() const {
    if (const auto* cp = std::get_if<CompoundPoissonJumps>(&jumps))
        return cp->rate * cp_size_mean(cp->sizes);
    if (const auto* g = std::get_if<GammaSubordinatorJumps>(&jumps))
        return g->shape_rate * g->scale;
    if (std::holds_alternative<StablePositiveJumps>(jumps)) return 0.0; // centered
    return 0.0;
}

double SpectrallyPositiveModel::jump_msq_rate() const {
    if (const auto* cp = std::get_if<CompoundPoissonJumps>(&jumps))
        return cp->rate * cp_size_msq(cp->sizes);
    if (const auto* g = std::get_if<GammaSubordinatorJumps>(&jumps))
        return g->shape_rate * g->scale * g->scale;
    if (std::holds_alternative<StablePositiveJumps>(jumps)) return kInf;
    return 0.0;
}

double SpectrallyPositiveModel::mean_rate() const { return drift + jump_mean_rate(); }

double SpectrallyPositiveModel::variance_rate() const {
    return gaussian_coef + jump_msq_rate();
}

void SpectrallyPositiveModel::validate() const {
    if (gaussian_coef < 0.0) throw validation_error("gaussian_coef must be >= 0");
    if (const auto* cp = std::get_if<CompoundPoissonJumps>(&jumps)) {
        if (!(cp->rate > 0.0)) throw validation_error("compound Poisson rate must be > 0");
        std::visit([](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, ExponentialSizes>) {
                if (!(v.mean > 0.0)) throw validation_error("jump sizes must be strictly positive");
            } else if constexpr (std::is_same_v<V, GammaSizes>) {
                if (!(v.shape > 0.0) || !(v.scale > 0.0))
                    throw validation_error("jump sizes must be strictly positive");
            } else {
                if (!(v.size > 0.0)) throw validation_error("jump sizes must be strictly positive");
            }
        }, cp->sizes);
    } else if (const auto* g = std::get_if<GammaSubordinatorJumps>(&jumps)) {
        if (!(g->shape_rate > 0.0) || !(g->scale > 0.0))
            throw validation_error("gamma subordinator parameters must be > 0");
    } else if (const auto* s = std::get_if<StablePositiveJumps>(&jumps)) {
        if (!(s->alpha > 1.0) || !(s->alpha < 2.0))
            throw validation_error("stable index must lie in (1,2)");
        if (!(s->scale > 0.0)) throw validation_error("stable scale must be > 0");
    }
    // not a subordinator: needs a Gaussian part, a negative drift, or stable jumps
    const bool stable = std::holds_alternative<StablePositiveJumps>(jumps);
    if (!(gaussian_coef > 0.0 || drift < 0.0 || stable))
        throw validation_error("model is a subordinator (nondecreasing paths)");
}

double laplace_exponent(const SpectrallyPositiveModel& m, double lam) {
    if (lam < 0.0) throw std::invalid_argument("laplace_exponent: lam must be >= 0");
    if (lam == 0.0) return 0.0;
    return phi_impl(m, lam);
}

std::complex<double> laplace_exponent(const SpectrallyPositiveModel& m, std::complex<double> z) {
    return phi_impl(m, z);
}

double laplace_exponent_derivative(const SpectrallyPositiveModel& m, double lam) {
    if (lam < 0.0) throw std::invalid_argument("lam must be >= 0");
    double d = -m.drift + m.gaussian_coef * lam;
    if (const auto* cp = std::get_if<CompoundPoissonJumps>(&m.jumps)) {
        const double dL = std::visit([&](const auto& v) -> double {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, ExponentialSizes>)
                return -v.mean / ((1.0 + v.mean * lam) * (1.0 + v.mean * lam));
            else if constexpr (std::is_same_v<V, GammaSizes>)
                return -v.shape * v.scale * std::pow(1.0 + v.scale * lam, -v.shape - 1.0);
            else
                return -v.size * std::exp(-lam * v.size);
        }, cp->sizes);
        d += cp->rate * dL;
    } else if (const auto* g = std::get_if<GammaSubordinatorJumps>(&m.jumps)) {
        d += -g->shape_rate * g->scale / (1.0 + g->scale * lam);
    } else if (const auto* s = std::get_if<StablePositiveJumps>(&m.jumps)) {
        d += lam > 0.0 ? s->scale * s->alpha * std::pow(lam, s->alpha - 1.0) : 0.0;
    }
    return d;
}

namespace {

// Bisection on a bracketing interval; phi is strictly convex so the bracket is
// guaranteed once the upper end is positive.
double bisect_phi(const SpectrallyPositiveModel& m, double target, double lo, double hi) {
    double flo = laplace_exponent(m, lo) - target;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = laplace_exponent(m, mid) - target;
        if ((fm <= 0.0) == (flo <= 0.0)) {
            lo = mid; flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12 * std::max(1.0, hi)) return 0.5 * (lo + hi);
    }
    throw numerical_error("bisection did not converge");
}

} // namespace

double largest_root(const SpectrallyPositiveModel& m) {
    m.validate();
    // phi convex, phi(0)=0: a positive root exists iff phi'(0+) < 0, i.e. E X_1 > 0
    if (laplace_exponent_derivative(m, 0.0) >= 0.0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (laplace_exponent(m, hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw numerical_error("largest_root: no positive bracket found");
    }
    return bisect_phi(m, 0.0, hi * 0.5 > 0.0 ? 0.0 : 0.0, hi);
}

double inverse_laplace_exponent(const SpectrallyPositiveModel& m, double q) {
    if (q < 0.0) throw std::invalid_argument("inverse_laplace_exponent: q must be >= 0");
    const double rho = largest_root(m);
    if (q == 0.0) return rho;
    double hi = std::max(rho, 1.0);
    int guard = 0;
    while (laplace_exponent(m, hi) < q) {
        hi *= 2.0;
        if (++guard > 200) throw numerical_error("inverse_laplace_exponent: no bracket found");
    }
    return bisect_phi(m, q, rho, hi);
}

} // namespace levyflux
