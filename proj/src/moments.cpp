#include "levyflux/moments.hpp"
#include "levyflux/density.hpp"
#include "levyflux/detail/math.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/quadrature.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace levyflux {

using detail::norm_cdf;
using detail::norm_pdf;
using detail::norm_upper;
using detail::gamma_pdf;

namespace {

struct Gaussian { double m, v, sd; };

bool brownian_only(const SpectrallyPositiveModel& mo) {
    return mo.gaussian_coef > 0.0 && std::holds_alternative<NoJumps>(mo.jumps);
}

Gaussian gaussian_params(const SpectrallyPositiveModel& mo, double t) {
    const double v = mo.gaussian_coef * t;
    return {mo.drift * t, v, std::sqrt(v)};
}

struct GammaDrift { double a, th, B; }; // X_t = Gamma(a, th) - B

const GammaSubordinatorJumps* gamma_only(const SpectrallyPositiveModel& mo) {
    if (mo.gaussian_coef > 0.0) return nullptr;
    return std::get_if<GammaSubordinatorJumps>(&mo.jumps);
}

GammaDrift gamma_params(const GammaSubordinatorJumps& g, const SpectrallyPositiveModel& mo, double t) {
    return {g.shape_rate * t, g.scale, -mo.drift * t};
}

// E[Y^k 1{Y>=0}] for Y ~ N(m, v) via the one-sided moment recursion.
double gauss_pow_upper(double m, double v, int k) {
    const double sd = std::sqrt(v);
    double i0 = norm_cdf(m / sd);
    if (k == 0) return i0;
    const double p0 = norm_pdf(m / sd) / sd; // density at 0
    double i1 = m * i0 + v * p0;
    if (k == 1) return i1;
    for (int j = 2; j <= k; ++j) {
        const double ij = m * i1 + (j - 1) * v * i0;
        i0 = i1;
        i1 = ij;
    }
    return i1;
}

// \int_0^B psi(g) f_{Gamma(a,th)}(g) dg, exact through the a < 1 edge spike by
// the substitution g = B v^{1/a}.
double gamma_partial(double a, double th, double B, const std::function<double(double)>& psi) {
    if (B <= 0.0) return 0.0;
    if (a >= 1.0) {
        return quad::integrate([&](double g) { return psi(g) * gamma_pdf(g, a, th); }, 0.0, B, 1e-11);
    }
    const double pref = std::exp(a * std::log(B) - std::lgamma(a) - a * std::log(th)) / a;
    return pref * quad::integrate([&](double v) {
        const double g = B * std::pow(v, 1.0 / a);
        return psi(g) * std::exp(-g / th);
    }, 0.0, 1.0, 1e-11);
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

// truncated gamma moments: \int over [0,B] resp. [B,inf) of g^j f_a(g) dg
double gamma_mom_lower(double a, double th, double B, int j) {
    return std::pow(th, j) * std::exp(std::lgamma(a + j) - std::lgamma(a)) *
           boost::math::gamma_p(a + j, B / th);
}
double gamma_mom_upper(double a, double th, double B, int j) {
    return std::pow(th, j) * std::exp(std::lgamma(a + j) - std::lgamma(a)) *
           boost::math::gamma_q(a + j, B / th);
}

// generic integration windows over the density
double lower_bound(const SpectrallyPositiveModel& mo, double t, int k = 1) {
    if (const auto* s = std::get_if<StablePositiveJumps>(&mo.jumps)) {
        const double w = std::pow(t * s->scale, 1.0 / s->alpha);
        return mo.drift * t - (16.0 + 2.0 * k) * w - 1.0;
    }
    const double lo = mo.mean_rate() * t - (12.0 + 4.0 * k) * std::sqrt(mo.variance_rate() * t);
    if (gamma_only(mo)) return std::max(lo, mo.drift * t);
    return lo;
}

double generic_lower(const SpectrallyPositiveModel& mo, double t,
                     const std::function<double(double)>& psi, int k = 1) {
    const double lo = lower_bound(mo, t, k);
    if (lo >= 0.0) return 0.0;
    return quad::integrate([&](double w) { return psi(w) * density(mo, t, w); }, lo, 0.0, 1e-10);
}

} // namespace

double prob_positive(const SpectrallyPositiveModel& mo, double t) {
    return cdf_upper(mo, t, 0.0);
}

double neg_part_mean(const SpectrallyPositiveModel& mo, double t) {
    if (brownian_only(mo)) {
        const auto [m, v, sd] = gaussian_params(mo, t);
        return sd * norm_pdf(m / sd) - m * norm_cdf(-m / sd);
    }
    if (const auto* g = gamma_only(mo)) {
        const auto [a, th, B] = gamma_params(*g, mo, t);
        if (B <= 0.0) return 0.0;
        return B * boost::math::gamma_p(a, B / th) - gamma_mom_lower(a, th, B, 1);
    }
    return generic_lower(mo, t, [](double w) { return -w; });
}

double exp_upper(const SpectrallyPositiveModel& mo, double t, double lam) {
    if (lam < 0.0) throw std::invalid_argument("exp_upper: lam must be >= 0");
    if (lam == 0.0) return prob_positive(mo, t);
    if (brownian_only(mo)) {
        const auto [m, v, sd] = gaussian_params(mo, t);
        return std::exp(-lam * m + 0.5 * lam * lam * v) * norm_cdf((m - lam * v) / sd);
    }
    if (const auto* g = gamma_only(mo)) {
        const auto [a, th, B] = gamma_params(*g, mo, t);
        return std::exp(lam * B - a * std::log1p(lam * th)) *
               boost::math::gamma_q(a, B * (lam + 1.0 / th));
    }
    const double hi = mo.mean_rate() * t + 16.0 * std::sqrt(std::min(mo.variance_rate(), 1e6) * t) +
                      35.0 / lam;
    return quad::integrate([&](double w) { return std::exp(-lam * w) * density(mo, t, w); },
                           0.0, hi, 1e-10);
}

double exp_lower(const SpectrallyPositiveModel& mo, double t, double lam) {
    if (lam < 0.0) throw std::invalid_argument("exp_lower: lam must be >= 0");
    if (brownian_only(mo)) {
        const auto [m, v, sd] = gaussian_params(mo, t);
        return std::exp(lam * m + 0.5 * lam * lam * v) * norm_cdf(-(m + lam * v) / sd);
    }
    if (const auto* g = gamma_only(mo)) {
        const auto [a, th, B] = gamma_params(*g, mo, t);
        if (B <= 0.0) return 0.0;
        if (lam * th < 1.0)
            return std::exp(-lam * B - a * std::log1p(-lam * th)) *
                   boost::math::gamma_p(a, B * (1.0 / th - lam));
        return gamma_partial(a, th, B, [&](double gg) { return std::exp(lam * (gg - B)); });
    }
    return generic_lower(mo, t, [&](double w) { return std::exp(lam * w); });
}

double negx_exp_lower(const SpectrallyPositiveModel& mo, double t, double lam) {
    if (lam < 0.0) throw std::invalid_argument("negx_exp_lower: lam must be >= 0");
    if (brownian_only(mo)) {
        const auto [m, v, sd] = gaussian_params(mo, t);
        const double mt = m + lam * v;
        return std::exp(lam * m + 0.5 * lam * lam * v) *
               (sd * norm_pdf(mt / sd) - mt * norm_cdf(-mt / sd));
    }
    if (const auto* g = gamma_only(mo)) {
        const auto [a, th, B] = gamma_params(*g, mo, t);
        if (B <= 0.0) return 0.0;
        if (lam * th < 1.0) {
            const double p1 = boost::math::gamma_p(a, B * (1.0 / th - lam));
            const double p2 = boost::math::gamma_p(a + 1.0, B * (1.0 / th - lam));
            return std::exp(-lam * B) * (B * std::exp(-a * std::log1p(-lam * th)) * p1 -
                                         a * th * std::exp(-(a + 1.0) * std::log1p(-lam * th)) * p2);
        }
        return gamma_partial(a, th, B, [&](double gg) { return (B - gg) * std::exp(lam * (gg - B)); });
    }
    return generic_lower(mo, t, [&](double w) { return -w * std::exp(lam * w); });
}

double pow_upper(const SpectrallyPositiveModel& mo, double t, int k) {
    if (k < 0) throw std::invalid_argument("pow_upper: k must be >= 0");
    if (k == 0) return prob_positive(mo, t);
    if (brownian_only(mo)) {
        const auto [m, v, sd] = gaussian_params(mo, t);
        return gauss_pow_upper(m, v, k);
    }
    if (const auto* g = gamma_only(mo)) {
        const auto [a, th, B] = gamma_params(*g, mo, t);
        double sum = 0.0;
        for (int j = 0; j <= k; ++j)
            sum += binom(k, j) * std::pow(-B, k - j) * gamma_mom_upper(a, th, B, j);
        return sum;
    }
    if (std::holds_alternative<StablePositiveJumps>(mo.jumps)) {
        if (k == 1) return mo.mean_rate() * t + neg_part_mean(mo, t); // E X^+ = E X + E X^-
        throw std::invalid_argument("pow_upper: moment of this order is not finite for stable jumps");
    }
    const double hi = mo.mean_rate() * t + (12.0 + 4.0 * k) * std::sqrt(mo.variance_rate() * t);
    return quad::integrate([&](double w) { return std::pow(w, k) * density(mo, t, w); },
                           0.0, std::max(hi, 1.0), 1e-10);
}

double pow_neg_lower(const SpectrallyPositiveModel& mo, double t, int k) {
    if (k < 0) throw std::invalid_argument("pow_neg_lower: k must be >= 0");
    if (k == 0) return 1.0 - prob_positive(mo, t);
    if (brownian_only(mo)) {
        const auto [m, v, sd] = gaussian_params(mo, t);
        return gauss_pow_upper(-m, v, k); // -X ~ N(-m, v)
    }
    if (const auto* g = gamma_only(mo)) {
        const auto [a, th, B] = gamma_params(*g, mo, t);
        if (B <= 0.0) return 0.0;
        double sum = 0.0;
        for (int j = 0; j <= k; ++j)
            sum += binom(k, j) * std::pow(B, k - j) * (j % 2 ? -1.0 : 1.0) * gamma_mom_lower(a, th, B, j);
        return sum;
    }
    return generic_lower(mo, t, [&](double w) { return std::pow(-w, k); }, k);
}

double model_moments(const SpectrallyPositiveModel& mo, double t, MomentKind kind) {
    if (!(t > 0.0)) throw std::invalid_argument("model_moments: t must be > 0");
    switch (kind) {
        case MomentKind::mean:
            return t * mo.mean_rate();
        case MomentKind::neg_part_mean:
            if (mo.is_pure_drift()) return -mo.drift * t;
            return neg_part_mean(mo, t);
        case MomentKind::neg_truncated_mean:
            if (mo.is_pure_drift()) return mo.drift * t;
            return -neg_part_mean(mo, t);
    }
    throw std::invalid_argument("model_moments: bad kind");
}

} // namespace levyflux
