#include "levyflux/density.hpp"
#include "levyflux/detail/math.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace levyflux {

using detail::gamma_pdf;
using detail::norm_pdf;
using detail::norm_upper;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool brownian_only(const SpectrallyPositiveModel& m) {
    return m.gaussian_coef > 0.0 && std::holds_alternative<NoJumps>(m.jumps);
}

const GammaSubordinatorJumps* gamma_only(const SpectrallyPositiveModel& m) {
    if (m.gaussian_coef > 0.0) return nullptr;
    return std::get_if<GammaSubordinatorJumps>(&m.jumps);
}

void require_density(const SpectrallyPositiveModel& m) {
    if (!m.has_density())
        throw no_density_error("law of X_t has an atom at -ct; no density exists");
}

// Truncation point for the Fourier integral: |cf_t(U)| below 1e-12, found by
// doubling.
double fourier_cutoff(const SpectrallyPositiveModel& m, double t) {
    double U = 1.0;
    while (std::abs(characteristic_function(m, t, U)) > 1e-12) {
        U *= 2.0;
        if (U > 1e7)
            throw numerical_error("fourier inversion: characteristic function decays too slowly");
    }
    return U;
}

// Bound on the local oscillation frequency of e^{-iux} cf_t(u).
double fourier_freq(const SpectrallyPositiveModel& m, double t, double x, double U) {
    double f = std::abs(x) + t * (std::abs(m.drift) + m.jump_mean_rate());
    if (const auto* s = std::get_if<StablePositiveJumps>(&m.jumps))
        f += t * s->scale * s->alpha * std::pow(U, s->alpha - 1.0);
    return f;
}

} // namespace

double DensityGrid::integral() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < x_values.size(); ++i)
        sum += 0.5 * (p_values[i] + p_values[i - 1]) * (x_values[i] - x_values[i - 1]);
    return sum;
}

DensityMethod density_method(const SpectrallyPositiveModel& m) {
    if (brownian_only(m) || gamma_only(m)) return DensityMethod::closed_form;
    return DensityMethod::fourier;
}

std::complex<double> characteristic_function(const SpectrallyPositiveModel& m, double t, double u) {
    if (!(t > 0.0)) throw std::invalid_argument("characteristic_function: t must be > 0");
    if (u == 0.0) return {1.0, 0.0};
    const std::complex<double> z(0.0, -u); // E e^{iuX_t} = exp(t phi(-iu))
    return std::exp(t * laplace_exponent(m, z));
}

double fourier_density(const SpectrallyPositiveModel& m, double t, double x) {
    const double U = fourier_cutoff(m, t);
    const double freq = fourier_freq(m, t, x, U);
    const double v = quad::panels([&](double u) {
        return (std::exp(std::complex<double>(0.0, -u * x)) * characteristic_function(m, t, u)).real();
    }, U, freq) / kPi;
    return std::max(v, 0.0);
}

double density(const SpectrallyPositiveModel& m, double t, double x) {
    if (!(t > 0.0)) throw std::invalid_argument("density: t must be > 0");
    require_density(m);
    if (brownian_only(m)) {
        const double sd = std::sqrt(m.gaussian_coef * t);
        return norm_pdf((x - m.drift * t) / sd) / sd;
    }
    if (const auto* g = gamma_only(m)) {
        return gamma_pdf(x - m.drift * t, g->shape_rate * t, g->scale);
    }
    return fourier_density(m, t, x);
}

double cdf_upper(const SpectrallyPositiveModel& m, double t, double x) {
    if (!(t > 0.0)) throw std::invalid_argument("cdf_upper: t must be > 0");
    require_density(m);
    if (brownian_only(m)) {
        const double sd = std::sqrt(m.gaussian_coef * t);
        return norm_upper((x - m.drift * t) / sd);
    }
    if (const auto* g = gamma_only(m)) {
        const double w = x - m.drift * t;
        if (w <= 0.0) return 1.0;
        return boost::math::gamma_q(g->shape_rate * t, w / g->scale);
    }
    const double U = fourier_cutoff(m, t);
    const double freq = fourier_freq(m, t, x, U);
    const double v = 0.5 + quad::panels([&](double u) {
        return (std::exp(std::complex<double>(0.0, -u * x)) * characteristic_function(m, t, u)).imag() / u;
    }, U, freq) / kPi;
    return std::clamp(v, 0.0, 1.0);
}

double entrance_law_q(const SpectrallyPositiveModel& m, double t, double x) {
    if (!(t > 0.0) || x < 0.0) throw std::invalid_argument("entrance_law_q: need t > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return (x / t) * density(m, t, -x);
}

double atom_at_minus_ct(const SpectrallyPositiveModel& m, double t) {
    if (m.is_pure_drift()) return 1.0;
    if (m.gaussian_coef == 0.0) {
        if (const auto* cp = std::get_if<CompoundPoissonJumps>(&m.jumps))
            return std::exp(-cp->rate * t);
    }
    return 0.0;
}

DensityGrid make_default_grid(const SpectrallyPositiveModel& m, double t, int n) {
    if (n < 8) throw std::invalid_argument("make_default_grid: n too small");
    require_density(m);
    DensityGrid grid;
    grid.t = t;
    grid.method_tag = density_method(m);
    std::vector<double>& xs = grid.x_values;
    xs.reserve(static_cast<std::size_t>(n));

    if (const auto* s = std::get_if<StablePositiveJumps>(&m.jumps); s && m.gaussian_coef == 0.0) {
        // heavy right tail: uniform core plus geometrically stretched tail out
        // to where the Levy-tail mass estimate drops below ~3e-6
        const double w = std::pow(t * s->scale * std::abs(std::cos(kPi * s->alpha / 2.0)), 1.0 / s->alpha);
        const double tail_const = t * s->scale * (s->alpha - 1.0) / std::tgamma(2.0 - s->alpha);
        const double A = std::pow(tail_const / 3e-6, 1.0 / s->alpha);
        const double lo = m.drift * t - 14.0 * w;
        const double hi_core = m.drift * t + 16.0 * w;
        const int n_core = 3 * n / 4, n_tail = n - n_core;
        for (int i = 0; i < n_core; ++i)
            xs.push_back(lo + (hi_core - lo) * i / (n_core - 1));
        const double ratio = std::log(std::max(A, hi_core * 2.0) / hi_core) / n_tail;
        for (int i = 1; i <= n_tail; ++i)
            xs.push_back(hi_core * std::exp(ratio * i));
    } else if (const auto* g = gamma_only(m); g && g->shape_rate * t < 2.0) {
        // graded nodes at the support edge -ct where the density spikes; the
        // first node sits at the ~1e-7 quantile, floored at what is resolvable
        // next to the edge in double precision
        const double a = g->shape_rate * t, th = g->scale, edge = m.drift * t;
        const double delta = std::max(th * std::pow(1e-7 * std::tgamma(a + 1.0), 1.0 / a),
                                      std::abs(edge) * 1e-13 + 1e-300);
        const double w_mid = th * std::max(a, 1.0);
        const double hi = m.mean_rate() * t + 12.0 * std::sqrt(m.variance_rate() * t);
        const int n_edge = a < 1.0 ? 3 * n / 4 : n / 4; // unbounded spikes need the finer net
        const int n_uni = n - n_edge;
        const double ratio = std::log(w_mid / delta) / n_edge;
        for (int i = 0; i <= n_edge; ++i)
            xs.push_back(edge + delta * std::exp(ratio * i));
        for (int i = 1; i < n_uni; ++i)
            xs.push_back(edge + w_mid + (hi - edge - w_mid) * i / (n_uni - 1));
    } else {
        const double mu = m.mean_rate() * t;
        const double sd = std::sqrt(m.variance_rate() * t);
        double lo = mu - 12.0 * sd, hi = mu + 12.0 * sd;
        if (gamma_only(m)) lo = std::max(lo, m.drift * t);
        for (int i = 0; i < n; ++i)
            xs.push_back(lo + (hi - lo) * i / (n - 1));
    }

    grid.p_values.reserve(xs.size());
    for (double x : xs) grid.p_values.push_back(density(m, t, x));
    return grid;
}

} // namespace levyflux
