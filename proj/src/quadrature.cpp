#include "levyflux/quadrature.hpp"
#include "levyflux/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace levyflux::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double gk(const Fn& f, double a, double b, double abs_tol, const char* what) {
    if (!(b > a)) return 0.0;
    double err = 0.0, l1 = 0.0;
    const double v = GK::integrate(f, a, b, 15, 1e-12, &err, &l1);
    if (!std::isfinite(v))
        throw numerical_error(std::string(what) + ": non-finite integral");
    if (err > std::max(abs_tol * 100.0, 1e-6 * (1.0 + std::abs(v))))
        throw numerical_error(std::string(what) + ": error estimate " + std::to_string(err) +
                              " above tolerance");
    return v;
}

} // namespace

double integrate(const Fn& f, double a, double b, double abs_tol) {
    return gk(f, a, b, abs_tol, "integrate");
}

double time_kernel(const Fn& g, double t, double abs_tol) {
    if (!(t > 0.0)) throw std::invalid_argument("time_kernel: t must be positive");
    // lower half: s = t u^2, ds/s = 2 du/u
    auto lower = [&](double u) {
        if (u <= 0.0) return 0.0;
        return g(t * u * u) * 2.0 / u;
    };
    // upper half: s = t - (t/2) v^2, ds/s = -(t v / s) dv
    auto upper = [&](double v) {
        const double s = t - 0.5 * t * v * v;
        return g(s) * t * v / s;
    };
    const double half = std::sqrt(0.5); // u with t u^2 = t/2
    const double lo = gk(lower, 0.0, half, abs_tol * 0.5, "time_kernel");
    const double hi = gk(upper, 0.0, 1.0, abs_tol * 0.5, "time_kernel");
    return lo + hi;
}

double time_integral(const Fn& F, double t, double abs_tol) {
    return time_kernel([&](double s) { return s * F(s); }, t, abs_tol);
}

double halfline_log(const Fn& h, double abs_tol) {
    auto trans = [&](double v) {
        const double tt = std::exp(v);
        const double y = h(tt);
        return y == 0.0 ? 0.0 : y * tt;
    };
    // locate the bulk with a coarse probe, then widen until the transformed
    // integrand is negligible relative to its peak
    double peak = 0.0;
    for (double v = -12.0; v <= 12.0; v += 0.5) peak = std::max(peak, std::abs(trans(v)));
    if (peak == 0.0) {
        for (double v = -30.0; v <= 40.0; v += 1.0) peak = std::max(peak, std::abs(trans(v)));
        if (peak == 0.0) return 0.0;
    }
    const double cutoff = 1e-14 * peak;
    double lo = -12.0, hi = 12.0;
    while (lo > -60.0 && std::abs(trans(lo)) > cutoff) lo -= 3.0;
    while (hi < 90.0 && std::abs(trans(hi)) > cutoff) hi += 3.0;
    return gk(trans, lo, hi, abs_tol, "halfline_log");
}

double panels(const Fn& f, double U, double freq, int min_panels) {
    if (!(U > 0.0)) return 0.0;
    // >= ~15 Gauss-Legendre nodes per oscillation period
    const double periods = U * std::max(freq, 0.0) / (2.0 * 3.14159265358979323846);
    int m = static_cast<int>(std::ceil(periods / 2.0)) + min_panels;
    if (m > 200000) throw numerical_error("panels: oscillation budget exceeded");
    const double w = U / m;
    double sum = 0.0;
    using G = boost::math::quadrature::gauss<double, 30>;
    for (int i = 0; i < m; ++i) {
        sum += G::integrate(f, i * w, (i + 1) * w);
    }
    return sum;
}

} // namespace levyflux::quad
