#include "levyflux/fluctuation.hpp"
#include "levyflux/density.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/moments.hpp"
#include "levyflux/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace levyflux {

namespace {

std::atomic<long> g_clamp_warnings{0};

void require_positive_t(double t, const char* what) {
    if (!(t > 0.0)) throw std::invalid_argument(std::string(what) + ": t must be > 0");
}

double bv_drift_c(const SpectrallyPositiveModel& m) {
    // bounded variation under assumption (i) forces drift < 0
    return -m.drift;
}

} // namespace

double clamp_probability(double p) {
    if (p < -1e-6 || p > 1.0 + 1e-6) ++g_clamp_warnings;
    return std::clamp(p, 0.0, 1.0);
}

long clamp_warning_count() { return g_clamp_warnings.load(); }
void reset_clamp_warnings() { g_clamp_warnings.store(0); }

void JointLawQuery::validate() const {
    if (!(t > 0.0)) throw std::invalid_argument("JointLawQuery: t must be > 0");
    if (side == Side::supremum) {
        if (!(x > z) || x < 0.0)
            throw std::invalid_argument("JointLawQuery(supremum): need x > z and x >= 0");
    } else {
        if (!(x > 0.0) || z < -x)
            throw std::invalid_argument("JointLawQuery(infimum): need x > 0 and z >= -x");
    }
}

double fpt_density(const SpectrallyPositiveModel& m, double x, double t) {
    require_positive_t(t, "fpt_density");
    if (!(x > 0.0)) throw std::invalid_argument("fpt_density: x must be > 0");
    return (x / t) * density(m, t, -x);
}

double inf_tail(const SpectrallyPositiveModel& m, double x, double t) {
    require_positive_t(t, "inf_tail");
    if (!(x > 0.0)) throw std::invalid_argument("inf_tail: x must be > 0");
    const double v = quad::time_kernel([&](double s) { return x * density(m, s, -x); }, t);
    return clamp_probability(v);
}

double inf_tail_alt(const SpectrallyPositiveModel& m, double x, double t) {
    require_positive_t(t, "inf_tail_alt");
    if (!(x > 0.0)) throw std::invalid_argument("inf_tail_alt: x must be > 0");
    const double v = quad::time_kernel([&](double s) {
        return x * prob_positive(m, t - s) * density(m, s, -x);
    }, t);
    return clamp_probability(v + (1.0 - cdf_upper(m, t, -x)));
}

double sup_tail(const SpectrallyPositiveModel& m, double x, double t) {
    require_positive_t(t, "sup_tail");
    if (x < 0.0) throw std::invalid_argument("sup_tail: x must be >= 0");
    if (x == 0.0) {
        // regularity dichotomy at the boundary
        return m.bounded_variation() ? 1.0 - sup_atom_total(m, t) : 1.0;
    }
    const double v = quad::time_kernel([&](double s) {
        return neg_part_mean(m, s) * density(m, t - s, x);
    }, t);
    return clamp_probability(v + cdf_upper(m, t, x));
}

double sup_joint_density(const SpectrallyPositiveModel& m, const JointLawQuery& q) {
    q.validate();
    if (q.side != JointLawQuery::Side::supremum)
        throw std::invalid_argument("sup_joint_density: query side must be supremum");
    const double v = quad::time_kernel([&](double s) {
        return (q.x - q.z) * density(m, s, q.z - q.x) * density(m, q.t - s, q.x);
    }, q.t);
    return std::max(v, 0.0);
}

double inf_joint_density(const SpectrallyPositiveModel& m, const JointLawQuery& q) {
    q.validate();
    if (q.side != JointLawQuery::Side::infimum)
        throw std::invalid_argument("inf_joint_density: query side must be infimum");
    const double v = quad::time_kernel([&](double s) {
        return q.x * density(m, s, -q.x) * density(m, q.t - s, q.x + q.z);
    }, q.t);
    return std::max(v, 0.0);
}

bool has_sup_atom(const SpectrallyPositiveModel& m) { return m.bounded_variation(); }

double sup_atom_density(const SpectrallyPositiveModel& m, double t, double z) {
    require_positive_t(t, "sup_atom_density");
    if (!(z < 0.0)) throw std::invalid_argument("sup_atom_density: z must be < 0");
    if (!m.bounded_variation()) return 0.0;
    const double c = bv_drift_c(m);
    return (-z / (c * t)) * density(m, t, z);
}

double sup_atom_total(const SpectrallyPositiveModel& m, double t) {
    require_positive_t(t, "sup_atom_total");
    if (!m.bounded_variation()) return 0.0;
    if (m.is_pure_drift()) return 1.0; // X_t = -ct, sup is identically 0
    const double c = bv_drift_c(m);
    return clamp_probability(neg_part_mean(m, t) / (c * t));
}

double sup_laplace(const SpectrallyPositiveModel& m, double lam, double t) {
    require_positive_t(t, "sup_laplace");
    if (lam < 0.0) throw std::invalid_argument("sup_laplace: lam must be >= 0");
    if (lam == 0.0) return 1.0;
    const double integral = quad::time_kernel([&](double s) {
        return neg_part_mean(m, s) * exp_upper(m, t - s, lam);
    }, t);
    const double v = -lam * integral + exp_upper(m, t, lam) + (1.0 - prob_positive(m, t));
    return clamp_probability(v);
}

double inf_laplace(const SpectrallyPositiveModel& m, double lam, double t) {
    require_positive_t(t, "inf_laplace");
    if (lam < 0.0) throw std::invalid_argument("inf_laplace: lam must be >= 0");
    if (lam == 0.0) return 1.0;
    const double integral = quad::time_kernel([&](double s) {
        return prob_positive(m, t - s) * negx_exp_lower(m, s, lam);
    }, t);
    const double v = prob_positive(m, t) + exp_lower(m, t, lam) - lam * integral;
    return clamp_probability(v);
}

double sup_moment(const SpectrallyPositiveModel& m, int n, double t) {
    require_positive_t(t, "sup_moment");
    if (n < 1) throw std::invalid_argument("sup_moment: n must be >= 1");
    const double integral = quad::time_kernel([&](double s) {
        return neg_part_mean(m, s) * pow_upper(m, t - s, n - 1);
    }, t);
    return n * integral + pow_upper(m, t, n);
}

double inf_moment(const SpectrallyPositiveModel& m, int n, double t) {
    require_positive_t(t, "inf_moment");
    if (n < 1) throw std::invalid_argument("inf_moment: n must be >= 1");
    const double integral = quad::time_kernel([&](double s) {
        return prob_positive(m, t - s) * pow_neg_lower(m, s, n);
    }, t);
    return n * integral + pow_neg_lower(m, t, n);
}

double big_phi(const SpectrallyPositiveModel& m, double lam) {
    if (lam < 0.0) throw std::invalid_argument("big_phi: lam must be >= 0");
    if (lam == 0.0) return 0.0;
    return quad::halfline_log([&](double t) {
        return -std::expm1(-lam * t) * density(m, t, 0.0) / t;
    });
}

double laplace_density_at_zero(const SpectrallyPositiveModel& m, double lam) {
    if (!(lam > 0.0)) throw std::invalid_argument("laplace_density_at_zero: lam must be > 0");
    return quad::halfline_log([&](double t) { return std::exp(-lam * t) * density(m, t, 0.0); });
}

double phi_lambda_z(const SpectrallyPositiveModel& m, double lam, double z) {
    if (lam < 0.0) throw std::invalid_argument("phi_lambda_z: lam must be >= 0");
    if (!(z < 0.0)) throw std::invalid_argument("phi_lambda_z: z must be < 0");
    return quad::halfline_log([&](double t) { return std::exp(-lam * t) * density(m, t, z) / t; });
}

double phi_identity_residual(const SpectrallyPositiveModel& m, double lam, double z) {
    double expo = big_phi(m, lam);
    if (m.bounded_variation()) expo += lam / bv_drift_c(m);
    return phi_lambda_z(m, lam, z) - phi_lambda_z(m, 0.0, z) * std::exp(z * expo);
}

double phi_ode_residual(const SpectrallyPositiveModel& m, double lam, double z) {
    if (!(lam > 0.0)) throw std::invalid_argument("phi_ode_residual: lam must be > 0");
    const double h = 1e-4 * (1.0 + lam);
    const double dphi = (phi_lambda_z(m, lam + h, z) - phi_lambda_z(m, lam - h, z)) / (2.0 * h);
    double kernel = laplace_density_at_zero(m, lam);
    if (m.bounded_variation()) kernel += 1.0 / bv_drift_c(m);
    return dphi - z * phi_lambda_z(m, lam, z) * kernel;
}

EntranceResidual entrance_law_residual(const SpectrallyPositiveModel& m, const EntranceCandidate& qstar,
                                       double t, double x, double z) {
    require_positive_t(t, "entrance_law_residual");
    if (!(x > 0.0) || !(z < x))
        throw std::invalid_argument("entrance_law_residual: need x > 0 and z < x");
    const double lhs = quad::time_kernel([&](double w) {
        return (x - z) * density(m, w, z - x) * qstar(t - w, x);
    }, t);
    auto tail = [&](double xx) {
        return quad::time_kernel([&](double w) {
            return (xx - z) * density(m, w, z - xx) * density(m, t - w, xx);
        }, t);
    };
    const double h = std::max(1e-4, 1e-4 * x);
    const double rhs = -(tail(x + h) - tail(x - h)) / (2.0 * h);
    return {lhs - rhs, lhs, rhs, h};
}

double joint_law_from_entrance(const SpectrallyPositiveModel& m, const EntranceCandidate& q,
                               const EntranceCandidate& qstar, double t, double x, double z) {
    (void)m;
    require_positive_t(t, "joint_law_from_entrance");
    if (!(x > z)) throw std::invalid_argument("joint_law_from_entrance: need x > z");
    return quad::time_integral([&](double s) { return qstar(s, x) * q(t - s, x - z); }, t);
}

} // namespace levyflux
