#include "levyflux/sampling.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/rng.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/expint.hpp>

namespace levyflux {

namespace {

double expint_e1(double x) { return boost::math::expint(1, x); }

double u01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

} // namespace

double gamma_truncation_bias_rate(const GammaSubordinatorJumps& g, double eps) {
    return g.shape_rate * g.scale * (-std::expm1(-eps / g.scale));
}

double sample_gamma_jump(const GammaSubordinatorJumps& g, double eps, std::mt19937_64& rng) {
    const double th = g.scale;
    std::exponential_distribution<double> exp1(1.0);
    if (eps >= th) {
        // single branch: shifted exponential proposal, accept with prob eps/x
        for (;;) {
            const double x = eps + th * exp1(rng);
            if (u01(rng) * x <= eps) return x;
        }
    }
    const double w_hi = expint_e1(1.0);                    // mass of [th, inf)
    const double w_lo = expint_e1(eps / th) - w_hi;        // mass of [eps, th)
    for (;;) {
        if (u01(rng) * (w_lo + w_hi) < w_lo) {
            // log-uniform proposal on [eps, th], accept with prob e^{-x/th}/e^{-eps/th}
            const double x = eps * std::pow(th / eps, u01(rng));
            if (u01(rng) <= std::exp(-(x - eps) / th)) return x;
        } else {
            const double x = th * (1.0 + exp1(rng));
            if (u01(rng) * x <= th) return x;
        }
    }
}

double sample_cp_jump(const CpSizeDist& d, std::mt19937_64& rng) {
    return std::visit([&](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ExponentialSizes>) {
            return std::exponential_distribution<double>(1.0 / v.mean)(rng);
        } else if constexpr (std::is_same_v<V, GammaSizes>) {
            return std::gamma_distribution<double>(v.shape, v.scale)(rng);
        } else {
            return v.size;
        }
    }, d);
}

JumpStream::JumpStream(const SpectrallyPositiveModel& m, std::mt19937_64& rng, double eps)
    : rng_(rng), eps_(eps) {
    if (const auto* cp = std::get_if<CompoundPoissonJumps>(&m.jumps)) {
        rate_ = cp->rate;
        cpsizes_ = cp->sizes;
    } else if (const auto* g = std::get_if<GammaSubordinatorJumps>(&m.jumps)) {
        gamma_ = true;
        gspec_ = *g;
        rate_ = g->shape_rate * expint_e1(eps / g->scale); // jumps >= eps are Poisson
    } else if (std::holds_alternative<StablePositiveJumps>(m.jumps)) {
        throw validation_error("JumpStream: stable models are not simulable path-exactly");
    }
}

bool JumpStream::next(double& time, double& size) {
    if (rate_ <= 0.0) return false;
    clock_ += std::exponential_distribution<double>(rate_)(rng_);
    time = clock_;
    size = gamma_ ? sample_gamma_jump(gspec_, eps_, rng_) : sample_cp_jump(cpsizes_, rng_);
    return true;
}

PathSample sample_bv_path(const SpectrallyPositiveModel& m, double t, std::uint64_t seed, double eps) {
    m.validate();
    if (!(t > 0.0)) throw std::invalid_argument("sample_bv_path: t must be > 0");
    if (!m.bounded_variation() || m.gaussian_coef > 0.0 || !(m.drift < 0.0))
        throw validation_error("sample_bv_path: need a bounded-variation model with drift < 0");

    auto rng = sample_engine(seed, 0);
    PathSample out;
    out.path.horizon = t;
    out.path.start = 0.0;
    out.path.drift_rate = m.drift;
    if (const auto* g = std::get_if<GammaSubordinatorJumps>(&m.jumps))
        out.truncation_bias_rate = gamma_truncation_bias_rate(*g, eps);

    JumpStream stream(m, rng, eps);
    double time = 0.0, size = 0.0;
    while (stream.next(time, size)) {
        if (time >= t) break;
        out.path.jump_times.push_back(time);
        out.path.jump_sizes.push_back(size);
    }
    return out;
}

} // namespace levyflux
