#include "levyflux/subordinator.hpp"
#include "levyflux/detail/math.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/rng.hpp"
#include "levyflux/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/special_functions/expint.hpp>

namespace levyflux {

namespace {

void require_dim(const std::vector<double>& v, int d, const char* what) {
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_nonneg(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (x < 0.0) throw std::invalid_argument(std::string(what) + ": entries must be >= 0");
}

} // namespace

void SubordinatorModel::validate() const {
    if (coords.empty()) throw validation_error("SubordinatorModel: need dim >= 1");
    for (const auto& c : coords) {
        std::visit([](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, GammaCoord>) {
                if (!(v.shape_rate > 0.0) || !(v.scale > 0.0) || v.drift < 0.0)
                    throw validation_error("gamma coordinate needs shape_rate, scale > 0, drift >= 0");
            } else {
                if (!(v.rate > 0.0) || v.drift < 0.0)
                    throw validation_error("cp coordinate needs rate > 0, drift >= 0");
                if (!(cp_size_mean(v.sizes) > 0.0))
                    throw validation_error("cp coordinate jump sizes must be positive");
            }
        }, c);
    }
}

double SubordinatorModel::coord_mean_rate(int i) const {
    return std::visit([](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, GammaCoord>) return v.shape_rate * v.scale + v.drift;
        else return v.rate * cp_size_mean(v.sizes) + v.drift;
    }, coords[static_cast<std::size_t>(i)]);
}

double SubordinatorModel::coord_phi(int i, double z) const {
    if (z < 0.0) throw std::invalid_argument("coord_phi: z must be >= 0");
    return std::visit([&](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, GammaCoord>)
            return v.drift * z + v.shape_rate * std::log1p(v.scale * z);
        else
            return v.drift * z + v.rate * (1.0 - cp_size_laplace(v.sizes, z));
    }, coords[static_cast<std::size_t>(i)]);
}

bool SubordinatorModel::coord_has_density(int i) const {
    return std::holds_alternative<GammaCoord>(coords[static_cast<std::size_t>(i)]);
}

double SubordinatorModel::coord_density(int i, double t, double y) const {
    const auto* g = std::get_if<GammaCoord>(&coords[static_cast<std::size_t>(i)]);
    if (!g) throw no_density_error("coordinate law is not absolutely continuous");
    return detail::gamma_pdf(y - g->drift * t, g->shape_rate * t, g->scale);
}

double phi_X(const SubordinatorModel& m, const std::vector<double>& z) {
    require_dim(z, m.dim(), "phi_X");
    require_nonneg(z, "phi_X");
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i) s += m.coord_phi(i, z[static_cast<std::size_t>(i)]);
    return s;
}

void TimeChangeSpec::validate() const {
    model.validate();
    require_dim(r, model.dim(), "TimeChangeSpec");
    require_nonneg(r, "TimeChangeSpec.r");
    if (stability_sum() > 1.0 + 1e-12)
        throw validation_error("TimeChangeSpec: sum r_i E X^(i)_1 must be <= 1 (Z drifts to -inf)");
}

double TimeChangeSpec::stability_sum() const {
    double s = 0.0;
    for (int i = 0; i < model.dim(); ++i) s += r[static_cast<std::size_t>(i)] * model.coord_mean_rate(i);
    return s;
}

double solve_phi_Y(const TimeChangeSpec& spec, const std::vector<double>& z) {
    spec.validate();
    require_dim(z, spec.model.dim(), "solve_phi_Y");
    require_nonneg(z, "solve_phi_Y");
    const int d = spec.model.dim();
    auto map = [&](double w) {
        double s = 0.0;
        for (int i = 0; i < d; ++i)
            s += spec.model.coord_phi(i, z[static_cast<std::size_t>(i)] +
                                             w * spec.r[static_cast<std::size_t>(i)]);
        return s;
    };
    double w = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double next = map(w);
        if (std::abs(next - w) <= 1e-13 * (1.0 + std::abs(next))) {
            w = next;
            break;
        }
        w = next;
    }
    if (std::abs(w - map(w)) <= 1e-12 * (1.0 + std::abs(w))) return w;
    // boundary-stability fallback: bisection on h(w) = w - phi_X(z + w r)
    double lo = w, hi = std::max(2.0 * w, 1.0);
    int guard = 0;
    while (hi - map(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw numerical_error("solve_phi_Y: no bisection bracket");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - map(mid) < 0.0) lo = mid; else hi = mid;
    }
    w = 0.5 * (lo + hi);
    if (std::abs(w - map(w)) > 1e-10 * (1.0 + std::abs(w)))
        throw numerical_error("solve_phi_Y: fixed point residual " + std::to_string(std::abs(w - map(w))));
    return w;
}

double time_changed_density(const TimeChangeSpec& spec, double t, const std::vector<double>& y) {
    spec.validate();
    if (!(t > 0.0)) throw std::invalid_argument("time_changed_density: t must be > 0");
    require_dim(y, spec.model.dim(), "time_changed_density");
    require_nonneg(y, "time_changed_density");
    const double s = t + std::inner_product(spec.r.begin(), spec.r.end(), y.begin(), 0.0);
    double p = 1.0;
    for (int i = 0; i < spec.model.dim(); ++i)
        p *= spec.model.coord_density(i, s, y[static_cast<std::size_t>(i)]);
    return (t / s) * p;
}

TimeChangeRun simulate_time_change(const TimeChangeSpec& spec, double t, long long n_samples,
                                   std::uint64_t seed, double eps, double horizon_mult,
                                   int n_traces) {
    spec.validate();
    if (!(t > 0.0) || n_samples < 1)
        throw std::invalid_argument("simulate_time_change: need t > 0, n_samples >= 1");
    const int d = spec.model.dim();
    double drift_dot = 0.0;
    for (int i = 0; i < d; ++i) {
        const double di = std::visit([](const auto& v) { return v.drift; },
                                     spec.model.coords[static_cast<std::size_t>(i)]);
        drift_dot += spec.r[static_cast<std::size_t>(i)] * di;
    }
    const double zdrift = 1.0 - drift_dot; // upward slope of Z between jumps
    if (!(zdrift > 0.0))
        throw validation_error("simulate_time_change: Z has no upward drift (r . coordinate drift >= 1)");

    TimeChangeRun run;
    run.horizon = horizon_mult * t;
    for (int i = 0; i < d; ++i) {
        if (const auto* g = std::get_if<GammaCoord>(&spec.model.coords[static_cast<std::size_t>(i)]))
            run.truncation_bias_rate +=
                gamma_truncation_bias_rate(GammaSubordinatorJumps{g->shape_rate, g->scale}, eps);
    }

    // per-coordinate jump generators
    struct CoordGen {
        double rate = 0.0;
        bool gamma = false;
        GammaSubordinatorJumps gspec{};
        CpSizeDist sizes = ExponentialSizes{};
        double drift = 0.0;
    };
    std::vector<CoordGen> gens(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::visit([&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            auto& g = gens[static_cast<std::size_t>(i)];
            g.drift = v.drift;
            if constexpr (std::is_same_v<V, GammaCoord>) {
                g.gamma = true;
                g.gspec = {v.shape_rate, v.scale};
                g.rate = v.shape_rate * boost::math::expint(1, eps / v.scale);
            } else {
                g.rate = v.rate;
                g.sizes = v.sizes;
            }
        }, spec.model.coords[static_cast<std::size_t>(i)]);
    }

    std::vector<double> xj(static_cast<std::size_t>(d));      // jump part of X
    std::vector<double> next(static_cast<std::size_t>(d));    // next arrival per coordinate
    for (long long si = 0; si < n_samples; ++si) {
        auto rng = sample_engine(seed, static_cast<std::uint64_t>(si));
        std::fill(xj.begin(), xj.end(), 0.0);
        const bool trace_this = si < n_traces;
        if (trace_this) run.traces.emplace_back();
        for (int i = 0; i < d; ++i) {
            auto& g = gens[static_cast<std::size_t>(i)];
            next[static_cast<std::size_t>(i)] =
                g.rate > 0.0 ? std::exponential_distribution<double>(g.rate)(rng)
                             : std::numeric_limits<double>::infinity();
        }
        bool done = false;
        for (long long guard = 0; guard < 100000000 && !done; ++guard) {
            // crossing time of level t on the current drift segment of Z
            const double rx = std::inner_product(spec.r.begin(), spec.r.end(), xj.begin(), 0.0);
            const double tau_cand = (t + rx) / zdrift;
            int jmin = 0;
            for (int i = 1; i < d; ++i)
                if (next[static_cast<std::size_t>(i)] < next[static_cast<std::size_t>(jmin)]) jmin = i;
            const double t_next = next[static_cast<std::size_t>(jmin)];
            if (tau_cand <= t_next) {
                TimeChangeSample smp;
                smp.tau = tau_cand;
                smp.y.resize(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i)
                    smp.y[static_cast<std::size_t>(i)] =
                        gens[static_cast<std::size_t>(i)].drift * tau_cand + xj[static_cast<std::size_t>(i)];
                run.samples.push_back(std::move(smp));
                done = true;
                break;
            }
            if (std::min(tau_cand, t_next) > run.horizon) {
                ++run.exceeded_horizon;
                done = true;
                break;
            }
            auto& g = gens[static_cast<std::size_t>(jmin)];
            const double jump = g.gamma ? sample_gamma_jump(g.gspec, eps, rng)
                                        : sample_cp_jump(g.sizes, rng);
            xj[static_cast<std::size_t>(jmin)] += jump;
            if (trace_this) {
                std::vector<double> xs(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i)
                    xs[static_cast<std::size_t>(i)] = gens[static_cast<std::size_t>(i)].drift * t_next +
                                                      xj[static_cast<std::size_t>(i)];
                run.traces.back().emplace_back(t_next, std::move(xs));
            }
            next[static_cast<std::size_t>(jmin)] +=
                std::exponential_distribution<double>(g.rate)(rng);
        }
        if (!done) throw numerical_error("simulate_time_change: event budget exhausted");
    }
    return run;
}

double ballot_conditional(const TimeChangeSpec& spec, double s, double t) {
    spec.validate();
    if (!(t > 0.0)) throw std::invalid_argument("ballot_conditional: t must be > 0");
    if (s < t)
        throw validation_error("ballot_conditional: manifold requires s = t + r.y >= t");
    if (s == t) return 1.0;
    return t / s;
}

} // namespace levyflux
