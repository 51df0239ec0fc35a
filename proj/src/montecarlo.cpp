#include "levyflux/montecarlo.hpp"
#include "levyflux/density.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/path.hpp"
#include "levyflux/quadrature.hpp"
#include "levyflux/rng.hpp"
#include "levyflux/stats.hpp"

#include <algorithm>
#include <cmath>

namespace levyflux {

namespace {

// T_x(path) = horizon iff no pre-jump value dips to -x before the horizon;
// the endpoint itself sits at -x by construction.
bool hits_first_at_horizon(const BVPath& p, double x) {
    double cum = 0.0;
    for (std::size_t i = 0; i < p.jump_times.size(); ++i) {
        if (p.start + cum + p.drift_rate * p.jump_times[i] <= -x) return false;
        cum += p.jump_sizes[i];
    }
    return true;
}

} // namespace

BallotEstimate ballot_mc(int n_jumps, const CpSizeDist& sizes, double c, double t, double x,
                         long long n_samples, std::uint64_t seed) {
    if (!(c > 0.0) || !(t > 0.0) || !(x > 0.0))
        throw std::invalid_argument("ballot_mc: need c, t, x > 0");
    if (n_jumps < 1 || n_samples < 1)
        throw std::invalid_argument("ballot_mc: need n_jumps >= 1 and n_samples >= 1");
    if (!(x < c * t))
        throw validation_error("ballot_mc: endpoint -x is unreachable (requires x < c t)");

    const double mass = c * t - x;
    long long hits = 0;
    RunningStat leb;
    BVPath path;
    path.horizon = t;
    path.drift_rate = -c;
    std::vector<double> sz(static_cast<std::size_t>(n_jumps));

    for (long long i = 0; i < n_samples; ++i) {
        auto rng = sample_engine(seed, static_cast<std::uint64_t>(i));
        double total = 0.0;
        for (auto& s : sz) {
            s = sample_cp_jump(sizes, rng);
            total += s;
        }
        const double scale = mass / total;
        path.jump_times.resize(sz.size());
        path.jump_sizes.resize(sz.size());
        std::uniform_real_distribution<double> ut(0.0, t);
        for (std::size_t k = 0; k < sz.size(); ++k) path.jump_times[k] = ut(rng);
        std::sort(path.jump_times.begin(), path.jump_times.end());
        for (std::size_t k = 0; k < sz.size(); ++k) path.jump_sizes[k] = sz[k] * scale;

        leb.add(lebesgue_E(path, x));
        const BVPath shifted = shift(path, ut(rng));
        if (hits_first_at_horizon(shifted, x)) ++hits;
    }

    BallotEstimate est;
    est.n_samples = n_samples;
    est.empirical = static_cast<double>(hits) / static_cast<double>(n_samples);
    est.std_error = binomial_se(est.empirical, n_samples);
    est.analytic = x / (c * t);
    est.mean_lebesgue_over_t = leb.mean / t;
    return est;
}

KendallComparison kendall_mc(const SpectrallyPositiveModel& m, const std::vector<double>& x_edges,
                             double t_max, int n_t_cells, long long n_samples, std::uint64_t seed) {
    m.validate();
    if (x_edges.size() < 2 || !(t_max > 0.0) || n_t_cells < 1 || n_samples < 1)
        throw std::invalid_argument("kendall_mc: bad grid");
    if (!m.bounded_variation() || !(m.drift < 0.0))
        throw validation_error("kendall_mc: model must be simulable (bounded variation, drift < 0)");
    const double c = -m.drift;
    const double x_lo = x_edges.front(), x_hi = x_edges.back();
    const int n_x = static_cast<int>(x_edges.size()) - 1;

    std::vector<long long> counts(static_cast<std::size_t>(n_t_cells * n_x), 0);
    long long no_cross = 0;

    for (long long i = 0; i < n_samples; ++i) {
        auto rng = sample_engine(seed, static_cast<std::uint64_t>(i));
        const double x = x_lo + (x_hi - x_lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        JumpStream stream(m, rng);

        double T = -1.0;
        double prev = 0.0, v = 0.0; // value just after the last event
        double jt = 0.0, js = 0.0;
        for (;;) {
            const bool have = stream.next(jt, js);
            const double seg_end = have ? jt : t_max + 1.0;
            // downward crossing inside the drift segment [prev, seg_end)?
            const double s_cross = prev + (v + x) / c;
            if (s_cross <= seg_end) {
                T = s_cross;
                break;
            }
            if (!have || jt > t_max) break;
            v += js - c * (jt - prev);
            prev = jt;
        }

        if (T >= 0.0 && T <= t_max) {
            int ti = std::min(static_cast<int>(T / (t_max / n_t_cells)), n_t_cells - 1);
            int xi = static_cast<int>(std::upper_bound(x_edges.begin(), x_edges.end(), x) -
                                      x_edges.begin()) - 1;
            xi = std::clamp(xi, 0, n_x - 1);
            ++counts[static_cast<std::size_t>(ti * n_x + xi)];
        } else {
            ++no_cross;
        }
    }

    KendallComparison cmp;
    cmp.n_samples = n_samples;
    cmp.no_cross_freq = static_cast<double>(no_cross) / static_cast<double>(n_samples);
    cmp.crossing_freq = 1.0 - cmp.no_cross_freq;
    if (const auto* g = std::get_if<GammaSubordinatorJumps>(&m.jumps))
        cmp.truncation_bias_rate = gamma_truncation_bias_rate(*g);

    const double dt = t_max / n_t_cells;
    for (int ti = 0; ti < n_t_cells; ++ti) {
        for (int xi = 0; xi < n_x; ++xi) {
            KendallCell cell;
            cell.t_lo = ti * dt;
            cell.t_hi = (ti + 1) * dt;
            cell.x_lo = x_edges[static_cast<std::size_t>(xi)];
            cell.x_hi = x_edges[static_cast<std::size_t>(xi + 1)];
            cell.empirical = static_cast<double>(counts[static_cast<std::size_t>(ti * n_x + xi)]) /
                             static_cast<double>(n_samples);
            cell.std_error = binomial_se(cell.empirical, n_samples);
            if (m.has_density()) {
                // mass of (x/t) p_t(-x) dx dt over the cell, normalized by the x-range
                cell.analytic = quad::integrate([&](double t) {
                    return quad::integrate([&](double xx) {
                        return xx * density(m, t, -xx);
                    }, cell.x_lo, cell.x_hi, 1e-10) / t;
                }, cell.t_lo, cell.t_hi, 1e-9) / (x_hi - x_lo);
            } else if (m.is_pure_drift()) {
                // T_x = x/c exactly: the diagonal band carries all the mass
                const double a = std::max(cell.x_lo, c * cell.t_lo);
                const double b = std::min(cell.x_hi, c * cell.t_hi);
                cell.analytic = b > a ? (b - a) / (x_hi - x_lo) : 0.0;
            }
            cmp.cells.push_back(cell);
        }
    }
    return cmp;
}

} // namespace levyflux
