#include "levyflux/selftest.hpp"

#include "levyflux/density.hpp"
#include "levyflux/fluctuation.hpp"
#include "levyflux/model.hpp"
#include "levyflux/moments.hpp"
#include "levyflux/montecarlo.hpp"
#include "levyflux/path.hpp"
#include "levyflux/quadrature.hpp"
#include "levyflux/rng.hpp"
#include "levyflux/sampling.hpp"
#include "levyflux/stats.hpp"
#include "levyflux/subordinator.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <vector>

namespace levyflux {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SpectrallyPositiveModel brownian() { return {0.0, 1.0, NoJumps{}}; }
SpectrallyPositiveModel gamma_drift() { return {-1.0, 0.0, GammaSubordinatorJumps{1.0, 1.0}}; }
SpectrallyPositiveModel pure_drift() { return {-1.0, 0.0, NoJumps{}}; }

struct Reporter {
    std::ostream& out;
    int failures = 0;

    void line(int id, bool pass, const std::string& detail) {
        out << (pass ? "[PASS]" : "[FAIL]") << " criterion " << std::setw(2) << id << ": " << detail
            << "\n";
        if (!pass) ++failures;
    }
    void info(const std::string& detail) { out << "[info]              " << detail << "\n"; }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(6) << v;
    return ss.str();
}

// z-marginal of the joint supremum law plus the terminal-value remainder (and
// the atom where the model carries one), which must reassemble the tail.
double sup_marginalization_gap(const SpectrallyPositiveModel& m, double x, double t) {
    double z_lo = m.mean_rate() * t - 12.0 * std::sqrt(m.variance_rate() * t);
    if (m.bounded_variation()) z_lo = std::max(z_lo, m.drift * t);
    const double zint = quad::integrate([&](double z) {
        return sup_joint_density(m, {t, x, z, JointLawQuery::Side::supremum});
    }, z_lo, x, 1e-8);
    double lhs = zint + cdf_upper(m, t, x);
    double rhs;
    if (x == 0.0) {
        if (m.bounded_variation()) lhs += sup_atom_total(m, t);
        rhs = 1.0;
    } else {
        rhs = sup_tail(m, x, t);
    }
    return std::abs(lhs - rhs);
}

} // namespace

int run_acceptance(std::ostream& out) {
    Reporter rep{out};
    const std::uint64_t seed = kDefaultSeed;
    const auto bm = brownian();
    const auto gm = gamma_drift();

    // 1. ballot theorem, closed form x/(ct)
    BallotEstimate b1, b2;
    {
        auto t0 = Clock::now();
        b1 = ballot_mc(5, ExponentialSizes{1.0}, 2.0, 1.0, 1.0, 100000, seed + 1);
        const double s1 = seconds_since(t0);
        t0 = Clock::now();
        b2 = ballot_mc(5, ExponentialSizes{1.0}, 1.0, 4.0, 1.0, 100000, seed + 2);
        const double s2 = seconds_since(t0);
        const bool ok = std::abs(b1.empirical - 0.5) <= 3.0 * b1.std_error &&
                        std::abs(b2.empirical - 0.25) <= 3.0 * b2.std_error && s1 < 10.0 && s2 < 10.0;
        rep.line(1, ok,
                 "ballot vs x/(ct): " + fmt(b1.empirical) + " vs 0.5 (se " + fmt(b1.std_error) +
                     "), " + fmt(b2.empirical) + " vs 0.25 (se " + fmt(b2.std_error) + "); " +
                     fmt(s1) + "s/" + fmt(s2) + "s");
    }

    // 2. ballot theorem, general form via mean lambda(E)
    {
        const bool ok = std::abs(b1.empirical - b1.mean_lebesgue_over_t) <= 3.0 * b1.std_error &&
                        std::abs(b2.empirical - b2.mean_lebesgue_over_t) <= 3.0 * b2.std_error;
        rep.line(2, ok,
                 "ballot vs (1/t)E lambda(E): " + fmt(b1.empirical) + " vs " +
                     fmt(b1.mean_lebesgue_over_t) + ", " + fmt(b2.empirical) + " vs " +
                     fmt(b2.mean_lebesgue_over_t));
    }

    // 3. deterministic cubic path
    {
        const GridPath g = application1_path(1.0, 0.5, 100000);
        const double le = lebesgue_E(g, 0.5);
        const bool ok = std::abs(le - 0.25) <= 1e-3 * 0.25;
        rep.line(3, ok, "deterministic path lambda(E) = " + fmt(le) + " vs t/4 = 0.25, implied P = " +
                            fmt(le / 1.0));
    }

    // 4. Kendall identity cell-by-cell
    {
        const auto t0 = Clock::now();
        const std::vector<double> xe{0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
        const auto cmp = kendall_mc(gm, xe, 2.5, 5, 100000, seed + 4);
        const double secs = seconds_since(t0);
        bool ok = secs < 60.0;
        double worst = 0.0;
        for (const auto& c : cmp.cells) {
            const double se = std::max(c.std_error, binomial_se(c.analytic, cmp.n_samples)) + 1e-9;
            worst = std::max(worst, std::abs(c.empirical - c.analytic) / se);
            if (std::abs(c.empirical - c.analytic) > 3.0 * se) ok = false;
        }
        rep.line(4, ok, "Kendall 5x5 cells, worst |emp-quad|/se = " + fmt(worst) + "; " + fmt(secs) + "s");
    }

    // 5. Brownian reflection oracles and the two infimum-tail routes
    {
        const double fpt = fpt_density(bm, 1.0, 1.0);
        const double it = inf_tail(bm, 1.0, 1.0);
        const double st = sup_tail(bm, 1.0, 1.0);
        bool ok = std::abs(fpt - 0.24197072451914337) <= 1e-8 &&
                  std::abs(it - 0.31731050786291415) <= 1e-4 &&
                  std::abs(st - 0.31731050786291415) <= 1e-4;
        double worst = 0.0;
        for (double x : {0.5, 1.0, 1.5, 2.0, 2.5})
            for (double t : {0.5, 1.0, 1.5, 2.0, 2.5})
                worst = std::max(worst, std::abs(inf_tail(bm, x, t) - inf_tail_alt(bm, x, t)));
        if (worst > 1e-5) ok = false;
        rep.line(5, ok, "fpt " + fmt(fpt) + ", inf " + fmt(it) + ", sup " + fmt(st) +
                            ", max |(5632)-(1725)| on 5x5 = " + fmt(worst));
    }

    // 6. joint-law marginalization
    {
        double worst = 0.0;
        for (const auto& m : {bm, gm})
            for (double x : {0.0, 0.75, 1.5})
                for (double t : {0.5, 1.0, 2.0})
                    worst = std::max(worst, sup_marginalization_gap(m, x, t));
        rep.line(6, worst <= 1e-4, "marginalization worst gap at 9 (x,t) x 2 models = " + fmt(worst));
    }

    // 7. supremum atom: quadrature vs MC, pure-drift degenerate case
    {
        const double ana = sup_atom_total(gm, 1.0);
        long long hits = 0;
        const long long n = 100000;
        for (long long i = 0; i < n; ++i) {
            auto rng = sample_engine(seed + 7, static_cast<std::uint64_t>(i));
            JumpStream stream(gm, rng);
            double jt = 0.0, js = 0.0, cum = 0.0;
            bool up = false;
            // sup = 0 iff no post-jump value exceeds 0 before the horizon
            while (stream.next(jt, js)) {
                if (jt >= 1.0) break;
                cum += js;
                if (cum - jt > 0.0) { up = true; break; }
            }
            if (!up) ++hits;
        }
        const double emp = static_cast<double>(hits) / static_cast<double>(n);
        const double se = binomial_se(emp, n);
        const double pd = sup_atom_total(pure_drift(), 1.0);
        const bool ok = std::abs(emp - ana) <= 3.0 * se && pd == 1.0;
        rep.line(7, ok, "P(sup=0): quadrature " + fmt(ana) + " vs MC " + fmt(emp) + " (se " + fmt(se) +
                            "); pure drift total = " + fmt(pd));
    }

    // 8. Phi identity
    {
        bool ok = true;
        double worst_closed = 0.0;
        for (double lam : {0.5, 1.0, 2.0, 4.0})
            worst_closed = std::max(worst_closed, std::abs(big_phi(bm, lam) - std::sqrt(2.0 * lam)));
        const double phiv = phi_lambda_z(bm, 2.0, -1.0);
        worst_closed = std::max(worst_closed, std::abs(phiv - std::exp(-2.0)));
        if (worst_closed > 1e-6) ok = false;
        double worst_mult = 0.0;
        for (double lam : {0.5, 1.0, 2.0, 4.0})
            for (double z : {-0.5, -1.0, -1.5, -2.0})
                worst_mult = std::max(worst_mult, std::abs(phi_identity_residual(bm, lam, z)));
        if (worst_mult > 1e-6) ok = false;
        double worst_ode = 0.0;
        for (auto [lam, z] : {std::pair{1.0, -1.0}, std::pair{0.5, -0.5}})
            worst_ode = std::max(worst_ode, std::abs(phi_ode_residual(gm, lam, z)));
        if (worst_ode > 1e-4) ok = false;
        rep.line(8, ok, "Brownian closed forms gap " + fmt(worst_closed) + ", multiplicative residual " +
                            fmt(worst_mult) + ", gamma ODE residual " + fmt(worst_ode));
    }

    // 9. moments / Laplace corollary
    {
        const double m1 = sup_moment(bm, 1, 1.0);
        const double m2 = sup_moment(bm, 2, 1.0);
        const double h = 1e-3;
        const double fd = -(-3.0 * 1.0 + 4.0 * sup_laplace(bm, h, 1.0) - sup_laplace(bm, 2.0 * h, 1.0)) /
                          (2.0 * h);
        const bool ok = std::abs(m1 - 0.7978845608028654) <= 1e-4 && std::abs(m2 - 1.0) <= 1e-4 &&
                        std::abs(fd - m1) <= 1e-3;
        rep.line(9, ok, "E sup = " + fmt(m1) + ", E sup^2 = " + fmt(m2) + ", -dL/dlam|0 = " + fmt(fd));
    }

    // 10. subordinator time change
    {
        TimeChangeSpec spec{SubordinatorModel{{GammaCoord{1.0, 1.0, 0.0}}}, {0.5}};
        bool ok = true;
        double worst_res = 0.0;
        for (double z : {0.5, 1.0, 2.0}) {
            const double w = solve_phi_Y(spec, {z});
            worst_res = std::max(worst_res, std::abs(w - phi_X(spec.model, {z + w * 0.5})));
        }
        if (worst_res > 1e-12) ok = false;
        TimeChangeSpec spec0{spec.model, {0.0}};
        if (solve_phi_Y(spec0, {1.0}) != phi_X(spec.model, {1.0})) ok = false;

        const auto run = simulate_time_change(spec, 1.0, 100000, seed + 10);
        long long bad_identity = 0;
        for (const auto& s : run.samples) {
            const double rhs = 1.0 + std::inner_product(spec.r.begin(), spec.r.end(), s.y.begin(), 0.0);
            if (s.tau != rhs) ++bad_identity;
        }
        if (bad_identity != 0 || run.exceeded_horizon != 0) ok = false;

        double worst_lap = 0.0;
        for (double z : {0.5, 1.0, 2.0}) {
            RunningStat st;
            for (const auto& s : run.samples) st.add(std::exp(-z * s.y[0]));
            const double target = std::exp(-solve_phi_Y(spec, {z}));
            const double gap = std::abs(st.mean - target) / std::max(st.stderr_mean(), 1e-12);
            worst_lap = std::max(worst_lap, gap);
            if (gap > 3.0) ok = false;
        }

        // histogram vs the time-changed density formula
        const int nb = 30;
        const double yhi = 8.0;
        std::vector<long long> cnt(nb, 0);
        long long above = 0;
        for (const auto& s : run.samples) {
            if (s.y[0] >= yhi) { ++above; continue; }
            ++cnt[static_cast<std::size_t>(s.y[0] / (yhi / nb))];
        }
        double worst_bin = 0.0;
        for (int b = 0; b < nb; ++b) {
            const double lo = b * yhi / nb, hi = (b + 1) * yhi / nb;
            const double mass = quad::integrate([&](double y) {
                return time_changed_density(spec, 1.0, {y});
            }, lo, hi, 1e-9);
            const double emp = static_cast<double>(cnt[static_cast<std::size_t>(b)]) /
                               static_cast<double>(run.samples.size());
            const double se = std::max(binomial_se(mass, static_cast<long long>(run.samples.size())),
                                       binomial_se(emp, static_cast<long long>(run.samples.size()))) + 1e-9;
            worst_bin = std::max(worst_bin, std::abs(emp - mass) / se);
            if (std::abs(emp - mass) > 3.0 * se) ok = false;
        }
        rep.line(10, ok, "phi_Y residual " + fmt(worst_res) + ", identity violations " +
                             std::to_string(bad_identity) + ", worst Laplace gap " + fmt(worst_lap) +
                             "se, worst bin gap " + fmt(worst_bin) + "se (above-range " +
                             std::to_string(above) + ")");
    }

    // 11. shift-transform algebra on randomized paths
    {
        bool ok = true;
        auto rng = sample_engine(seed + 11, 0);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int it = 0; it < 1000 && ok; ++it) {
            const double t = 0.5 + 2.5 * u01(rng);
            const double c = 0.5 + 2.0 * u01(rng);
            const int nj = 1 + static_cast<int>(5.0 * u01(rng));
            BVPath p;
            p.horizon = t;
            p.drift_rate = -c;
            for (int k = 0; k < nj; ++k) p.jump_times.push_back(t * u01(rng));
            std::sort(p.jump_times.begin(), p.jump_times.end());
            const double x = (0.2 + 0.6 * u01(rng)) * c * t;
            double total = 0.0;
            std::vector<double> raw(static_cast<std::size_t>(nj));
            for (auto& v : raw) { v = -std::log(u01(rng)); total += v; }
            for (double v : raw) p.jump_sizes.push_back(v * (c * t - x) / total); // ends at -x

            const double u = t * u01(rng), v = t * u01(rng);
            const BVPath s1 = shift(shift(p, u), v);
            const BVPath s2 = shift(p, std::fmod(u + v, t));
            if (s1.jump_times.size() != s2.jump_times.size()) { ok = false; break; }
            for (std::size_t k = 0; k < s1.jump_times.size(); ++k) {
                if (std::abs(s1.jump_times[k] - s2.jump_times[k]) > 1e-12 * (1.0 + t)) ok = false;
                if (s1.jump_sizes[k] != s2.jump_sizes[k]) ok = false;
            }
            const BVPath sh = shift(p, u);
            if (evaluate(sh, 0.0) != p.start) ok = false;
            if (std::abs(evaluate(sh, t) - evaluate(p, t)) > 1e-9 * (1.0 + c * t)) ok = false;
            if (std::abs(lebesgue_E(sh, x) - lebesgue_E(p, x)) > 1e-11 * (1.0 + x / c)) ok = false;
            for (int k = 0; k < 3; ++k) {
                const double uu = t * (0.001 + 0.998 * u01(rng));
                if (!check_7492(p, x, uu)) ok = false;
            }
        }
        rep.line(11, ok, "shift composition / endpoints / lambda(E) invariance / (7492) on 1000 paths");
    }

    // 12. entrance-law residual
    {
        auto q_cand = [&](double s, double xx) { return entrance_law_q(bm, s, xx); };
        auto q2_cand = [&](double s, double xx) { return 2.0 * entrance_law_q(bm, s, xx); };
        const std::vector<std::array<double, 3>> pts{{1.0, 0.5, -0.5}, {1.5, 0.8, -0.3}, {0.8, 0.6, 0.2}};
        double worst_q = 0.0, worst_2q = 0.0;
        for (const auto& p : pts) {
            worst_q = std::max(worst_q, std::abs(entrance_law_residual(bm, q_cand, p[0], p[1], p[2]).residual));
            worst_2q = std::max(worst_2q, std::abs(entrance_law_residual(bm, q2_cand, p[0], p[1], p[2]).residual));
        }
        auto zero_cand = [](double, double) { return 0.0; };
        const double det = std::abs(entrance_law_residual(bm, zero_cand, 1.0, 0.5, -0.5).residual);
        const bool ok = worst_q < 1e-3 && det > 0.01;
        rep.line(12, ok, "candidate q residual " + fmt(worst_q) + " (gate 1e-3), zero-candidate detector " +
                             fmt(det) + " (> 0.01)");
        if (!ok)
            rep.info("residual with candidate 2q = " + fmt(worst_2q) +
                     ": the kernel equation is solved by 2q, not q, for the symmetric model");
    }

    out << (rep.failures == 0 ? "all criteria passed" : std::to_string(rep.failures) + " criterion(s) failed")
        << "\n";
    return rep.failures;
}

} // namespace levyflux
