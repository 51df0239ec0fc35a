#pragma once

#include "levyflux/model.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace levyflux {

// Independent nondecreasing coordinates: gamma subordinator or compound
// Poisson with positive jumps, plus a nonnegative linear drift.
struct GammaCoord { double shape_rate = 1.0; double scale = 1.0; double drift = 0.0; };
struct CpCoord { double rate = 1.0; CpSizeDist sizes = ExponentialSizes{}; double drift = 0.0; };
using SubordinatorCoord = std::variant<GammaCoord, CpCoord>;

struct SubordinatorModel {
    std::vector<SubordinatorCoord> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    void validate() const;
    double coord_mean_rate(int i) const;              // E X^(i)_1
    double coord_phi(int i, double z) const;          // E e^{-z X^(i)_t} = e^{-t phi_i(z)}
    bool coord_has_density(int i) const;
    double coord_density(int i, double t, double y) const;
};

// phi_X(z) = sum_i phi_i(z_i), z componentwise >= 0
double phi_X(const SubordinatorModel&, const std::vector<double>& z);

// Z_u = u - r . X_u; tau_t its first passage to level t; Y_t = X(tau_t).
struct TimeChangeSpec {
    SubordinatorModel model;
    std::vector<double> r;

    void validate() const;       // r >= 0, sum r_i E X^(i)_1 <= 1
    double stability_sum() const;
};

// Fixed point of w -> phi_X(z + w r), iterated from 0 (monotone, contractive
// under strict stability; bisection fallback near the boundary).  Residual of
// the returned value is below 1e-12.
double solve_phi_Y(const TimeChangeSpec&, const std::vector<double>& z);

// p^Y_t(y) = t/(t + r.y) p^X_{t + r.y}(y); requires every coordinate law to be
// absolutely continuous.
double time_changed_density(const TimeChangeSpec&, double t, const std::vector<double>& y);

struct TimeChangeSample {
    double tau = 0.0;
    std::vector<double> y;
};

struct TimeChangeRun {
    std::vector<TimeChangeSample> samples;
    long long exceeded_horizon = 0; // tau not reached before horizon
    double horizon = 0.0;
    double truncation_bias_rate = 0.0;
    // event trace (time, cumulative X) of the first few samples
    std::vector<std::vector<std::pair<double, std::vector<double>>>> traces;
};

// Exact crossing on the drift segments of Z (upward crossings are continuous;
// the jumps of Z point down).  Per sample, tau = t + r.Y holds identically.
TimeChangeRun simulate_time_change(const TimeChangeSpec&, double t, long long n_samples,
                                   std::uint64_t seed, double eps = 1e-6,
                                   double horizon_mult = 100.0, int n_traces = 0);

// P(tau_t = s | X_s = y) on the manifold s = t + r.y: equals t/s.  s = t is
// the degenerate boundary (no jumps), probability 1.
double ballot_conditional(const TimeChangeSpec&, double s, double t);

} // namespace levyflux
