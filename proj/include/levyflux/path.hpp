#pragma once

#include <optional>
#include <vector>

namespace levyflux {

// Exact bounded-variation path: linear drift between strictly positive jumps.
// Values are start + sum of jumps up to s + drift_rate * s; cadlag by
// construction.  drift_rate is the slope -c between jumps, c > 0 in every
// sampler here.
struct BVPath {
    double horizon = 1.0;
    double start = 0.0;
    double drift_rate = -1.0;
    std::vector<double> jump_times; // strictly increasing, in (0, horizon]
    std::vector<double> jump_sizes; // all > 0, same length

    void validate() const; // throws validation_error
};

double evaluate(const BVPath&, double s);
double running_inf(const BVPath&, double s);
double running_sup(const BVPath&, double s);

// First time the path hits -x (crossings happen along drift segments only,
// so the time solves a linear equation exactly); nullopt if never reached.
std::optional<double> first_passage(const BVPath&, double x);

// Lebesgue measure of E_{t,x} = {s : X_s = inf_s X and X_s in [inf_t, inf_t+x)}.
// New infima accrue only along drift, so this is min(x, start - inf_t)/c.
double lebesgue_E(const BVPath&, double x);

// Cyclic shift theta_u: exchanges the path pieces before and after u while
// fixing the values at 0 and horizon.
BVPath shift(const BVPath&, double u);

// Reversed-increment path: s -> X_t - X_{(t-s)-}.  Involution on jump lists.
BVPath time_reverse(const BVPath&);

// Checks the equivalence T_x(theta_u(X)) = horizon  <=>  X_u = inf_u X and
// X_u in [inf_t, inf_t + x), for a path ending at -x.  Holds for u drawn in
// the open interval (0, horizon).
bool check_7492(const BVPath&, double x, double u);

// Sampled cadlag path on a uniform grid, right-continuous step interpretation
// between samples.
struct GridPath {
    double horizon = 1.0;
    std::vector<double> values; // length >= 2, values[0] = value at 0
};

double evaluate(const GridPath&, double s);
double running_inf(const GridPath&, double s);
double running_sup(const GridPath&, double s);
GridPath shift(const GridPath&, double u);

// Grid scan of lambda(E_{t,x}); the resolution error is bounded by a few grid
// cells, i.e. O(horizon / (n-1)).
double lebesgue_E(const GridPath&, double x);

// The deterministic example path: s^2 on [0,t/4), -s^3 - x on [t/4,t/2),
// -(t-s)^3 - x on [t/2,t].  lambda(E_{t,x}) = t/4 provided x >= 7t^3/64.
GridPath application1_path(double t, double x, int n);

} // namespace levyflux
