#include <doctest.h>

#include "levyflux/errors.hpp"
#include "levyflux/quadrature.hpp"
#include "levyflux/stats.hpp"
#include "levyflux/subordinator.hpp"

#include <cmath>
#include <numeric>

using namespace levyflux;

namespace {

TimeChangeSpec gamma_spec(double r = 0.5, double shape_rate = 1.0, double scale = 1.0) {
    return {SubordinatorModel{{GammaCoord{shape_rate, scale, 0.0}}}, {r}};
}

// independent bisection oracle for the fixed point of w = log(2 + w/2)
double fixed_point_oracle() {
    double lo = 0.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid - std::log(2.0 + 0.5 * mid) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("laplace exponents of subordinator coordinates") {
    const auto m = gamma_spec().model;
    CHECK(phi_X(m, {1.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(phi_X(m, {0.0}) == 0.0);
    CHECK(m.coord_mean_rate(0) == doctest::Approx(1.0));
    SubordinatorModel cp{{CpCoord{2.0, ExponentialSizes{0.5}, 0.1}}};
    CHECK(cp.coord_mean_rate(0) == doctest::Approx(2.0 * 0.5 + 0.1));
    CHECK(cp.coord_phi(0, 1.0) == doctest::Approx(0.1 + 2.0 * (1.0 - 1.0 / 1.5)).epsilon(1e-14));
}

TEST_CASE("fixed point solver") {
    const auto spec = gamma_spec();
    const double w = solve_phi_Y(spec, {1.0});
    CHECK(w == doctest::Approx(fixed_point_oracle()).epsilon(1e-12));
    CHECK(w == doctest::Approx(0.8950843212752312).epsilon(1e-10));
    CHECK(std::abs(w - phi_X(spec.model, {1.0 + 0.5 * w})) < 1e-12);

    // r = 0: identity with phi_X, exactly
    const auto spec0 = gamma_spec(0.0);
    CHECK(solve_phi_Y(spec0, {1.7}) == phi_X(spec.model, {1.7}));
    // z = 0 stays at the trivial fixed point
    CHECK(solve_phi_Y(spec, {0.0}) == 0.0);
    // monotonicity in z and domination of phi_X
    double prev = 0.0;
    for (double z : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double v = solve_phi_Y(spec, {z});
        CHECK(v >= prev);
        CHECK(v >= phi_X(spec.model, {z}));
        prev = v;
    }
    // stability boundary sum r E X = 1: still converges for z > 0
    const auto spec_b = gamma_spec(1.0);
    const double wb = solve_phi_Y(spec_b, {0.5});
    CHECK(std::abs(wb - phi_X(spec_b.model, {0.5 + wb})) < 1e-10);
    // violation rejected
    TimeChangeSpec bad{SubordinatorModel{{GammaCoord{1.0, 1.0, 0.0}}}, {1.5}};
    CHECK_THROWS_AS((void)solve_phi_Y(bad, {1.0}), validation_error);
}

TEST_CASE("time-changed density") {
    const auto spec = gamma_spec();
    // r = 0 reduces to the coordinate density
    const auto spec0 = gamma_spec(0.0);
    CHECK(time_changed_density(spec0, 1.0, {1.0}) ==
          doctest::Approx(spec.model.coord_density(0, 1.0, 1.0)).epsilon(1e-14));
    // closed value: (2/3) f_{Gamma(1.5,1)}(1)
    CHECK(time_changed_density(spec, 1.0, {1.0}) ==
          doctest::Approx(0.2767383316137298).epsilon(1e-12));
    // normalization under strict stability
    const double mass = quad::integrate([&](double y) {
        return time_changed_density(spec, 1.0, {y});
    }, 1e-12, 60.0, 1e-9);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
    // CP coordinates have no density
    TimeChangeSpec cp{SubordinatorModel{{CpCoord{1.0, ExponentialSizes{0.5}, 0.0}}}, {0.5}};
    CHECK_THROWS_AS((void)time_changed_density(cp, 1.0, {1.0}), no_density_error);
}

TEST_CASE("time-change simulation") {
    const auto spec = gamma_spec();
    // r = 0: tau = t identically
    const auto run0 = simulate_time_change(gamma_spec(0.0), 1.0, 200, 91);
    for (const auto& s : run0.samples) CHECK(s.tau == 1.0);

    const auto run = simulate_time_change(spec, 1.0, 20000, 92, 1e-6, 100.0, 3);
    CHECK(run.exceeded_horizon == 0);
    CHECK(run.samples.size() == 20000);
    // support identity tau = t + r . Y, bit exact
    for (const auto& s : run.samples) {
        const double rhs = 1.0 + std::inner_product(spec.r.begin(), spec.r.end(), s.y.begin(), 0.0);
        CHECK(s.tau == rhs);
    }
    // traces are componentwise nondecreasing
    REQUIRE(run.traces.size() == 3);
    for (const auto& tr : run.traces) {
        double prev = 0.0;
        for (const auto& [u, xs] : tr) {
            CHECK(xs[0] >= prev - 1e-15);
            prev = xs[0];
        }
    }
    // Laplace transform against the fixed point
    for (double z : {0.5, 2.0}) {
        RunningStat st;
        for (const auto& s : run.samples) st.add(std::exp(-z * s.y[0]));
        const double target = std::exp(-solve_phi_Y(spec, {z}));
        CHECK(std::abs(st.mean - target) < 3.0 * st.stderr_mean());
    }
}

TEST_CASE("two-dimensional time change") {
    TimeChangeSpec spec{SubordinatorModel{{GammaCoord{1.0, 1.0, 0.0}, GammaCoord{2.0, 0.25, 0.0}}},
                        {0.3, 0.4}};
    spec.validate();
    CHECK(spec.stability_sum() == doctest::Approx(0.3 * 1.0 + 0.4 * 0.5));
    const std::vector<double> z{0.7, 1.2};
    const double w = solve_phi_Y(spec, z);
    double phi_at = spec.model.coord_phi(0, z[0] + w * 0.3) + spec.model.coord_phi(1, z[1] + w * 0.4);
    CHECK(std::abs(w - phi_at) < 1e-12);
    // product-form density
    const std::vector<double> y{0.8, 0.5};
    const double s = 1.0 + 0.3 * 0.8 + 0.4 * 0.5;
    CHECK(time_changed_density(spec, 1.0, y) ==
          doctest::Approx((1.0 / s) * spec.model.coord_density(0, s, 0.8) *
                          spec.model.coord_density(1, s, 0.5)).epsilon(1e-13));
    // MC Laplace in two dimensions
    const auto run = simulate_time_change(spec, 1.0, 20000, 93);
    RunningStat st;
    for (const auto& smp : run.samples)
        st.add(std::exp(-z[0] * smp.y[0] - z[1] * smp.y[1]));
    CHECK(std::abs(st.mean - std::exp(-w)) < 3.0 * st.stderr_mean());
    // per-sample identity in d = 2
    for (const auto& smp : run.samples) {
        const double rhs = 1.0 + std::inner_product(spec.r.begin(), spec.r.end(), smp.y.begin(), 0.0);
        CHECK(smp.tau == rhs);
    }
}

TEST_CASE("boundary stability exercises the horizon accounting") {
    // sum r E X = 1: tau is finite a.s. but heavy-tailed; a short horizon
    // produces recorded exceedances instead of an error
    const auto spec = gamma_spec(1.0);
    const auto run = simulate_time_change(spec, 1.0, 2000, 94, 1e-6, 2.0);
    CHECK(run.exceeded_horizon > 0);
    CHECK(run.samples.size() + static_cast<std::size_t>(run.exceeded_horizon) == 2000);
}

TEST_CASE("conditional ballot probability") {
    const auto spec = gamma_spec();
    CHECK(ballot_conditional(spec, 1.0, 1.0) == 1.0);
    CHECK(ballot_conditional(spec, 4.0, 1.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS((void)ballot_conditional(spec, 0.5, 1.0), validation_error);
}
