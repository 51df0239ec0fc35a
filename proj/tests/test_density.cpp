#include <doctest.h>

#include "levyflux/density.hpp"
#include "levyflux/errors.hpp"
#include "levyflux/model.hpp"
#include "levyflux/quadrature.hpp"

#include <cmath>
#include <complex>

using namespace levyflux;

namespace {

SpectrallyPositiveModel brownian(double drift = 0.0, double sig2 = 1.0) {
    return {drift, sig2, NoJumps{}};
}
SpectrallyPositiveModel gamma_drift(double c = 1.0, double shape_rate = 1.0, double scale = 1.0) {
    return {-c, 0.0, GammaSubordinatorJumps{shape_rate, scale}};
}
SpectrallyPositiveModel stable(double alpha = 1.5, double scale = 1.0, double drift = 0.0) {
    return {drift, 0.0, StablePositiveJumps{alpha, scale}};
}

} // namespace

TEST_CASE("closed-form densities") {
    CHECK(density(brownian(), 1.0, -1.0) == doctest::Approx(0.24197072451914337).epsilon(1e-14));
    // symmetric law
    for (double x : {0.3, 1.1, 2.7})
        CHECK(density(brownian(), 1.0, x) == density(brownian(), 1.0, -x));
    // shifted gamma: p_1(0) = f_{Gamma(1,1)}(1) = e^{-1}
    CHECK(density(gamma_drift(), 1.0, 0.0) == doctest::Approx(0.36787944117144233).epsilon(1e-14));
    CHECK(density(gamma_drift(), 1.0, -1.5) == 0.0); // below the support edge -ct
}

TEST_CASE("no density for finite activity plus drift") {
    SpectrallyPositiveModel cp{-1.0, 0.0, CompoundPoissonJumps{1.0, ExponentialSizes{1.0}}};
    CHECK_THROWS_AS((void)density(cp, 1.0, 0.0), no_density_error);
    CHECK(atom_at_minus_ct(cp, 2.0) == doctest::Approx(std::exp(-2.0)));
    SpectrallyPositiveModel pd{-1.0, 0.0, NoJumps{}};
    CHECK(atom_at_minus_ct(pd, 3.0) == 1.0);
    CHECK(atom_at_minus_ct(brownian(), 1.0) == 0.0);
}

TEST_CASE("characteristic function") {
    for (const auto& m : {brownian(0.5, 2.0), gamma_drift(), stable()}) {
        CHECK(characteristic_function(m, 1.0, 0.0) == std::complex<double>(1.0, 0.0));
        for (double u : {0.3, 1.7, 4.2}) {
            const auto a = characteristic_function(m, 0.7, -u);
            const auto b = std::conj(characteristic_function(m, 0.7, u));
            CHECK(std::abs(a - b) < 1e-15);
        }
    }
    CHECK(characteristic_function(brownian(), 1.0, 1.0).real() ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(characteristic_function(brownian(), 1.0, 1.0).imag() == doctest::Approx(0.0));
}

TEST_CASE("fourier route matches closed forms") {
    double worst = 0.0;
    for (double x = -3.0; x <= 3.0; x += 0.5)
        worst = std::max(worst, std::abs(fourier_density(brownian(0.4, 1.5), 1.0, x) -
                                         density(brownian(0.4, 1.5), 1.0, x)));
    CHECK(worst < 1e-7);

    const auto g = gamma_drift(1.0, 4.0, 0.5); // shape_rate*t = 4: smooth enough to invert
    worst = 0.0;
    for (double x = -0.9; x <= 3.0; x += 0.3)
        worst = std::max(worst, std::abs(fourier_density(g, 1.0, x) - density(g, 1.0, x)));
    CHECK(worst < 1e-7);
}

TEST_CASE("stable density against frozen reference values") {
    // reference: scipy levy_stable with beta=1, scale=(t c |cos(pi a/2)|)^{1/a}
    const auto s = stable(1.5, 1.0);
    CHECK(density(s, 1.0, -1.0) == doctest::Approx(0.350568075920112).epsilon(1e-7));
    CHECK(density(s, 1.0, 0.0) == doctest::Approx(0.24885478260493).epsilon(1e-7));
    CHECK(density(s, 1.0, 1.0) == doctest::Approx(0.111982707038606).epsilon(1e-7));
    CHECK(density(s, 1.0, 3.0) == doctest::Approx(0.0225253070740171).epsilon(1e-6));
    const auto s2 = stable(1.2, 0.5);
    CHECK(density(s2, 2.0, 0.0) == doctest::Approx(0.149710029589914).epsilon(1e-7));
    CHECK(density(s2, 2.0, 2.0) == doctest::Approx(0.0203221934811284).epsilon(1e-6));
    // cdf by Gil-Pelaez against scipy sf
    CHECK(cdf_upper(s, 1.0, 1.0) == doctest::Approx(0.1588989854702525).epsilon(1e-6));
}

TEST_CASE("grid normalization and positivity") {
    struct Case { SpectrallyPositiveModel m; double t; };
    const Case cases[] = {
        {brownian(1.0, 2.0), 0.5}, {brownian(1.0, 2.0), 1.0},
        {gamma_drift(1.0, 1.0, 1.0), 0.5}, {gamma_drift(1.0, 1.0, 1.0), 1.0},
        {gamma_drift(0.75, 0.5, 1.0), 1.0}, {gamma_drift(0.75, 0.5, 1.0), 2.0},
        {gamma_drift(1.0, 3.0, 0.5), 0.5}, {gamma_drift(1.0, 3.0, 0.5), 1.0},
        {{-0.5, 0.8, CompoundPoissonJumps{1.0, ExponentialSizes{0.7}}}, 0.5},
        {{-0.5, 0.8, CompoundPoissonJumps{1.0, ExponentialSizes{0.7}}}, 1.0},
        {stable(1.5, 1.0), 0.5}, {stable(1.5, 1.0), 1.0},
    };
    for (const auto& c : cases) {
        const auto grid = make_default_grid(c.m, c.t);
        const double mass = grid.integral();
        CHECK(mass > 0.9999);
        CHECK(mass < 1.0001);
        // positivity on the bulk; Fourier-tabulated far tails underflow the
        // inversion noise floor, so restrict those to +/- 8 scale units
        const bool fourier = grid.method_tag == DensityMethod::fourier;
        const double mu = c.m.mean_rate() * c.t;
        const double sd = std::holds_alternative<StablePositiveJumps>(c.m.jumps)
                              ? 4.0 * std::pow(c.t, 1.0 / 1.5)
                              : std::sqrt(c.m.variance_rate() * c.t);
        for (std::size_t i = 1; i + 1 < grid.x_values.size(); ++i) {
            if (fourier && std::abs(grid.x_values[i] - mu) > 8.0 * sd) continue;
            CHECK(grid.p_values[i] > 0.0);
        }
    }
}

TEST_CASE("chapman-kolmogorov spot checks") {
    struct Triple { SpectrallyPositiveModel m; double s, t, x; };
    const Triple cases[] = {
        {brownian(), 0.3, 1.0, 0.7},
        {brownian(0.5, 1.5), 0.5, 1.2, -0.4},
        {gamma_drift(), 0.4, 1.0, 0.5},
    };
    for (const auto& c : cases) {
        const double conv = quad::integrate([&](double y) {
            return density(c.m, c.s, y) * density(c.m, c.t - c.s, c.x - y);
        }, c.m.mean_rate() * c.t - 14.0, c.m.mean_rate() * c.t + 14.0, 1e-9);
        CHECK(conv == doctest::Approx(density(c.m, c.t, c.x)).epsilon(1e-5));
    }
}

TEST_CASE("entrance law q") {
    CHECK(entrance_law_q(brownian(), 1.0, 0.0) == 0.0);
    CHECK(entrance_law_q(brownian(), 1.0, 1.0) == doctest::Approx(0.24197072451914337).epsilon(1e-12));
    // dual-method agreement: closed-form density vs fourier inversion
    const auto g = gamma_drift(1.0, 4.0, 0.5);
    for (double x : {0.2, 0.5, 0.8}) {
        const double closed = (x / 1.0) * density(g, 1.0, -x);
        const double fourier = (x / 1.0) * fourier_density(g, 1.0, -x);
        CHECK(std::abs(closed - fourier) < 1e-7);
    }
}

TEST_CASE("default grid method tags") {
    CHECK(make_default_grid(brownian(), 1.0, 64).method_tag == DensityMethod::closed_form);
    CHECK(make_default_grid(gamma_drift(), 1.0, 64).method_tag == DensityMethod::closed_form);
    CHECK(density_method(stable()) == DensityMethod::fourier);
}
