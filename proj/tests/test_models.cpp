#include <doctest.h>

#include "levyflux/errors.hpp"
#include "levyflux/model.hpp"
#include "levyflux/model_io.hpp"
#include "levyflux/moments.hpp"
#include "levyflux/rng.hpp"

#include <cmath>
#include <random>

using namespace levyflux;

namespace {

SpectrallyPositiveModel brownian(double drift = 0.0, double sig2 = 1.0) {
    return {drift, sig2, NoJumps{}};
}

SpectrallyPositiveModel gamma_drift(double c = 1.0, double shape_rate = 1.0, double scale = 1.0) {
    return {-c, 0.0, GammaSubordinatorJumps{shape_rate, scale}};
}

SpectrallyPositiveModel cp_drift(double c, double rate, double mean) {
    return {-c, 0.0, CompoundPoissonJumps{rate, ExponentialSizes{mean}}};
}

SpectrallyPositiveModel stable(double alpha = 1.5, double scale = 1.0) {
    return {0.0, 0.0, StablePositiveJumps{alpha, scale}};
}

// independent root finder on a caller-supplied closed form
double bisect_root(double (*f)(double), double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) <= 0.0) == (f(lo) <= 0.0)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("laplace exponent closed forms") {
    CHECK(laplace_exponent(brownian(), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    // phi(1) = c - log(1 + theta) for the gamma family
    CHECK(laplace_exponent(gamma_drift(), 1.0) ==
          doctest::Approx(0.3068528194400547).epsilon(1e-13));
    for (const auto& m : {brownian(), gamma_drift(), cp_drift(1.0, 1.0, 0.5), stable()})
        CHECK(laplace_exponent(m, 0.0) == 0.0);
    CHECK_THROWS_AS((void)laplace_exponent(brownian(), -0.5), std::invalid_argument);
}

TEST_CASE("laplace exponent via empirical log-laplace of gamma samples") {
    // MC cross-check: phi(lam) = -log E e^{-lam X_1}, X_1 = G_1 - 1
    const double lam = 1.0;
    std::mt19937_64 rng(20240811);
    std::gamma_distribution<double> g(1.0, 1.0);
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = std::exp(-lam * (g(rng) - 1.0));
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    const double target = std::exp(laplace_exponent(gamma_drift(), lam));
    CHECK(std::abs(mean - target) < 3.0 * se);
}

TEST_CASE("laplace exponent convexity on a grid") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& m : {brownian(0.3, 2.0), gamma_drift(1.5, 2.0, 0.7),
                          cp_drift(2.0, 1.0, 1.0), stable(1.3, 0.8)}) {
        for (int it = 0; it < 200; ++it) {
            double l1 = 4.0 * u(rng), l2 = 4.0 * u(rng), l3 = 4.0 * u(rng);
            if (l1 > l2) std::swap(l1, l2);
            if (l2 > l3) std::swap(l2, l3);
            if (l1 > l2) std::swap(l1, l2);
            if (l3 - l1 < 1e-6) continue;
            const double w = (l2 - l1) / (l3 - l1);
            const double chord = (1.0 - w) * laplace_exponent(m, l1) + w * laplace_exponent(m, l3);
            CHECK(laplace_exponent(m, l2) <= chord + 1e-10);
        }
    }
}

TEST_CASE("largest root") {
    CHECK(largest_root(brownian()) == 0.0);
    // phi(s) = -s + s^2/2 has largest root 2; oracle: bisection on the closed form
    const double oracle = bisect_root(+[](double s) { return -s + 0.5 * s * s - 0.0; }, 0.5, 10.0);
    CHECK(largest_root(brownian(1.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(largest_root(brownian(1.0, 1.0)) == doctest::Approx(oracle).epsilon(1e-10));
    // mean-zero gamma model: phi'(0) = 0, root stays at 0 and phi(eps) > 0
    CHECK(largest_root(gamma_drift()) == 0.0);
    CHECK(laplace_exponent(gamma_drift(), 1e-3) > 0.0);

    for (const auto& m : {brownian(1.0, 1.0), brownian(0.5, 0.25), cp_drift(0.5, 1.0, 1.0)}) {
        const double rho = largest_root(m);
        CHECK(std::abs(laplace_exponent(m, rho)) < 1e-9);
        CHECK(laplace_exponent(m, rho + 0.1) > 0.0);
    }
}

TEST_CASE("inverse laplace exponent") {
    CHECK(inverse_laplace_exponent(brownian(), 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& m : {brownian(), brownian(1.0, 1.0), gamma_drift(), stable()})
        CHECK(inverse_laplace_exponent(m, 0.0) == largest_root(m));
    for (double q : {0.1, 1.0, 10.0})
        CHECK(std::abs(laplace_exponent(brownian(1.0, 1.0), inverse_laplace_exponent(brownian(1.0, 1.0), q)) - q) < 1e-10);
    for (const auto& m : {brownian(0.7, 1.3), gamma_drift(2.0, 1.0, 0.5), stable(1.7, 2.0)}) {
        for (int i = 1; i <= 20; ++i) {
            const double q = 0.05 * i * i;
            CHECK(std::abs(laplace_exponent(m, inverse_laplace_exponent(m, q)) - q) < 1e-9);
        }
    }
}

TEST_CASE("model moments") {
    CHECK(model_moments(brownian(), 1.0, MomentKind::neg_part_mean) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-10));
    CHECK(model_moments(brownian(), 1.0, MomentKind::mean) == 0.0);
    CHECK(model_moments(gamma_drift(), 1.0, MomentKind::mean) == doctest::Approx(0.0));
    CHECK(model_moments(gamma_drift(), 2.0, MomentKind::neg_truncated_mean) ==
          doctest::Approx(-model_moments(gamma_drift(), 2.0, MomentKind::neg_part_mean)).epsilon(1e-12));
    // atom-bearing model: mean fine, truncated moments need a density
    const auto cp = cp_drift(1.0, 1.0, 1.0);
    CHECK(model_moments(cp, 2.0, MomentKind::mean) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)model_moments(cp, 1.0, MomentKind::neg_part_mean), no_density_error);
}

TEST_CASE("classification flags") {
    CHECK(!brownian().bounded_variation());
    CHECK(brownian().has_density());
    CHECK(gamma_drift().bounded_variation());
    CHECK(gamma_drift().has_density());
    CHECK(cp_drift(1.0, 1.0, 1.0).bounded_variation());
    CHECK(!cp_drift(1.0, 1.0, 1.0).has_density());
    CHECK(!stable().bounded_variation());
    CHECK(stable().has_density());
    SpectrallyPositiveModel pd{-1.0, 0.0, NoJumps{}};
    CHECK(pd.bounded_variation());
    CHECK(!pd.has_density());
    CHECK(pd.is_pure_drift());
    SpectrallyPositiveModel mixed{0.0, 1.0, CompoundPoissonJumps{1.0, ExponentialSizes{1.0}}};
    CHECK(!mixed.bounded_variation());
    CHECK(mixed.has_density());
}

TEST_CASE("validation") {
    // subordinators rejected
    CHECK_THROWS_AS(SpectrallyPositiveModel({0.0, 0.0, GammaSubordinatorJumps{1.0, 1.0}}).validate(),
                    validation_error);
    CHECK_THROWS_AS(SpectrallyPositiveModel({0.5, 0.0, CompoundPoissonJumps{1.0, ExponentialSizes{1.0}}}).validate(),
                    validation_error);
    // negative jump size
    CHECK_THROWS_AS(SpectrallyPositiveModel({-1.0, 0.0, CompoundPoissonJumps{1.0, DeterministicSizes{-2.0}}}).validate(),
                    validation_error);
    CHECK_THROWS_AS(SpectrallyPositiveModel({-1.0, 0.0, CompoundPoissonJumps{1.0, ExponentialSizes{-1.0}}}).validate(),
                    validation_error);
    // stable index domain
    CHECK_THROWS_AS(SpectrallyPositiveModel({0.0, 0.0, StablePositiveJumps{2.3, 1.0}}).validate(),
                    validation_error);
    CHECK_NOTHROW(gamma_drift().validate());
    CHECK_NOTHROW(brownian().validate());
    CHECK_NOTHROW(SpectrallyPositiveModel({-1.0, 0.0, NoJumps{}}).validate());
}

TEST_CASE("model json round trip") {
    const char* text = R"({"family":"gamma","drift":-1.0,"gaussian_coef":0.0,
                           "jumps":{"shape_rate":1.0,"scale":1.0}})";
    const auto m = model_from_json(text);
    CHECK(laplace_exponent(m, 1.0) == doctest::Approx(0.3068528194400547));
    const auto m2 = model_from_json(model_to_json(m));
    CHECK(laplace_exponent(m2, 2.0) == laplace_exponent(m, 2.0));

    const auto cp = model_from_json(R"({"family":"compound_poisson","drift":-1.5,
        "jumps":{"rate":2.0,"size_dist":{"type":"gamma","shape":2.0,"scale":0.5}}})");
    CHECK(cp.mean_rate() == doctest::Approx(2.0 * 1.0 - 1.5));

    CHECK_THROWS_AS((void)model_from_json("{not json"), validation_error);
    CHECK_THROWS_AS((void)model_from_json(R"({"family":"weird"})"), validation_error);
    CHECK_THROWS_AS((void)model_from_json(R"({"family":"compound_poisson","drift":-1,
        "jumps":{"rate":1.0,"size_dist":{"type":"deterministic","size":-1.0}}})"), validation_error);
    CHECK_THROWS_AS((void)load_model("/nonexistent/file.json"), validation_error);
}
