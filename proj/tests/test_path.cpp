#include <doctest.h>

#include "levyflux/errors.hpp"
#include "levyflux/path.hpp"
#include "levyflux/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace levyflux;

namespace {

BVPath pure_drift(double c, double t) {
    BVPath p;
    p.horizon = t;
    p.drift_rate = -c;
    return p;
}

BVPath make_path(double c, double t, std::vector<double> times, std::vector<double> sizes) {
    BVPath p;
    p.horizon = t;
    p.drift_rate = -c;
    p.jump_times = std::move(times);
    p.jump_sizes = std::move(sizes);
    p.validate();
    return p;
}

// random path conditioned to end at -x
BVPath conditioned_path(std::mt19937_64& rng, double& x_out) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double t = 0.5 + 2.5 * u(rng);
    const double c = 0.5 + 2.0 * u(rng);
    const int nj = 1 + static_cast<int>(5.0 * u(rng));
    const double x = (0.2 + 0.6 * u(rng)) * c * t;
    std::vector<double> times, sizes;
    double total = 0.0;
    for (int k = 0; k < nj; ++k) {
        times.push_back(t * u(rng));
        sizes.push_back(-std::log(u(rng)));
        total += sizes.back();
    }
    std::sort(times.begin(), times.end());
    for (auto& s : sizes) s *= (c * t - x) / total;
    x_out = x;
    return make_path(c, t, times, sizes);
}

} // namespace

TEST_CASE("evaluate and running extrema") {
    const auto p = pure_drift(2.0, 3.0);
    CHECK(evaluate(p, 0.0) == 0.0);
    CHECK(evaluate(p, 1.0) == -2.0);
    CHECK(running_inf(p, 3.0) == -6.0);
    CHECK(running_sup(p, 3.0) == 0.0);
    CHECK_THROWS_AS((void)evaluate(p, 3.5), std::invalid_argument);

    auto rng = sample_engine(1, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto q = make_path(1.0, 2.0, {0.3, 0.8, 1.5}, {0.5, 1.2, 0.4});
    for (int i = 0; i < 50; ++i) {
        const double s = 2.0 * u(rng);
        CHECK(running_inf(q, s) <= evaluate(q, s));
        CHECK(running_sup(q, s) >= evaluate(q, s));
    }
}

TEST_CASE("first passage") {
    CHECK(first_passage(pure_drift(1.0, 3.0), 2.0) == 2.0);
    CHECK(!first_passage(pure_drift(1.0, 1.0), 2.0).has_value());
    // one jump of size 5 at time 1, c = 1: path dips to -1, jumps to 4, then
    // needs 6 more units of drift to reach -2, i.e. crossing at time 7
    const auto p = make_path(1.0, 8.0, {1.0}, {5.0});
    CHECK(first_passage(p, 2.0) == doctest::Approx(7.0).epsilon(1e-14));
    // consistency: the path value at the crossing is exactly -x
    auto rng = sample_engine(2, 0);
    for (int i = 0; i < 100; ++i) {
        double x = 0.0;
        const auto q = conditioned_path(rng, x);
        const auto T = first_passage(q, x);
        REQUIRE(T.has_value());
        CHECK(std::abs(evaluate(q, *T) + x) < 1e-12 * (1.0 + x));
    }
}

TEST_CASE("lebesgue measure of the ballot set") {
    // conditioned path: lambda(E) = x/c almost surely
    auto rng = sample_engine(3, 0);
    for (int i = 0; i < 100; ++i) {
        double x = 0.0;
        const auto p = conditioned_path(rng, x);
        CHECK(lebesgue_E(p, x) == doctest::Approx(x / (-p.drift_rate)).epsilon(1e-12));
    }
    // pure drift: window covering the whole descent gives the full horizon
    CHECK(lebesgue_E(pure_drift(1.0, 2.0), 2.0) == doctest::Approx(2.0));
    CHECK(lebesgue_E(pure_drift(1.0, 2.0), 5.0) == doctest::Approx(2.0));
    // smaller window: only the last x/c of the descent
    CHECK(lebesgue_E(pure_drift(2.0, 2.0), 1.0) == doctest::Approx(0.5));
}

TEST_CASE("shift algebra") {
    const auto p = make_path(1.0, 1.0, {0.2, 0.5, 0.7}, {1.0, 2.0, 3.0});
    // u = 0 and u = horizon act as the identity
    for (double u : {0.0, 1.0}) {
        const auto s = shift(p, u);
        CHECK(s.jump_times == p.jump_times);
        CHECK(s.jump_sizes == p.jump_sizes);
    }
    // hand-enumerated composition: u = 0.4 then v = 0.5 equals one shift by 0.9
    const auto s1 = shift(shift(p, 0.4), 0.5);
    const auto s2 = shift(p, 0.9);
    REQUIRE(s1.jump_times.size() == 3);
    // direct enumeration: times {0.2,0.5,0.7} -> shift 0.4: {0.1,0.3,0.8} (sizes 2,3,1)
    // -> shift 0.5: {0.3,0.6,0.8} (sizes 1,2,3); same as one shift by 0.9
    const std::vector<double> expect_times{0.3, 0.6, 0.8};
    const std::vector<double> expect_sizes{1.0, 2.0, 3.0};
    for (int k = 0; k < 3; ++k) {
        CHECK(s1.jump_times[k] == doctest::Approx(expect_times[k]).epsilon(1e-14));
        CHECK(s2.jump_times[k] == doctest::Approx(expect_times[k]).epsilon(1e-14));
        CHECK(s1.jump_sizes[k] == expect_sizes[k]);
        CHECK(s2.jump_sizes[k] == expect_sizes[k]);
    }
    CHECK_THROWS_AS((void)shift(p, 1.5), std::invalid_argument);

    // def3 agreement: shifted values match the two-branch formula
    auto rng = sample_engine(4, 0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double x = 0.0;
        const auto q = conditioned_path(rng, x);
        const double t = q.horizon;
        const double u = t * u01(rng);
        const auto sh = shift(q, u);
        for (int k = 0; k < 20; ++k) {
            const double s = t * u01(rng);
            const double expect = s < t - u
                ? q.start + evaluate(q, s + u) - evaluate(q, u)
                : evaluate(q, s - (t - u)) + evaluate(q, t) - evaluate(q, u);
            CHECK(evaluate(sh, s) == doctest::Approx(expect).epsilon(1e-11));
        }
        // endpoint preservation and lambda(E) shift invariance
        CHECK(evaluate(sh, 0.0) == q.start);
        CHECK(evaluate(sh, t) == doctest::Approx(evaluate(q, t)).epsilon(1e-11));
        CHECK(lebesgue_E(sh, x) == doctest::Approx(lebesgue_E(q, x)).epsilon(1e-10));
    }
}

TEST_CASE("time reversal") {
    const auto p = make_path(1.0, 2.0, {0.4, 1.1}, {0.7, 0.9});
    const auto rr = time_reverse(time_reverse(p));
    CHECK(rr.jump_times == p.jump_times);
    CHECK(rr.jump_sizes == p.jump_sizes);
    const auto pd = pure_drift(1.5, 1.0);
    const auto pdr = time_reverse(pd);
    CHECK(pdr.jump_times.empty());
    CHECK(pdr.drift_rate == pd.drift_rate);
    // per-path duality: sup of the reversal equals X_t - inf of the original
    auto rng = sample_engine(5, 0);
    for (int i = 0; i < 100; ++i) {
        double x = 0.0;
        const auto q = conditioned_path(rng, x);
        const auto r = time_reverse(q);
        CHECK(running_sup(r, r.horizon) ==
              doctest::Approx(evaluate(q, q.horizon) - running_inf(q, q.horizon)).epsilon(1e-10));
    }
    CHECK_THROWS_AS((void)time_reverse(make_path(1.0, 1.0, {1.0}, {0.5})), std::invalid_argument);
}

TEST_CASE("equivalence (7492)") {
    // pure drift ending at -x: at the infimum everywhere; equivalence holds on (0,t)
    const auto pd = pure_drift(1.0, 2.0);
    for (double u : {0.3, 0.9, 1.7})
        CHECK(check_7492(pd, 2.0, u));
    auto rng = sample_engine(6, 0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        double x = 0.0;
        const auto q = conditioned_path(rng, x);
        for (int k = 0; k < 100; ++k)
            CHECK(check_7492(q, x, q.horizon * (0.001 + 0.998 * u01(rng))));
    }
    // u at the argmin of a V-shaped path: the shifted path achieves T_x = t
    const auto v = make_path(1.0, 2.0, {1.0}, {1.0}); // min -1 at time 1, ends at -1
    CHECK(check_7492(v, 1.0, 1.0));
    const auto sh = shift(v, 1.0);
    const auto T = first_passage(sh, 1.0);
    REQUIRE(T.has_value());
    CHECK(*T == doctest::Approx(2.0));
}

TEST_CASE("grid paths") {
    // step evaluation and extrema
    GridPath g{1.0, {0.0, 1.0, -1.0, 0.5, -2.0}};
    CHECK(evaluate(g, 0.0) == 0.0);
    CHECK(evaluate(g, 0.3) == 1.0);
    CHECK(evaluate(g, 1.0) == -2.0);
    CHECK(running_inf(g, 0.6) == -1.0);
    CHECK(running_sup(g, 1.0) == 1.0);

    // deterministic cubic example: lambda(E) = t/4 when x >= 7 t^3/64
    const auto a1 = application1_path(1.0, 0.5, 100000);
    CHECK(lebesgue_E(a1, 0.5) == doctest::Approx(0.25).epsilon(1e-3));
    // smaller window: lambda(E) = t/2 - ((t/2)^3 - x)^{1/3}
    const double x_small = 0.05;
    const auto a2 = application1_path(1.0, x_small, 100000);
    const double expect = 0.5 - std::cbrt(0.125 - x_small);
    CHECK(lebesgue_E(a2, x_small) == doctest::Approx(expect).epsilon(1e-3));
    // lambda(E) is invariant under the grid shift as well
    const auto a1s = shift(a1, 0.37);
    CHECK(lebesgue_E(a1s, 0.5) == doctest::Approx(0.25).epsilon(2e-3));
}
