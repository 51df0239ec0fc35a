#pragma once

#include "levyflux/model.hpp"
#include "levyflux/path.hpp"

#include <cstdint>
#include <random>

namespace levyflux {

// Jump-size floor for the gamma subordinator; discarded mass per unit time is
// shape_rate * scale * (1 - exp(-eps/scale)) ~= shape_rate * eps.
inline constexpr double kGammaJumpFloor = 1e-6;

double gamma_truncation_bias_rate(const GammaSubordinatorJumps&, double eps = kGammaJumpFloor);

// Draw one jump size from the gamma Levy density x^{-1} e^{-x/scale}
// restricted to [eps, inf), by composition-rejection (log-uniform proposal on
// [eps, scale], shifted-exponential proposal beyond).
double sample_gamma_jump(const GammaSubordinatorJumps&, double eps, std::mt19937_64&);

double sample_cp_jump(const CpSizeDist&, std::mt19937_64&);

// Time-ordered jump stream for a bounded-variation model, generated lazily so
// first-passage simulations can stop at the crossing.
class JumpStream {
public:
    JumpStream(const SpectrallyPositiveModel&, std::mt19937_64& rng, double eps = kGammaJumpFloor);

    // advances to the next jump; returns false when `rate` is zero (pure drift)
    bool next(double& time, double& size);

    double rate() const { return rate_; }

private:
    std::mt19937_64& rng_;
    double rate_ = 0.0;
    double clock_ = 0.0;
    bool gamma_ = false;
    GammaSubordinatorJumps gspec_{};
    CpSizeDist cpsizes_ = ExponentialSizes{};
    double eps_ = kGammaJumpFloor;
};

struct PathSample {
    BVPath path;
    double truncation_bias_rate = 0.0; // expected discarded jump mass per unit time
};

// Exact compound-Poisson path, or gamma path with jumps below eps discarded.
// Requires a bounded-variation model with drift < 0.  Deterministic in
// (seed): repeated calls reproduce the path bit for bit.
PathSample sample_bv_path(const SpectrallyPositiveModel&, double t, std::uint64_t seed,
                          double eps = kGammaJumpFloor);

} // namespace levyflux
