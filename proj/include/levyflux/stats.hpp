#pragma once

#include <cmath>
#include <cstdint>

namespace levyflux {

// Welford accumulator with an associative/commutative merge, so MC batches can
// be combined in any order.
struct RunningStat {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const RunningStat& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        const double d = o.mean - mean;
        const std::int64_t tot = n + o.n;
        mean += d * static_cast<double>(o.n) / static_cast<double>(tot);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(tot);
        n = tot;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_mean() const { return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
};

inline double binomial_se(double phat, std::int64_t n) {
    return n > 0 ? std::sqrt(phat * (1.0 - phat) / static_cast<double>(n)) : 0.0;
}

} // namespace levyflux
