#pragma once

#include "levyflux/model.hpp"
#include "levyflux/sampling.hpp"

#include <cstdint>
#include <vector>

namespace levyflux {

struct BallotEstimate {
    double empirical = 0.0;       // frequency of {T_x = t} under the uniform shift
    double std_error = 0.0;
    double analytic = 0.0;        // x / (c t)
    double mean_lebesgue_over_t = 0.0; // (1/t) mean lambda(E_{t,x}), the theorem's other side
    long long n_samples = 0;
};

// Endpoint-conditioned CEI construction: n_jumps iid sizes rescaled so the
// total jump mass is ct - x, jump times iid uniform, then a uniform cyclic
// shift.  Estimates P(T_x = t); requires x < ct.
BallotEstimate ballot_mc(int n_jumps, const CpSizeDist& sizes, double c, double t, double x,
                         long long n_samples, std::uint64_t seed);

struct KendallCell {
    double t_lo, t_hi, x_lo, x_hi;
    double empirical = 0.0; // frequency of samples landing in the cell
    double analytic = 0.0;  // quadrature of (x/t) p_t(-x) over the cell / x-range
    double std_error = 0.0;
};

struct KendallComparison {
    std::vector<KendallCell> cells;
    double no_cross_freq = 0.0;   // first passage beyond t_max (or never)
    double crossing_freq = 0.0;
    long long n_samples = 0;
    double truncation_bias_rate = 0.0;
};

// Empirical first-passage cloud (T_x, x) with x uniform over the x-grid range
// versus quadrature of the measure (x/t) p_t(-x) dx dt over each cell.
KendallComparison kendall_mc(const SpectrallyPositiveModel&, const std::vector<double>& x_edges,
                             double t_max, int n_t_cells, long long n_samples, std::uint64_t seed);

} // namespace levyflux
