#include "levyflux/path.hpp"
#include "levyflux/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levyflux {

namespace {

void check_range(double s, double horizon, const char* what) {
    if (s < 0.0 || s > horizon)
        throw std::invalid_argument(std::string(what) + ": time outside [0, horizon]");
}

} // namespace

void BVPath::validate() const {
    if (!(horizon > 0.0)) throw validation_error("BVPath: horizon must be > 0");
    if (jump_times.size() != jump_sizes.size())
        throw validation_error("BVPath: jump_times/jump_sizes length mismatch");
    double prev = 0.0;
    for (std::size_t i = 0; i < jump_times.size(); ++i) {
        if (!(jump_times[i] > prev) || jump_times[i] > horizon)
            throw validation_error("BVPath: jump times must be strictly increasing in (0, horizon]");
        if (!(jump_sizes[i] > 0.0)) throw validation_error("BVPath: jump sizes must be > 0");
        prev = jump_times[i];
    }
}

double evaluate(const BVPath& p, double s) {
    check_range(s, p.horizon, "evaluate");
    double cum = 0.0;
    for (std::size_t i = 0; i < p.jump_times.size() && p.jump_times[i] <= s; ++i)
        cum += p.jump_sizes[i];
    return p.start + cum + p.drift_rate * s;
}

double running_inf(const BVPath& p, double s) {
    check_range(s, p.horizon, "running_inf");
    double m = p.start;
    double cum = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < p.jump_times.size() && p.jump_times[i] <= s; ++i) {
        // value just before the jump, same arithmetic as evaluate()
        m = std::min(m, p.start + cum + p.drift_rate * p.jump_times[i]);
        cum += p.jump_sizes[i];
        prev = p.jump_times[i];
        m = std::min(m, p.start + cum + p.drift_rate * prev);
    }
    return std::min(m, p.start + cum + p.drift_rate * s);
}

double running_sup(const BVPath& p, double s) {
    check_range(s, p.horizon, "running_sup");
    double m = p.start;
    double cum = 0.0;
    for (std::size_t i = 0; i < p.jump_times.size() && p.jump_times[i] <= s; ++i) {
        m = std::max(m, p.start + cum + p.drift_rate * p.jump_times[i]);
        cum += p.jump_sizes[i];
        m = std::max(m, p.start + cum + p.drift_rate * p.jump_times[i]);
    }
    return std::max(m, p.start + cum + p.drift_rate * s);
}

std::optional<double> first_passage(const BVPath& p, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("first_passage: x must be > 0");
    const double target = -x;
    if (p.start == target) return 0.0;
    double cum = 0.0;
    double prev = 0.0;
    double va = p.start;
    auto segment_hit = [&](double a, double b) -> std::optional<double> {
        const double vb = p.start + cum + p.drift_rate * b;
        if (p.drift_rate != 0.0 && ((va > target && vb <= target) || (va < target && vb >= target))) {
            return a + (target - va) / p.drift_rate;
        }
        return std::nullopt;
    };
    for (std::size_t i = 0; i < p.jump_times.size(); ++i) {
        if (auto hit = segment_hit(prev, p.jump_times[i])) return hit;
        cum += p.jump_sizes[i];
        prev = p.jump_times[i];
        va = p.start + cum + p.drift_rate * prev;
        if (va == target) return prev;
    }
    if (auto hit = segment_hit(prev, p.horizon)) return hit;
    return std::nullopt;
}

double lebesgue_E(const BVPath& p, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("lebesgue_E: x must be > 0");
    if (!(p.drift_rate < 0.0))
        throw std::invalid_argument("lebesgue_E: path must drift downward between jumps");
    const double inf_t = running_inf(p, p.horizon);
    const double depth = p.start - inf_t;
    if (depth <= 0.0) return 0.0;
    return std::min(x, depth) / (-p.drift_rate);
}

BVPath shift(const BVPath& p, double u) {
    if (u < 0.0 || u > p.horizon) throw std::invalid_argument("shift: u outside [0, horizon]");
    if (u == 0.0 || u == p.horizon) return p;
    BVPath out;
    out.horizon = p.horizon;
    out.start = p.start;
    out.drift_rate = p.drift_rate;
    const std::size_t n = p.jump_times.size();
    out.jump_times.reserve(n);
    out.jump_sizes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) { // jumps after u come first, moved to tau - u
        if (p.jump_times[i] > u) {
            out.jump_times.push_back(p.jump_times[i] - u);
            out.jump_sizes.push_back(p.jump_sizes[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) { // jumps at or before u land at tau + (t - u)
        if (p.jump_times[i] <= u) {
            out.jump_times.push_back(p.jump_times[i] + (p.horizon - u));
            out.jump_sizes.push_back(p.jump_sizes[i]);
        }
    }
    return out;
}

BVPath time_reverse(const BVPath& p) {
    BVPath out;
    out.horizon = p.horizon;
    out.start = p.start;
    out.drift_rate = p.drift_rate;
    const std::size_t n = p.jump_times.size();
    out.jump_times.reserve(n);
    out.jump_sizes.reserve(n);
    for (std::size_t i = n; i-- > 0;) {
        if (p.jump_times[i] >= p.horizon)
            throw std::invalid_argument("time_reverse: jump at the horizon cannot be reversed");
        out.jump_times.push_back(p.horizon - p.jump_times[i]);
        out.jump_sizes.push_back(p.jump_sizes[i]);
    }
    return out;
}

bool check_7492(const BVPath& p, double x, double u) {
    if (!(x > 0.0)) throw std::invalid_argument("check_7492: x must be > 0");
    check_range(u, p.horizon, "check_7492");
    const double val = evaluate(p, u);
    const double inf_u = running_inf(p, u);
    const double inf_t = running_inf(p, p.horizon);
    const bool rhs = (val == inf_u) && (val >= inf_t) && (val < inf_t + x);

    const BVPath sh = shift(p, u);
    bool lhs;
    if (auto T = first_passage(sh, x)) {
        lhs = *T >= p.horizon * (1.0 - 1e-12);
    } else {
        // path grazes -x exactly at the horizon but rounding left it a hair above
        lhs = std::abs(evaluate(sh, p.horizon) + x) <= 1e-9 * (1.0 + std::abs(x));
    }
    return lhs == rhs;
}

double evaluate(const GridPath& g, double s) {
    check_range(s, g.horizon, "evaluate");
    const auto n = g.values.size();
    if (s >= g.horizon) return g.values.back();
    const double h = g.horizon / static_cast<double>(n - 1);
    auto idx = static_cast<std::size_t>(s / h);
    if (idx >= n) idx = n - 1;
    return g.values[idx];
}

double running_inf(const GridPath& g, double s) {
    check_range(s, g.horizon, "running_inf");
    const auto n = g.values.size();
    const double h = g.horizon / static_cast<double>(n - 1);
    auto idx = std::min(static_cast<std::size_t>(s / h), n - 1);
    double m = g.values[0];
    for (std::size_t i = 1; i <= idx; ++i) m = std::min(m, g.values[i]);
    return m;
}

double running_sup(const GridPath& g, double s) {
    check_range(s, g.horizon, "running_sup");
    const auto n = g.values.size();
    const double h = g.horizon / static_cast<double>(n - 1);
    auto idx = std::min(static_cast<std::size_t>(s / h), n - 1);
    double m = g.values[0];
    for (std::size_t i = 1; i <= idx; ++i) m = std::max(m, g.values[i]);
    return m;
}

GridPath shift(const GridPath& g, double u) {
    if (u < 0.0 || u > g.horizon) throw std::invalid_argument("shift: u outside [0, horizon]");
    GridPath out;
    out.horizon = g.horizon;
    const auto n = g.values.size();
    out.values.resize(n);
    const double h = g.horizon / static_cast<double>(n - 1);
    const double wu = evaluate(g, u);
    const double w0 = g.values.front();
    const double wt = g.values.back();
    for (std::size_t i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) * h;
        if (s < g.horizon - u)
            out.values[i] = w0 + evaluate(g, s + u) - wu;
        else
            out.values[i] = evaluate(g, s - (g.horizon - u)) + wt - wu;
    }
    return out;
}

double lebesgue_E(const GridPath& g, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("lebesgue_E: x must be > 0");
    const auto n = g.values.size();
    if (n < 2) throw validation_error("GridPath: need at least 2 samples");
    const double h = g.horizon / static_cast<double>(n - 1);
    double inf_t = g.values[0];
    for (double v : g.values) inf_t = std::min(inf_t, v);
    double run = g.values[0];
    double measure = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) { // cell [s_i, s_{i+1}) owned by sample i
        run = std::min(run, g.values[i]);
        if (g.values[i] == run && g.values[i] >= inf_t && g.values[i] < inf_t + x)
            measure += h;
    }
    return measure;
}

GridPath application1_path(double t, double x, int n) {
    if (!(t > 0.0) || !(x > 0.0)) throw std::invalid_argument("application1_path: need t, x > 0");
    if (n < 2) throw std::invalid_argument("application1_path: need n >= 2");
    GridPath g;
    g.horizon = t;
    g.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double s = t * static_cast<double>(i) / static_cast<double>(n - 1);
        double v;
        if (s < t / 4.0)
            v = s * s;
        else if (s < t / 2.0)
            v = -s * s * s - x;
        else
            v = -(t - s) * (t - s) * (t - s) - x;
        g.values[static_cast<std::size_t>(i)] = v;
    }
    return g;
}

} // namespace levyflux
