#include "qawkb/metrics.hpp"

#include <cmath>

#include "qawkb/errors.hpp"

namespace qawkb::metrics {

double pop_marked(const State2& state) { return std::norm(state.psi); }

double trace_distance(const State2& v, const State2& w) {
    const double nv = v.norm_sq();
    const double nw = w.norm_sq();
    const double ov = std::norm(inner(v, w));
    const double tau = nv - nw;
    const double arg = 0.25 * tau * tau + nv * nw - ov;
    return std::sqrt(std::max(arg, 0.0));
}

State2 adiabatic_state(const TwoLevelProblem& p, double r) {
    const Spectrum spec = eigensystem(p, r);
    return {cplx{spec.v_gs[0], 0.0}, cplx{spec.v_gs[1], 0.0}};
}

namespace {

bool grids_match(const Trajectory& a, const Trajectory& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i].r != b.rows[i].r) return false;
    return true;
}

// Composite Simpson for uniform grids (trapezoid fallback otherwise, and
// for a trailing even segment).
double integrate_samples(const std::vector<double>& r, const std::vector<double>& f) {
    const std::size_t n = r.size();
    if (n < 2) return 0.0;
    const double h = r[1] - r[0];
    bool uniform = true;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs((r[i + 1] - r[i]) - h) > 1e-12) uniform = false;
    if (!uniform) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            acc += 0.5 * (f[i] + f[i + 1]) * (r[i + 1] - r[i]);
        return acc;
    }
    double acc = 0.0;
    std::size_t i = 0;
    while (i + 2 < n) {
        acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        i += 2;
    }
    if (i + 1 < n) acc += 0.5 * h * (f[i] + f[i + 1]);
    return acc;
}

}  // namespace

DistanceSeries distance_series(const Trajectory& a, const Trajectory& b,
                               const Schedule& sched) {
    if (!grids_match(a, b))
        throw GridMismatchError("distance_series: trajectories sampled on different grids");
    DistanceSeries out;
    out.rows.reserve(a.rows.size());
    std::vector<double> rs, weighted;
    rs.reserve(a.rows.size());
    weighted.reserve(a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const double d = trace_distance(a.rows[i].state, b.rows[i].state);
        out.rows.push_back({a.rows[i].r, a.rows[i].s, d});
        rs.push_back(a.rows[i].r);
        weighted.push_back(d * sched.g(a.rows[i].r));
    }
    out.average = integrate_samples(rs, weighted);
    return out;
}

double time_avg_distance(const Trajectory& a, const Trajectory& b, const Schedule& sched) {
    return distance_series(a, b, sched).average;
}

}  // namespace qawkb::metrics
