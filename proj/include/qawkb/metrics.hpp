#pragma once

#include <vector>

#include "qawkb/exact.hpp"
#include "qawkb/schedule.hpp"
#include "qawkb/state.hpp"
#include "qawkb/twolevel.hpp"

namespace qawkb::metrics {

// |psi|^2, deliberately not clipped: approximants may exceed 1.
double pop_marked(const State2& state);

// Half the trace norm of the difference of the two rank-1 (possibly
// unnormalized) projectors, in closed form from the 2x2 Gram data:
// sqrt((|v|^2-|w|^2)^2/4 + |v|^2|w|^2 - |<v,w>|^2).
// Reduces to sqrt(1 - |<v,w>|^2) for unit vectors.
double trace_distance(const State2& v, const State2& w);

// Instantaneous ground state in the smooth gauge.
State2 adiabatic_state(const TwoLevelProblem& p, double r);

struct DistanceSeries {
    struct Row {
        double r = 0.0;
        double s = 0.0;
        double d = 0.0;
    };
    std::vector<Row> rows;
    double average = 0.0;  // (1/t_f) int D dt = int D(r) g(r) dr
};

// Pointwise trace distances plus the time average, computed with weight
// g(r) by composite Simpson on the shared (uniform) trajectory grid.
// Throws GridMismatchError when the r grids differ.
DistanceSeries distance_series(const Trajectory& a, const Trajectory& b,
                               const Schedule& sched);

double time_avg_distance(const Trajectory& a, const Trajectory& b,
                         const Schedule& sched);

}  // namespace qawkb::metrics
