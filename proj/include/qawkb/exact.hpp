#pragma once

#include <span>
#include <vector>

#include "qawkb/numerics.hpp"
#include "qawkb/schedule.hpp"
#include "qawkb/state.hpp"
#include "qawkb/twolevel.hpp"

namespace qawkb {

struct TrajectoryRow {
    double r = 0.0;
    double s = 0.0;
    State2 state;
};

struct Trajectory {
    TwoLevelProblem problem;
    int alpha = 0;
    double t_f = 0.0;
    std::vector<TrajectoryRow> rows;
};

// Reference evolution: integrates i/t_f * d/dr chi = g(r) H(r) chi from the
// uniform-superposition boundary state, reporting the state at every grid
// point. The grid must be sorted, start at 0 and end at 1.
Trajectory evolve_exact(const TwoLevelProblem& problem, const Schedule& schedule,
                        double t_f, std::span<const double> grid,
                        const numerics::OdeSpec& spec = {});

// Uniform r-grid with `points` nodes including both endpoints.
std::vector<double> uniform_grid(std::size_t points = 501);

}  // namespace qawkb
