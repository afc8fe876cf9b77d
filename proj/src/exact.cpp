#include "qawkb/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace qawkb {

std::vector<double> uniform_grid(std::size_t points) {
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    g.back() = 1.0;
    return g;
}

Trajectory evolve_exact(const TwoLevelProblem& problem, const Schedule& schedule,
                        double t_f, std::span<const double> grid,
                        const numerics::OdeSpec& spec) {
    if (t_f <= 0.0) throw std::domain_error("evolve_exact: t_f must be positive");
    if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0)
        throw std::invalid_argument("evolve_exact: grid must run from 0 to 1");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("evolve_exact: grid must be strictly increasing");

    const double K = problem.kd();
    const double sqrtK = std::sqrt(K);
    auto rhs = [&](double r, const numerics::Vec2c& y) -> numerics::Vec2c {
        const double w = t_f * schedule.g(r) / (K + 1.0);
        const double h00 = (1.0 - r) * K;
        const double h01 = -(1.0 - r) * sqrtK;
        const double h11 = 1.0 + r * K;
        const cplx mi{0.0, -1.0};
        return {mi * w * (h00 * y[0] + h01 * y[1]),
                mi * w * (h01 * y[0] + h11 * y[1])};
    };

    const State2 init = initial_state(problem);
    const auto states = numerics::solve_ode(rhs, {init.psi, init.phi}, grid, spec);

    Trajectory traj{problem, schedule.alpha(), t_f, {}};
    traj.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        traj.rows.push_back({grid[i], schedule.s(grid[i]), {states[i][0], states[i][1]}});
    return traj;
}

}  // namespace qawkb
