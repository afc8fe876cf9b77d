#include <doctest.h>

#include <cmath>
#include <vector>

#include "qawkb/exact.hpp"
#include "qawkb/metrics.hpp"

using namespace qawkb;

TEST_CASE("boundary row equals the initial state") {
    for (int n : {1, 4}) {
        const auto p = TwoLevelProblem::qubits(n);
        Schedule sched(p, 2);
        const auto traj = evolve_exact(p, sched, 10.0, uniform_grid(11));
        const auto init = initial_state(p);
        CHECK(std::abs(traj.rows.front().state.psi - init.psi) < 1e-15);
        CHECK(std::abs(traj.rows.front().state.phi - init.phi) < 1e-15);
        CHECK(traj.rows.front().r == 0.0);
        CHECK(traj.rows.back().r == 1.0);
    }
}

TEST_CASE("argument validation") {
    const auto p = TwoLevelProblem::qubits(1);
    Schedule sched(p, 0);
    const double bad1[2] = {0.0, 0.9};
    const double bad2[3] = {0.0, 0.5, 0.4};
    CHECK_THROWS_AS((void)evolve_exact(p, sched, -1.0, uniform_grid(5)), std::domain_error);
    CHECK_THROWS_AS((void)evolve_exact(p, sched, 10.0, bad1), std::invalid_argument);
    CHECK_THROWS((void)evolve_exact(p, sched, 10.0, bad2));
}

TEST_CASE("final norm at moderate time") {
    const auto p = TwoLevelProblem::qubits(1);
    Schedule sched(p, 0);
    const double grid[2] = {0.0, 1.0};
    const auto traj = evolve_exact(p, sched, 50.0, grid);
    CHECK(std::abs(traj.rows.back().state.norm() - 1.0) < 1e-9);
}

TEST_SUITE("unitarity") {
    TEST_CASE("norm preserved along the whole trajectory") {
        for (double tf : {1e2, 1e3, 1e5}) {
            const auto p = TwoLevelProblem::qubits(2);
            Schedule sched(p, 1);
            const auto traj = evolve_exact(p, sched, tf, uniform_grid(101));
            double worst = 0.0;
            for (const auto& row : traj.rows)
                worst = std::max(worst, std::abs(row.state.norm() - 1.0));
            CHECK(worst < 1e-8);
        }
    }
}

TEST_CASE("dimensionless-time form gives the same evolution for the linear profile") {
    // for alpha=0 the r and s variables coincide; integrating
    // i d/ds = t_f H(s) must match the production path
    const auto p = TwoLevelProblem::qubits(2);
    Schedule sched(p, 0);
    const double tf = 37.0;
    const auto grid = uniform_grid(21);
    const auto traj = evolve_exact(p, sched, tf, grid);

    const double K = p.kd();
    auto rhs = [&](double s, const numerics::Vec2c& y) -> numerics::Vec2c {
        const cplx mi{0.0, -1.0};
        const double w = tf / (K + 1.0);
        const double h00 = (1.0 - s) * K;
        const double h01 = -(1.0 - s) * std::sqrt(K);
        const double h11 = 1.0 + s * K;
        return {mi * w * (h00 * y[0] + h01 * y[1]), mi * w * (h01 * y[0] + h11 * y[1])};
    };
    const auto init = initial_state(p);
    const auto states = numerics::solve_ode(rhs, {init.psi, init.phi}, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const State2 a = traj.rows[i].state;
        const State2 b{states[i][0], states[i][1]};
        CHECK(std::sqrt(std::norm(a.psi - b.psi) + std::norm(a.phi - b.phi)) < 1e-8);
    }
}

TEST_CASE("population oscillation amplitude shrinks with slower evolution") {
    const auto p = TwoLevelProblem::qubits(1);
    Schedule sched(p, 0);
    auto amplitude = [&](double tf) {
        const auto traj = evolve_exact(p, sched, tf, uniform_grid(501));
        double worst = 0.0;
        for (const auto& row : traj.rows) {
            const double adiab = metrics::pop_marked(metrics::adiabatic_state(p, row.r));
            worst = std::max(worst, std::abs(metrics::pop_marked(row.state) - adiab));
        }
        return worst;
    };
    CHECK(amplitude(100.0) < amplitude(50.0));
}

TEST_CASE("slow-evolution depopulation scale at t_f = 1000") {
    const auto p = TwoLevelProblem::qubits(1);
    Schedule sched(p, 0);
    const double grid[2] = {0.0, 1.0};
    const double tf = 1000.0;
    const auto traj = evolve_exact(p, sched, tf, grid);
    const double prod = std::norm(traj.rows.back().state.phi) * 4.0 * tf * tf;
    CHECK(prod > 0.9);
    CHECK(prod < 1.1);
}

TEST_CASE("dense output works for any grid resolution") {
    // regression: landing within one ulp of a node must not starve the
    // following step
    const auto p = TwoLevelProblem::qubits(1);
    Schedule sched(p, 0);
    for (std::size_t pts : {11, 51, 101, 127, 201, 333, 501}) {
        const auto traj = evolve_exact(p, sched, 50.0, uniform_grid(pts));
        CHECK(traj.rows.size() == pts);
        CHECK(std::abs(traj.rows.back().state.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("s column matches the schedule map") {
    const auto p = TwoLevelProblem::qubits(3);
    Schedule sched(p, 2);
    const auto traj = evolve_exact(p, sched, 5.0, uniform_grid(11));
    for (const auto& row : traj.rows)
        CHECK(row.s == doctest::Approx(sched.s(row.r)).epsilon(1e-15));
}
