#include <doctest.h>

#include <cmath>
#include <random>

#include "qawkb/errors.hpp"
#include "qawkb/metrics.hpp"

using namespace qawkb;
using metrics::trace_distance;

TEST_CASE("marked population") {
    CHECK(metrics::pop_marked(initial_state(TwoLevelProblem::qubits(2))) ==
          doctest::Approx(0.25).epsilon(1e-15));
    CHECK(metrics::pop_marked({cplx{1.0, 0.0}, cplx{0.0, 0.0}}) == doctest::Approx(1.0));
}

TEST_CASE("trace distance closed form") {
    const State2 a{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    const State2 b{cplx{0.0, 0.0}, cplx{1.0, 0.0}};
    const State2 c{cplx{0.0, 0.0}, cplx{0.5, 0.0}};
    CHECK(trace_distance(a, a) == doctest::Approx(0.0));
    CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(trace_distance(a, c) == doctest::Approx(0.625).epsilon(1e-14));
}

TEST_SUITE("metric-axioms") {
    namespace {
    State2 random_state(std::mt19937& rng, bool normalized) {
        std::normal_distribution<double> g(0.0, 1.0);
        State2 st{cplx{g(rng), g(rng)}, cplx{g(rng), g(rng)}};
        if (normalized) st = st.normalized();
        return st;
    }
    }  // namespace

    TEST_CASE("symmetry, identity, phase invariance on random pairs") {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> phase(0.0, 6.28318);
        for (int i = 0; i < 3000; ++i) {
            const State2 v = random_state(rng, false);
            const State2 w = random_state(rng, false);
            const double d = trace_distance(v, w);
            CHECK(d >= 0.0);
            CHECK(trace_distance(w, v) == doctest::Approx(d).epsilon(1e-12));
            CHECK(trace_distance(v, v) < 1e-13);
            const cplx ph = std::polar(1.0, phase(rng));
            const State2 vp{ph * v.psi, ph * v.phi};
            CHECK(trace_distance(vp, w) == doctest::Approx(d).epsilon(1e-10));
        }
    }

    TEST_CASE("unit-norm closed form agrees with the Gram route") {
        std::mt19937 rng(99);
        for (int i = 0; i < 3000; ++i) {
            const State2 v = random_state(rng, true);
            const State2 w = random_state(rng, true);
            const double overlap = std::norm(inner(v, w));
            const double simple = std::sqrt(std::max(1.0 - overlap, 0.0));
            CHECK(std::abs(trace_distance(v, w) - simple) < 1e-12);
            CHECK(trace_distance(v, w) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("adiabatic state endpoints and midpoint") {
    const auto p = TwoLevelProblem::qubits(1);
    {
        const auto st = metrics::adiabatic_state(p, 1.0);
        CHECK(std::abs(st.psi - cplx{1.0, 0.0}) < 1e-14);
        CHECK(std::abs(st.phi) < 1e-14);
    }
    {
        const auto st = metrics::adiabatic_state(p, 0.0);
        const auto init = initial_state(p);
        CHECK(std::abs(st.psi - init.psi) < 1e-14);
        CHECK(std::abs(st.phi - init.phi) < 1e-14);
    }
    {
        const double mid = metrics::pop_marked(metrics::adiabatic_state(p, 0.5));
        CHECK(mid > 0.5);
        CHECK(mid < 1.0);
        CHECK(metrics::adiabatic_state(p, 0.5).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("time-averaged distance basics") {
    const auto p = TwoLevelProblem::qubits(2);
    Schedule sched(p, 1);
    auto constant_traj = [&](const State2& st) {
        Trajectory t{p, 1, 10.0, {}};
        for (int i = 0; i <= 100; ++i) {
            const double r = i / 100.0;
            t.rows.push_back({r, sched.s(r), st});
        }
        return t;
    };
    const State2 a{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    const State2 b{cplx{0.0, 0.0}, cplx{0.7, 0.0}};
    const auto ta = constant_traj(a);
    CHECK(metrics::time_avg_distance(ta, ta, sched) == doctest::Approx(0.0));

    // constant pointwise distance integrates to itself since int g = 1
    const auto tb = constant_traj(b);
    const double d = trace_distance(a, b);
    CHECK(metrics::time_avg_distance(ta, tb, sched) == doctest::Approx(d).epsilon(1e-6));

    Trajectory shorter = ta;
    shorter.rows.pop_back();
    CHECK_THROWS_AS((void)metrics::time_avg_distance(shorter, tb, sched), GridMismatchError);
}
