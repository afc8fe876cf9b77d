#pragma once

#include <array>
#include <cstdint>

#include "qawkb/state.hpp"

namespace qawkb {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Vec2 = std::array<double, 2>;

// The search problem restricted to the two-dimensional invariant subspace
// spanned by the marked state and the uniform superposition of the rest.
// All member functions are pure; instances are freely shared across threads.
struct TwoLevelProblem {
    int n = 1;            // qubit count
    std::int64_t k = 1;   // 2^n - 1 unmarked basis states

    static TwoLevelProblem qubits(int n);

    double kd() const { return static_cast<double>(k); }
};

struct Spectrum {
    double e_gs = 0.0;
    double e_exc = 0.0;
    Vec2 v_gs{1.0, 0.0};
    Vec2 v_exc{0.0, 1.0};
};

// H(r) on the restricted basis; trace 1, real symmetric.
// Throws std::domain_error for r outside [0, 1].
Mat2 hamiltonian(const TwoLevelProblem& p, double r);

// Spectral gap sqrt(1 - 4K r(1-r)/(K+1)), minimum (K+1)^(-1/2) at r = 1/2.
double gap(const TwoLevelProblem& p, double r);
double gap_derivative(const TwoLevelProblem& p, double r);
double gap_second_derivative(const TwoLevelProblem& p, double r);

// Eigenbasis rotation angle: v_gs = (cos, sin), v_exc = (-sin, cos).
// Smooth in r on [0, 1] with v_gs(0) in the positive quadrant and
// v_gs(1) = (1, 0). <v_exc, v_gs'> equals eig_angle_derivative.
double eig_angle(const TwoLevelProblem& p, double r);
double eig_angle_derivative(const TwoLevelProblem& p, double r);

Spectrum eigensystem(const TwoLevelProblem& p, double r);

// (1/sqrt(K+1), sqrt(K/(K+1))): the uniform superposition, which is the
// ground state of H(0).
State2 initial_state(const TwoLevelProblem& p);

}  // namespace qawkb
