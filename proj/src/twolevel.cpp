#include "qawkb/twolevel.hpp"

#include <cmath>
#include <stdexcept>

namespace qawkb {

TwoLevelProblem TwoLevelProblem::qubits(int n) {
    if (n < 1 || n > 62) throw std::domain_error("TwoLevelProblem: n must be in [1, 62]");
    return {n, (std::int64_t{1} << n) - 1};
}

Mat2 hamiltonian(const TwoLevelProblem& p, double r) {
    if (r < 0.0 || r > 1.0) throw std::domain_error("hamiltonian: r outside [0, 1]");
    const double K = p.kd();
    const double diag = (1.0 - r) * K / (K + 1.0);
    const double off = -(1.0 - r) * std::sqrt(K) / (K + 1.0);
    return {{{diag, off}, {off, 1.0 - diag}}};
}

double gap(const TwoLevelProblem& p, double r) {
    const double K = p.kd();
    return std::sqrt(1.0 - 4.0 * K * r * (1.0 - r) / (K + 1.0));
}

double gap_derivative(const TwoLevelProblem& p, double r) {
    const double K = p.kd();
    return 2.0 * K * (2.0 * r - 1.0) / ((K + 1.0) * gap(p, r));
}

double gap_second_derivative(const TwoLevelProblem& p, double r) {
    const double K = p.kd();
    const double d = gap(p, r);
    const double dp = gap_derivative(p, r);
    return 4.0 * K / ((K + 1.0) * d) - dp * dp / d;
}

// The rotation angle is defined through 2*theta = atan2(-2*H01, H11 - H00).
// -2*H01 = 2(1-r)sqrt(K)/(K+1) >= 0 on [0, 1], so atan2 never crosses its
// branch cut and the gauge is globally smooth.
double eig_angle(const TwoLevelProblem& p, double r) {
    const double K = p.kd();
    const double q = 2.0 * (1.0 - r) * std::sqrt(K) / (K + 1.0);
    const double x = 1.0 - 2.0 * (1.0 - r) * K / (K + 1.0);
    return 0.5 * std::atan2(q, x);
}

double eig_angle_derivative(const TwoLevelProblem& p, double r) {
    const double K = p.kd();
    const double q = 2.0 * (1.0 - r) * std::sqrt(K) / (K + 1.0);
    const double x = 1.0 - 2.0 * (1.0 - r) * K / (K + 1.0);
    const double qp = -2.0 * std::sqrt(K) / (K + 1.0);
    const double xp = 2.0 * K / (K + 1.0);
    return 0.5 * (qp * x - xp * q) / (x * x + q * q);
}

Spectrum eigensystem(const TwoLevelProblem& p, double r) {
    const double d = gap(p, r);
    const double t = eig_angle(p, r);
    const double c = std::cos(t), s = std::sin(t);
    Spectrum spec;
    spec.e_gs = 0.5 * (1.0 - d);
    spec.e_exc = 0.5 * (1.0 + d);
    spec.v_gs = {c, s};
    spec.v_exc = {-s, c};
    return spec;
}

State2 initial_state(const TwoLevelProblem& p) {
    const double K = p.kd();
    return {cplx{1.0 / std::sqrt(K + 1.0), 0.0},
            cplx{std::sqrt(K / (K + 1.0)), 0.0}};
}

}  // namespace qawkb
