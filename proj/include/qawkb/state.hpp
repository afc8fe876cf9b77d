#pragma once

#include <cmath>
#include <complex>

namespace qawkb {

using cplx = std::complex<double>;

// Amplitude pair on the {|m>, |m_perp>} basis. Not necessarily unit norm:
// asymptotic approximants are generally unnormalized.
struct State2 {
    cplx psi{0.0, 0.0};  // marked-state amplitude
    cplx phi{0.0, 0.0};  // unmarked-component amplitude

    double norm_sq() const { return std::norm(psi) + std::norm(phi); }
    double norm() const { return std::sqrt(norm_sq()); }

    State2 normalized() const {
        const double n = norm();
        return {psi / n, phi / n};
    }
};

inline cplx inner(const State2& a, const State2& b) {
    return std::conj(a.psi) * b.psi + std::conj(a.phi) * b.phi;
}

}  // namespace qawkb
