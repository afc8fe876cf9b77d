#pragma once

#include <array>
#include <memory>
#include <vector>

#include "qawkb/errors.hpp"
#include "qawkb/numerics.hpp"
#include "qawkb/schedule.hpp"
#include "qawkb/state.hpp"
#include "qawkb/twolevel.hpp"

namespace qawkb::wkb {

enum class Branch : int { plus = +1, minus = -1 };
enum class Amplitude : int { psi = 0, phi = 1 };

inline int sign_of(Branch b) { return static_cast<int>(b); }

// Index of the transport solution a given (branch, amplitude) pair follows:
// the marked amplitude rides its own branch, the unmarked one the opposite.
inline int transport_sign(Branch b, Amplitude a) {
    return a == Amplitude::psi ? sign_of(b) : -sign_of(b);
}

// Integration-constant conventions. The zeroth-order amplitudes carry one
// scale per transport solution; the first-order corrections carry one
// additive offset per (branch, amplitude). Assembly absorbs either choice
// up to one order in 1/t_f beyond the truncation.
struct WkbConstants {
    double d0_plus = 1.0;   // scale of the transport solution vanishing at r=1
    double d0_minus = 1.0;  // scale of the non-vanishing transport solution
    std::array<std::array<cplx, 2>, 2> w0{};  // [branch: +,-][amplitude: psi,phi]

    double d0(int tsign) const { return tsign > 0 ? d0_plus : d0_minus; }
    cplx w_offset(Branch b, Amplitude a) const {
        return w0[b == Branch::plus ? 0 : 1][static_cast<int>(a)];
    }

    static WkbConstants unit() { return {}; }
    // The single-qubit closed-form normalization: scales chosen so the
    // transport solutions reduce to (1-r)/sqrt(gap*(r+gap)) and
    // sqrt((r+gap)/gap), with the matching first-order offsets.
    static WkbConstants n1_closed_form();
};

// Zeroth-order transport amplitude (unit integration constants).
// Independent of the schedule. The tsign=+1 solution vanishes linearly
// at r=1.
cplx transport_zeroth(const TwoLevelProblem& p, Branch b, Amplitude a, double r);

// Logarithmic derivative of the zeroth amplitude. Throws SingularityError
// at r=1 on the vanishing solution.
cplx transport_log_deriv(const TwoLevelProblem& p, Branch b, Amplitude a, double r);

// Derivative of the log-derivative (internal to the first-order kernel but
// exposed for finite-difference cross-checks).
double transport_log_deriv_prime_real(const TwoLevelProblem& p, int tsign, double r);

// Im w'(r) for the first-order correction ratio w = y1/y0. w' is purely
// imaginary; the real-valued integrand is what gets accumulated.
double first_order_ratio_deriv_imag(const TwoLevelProblem& p, const Schedule& sched,
                                    Branch b, Amplitude a, double r);

// Shared per-(problem, schedule) machinery: eikonal phases via the schedule
// caches and, at first order, cumulative caches of w on 1024 anchor
// segments plus the r=1 limits of w*y0 on the vanishing combinations.
// Immutable after construction; evaluation is concurrent-safe.
class WkbBasis {
  public:
    static constexpr double clamp_delta = 1e-8;

    WkbBasis(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule,
             int max_order);

    const TwoLevelProblem& problem() const { return problem_; }
    const Schedule& schedule() const { return *schedule_; }
    int max_order() const { return max_order_; }

    // theta_pm(r) = -(i/2) int_0^r g*(1 +- gap); branch sum is -i*s(r)
    // identically because both branches share the same s and j caches.
    cplx theta(Branch b, double r) const;
    cplx theta_deriv(Branch b, double r) const;

    // w(r) = int_0^r w' with w(0) = 0, clamped to r <= 1 - clamp_delta.
    cplx first_order_ratio(Branch b, Amplitude a, double r) const;

    // y1(r) = w(r) * y0(r); at r=1 the vanishing combinations use the
    // Richardson-extrapolated product limit.
    cplx first_order(Branch b, Amplitude a, double r) const;

    cplx y1_limit_at_one(Branch b, Amplitude a) const;

  private:
    double w_imag(Branch b, Amplitude a, double r) const;

    TwoLevelProblem problem_;
    std::shared_ptr<const Schedule> schedule_;
    int max_order_;
    // anchor node values of Im w, indexed [branch][amplitude]
    std::array<std::array<std::vector<double>, 2>, 2> w_nodes_;
    std::array<std::array<cplx, 2>, 2> y1_at_one_{};
};

struct WkbOptions {
    int order = 0;  // 0 or 1
    bool renormalized = false;
    WkbConstants constants = WkbConstants::unit();
};

// Assembled two-branch approximant for both amplitudes, with coefficients
// fixed by the value and truncated-derivative conditions at r=0.
class WkbSolution {
  public:
    static WkbSolution assemble(std::shared_ptr<const WkbBasis> basis, double t_f,
                                const WkbOptions& options = {});

    State2 evaluate(double r) const;

    int order() const { return options_.order; }
    bool renormalized() const { return options_.renormalized; }
    double t_f() const { return t_f_; }
    cplx coefficient(Branch b, Amplitude a) const {
        return coef_[b == Branch::plus ? 0 : 1][static_cast<int>(a)];
    }
    const WkbBasis& basis() const { return *basis_; }

  private:
    std::shared_ptr<const WkbBasis> basis_;
    double t_f_ = 0.0;
    WkbOptions options_;
    std::array<std::array<cplx, 2>, 2> coef_{};  // [branch][amplitude]
};

// Convenience: build a basis and assemble in one call.
WkbSolution assemble(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule,
                     double t_f, const WkbOptions& options = {});

}  // namespace qawkb::wkb
