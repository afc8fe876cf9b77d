#pragma once

#include <array>
#include <memory>

#include "qawkb/numerics.hpp"
#include "qawkb/schedule.hpp"
#include "qawkb/state.hpp"
#include "qawkb/twolevel.hpp"

namespace qawkb::hj {

using Vec2c = std::array<cplx, 2>;

// First orthogonal correction of the adiabatic expansion applied to the
// rescaled generator g(r)H(r): (i/(g*gap)) <exc|gs'> |exc>, with
// <exc|gs'> the eigenbasis rotation rate. Orthogonal to the ground state
// by construction.
Vec2c chi1_perp(const TwoLevelProblem& p, const Schedule& sched, double r);

// Expansion machinery shared across evaluation times: cumulative caches of
// the dynamical phase int g*e_gs (reusing the schedule's s and gap-weighted
// caches, since e_gs = (1 - gap)/2) and of the purely imaginary f1(r).
class HjBasis {
  public:
    HjBasis(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule);

    const TwoLevelProblem& problem() const { return problem_; }
    const Schedule& schedule() const { return *schedule_; }

    // f1(r) = int_0^r <gs'|chi1_perp> dq = i * int_0^r rot^2/(g*gap) dq
    cplx f1(double r) const;

    // dynamical phase int_0^r g*e_gs dq = (s(r) - j(r))/2
    double phase(double r) const;

    Vec2c chi1_perp(double r) const;

    // (i/(g*gap)) [f1*gs' + |exc><exc| d/dr chi1_perp], the derivative taken
    // by central differences (step 1e-5) with one Richardson level.
    Vec2c chi2_perp(double r) const;

  private:
    TwoLevelProblem problem_;
    std::shared_ptr<const Schedule> schedule_;
    numerics::UniformPchip f1_cache_;  // imaginary part of f1
};

class HjSolution {
  public:
    static HjSolution assemble(std::shared_ptr<const HjBasis> basis, double t_f, int order);

    State2 evaluate(double r) const;

    int order() const { return order_; }
    double t_f() const { return t_f_; }
    const HjBasis& basis() const { return *basis_; }

  private:
    std::shared_ptr<const HjBasis> basis_;
    double t_f_ = 0.0;
    int order_ = 0;
};

HjSolution assemble(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule,
                    double t_f, int order);

}  // namespace qawkb::hj
