#include "qawkb/hj.hpp"

#include <cmath>
#include <stdexcept>

namespace qawkb::hj {

Vec2c chi1_perp(const TwoLevelProblem& p, const Schedule& sched, double r) {
    const double rot = eig_angle_derivative(p, r);
    const double coef = rot / (sched.g(r) * gap(p, r));
    const Spectrum spec = eigensystem(p, r);
    const cplx i{0.0, 1.0};
    return {i * coef * spec.v_exc[0], i * coef * spec.v_exc[1]};
}

HjBasis::HjBasis(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule)
    : problem_(problem), schedule_(std::move(schedule)) {
    auto f = [this](double r) {
        const double rot = eig_angle_derivative(problem_, r);
        return rot * rot / (schedule_->g(r) * gap(problem_, r));
    };
    const std::size_t nodes = Schedule::cache_nodes;
    const double h = 1.0 / static_cast<double>(nodes - 1);
    f1_cache_ = numerics::UniformPchip(
        0.0, h, numerics::cumulative_on_grid(f, 0.0, 1.0, nodes));
}

cplx HjBasis::f1(double r) const { return {0.0, f1_cache_(r)}; }

double HjBasis::phase(double r) const {
    return 0.5 * (schedule_->s(r) - schedule_->gap_weighted_integral(r));
}

Vec2c HjBasis::chi1_perp(double r) const { return hj::chi1_perp(problem_, *schedule_, r); }

Vec2c HjBasis::chi2_perp(double r) const {
    const double h = 1e-5;
    auto diff = [&](double step) -> Vec2c {
        const Vec2c up = chi1_perp(r + step);
        const Vec2c dn = chi1_perp(r - step);
        return {(up[0] - dn[0]) / (2.0 * step), (up[1] - dn[1]) / (2.0 * step)};
    };
    const Vec2c d1 = diff(h);
    const Vec2c d2 = diff(2.0 * h);
    const Vec2c dchi = {(4.0 * d1[0] - d2[0]) / 3.0, (4.0 * d1[1] - d2[1]) / 3.0};

    const Spectrum spec = eigensystem(problem_, r);
    const cplx exc_component =
        spec.v_exc[0] * dchi[0] + spec.v_exc[1] * dchi[1];  // v_exc is real
    const double rot = eig_angle_derivative(problem_, r);
    const cplx f = f1(r);
    const cplx i{0.0, 1.0};
    const double coef = 1.0 / (schedule_->g(r) * gap(problem_, r));
    // gs' = rot * v_exc
    return {i * coef * (f * rot * spec.v_exc[0] + exc_component * spec.v_exc[0]),
            i * coef * (f * rot * spec.v_exc[1] + exc_component * spec.v_exc[1])};
}

HjSolution HjSolution::assemble(std::shared_ptr<const HjBasis> basis, double t_f, int order) {
    if (t_f <= 0.0) throw std::domain_error("HjSolution: t_f must be positive");
    if (order < 0 || order > 1) throw std::domain_error("HjSolution: order must be 0 or 1");
    HjSolution sol;
    sol.basis_ = std::move(basis);
    sol.t_f_ = t_f;
    sol.order_ = order;
    return sol;
}

State2 HjSolution::evaluate(double r) const {
    const double eps = 1.0 / t_f_;
    const cplx phase = std::polar(1.0, -basis_->phase(r) * t_f_);
    const Spectrum spec = eigensystem(basis_->problem(), r);
    const Vec2c c1 = basis_->chi1_perp(r);
    cplx comp[2];
    if (order_ == 0) {
        for (int i = 0; i < 2; ++i) comp[i] = spec.v_gs[i] + eps * c1[i];
    } else {
        const cplx f = basis_->f1(r);
        const Vec2c c2 = basis_->chi2_perp(r);
        for (int i = 0; i < 2; ++i)
            comp[i] = spec.v_gs[i] + eps * (f * spec.v_gs[i] + c1[i]) + eps * eps * c2[i];
    }
    return {phase * comp[0], phase * comp[1]};
}

HjSolution assemble(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule,
                    double t_f, int order) {
    auto basis = std::make_shared<const HjBasis>(problem, std::move(schedule));
    return HjSolution::assemble(std::move(basis), t_f, order);
}

}  // namespace qawkb::hj
