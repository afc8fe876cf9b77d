#include "qawkb/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace qawkb {

namespace {

double norm_constant_for(const TwoLevelProblem& p, int alpha) {
    const double K = p.kd();
    switch (alpha) {
        case 0:
            return 1.0;
        case 1: {
            const double num = 2.0 * std::sqrt(K / (K + 1.0));
            const double den = std::log((std::sqrt(K + 1.0) + std::sqrt(K)) /
                                        (std::sqrt(K + 1.0) - std::sqrt(K)));
            return num / den;
        }
        case 2:
            return std::sqrt(K) / ((K + 1.0) * std::atan(std::sqrt(K)));
        case 3:
            return 1.0 / (K + 1.0);
        default:
            throw std::domain_error("Schedule: alpha must be in {0,1,2,3}");
    }
}

}  // namespace

Schedule::Schedule(const TwoLevelProblem& problem, int alpha)
    : problem_(problem), alpha_(alpha), c_(norm_constant_for(problem, alpha)) {
    auto g_fn = [this](double r) { return g(r); };
    auto gj_fn = [this](double r) { return g(r) * gap(problem_, r); };
    const double h = 1.0 / static_cast<double>(cache_nodes - 1);
    s_cache_ = numerics::UniformPchip(
        0.0, h, numerics::cumulative_on_grid(g_fn, 0.0, 1.0, cache_nodes));
    j_cache_ = numerics::UniformPchip(
        0.0, h, numerics::cumulative_on_grid(gj_fn, 0.0, 1.0, cache_nodes));
}

double Schedule::g(double r) const {
    // guard band admits the finite-difference stencils used downstream
    if (r < -1e-3 || r > 1.0 + 1e-3) throw std::domain_error("Schedule::g: r outside [0, 1]");
    if (alpha_ == 0) return c_;
    return c_ * std::pow(gap(problem_, r), -static_cast<double>(alpha_));
}

double Schedule::log_deriv(double r) const {
    if (alpha_ == 0) return 0.0;
    return -static_cast<double>(alpha_) * gap_derivative(problem_, r) / gap(problem_, r);
}

double Schedule::s(double r) const { return s_cache_(r); }

double Schedule::gap_weighted_integral(double r) const { return j_cache_(r); }

}  // namespace qawkb
