#pragma once

#include <cstddef>

#include "qawkb/numerics.hpp"
#include "qawkb/twolevel.hpp"

namespace qawkb {

// One of the four interpolation speed profiles g_alpha(r) = s'(r)
// proportional to gap(r)^(-alpha), normalized so that s(1) = 1.
//
// Construction precomputes cumulative caches for s(r) and for the
// gap-weighted integral j(r) = int_0^r g*gap on 1025 uniform nodes
// (monotone cubic between nodes). All reads afterwards are const and
// thread-safe.
class Schedule {
  public:
    static constexpr std::size_t cache_nodes = 1025;

    Schedule(const TwoLevelProblem& problem, int alpha);

    int alpha() const { return alpha_; }
    const TwoLevelProblem& problem() const { return problem_; }
    double norm_constant() const { return c_; }

    // g_alpha(r), closed form. Throws std::domain_error away from [0, 1]
    // (a small guard band is allowed for finite-difference stencils).
    double g(double r) const;

    // g'/g = -alpha * gap'/gap
    double log_deriv(double r) const;

    // s(r) = int_0^r g, cached; s(0) = 0, s(1) = 1 within quadrature tolerance
    double s(double r) const;

    // j(r) = int_0^r g*gap, cached on the same grid as s
    double gap_weighted_integral(double r) const;

  private:
    TwoLevelProblem problem_;
    int alpha_;
    double c_;
    numerics::UniformPchip s_cache_;
    numerics::UniformPchip j_cache_;
};

}  // namespace qawkb
