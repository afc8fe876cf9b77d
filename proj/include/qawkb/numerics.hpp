#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qawkb/errors.hpp"
#include "qawkb/state.hpp"

namespace qawkb::numerics {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

template <typename T>
struct IntegralResult {
    T value{};
    double error_estimate = 0.0;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1]. Nodes are the positive half;
// node 7 is the midpoint.
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> k15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& kronrod, double& error) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T fc = f(mid);
    T g7 = g7_weights[3] * fc;
    T k15 = k15_weights[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        T fsum = f(mid + dx) + f(mid - dx);
        k15 += k15_weights[i] * fsum;
        if (i % 2 == 1) g7 += g7_weights[i / 2] * fsum;
    }
    g7 *= half;
    k15 *= half;
    // standard Kronrod error heuristic: (200|G-K|)^{3/2}
    double diff = std::abs(g7 - k15);
    error = 200.0 * diff;
    error = error * std::sqrt(error);
    if (!(error < std::abs(diff))) error = std::min(error, diff * 200.0);
    kronrod = k15;
}

}  // namespace detail

// Adaptive bisection with the nested G7/K15 rule. Works for double and
// complex integrands. Throws NonConvergenceError when the subdivision
// budget is exhausted before the tolerance is met.
template <typename F>
auto integrate(const F& f, double a, double b, const QuadratureSpec& spec = {})
    -> IntegralResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    if (a == b) return {T{}, 0.0};
    const double length = std::abs(b - a);

    struct Segment {
        double a, b;
        T value;
        double error;
    };
    std::vector<Segment> stack;
    T whole;
    double werr;
    detail::gk15(f, a, b, whole, werr);
    stack.push_back({a, b, whole, werr});

    T sum{};
    double err_sum = 0.0;
    int splits = 0;
    const double scale = std::max(std::abs(whole), 1.0e-300);
    while (!stack.empty()) {
        Segment seg = stack.back();
        stack.pop_back();
        const double frac = std::abs(seg.b - seg.a) / length;
        const double budget =
            std::max(spec.abs_tol, spec.rel_tol * scale) * frac;
        if (seg.error <= budget || std::abs(seg.b - seg.a) < 1e-15 * length) {
            sum += seg.value;
            err_sum += seg.error;
            continue;
        }
        if (++splits > spec.max_subdivisions)
            throw NonConvergenceError("integrate: subdivision budget exhausted");
        const double mid = 0.5 * (seg.a + seg.b);
        Segment left{seg.a, mid, T{}, 0.0}, right{mid, seg.b, T{}, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        stack.push_back(left);
        stack.push_back(right);
    }
    return {sum, err_sum};
}

// Monotone (Fritsch-Carlson) cubic interpolant on uniformly spaced nodes.
// Used for cached cumulative integrals, which are monotone by construction.
class UniformPchip {
  public:
    UniformPchip() = default;
    UniformPchip(double x0, double h, std::vector<double> values);

    double operator()(double x) const;
    double x_front() const { return x0_; }
    double x_back() const { return x0_ + h_ * static_cast<double>(values_.size() - 1); }
    std::size_t size() const { return values_.size(); }
    double node_value(std::size_t i) const { return values_[i]; }

  private:
    double x0_ = 0.0;
    double h_ = 1.0;
    std::vector<double> values_;
    std::vector<double> slopes_;
};

// Prefix sums of per-segment adaptive integrals of f over uniform nodes on
// [a, b]; returns node values of the cumulative integral starting at 0.
std::vector<double> cumulative_on_grid(const std::function<double(double)>& f,
                                       double a, double b, std::size_t node_count,
                                       const QuadratureSpec& spec = {1e-13, 1e-12, 2000});

struct OdeSpec {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    double initial_step = 0.0;  // 0 = choose automatically
    std::size_t max_steps = 200'000'000;
};

using Vec2c = std::array<cplx, 2>;
using OdeRhs = std::function<Vec2c(double, const Vec2c&)>;

// Dormand-Prince 5(4) with PI step-size control. Steps land exactly on the
// requested output points, so no interpolation error enters the output.
// Throws StepFailureError if the step size underflows.
std::vector<Vec2c> solve_ode(const OdeRhs& rhs, const Vec2c& y0,
                             std::span<const double> output_grid,
                             const OdeSpec& spec = {});

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares y = slope*x + intercept. Throws
// DegenerateInputError when fewer than two distinct abscissae are given.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace qawkb::numerics
