#include "qawkb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qawkb::numerics {

UniformPchip::UniformPchip(double x0, double h, std::vector<double> values)
    : x0_(x0), h_(h), values_(std::move(values)) {
    const std::size_t n = values_.size();
    slopes_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (values_[i + 1] - values_[i]) / h_;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slopes_[i] = 0.0;
        } else {
            // harmonic mean; uniform-spacing form of the Fritsch-Carlson slope
            slopes_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);
        }
    }
    auto end_slope = [](double d0, double d1) {
        double s = 1.5 * d0 - 0.5 * d1;
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return s;
    };
    slopes_[0] = (n == 2) ? d[0] : end_slope(d[0], d[1]);
    slopes_[n - 1] = (n == 2) ? d[n - 2] : end_slope(d[n - 2], d[n - 3]);
}

double UniformPchip::operator()(double x) const {
    const std::size_t n = values_.size();
    if (n == 0) return 0.0;
    if (n == 1) return values_[0];
    double t = (x - x0_) / h_;
    auto i = static_cast<std::ptrdiff_t>(std::floor(t));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 2);
    const double u = t - static_cast<double>(i);
    const double y0 = values_[i], y1 = values_[i + 1];
    const double m0 = slopes_[i] * h_, m1 = slopes_[i + 1] * h_;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1;
}

std::vector<double> cumulative_on_grid(const std::function<double(double)>& f,
                                       double a, double b, std::size_t node_count,
                                       const QuadratureSpec& spec) {
    std::vector<double> out(node_count, 0.0);
    const double h = (b - a) / static_cast<double>(node_count - 1);
    double acc = 0.0;
    for (std::size_t i = 1; i < node_count; ++i) {
        const double lo = a + h * static_cast<double>(i - 1);
        const double hi = (i + 1 == node_count) ? b : a + h * static_cast<double>(i);
        acc += integrate(f, lo, hi, spec).value;
        out[i] = acc;
    }
    return out;
}

namespace {

// Dormand-Prince 8(5,3) tableau (the widely used 12-stage pair with a
// fifth/third order error estimator).
namespace dp853 {
inline constexpr int stages = 12;
inline constexpr std::array<std::array<double, 12>, 12> a = {{
    {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.05260015195876773, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.0197250569845379, 0.0591751709536137, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
     0.0},
    {0.02958758547680685, 0.0, 0.08876275643042054, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
     0.0},
    {0.2413651341592667, 0.0, -0.8845494793282861, 0.924834003261792, 0.0, 0.0, 0.0, 0.0,
     0.0, 0.0, 0.0, 0.0},
    {0.037037037037037035, 0.0, 0.0, 0.17082860872947386, 0.12546768756682242, 0.0, 0.0,
     0.0, 0.0, 0.0, 0.0, 0.0},
    {0.037109375, 0.0, 0.0, 0.17025221101954405, 0.06021653898045596, -0.017578125, 0.0,
     0.0, 0.0, 0.0, 0.0, 0.0},
    {0.03709200011850479, 0.0, 0.0, 0.17038392571223998, 0.10726203044637328,
     -0.015319437748624402, 0.008273789163814023, 0.0, 0.0, 0.0, 0.0, 0.0},
    {0.6241109587160757, 0.0, 0.0, -3.3608926294469414, -0.868219346841726,
     27.59209969944671, 20.154067550477894, -43.48988418106996, 0.0, 0.0, 0.0, 0.0},
    {0.47766253643826434, 0.0, 0.0, -2.4881146199716677, -0.590290826836843,
     21.230051448181193, 15.279233632882423, -33.28821096898486, -0.020331201708508627,
     0.0, 0.0, 0.0},
    {-0.9371424300859873, 0.0, 0.0, 5.186372428844064, 1.0914373489967295,
     -8.149787010746927, -18.52006565999696, 22.739487099350505, 2.4936055526796523,
     -3.0467644718982196, 0.0, 0.0},
    {2.273310147516538, 0.0, 0.0, -10.53449546673725, -2.0008720582248625,
     -17.9589318631188, 27.94888452941996, -2.8589982771350235, -8.87285693353063,
     12.360567175794303, 0.6433927460157636, 0.0},
}};
inline constexpr std::array<double, 12> b = {
    0.054293734116568765, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003,
    -5.801203960010585, 0.3111643669578199, -0.1521609496625161, 0.20136540080403034,
    0.04471061572777259};
inline constexpr std::array<double, 12> c = {
    0.0, 0.05260015195876773, 0.0789002279381516, 0.1183503419072274, 0.2816496580927726,
    0.3333333333333333, 0.25, 0.3076923076923077, 0.6512820512820513, 0.6,
    0.8571428571428571, 1.0};
inline constexpr std::array<double, 12> e5 = {
    0.01312004499419488, 0.0, 0.0, 0.0, 0.0, -1.2251564463762044, -0.4957589496572502,
    1.6643771824549864, -0.35032884874997366, 0.3341791187130175, 0.08192320648511571,
    -0.022355307863886294};
inline constexpr std::array<double, 12> e3 = {
    -0.18980075407240762, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003,
    -5.801203960010585, -0.4226823213237919, -0.1521609496625161, 0.20136540080403034,
    0.02265179219836082};
}  // namespace dp853

}  // namespace

std::vector<Vec2c> solve_ode(const OdeRhs& rhs, const Vec2c& y0,
                             std::span<const double> output_grid,
                             const OdeSpec& spec) {
    std::vector<Vec2c> out;
    out.reserve(output_grid.size());
    if (output_grid.empty()) return out;

    double x = output_grid.front();
    Vec2c y = y0;
    std::size_t next = 0;
    while (next < output_grid.size() && output_grid[next] <= x) {
        out.push_back(y);
        ++next;
    }
    if (next >= output_grid.size()) return out;

    const double x_end = output_grid.back();
    Vec2c k[dp853::stages];
    k[0] = rhs(x, y);
    // controller proposal; attempted steps may be shorter to land on outputs
    double h_prop = spec.initial_step;
    if (h_prop <= 0.0) {
        const double f0 = std::sqrt(std::norm(k[0][0]) + std::norm(k[0][1]));
        h_prop = std::min(1e-2 / (1.0 + f0), x_end - x);
    }
    double err_prev = 1.0;
    std::size_t steps = 0;
    while (x < x_end) {
        if (++steps > spec.max_steps)
            throw StepFailureError("solve_ode: step budget exhausted");
        double h = h_prop;
        bool hit_output = false;
        if (x + h >= output_grid[next] - 1e-15 * std::max(1.0, std::abs(output_grid[next]))) {
            h = output_grid[next] - x;
            hit_output = true;
        }
        if (h < 1e-15 * std::max(1.0, std::abs(x))) {
            if (hit_output) {  // already at the output point up to rounding
                out.push_back(y);
                ++next;
                if (next >= output_grid.size()) break;
                continue;  // h_prop is untouched
            }
            throw StepFailureError("solve_ode: step size underflow");
        }

        for (int s = 1; s < dp853::stages; ++s) {
            Vec2c ys = y;
            for (int j = 0; j < s; ++j) {
                const double w = dp853::a[s][j];
                if (w == 0.0) continue;
                ys[0] += h * w * k[j][0];
                ys[1] += h * w * k[j][1];
            }
            k[s] = rhs(x + dp853::c[s] * h, ys);
        }
        Vec2c y_new = y;
        cplx err5[2] = {0.0, 0.0}, err3[2] = {0.0, 0.0};
        for (int s = 0; s < dp853::stages; ++s) {
            y_new[0] += h * dp853::b[s] * k[s][0];
            y_new[1] += h * dp853::b[s] * k[s][1];
            err5[0] += dp853::e5[s] * k[s][0];
            err5[1] += dp853::e5[s] * k[s][1];
            err3[0] += dp853::e3[s] * k[s][0];
            err3[1] += dp853::e3[s] * k[s][1];
        }
        double n5 = 0.0, n3 = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sc = spec.abs_tol +
                              spec.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            n5 += std::norm(err5[i]) / (sc * sc);
            n3 += std::norm(err3[i]) / (sc * sc);
        }
        double err;
        if (n5 == 0.0 && n3 == 0.0) {
            err = 0.0;
        } else {
            err = std::abs(h) * n5 / std::sqrt((n5 + 0.01 * n3) * 2.0);
        }

        if (err <= 1.0) {
            x += h;
            y = y_new;
            k[0] = rhs(x, y);
            if (hit_output) {
                out.push_back(y);
                ++next;
                if (next >= output_grid.size()) break;
            }
            const double safe = std::pow(std::max(err, 1e-12), -0.125) *
                                std::pow(err_prev, 0.03);
            const double grown = h * std::clamp(0.9 * safe, 1.0 / 3.0, 6.0);
            // an output-capped step must not shrink the controller proposal
            h_prop = hit_output ? std::max(grown, h_prop) : grown;
            err_prev = std::max(err, 1e-12);
        } else {
            h_prop = h * std::max(1.0 / 3.0, 0.9 * std::pow(err, -0.125));
        }
    }
    return out;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DegenerateInputError("fit_line: need >= 2 aligned points");
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DegenerateInputError("fit_line: all abscissae equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double resid = ys[i] - (fit.slope * xs[i] + fit.intercept);
            ss_res += resid * resid;
        }
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

}  // namespace qawkb::numerics
