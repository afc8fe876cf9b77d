#include "qawkb/wkb.hpp"

#include <cmath>
#include <stdexcept>

namespace qawkb::wkb {

namespace {

constexpr std::size_t anchor_count = 1024;  // segments of the w caches

// k(r) = K(2r-1) + (K+1)*gap + 1, rewritten to avoid cancellation where the
// two large terms nearly cancel (r < 1/2 at large K):
// k = 4K(1-r)^2 / ((K+1)*gap - K(2r-1) - 1) there.
double k_factor(const TwoLevelProblem& p, double r) {
    const double K = p.kd();
    const double a = K * (2.0 * r - 1.0) + 1.0;
    const double b = (K + 1.0) * gap(p, r);
    if (a >= 0.0) return a + b;
    return 4.0 * K * (1.0 - r) * (1.0 - r) / (b - a);
}

double zeroth_shape(const TwoLevelProblem& p, int tsign, double r) {
    const double K = p.kd();
    const double d = gap(p, r);
    const double k = k_factor(p, r);
    if (tsign > 0) return (1.0 - r) / std::sqrt(std::sqrt(K + 1.0) * d * k);
    return std::sqrt(k / (std::sqrt(K + 1.0) * d));
}

// L = -(1/2)[gap'/gap + (gap +- 1)/((1-r)gap)]; the minus form is rewritten
// with gap - 1 = -4Kr(1-r)/((K+1)(gap+1)) so it stays finite at r=1.
double log_deriv_shape(const TwoLevelProblem& p, int tsign, double r) {
    const double K = p.kd();
    const double d = gap(p, r);
    const double dp = gap_derivative(p, r);
    double tail;
    if (tsign > 0) {
        tail = (d + 1.0) / ((1.0 - r) * d);
    } else {
        tail = -4.0 * K * r / ((K + 1.0) * d * (d + 1.0));
    }
    return -0.5 * (dp / d + tail);
}

double log_deriv_prime_shape(const TwoLevelProblem& p, int tsign, double r) {
    const double K = p.kd();
    const double d = gap(p, r);
    const double dp = gap_derivative(p, r);
    const double dpp = gap_second_derivative(p, r);
    const double base = dpp / d - (dp / d) * (dp / d);
    double tailp;
    if (tsign > 0) {
        const double t = (d + 1.0) / ((1.0 - r) * d);
        tailp = t * (dp / (d + 1.0) + 1.0 / (1.0 - r) - dp / d);
    } else {
        const double c = -4.0 * K / (K + 1.0);
        tailp = c * (1.0 / (d * (d + 1.0)) -
                     r * dp * (2.0 * d + 1.0) / (d * d * (d + 1.0) * (d + 1.0)));
    }
    return -0.5 * (base + tailp);
}

}  // namespace

WkbConstants WkbConstants::n1_closed_form() {
    WkbConstants c;
    c.d0_plus = std::pow(2.0, 0.75);
    c.d0_minus = std::pow(2.0, -0.25);
    const cplx i{0.0, 1.0};
    // w(0) offsets of the single-qubit closed forms:
    // psi: +-i*(5 +- 6)/12, phi: -+i*(5 -+ 6)/12
    c.w0[0][static_cast<int>(Amplitude::psi)] = i * (11.0 / 12.0);
    c.w0[1][static_cast<int>(Amplitude::psi)] = i * (1.0 / 12.0);
    c.w0[0][static_cast<int>(Amplitude::phi)] = -i * (1.0 / 12.0);
    c.w0[1][static_cast<int>(Amplitude::phi)] = -i * (11.0 / 12.0);
    return c;
}

cplx transport_zeroth(const TwoLevelProblem& p, Branch b, Amplitude a, double r) {
    return {zeroth_shape(p, transport_sign(b, a), r), 0.0};
}

cplx transport_log_deriv(const TwoLevelProblem& p, Branch b, Amplitude a, double r) {
    const int tsign = transport_sign(b, a);
    if (tsign > 0 && r >= 1.0)
        throw SingularityError("transport_log_deriv: vanishing solution at r=1");
    return {log_deriv_shape(p, tsign, r), 0.0};
}

double transport_log_deriv_prime_real(const TwoLevelProblem& p, int tsign, double r) {
    return log_deriv_prime_shape(p, tsign, r);
}

double first_order_ratio_deriv_imag(const TwoLevelProblem& p, const Schedule& sched,
                                    Branch b, Amplitude a, double r) {
    const int tsign = transport_sign(b, a);
    const double L = log_deriv_shape(p, tsign, r);
    const double Lp = log_deriv_prime_shape(p, tsign, r);
    const double a11 = 1.0 - sched.log_deriv(r) * (1.0 - r);
    const double num = (Lp + L * L) * (1.0 - r) + a11 * L;
    // 2 theta' + i g = -(branch) i g gap, so w' = -(branch) i num/(g gap (1-r))
    return -sign_of(b) * num / (sched.g(r) * gap(p, r) * (1.0 - r));
}

WkbBasis::WkbBasis(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule,
                   int max_order)
    : problem_(problem), schedule_(std::move(schedule)), max_order_(max_order) {
    if (max_order_ < 0 || max_order_ > 1)
        throw std::domain_error("WkbBasis: order must be 0 or 1");
    if (max_order_ == 0) return;

    const numerics::QuadratureSpec seg_spec{1e-14, 1e-13, 4000};
    for (Branch b : {Branch::plus, Branch::minus}) {
        for (Amplitude a : {Amplitude::psi, Amplitude::phi}) {
            auto f = [&](double r) {
                return first_order_ratio_deriv_imag(problem_, *schedule_, b, a, r);
            };
            auto& nodes = w_nodes_[b == Branch::plus ? 0 : 1][static_cast<int>(a)];
            nodes.assign(anchor_count, 0.0);
            double acc = 0.0;
            for (std::size_t i = 1; i < anchor_count; ++i) {
                const double lo = static_cast<double>(i - 1) / static_cast<double>(anchor_count);
                const double hi = static_cast<double>(i) / static_cast<double>(anchor_count);
                acc += numerics::integrate(f, lo, hi, seg_spec).value;
                nodes[i] = acc;
            }
        }
    }
    // r=1 limits of w*y0. On the vanishing combinations w ~ 1/(1-r) while
    // y0 ~ (1-r); the product limit is extrapolated assuming a u + u*log(u)
    // remainder, which two ratio-10 Richardson levels remove.
    for (Branch b : {Branch::plus, Branch::minus}) {
        for (Amplitude a : {Amplitude::psi, Amplitude::phi}) {
            const int tsign = transport_sign(b, a);
            cplx limit;
            if (tsign > 0) {
                auto product = [&](double u) {
                    return first_order_ratio(b, a, 1.0 - u) *
                           transport_zeroth(problem_, b, a, 1.0 - u);
                };
                const cplx p0 = product(1e-4), p1 = product(1e-5), p2 = product(1e-6);
                const cplx r1 = (10.0 * p1 - p0) / 9.0;
                const cplx r2 = (10.0 * p2 - p1) / 9.0;
                limit = (10.0 * r2 - r1) / 9.0;
            } else {
                limit = first_order_ratio(b, a, 1.0) *
                        transport_zeroth(problem_, b, a, 1.0);
            }
            y1_at_one_[b == Branch::plus ? 0 : 1][static_cast<int>(a)] = limit;
        }
    }
}

cplx WkbBasis::theta(Branch b, double r) const {
    const double s = schedule_->s(r);
    const double j = schedule_->gap_weighted_integral(r);
    return cplx{0.0, -0.5 * (s + sign_of(b) * j)};
}

cplx WkbBasis::theta_deriv(Branch b, double r) const {
    const double g = schedule_->g(r);
    return cplx{0.0, -0.5 * g * (1.0 + sign_of(b) * gap(problem_, r))};
}

double WkbBasis::w_imag(Branch b, Amplitude a, double r) const {
    const auto& nodes = w_nodes_[b == Branch::plus ? 0 : 1][static_cast<int>(a)];
    if (nodes.empty())
        throw std::logic_error("WkbBasis: first-order caches not built (order 0 basis)");
    const double rr = std::min(r, 1.0 - clamp_delta);
    if (rr <= 0.0) return 0.0;
    auto idx = static_cast<std::size_t>(rr * static_cast<double>(anchor_count));
    idx = std::min(idx, anchor_count - 1);
    const double anchor = static_cast<double>(idx) / static_cast<double>(anchor_count);
    auto f = [&](double x) {
        return first_order_ratio_deriv_imag(problem_, *schedule_, b, a, x);
    };
    const numerics::QuadratureSpec spec{1e-14, 1e-13, 4000};
    return nodes[idx] + numerics::integrate(f, anchor, rr, spec).value;
}

cplx WkbBasis::first_order_ratio(Branch b, Amplitude a, double r) const {
    return cplx{0.0, w_imag(b, a, r)};
}

cplx WkbBasis::first_order(Branch b, Amplitude a, double r) const {
    if (r >= 1.0) return y1_limit_at_one(b, a);
    return first_order_ratio(b, a, r) * transport_zeroth(problem_, b, a, r);
}

cplx WkbBasis::y1_limit_at_one(Branch b, Amplitude a) const {
    if (max_order_ < 1)
        throw std::logic_error("WkbBasis: first-order caches not built (order 0 basis)");
    return y1_at_one_[b == Branch::plus ? 0 : 1][static_cast<int>(a)];
}

WkbSolution WkbSolution::assemble(std::shared_ptr<const WkbBasis> basis, double t_f,
                                  const WkbOptions& options) {
    if (t_f <= 0.0) throw std::domain_error("WkbSolution: t_f must be positive");
    if (options.order > basis->max_order())
        throw std::logic_error("WkbSolution: basis built for lower order");
    WkbSolution sol;
    sol.basis_ = std::move(basis);
    sol.t_f_ = t_f;
    sol.options_ = options;

    const auto& prob = sol.basis_->problem();
    const double eps = 1.0 / t_f;
    const State2 boundary = initial_state(prob);
    const cplx boundary_value[2] = {boundary.psi, boundary.phi};

    for (Amplitude a : {Amplitude::psi, Amplitude::phi}) {
        cplx val[2], der[2];
        for (Branch b : {Branch::plus, Branch::minus}) {
            const int col = b == Branch::plus ? 0 : 1;
            const int tsign = transport_sign(b, a);
            const double d0 = options.constants.d0(tsign);
            const cplx y00 = d0 * transport_zeroth(prob, b, a, 0.0);
            const cplx l0 = transport_log_deriv(prob, b, a, 0.0);
            const cplx thp0 = sol.basis_->theta_deriv(b, 0.0);
            if (options.order == 0) {
                val[col] = y00;
                der[col] = thp0 / eps * y00 + l0 * y00;
            } else {
                const cplx w0 = options.constants.w_offset(b, a);
                const cplx wp0{0.0, first_order_ratio_deriv_imag(
                                        prob, sol.basis_->schedule(), b, a, 0.0)};
                val[col] = y00 * (1.0 + eps * w0);
                der[col] = thp0 / eps * val[col] + l0 * y00 * (1.0 + eps * w0) +
                           eps * wp0 * y00;
            }
        }
        const cplx det = val[0] * der[1] - val[1] * der[0];
        const double scale = std::abs(val[0] * der[1]) + std::abs(val[1] * der[0]);
        if (std::abs(det) < 1e-14 * scale)
            throw SingularSystemError("WkbSolution: degenerate branch basis at r=0");
        const cplx rhs0 = boundary_value[static_cast<int>(a)];
        // [val+ val-; der+ der-] [A; B] = [rhs0; 0]
        sol.coef_[0][static_cast<int>(a)] = rhs0 * der[1] / det;
        sol.coef_[1][static_cast<int>(a)] = -rhs0 * der[0] / det;
    }
    return sol;
}

State2 WkbSolution::evaluate(double r) const {
    const auto& prob = basis_->problem();
    const double eps = 1.0 / t_f_;
    cplx out[2] = {0.0, 0.0};
    for (Amplitude a : {Amplitude::psi, Amplitude::phi}) {
        for (Branch b : {Branch::plus, Branch::minus}) {
            const int tsign = transport_sign(b, a);
            const double d0 = options_.constants.d0(tsign);
            const cplx theta = basis_->theta(b, r);
            const cplx phase = std::polar(1.0, theta.imag() / eps);
            cplx term;
            if (options_.order == 0) {
                term = d0 * transport_zeroth(prob, b, a, r);
            } else if (r >= 1.0 && tsign > 0) {
                // y0 vanishes exactly; only the extrapolated y1 limit survives
                // (the constant w-offset multiplies y0 and drops out too)
                term = d0 * eps * basis_->y1_limit_at_one(b, a);
            } else {
                const cplx w = basis_->first_order_ratio(b, a, r) +
                               options_.constants.w_offset(b, a);
                term = d0 * transport_zeroth(prob, b, a, r) * (1.0 + eps * w);
            }
            out[static_cast<int>(a)] += coefficient(b, a) * phase * term;
        }
    }
    State2 st{out[0], out[1]};
    if (options_.renormalized) st = st.normalized();
    return st;
}

WkbSolution assemble(const TwoLevelProblem& problem, std::shared_ptr<const Schedule> schedule,
                     double t_f, const WkbOptions& options) {
    auto basis = std::make_shared<const WkbBasis>(problem, std::move(schedule), options.order);
    return WkbSolution::assemble(std::move(basis), t_f, options);
}

}  // namespace qawkb::wkb
