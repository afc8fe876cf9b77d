#include "qawkb/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include "qawkb/errors.hpp"

namespace qawkb::experiments {

std::string to_string(Backend b) {
    switch (b) {
        case Backend::exact: return "exact";
        case Backend::wkb0: return "wkb0";
        case Backend::wkb1: return "wkb1";
        case Backend::rwkb0: return "rwkb0";
        case Backend::hj0: return "hj0";
        case Backend::hj1: return "hj1";
        case Backend::adiabatic: return "adiabatic";
    }
    return "?";
}

std::optional<Backend> backend_from_string(const std::string& name) {
    for (Backend b : {Backend::exact, Backend::wkb0, Backend::wkb1, Backend::rwkb0,
                      Backend::hj0, Backend::hj1, Backend::adiabatic})
        if (to_string(b) == name) return b;
    return std::nullopt;
}

std::string to_string(ThresholdStatus s) {
    switch (s) {
        case ThresholdStatus::ok: return "ok";
        case ThresholdStatus::non_monotone_tail: return "non_monotone_tail";
        case ThresholdStatus::always_above: return "always_above";
    }
    return "?";
}

SolverContext::SolverContext(int n, int alpha, std::span<const Backend> backends,
                             numerics::OdeSpec ode_spec)
    : problem_(TwoLevelProblem::qubits(n)),
      schedule_(std::make_shared<const Schedule>(problem_, alpha)),
      ode_spec_(ode_spec) {
    int wkb_order = -1;
    bool need_hj = false;
    for (Backend b : backends) {
        if (b == Backend::wkb0 || b == Backend::rwkb0) wkb_order = std::max(wkb_order, 0);
        if (b == Backend::wkb1) wkb_order = std::max(wkb_order, 1);
        if (b == Backend::hj0 || b == Backend::hj1) need_hj = true;
    }
    if (wkb_order >= 0)
        wkb_basis_ = std::make_shared<const wkb::WkbBasis>(problem_, schedule_, wkb_order);
    if (need_hj) hj_basis_ = std::make_shared<const hj::HjBasis>(problem_, schedule_);
}

namespace {

wkb::WkbOptions options_for(Backend b) {
    wkb::WkbOptions opt;
    switch (b) {
        case Backend::wkb0: opt.order = 0; break;
        case Backend::wkb1: opt.order = 1; break;
        case Backend::rwkb0:
            opt.order = 0;
            opt.renormalized = true;
            break;
        default: break;
    }
    return opt;
}

template <typename T>
const T& require_basis(const std::shared_ptr<const T>& basis, Backend b) {
    if (!basis)
        throw std::logic_error("SolverContext: backend " + to_string(b) +
                               " was not requested at construction");
    return *basis;
}

}  // namespace

double SolverContext::final_pgs(Backend backend, double t_f) const {
    switch (backend) {
        case Backend::exact: {
            const double grid[2] = {0.0, 1.0};
            return metrics::pop_marked(
                evolve_exact(problem_, *schedule_, t_f, grid, ode_spec_).rows.back().state);
        }
        case Backend::wkb0:
        case Backend::wkb1:
        case Backend::rwkb0: {
            require_basis(wkb_basis_, backend);
            auto sol = wkb::WkbSolution::assemble(wkb_basis_, t_f, options_for(backend));
            return metrics::pop_marked(sol.evaluate(1.0));
        }
        case Backend::hj0:
        case Backend::hj1: {
            require_basis(hj_basis_, backend);
            const int order = backend == Backend::hj0 ? 0 : 1;
            auto sol = hj::HjSolution::assemble(hj_basis_, t_f, order);
            return metrics::pop_marked(sol.evaluate(1.0));
        }
        case Backend::adiabatic:
            return metrics::pop_marked(metrics::adiabatic_state(problem_, 1.0));
    }
    return 0.0;
}

Trajectory SolverContext::trajectory(Backend backend, double t_f,
                                     std::span<const double> grid) const {
    if (backend == Backend::exact) return evolve_exact(problem_, *schedule_, t_f, grid, ode_spec_);
    Trajectory traj{problem_, schedule_->alpha(), t_f, {}};
    traj.rows.reserve(grid.size());
    auto push = [&](double r, const State2& st) {
        traj.rows.push_back({r, schedule_->s(r), st});
    };
    switch (backend) {
        case Backend::wkb0:
        case Backend::wkb1:
        case Backend::rwkb0: {
            require_basis(wkb_basis_, backend);
            auto sol = wkb::WkbSolution::assemble(wkb_basis_, t_f, options_for(backend));
            for (double r : grid) push(r, sol.evaluate(r));
            break;
        }
        case Backend::hj0:
        case Backend::hj1: {
            require_basis(hj_basis_, backend);
            auto sol =
                hj::HjSolution::assemble(hj_basis_, t_f, backend == Backend::hj0 ? 0 : 1);
            for (double r : grid) push(r, sol.evaluate(r));
            break;
        }
        case Backend::adiabatic:
            for (double r : grid) push(r, metrics::adiabatic_state(problem_, r));
            break;
        case Backend::exact:
            break;
    }
    return traj;
}

ThresholdResult threshold_time(const SolverContext& ctx, Backend backend,
                               const ThresholdSpec& spec) {
    if (!(spec.p_th > 0.0 && spec.p_th < 1.0))
        throw std::domain_error("threshold_time: p_th must be in (0, 1)");

    ThresholdResult res;
    res.n = ctx.n();
    res.alpha = ctx.alpha();
    res.backend = backend;
    res.p_th = spec.p_th;
    res.horizon_factor = spec.horizon_factor;
    {
        std::ostringstream os;
        os << "geometric(t_lo=" << spec.t_lo << ",t_hi=" << spec.t_hi
           << ",ratio=" << spec.ratio << ")+horizon(" << spec.horizon_factor
           << ")+bisect(rel_width=" << spec.rel_width << ")";
        res.grid_spec = os.str();
    }

    std::map<long, double> memo;
    std::size_t evals = 0;
    auto t_at = [&](long k) { return spec.t_lo * std::pow(spec.ratio, static_cast<double>(k)); };
    auto p_at = [&](long k) {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        ++evals;
        const double p = ctx.final_pgs(backend, t_at(k));
        memo.emplace(k, p);
        return p;
    };

    const long k_max =
        static_cast<long>(std::ceil(std::log(spec.t_hi / spec.t_lo) / std::log(spec.ratio)));

    bool ever_above = false;
    bool ever_below = false;
    long candidate = -1;  // index k with p(k) <= p_th < p(k+1), horizon-clean so far
    long k = 0;
    while (k <= k_max) {
        const double p = p_at(k);
        if (p > spec.p_th) {
            ever_above = true;
        } else {
            ever_below = true;
            candidate = -1;  // any dip kills earlier candidates
        }
        if (candidate < 0 && k > 0 && p_at(k - 1) <= spec.p_th && p > spec.p_th)
            candidate = k - 1;
        if (candidate >= 0) {
            const double horizon_t = spec.horizon_factor * t_at(candidate + 1);
            if (t_at(k) >= horizon_t) break;  // horizon clean
        }
        ++k;
    }

    if (!ever_above) throw NotReachedError("threshold_time: p_th never exceeded in scan range");

    if (candidate < 0 && !ever_below) {
        res.status = ThresholdStatus::always_above;
        res.t_f_th = spec.t_lo;
        res.evaluations = evals;
        return res;
    }
    if (candidate < 0) {
        // exceeded and dipped but never settled above within the scan range
        res.status = ThresholdStatus::non_monotone_tail;
        res.t_f_th = t_at(k_max);
        res.evaluations = evals;
        return res;
    }
    res.status = (k <= k_max) ? ThresholdStatus::ok : ThresholdStatus::non_monotone_tail;

    double a = t_at(candidate), b = t_at(candidate + 1);
    while ((b - a) / b > spec.rel_width) {
        const double m = 0.5 * (a + b);
        ++evals;
        if (ctx.final_pgs(backend, m) > spec.p_th)
            b = m;
        else
            a = m;
    }
    res.t_f_th = b;
    res.evaluations = evals;
    return res;
}

ThresholdResult threshold_time(int n, int alpha, Backend backend, double p_th) {
    const Backend list[1] = {backend};
    SolverContext ctx(n, alpha, list);
    ThresholdSpec spec;
    spec.p_th = p_th;
    return threshold_time(ctx, backend, spec);
}

ScalingResult scaling_fit(int alpha, Backend backend, std::span<const int> n_range,
                          const ThresholdSpec& spec) {
    if (n_range.size() < 3)
        throw DegenerateInputError("scaling_fit: need at least 3 problem sizes");
    ScalingResult out;
    out.alpha = alpha;
    out.backend = backend;
    out.p_th = spec.p_th;
    out.ns.assign(n_range.begin(), n_range.end());
    out.t_f_ths.assign(n_range.size(), 0.0);
    out.statuses.assign(n_range.size(), ThresholdStatus::ok);

    std::vector<std::string> errors(n_range.size());
    parallel_for_index(n_range.size(), [&](std::size_t i) {
        try {
            const Backend list[1] = {backend};
            SolverContext ctx(out.ns[i], alpha, list);
            const ThresholdResult th = threshold_time(ctx, backend, spec);
            out.t_f_ths[i] = th.t_f_th;
            out.statuses[i] = th.status;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw NotReachedError("scaling_fit: n=" + std::to_string(out.ns[i]) + ": " +
                                  errors[i]);

    std::vector<double> xs(out.ns.begin(), out.ns.end());
    std::vector<double> ys(out.t_f_ths.size());
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = std::log2(out.t_f_ths[i]);
    out.fit = numerics::fit_line(xs, ys);
    return out;
}

std::vector<SweepRow> pgs_vs_tf(const SolverContext& ctx, Backend backend,
                                std::span<const double> t_f_list) {
    std::vector<SweepRow> rows(t_f_list.size());
    parallel_for_index(t_f_list.size(), [&](std::size_t i) {
        rows[i].t_f = t_f_list[i];
        try {
            rows[i].p_gs = ctx.final_pgs(backend, t_f_list[i]);
        } catch (const std::exception& e) {
            rows[i].ok = false;
            rows[i].error = e.what();
        }
    });
    return rows;
}

std::vector<SweepRow> pgs_vs_tf(int n, int alpha, Backend backend,
                                std::span<const double> t_f_list) {
    const Backend list[1] = {backend};
    SolverContext ctx(n, alpha, list);
    return pgs_vs_tf(ctx, backend, t_f_list);
}

CompareTable compare_trajectories(int n, int alpha, double t_f,
                                  std::span<const Backend> backends,
                                  std::span<const double> grid) {
    CompareTable table;
    table.n = n;
    table.alpha = alpha;
    table.t_f = t_f;
    table.backends.assign(backends.begin(), backends.end());
    if (std::find(table.backends.begin(), table.backends.end(), Backend::exact) ==
        table.backends.end())
        table.backends.insert(table.backends.begin(), Backend::exact);

    SolverContext ctx(n, alpha, table.backends);
    const Trajectory reference = ctx.trajectory(Backend::exact, t_f, grid);

    for (Backend b : table.backends) {
        const Trajectory traj =
            b == Backend::exact ? reference : ctx.trajectory(b, t_f, grid);
        for (std::size_t i = 0; i < traj.rows.size(); ++i) {
            CompareRow row;
            row.r = traj.rows[i].r;
            row.s = traj.rows[i].s;
            row.backend = b;
            row.state = traj.rows[i].state;
            row.pop_marked = metrics::pop_marked(row.state);
            row.norm = row.state.norm();
            row.dist_vs_exact =
                metrics::trace_distance(row.state, reference.rows[i].state);
            table.rows.push_back(row);
        }
    }
    return table;
}

void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("QAWKB_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) workers = static_cast<std::size_t>(v);
    }
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = lo * std::exp(step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

}  // namespace qawkb::experiments
