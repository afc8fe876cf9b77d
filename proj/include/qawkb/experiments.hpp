#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qawkb/exact.hpp"
#include "qawkb/hj.hpp"
#include "qawkb/metrics.hpp"
#include "qawkb/numerics.hpp"
#include "qawkb/schedule.hpp"
#include "qawkb/wkb.hpp"

namespace qawkb::experiments {

enum class Backend { exact, wkb0, wkb1, rwkb0, hj0, hj1, adiabatic };

std::string to_string(Backend b);
std::optional<Backend> backend_from_string(const std::string& name);

// Caches the schedule and expansion bases for one (n, alpha) cell so that
// sweeping t_f only costs the per-time work. Immutable after construction;
// safe to share across threads.
class SolverContext {
  public:
    SolverContext(int n, int alpha, std::span<const Backend> backends,
                  numerics::OdeSpec ode_spec = {});

    const TwoLevelProblem& problem() const { return problem_; }
    const Schedule& schedule() const { return *schedule_; }
    std::shared_ptr<const Schedule> schedule_ptr() const { return schedule_; }
    int n() const { return problem_.n; }
    int alpha() const { return schedule_->alpha(); }

    double final_pgs(Backend backend, double t_f) const;
    Trajectory trajectory(Backend backend, double t_f, std::span<const double> grid) const;

  private:
    TwoLevelProblem problem_;
    std::shared_ptr<const Schedule> schedule_;
    std::shared_ptr<const wkb::WkbBasis> wkb_basis_;
    std::shared_ptr<const hj::HjBasis> hj_basis_;
    numerics::OdeSpec ode_spec_;
};

enum class ThresholdStatus { ok, non_monotone_tail, always_above };

std::string to_string(ThresholdStatus s);

struct ThresholdSpec {
    double p_th = 0.95;
    double t_lo = 0.5;
    double t_hi = 1e7;
    double ratio = 1.05;
    double horizon_factor = 3.0;
    double rel_width = 1e-3;
};

struct ThresholdResult {
    int n = 0;
    int alpha = 0;
    Backend backend = Backend::exact;
    double p_th = 0.95;
    double t_f_th = 0.0;
    double horizon_factor = 3.0;
    std::string grid_spec;
    ThresholdStatus status = ThresholdStatus::ok;
    std::size_t evaluations = 0;
};

// Smallest t_f beyond which the final ground-state probability stays above
// p_th: locates the last down-crossing on a geometric t_f grid, verifies a
// finite horizon past it, then bisects the bracketing interval. Throws
// NotReachedError when p_th is never exceeded within [t_lo, t_hi].
ThresholdResult threshold_time(const SolverContext& ctx, Backend backend,
                               const ThresholdSpec& spec = {});
ThresholdResult threshold_time(int n, int alpha, Backend backend, double p_th);

struct ScalingResult {
    int alpha = 0;
    Backend backend = Backend::exact;
    double p_th = 0.95;
    std::vector<int> ns;
    std::vector<double> t_f_ths;
    std::vector<ThresholdStatus> statuses;
    numerics::LineFit fit;  // log2(t_f_th) vs n
};

ScalingResult scaling_fit(int alpha, Backend backend, std::span<const int> n_range,
                          const ThresholdSpec& spec = {});

struct SweepRow {
    double t_f = 0.0;
    double p_gs = 0.0;
    bool ok = true;
    std::string error;
};

std::vector<SweepRow> pgs_vs_tf(const SolverContext& ctx, Backend backend,
                                std::span<const double> t_f_list);
std::vector<SweepRow> pgs_vs_tf(int n, int alpha, Backend backend,
                                std::span<const double> t_f_list);

struct CompareRow {
    double r = 0.0;
    double s = 0.0;
    Backend backend = Backend::exact;
    State2 state;
    double pop_marked = 0.0;
    double norm = 0.0;
    double dist_vs_exact = 0.0;
};

struct CompareTable {
    int n = 0;
    int alpha = 0;
    double t_f = 0.0;
    std::vector<Backend> backends;
    std::vector<CompareRow> rows;  // grouped by backend, grid order within
};

// Per-r populations, norms and trace distances against the exact reference,
// all sampled on one shared grid. The exact backend is always computed and
// is prepended when missing from `backends`.
CompareTable compare_trajectories(int n, int alpha, double t_f,
                                  std::span<const Backend> backends,
                                  std::span<const double> grid);

// Deterministic worker-pool map: applies fn(i) for i in [0, count) using
// QAWKB_WORKERS threads (default: hardware concurrency). Results must be
// written into pre-sized slots by the caller's closure.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn);

std::vector<double> geometric_grid(double lo, double hi, std::size_t points);

}  // namespace qawkb::experiments
