#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qawkb/experiments.hpp"
#include "qawkb/io.hpp"

namespace {

using namespace qawkb;
using experiments::Backend;
using io::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_solver = 3;

struct Validation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Backend> parse_backends(const std::string& csv) {
    std::vector<Backend> out;
    std::string token;
    std::stringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        auto b = experiments::backend_from_string(token);
        if (!b) throw Validation("unknown backend: " + token);
        out.push_back(*b);
    }
    if (out.empty()) throw Validation("backend list is empty");
    return out;
}

// "lo..hi" inclusive integer range
std::pair<int, int> parse_int_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    const int lo = std::stoi(text.substr(0, pos));
    const int hi = std::stoi(text.substr(pos + 2));
    if (hi < lo) throw Validation("empty range: " + text);
    return {lo, hi};
}

std::pair<double, double> parse_real_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        const double v = std::stod(text);
        return {v, v};
    }
    const double lo = std::stod(text.substr(0, pos));
    const double hi = std::stod(text.substr(pos + 2));
    if (!(lo > 0.0) || hi < lo) throw Validation("bad range: " + text);
    return {lo, hi};
}

void write_outputs(const std::string& base, const std::string& csv, const ordered_json& json) {
    io::write_text_file(base + ".csv", csv);
    io::write_text_file(base + ".json", json.dump(2) + "\n");
}

int run_compare_like(int n, int alpha, double t_f, const std::string& backends_csv,
                     std::size_t grid_points, const std::string& out,
                     const std::string& command) {
    if (n < 1) throw Validation("--n must be >= 1");
    if (alpha < 0 || alpha > 3) throw Validation("--alpha must be in 0..3");
    if (t_f <= 0.0) throw Validation("--tf must be positive");
    if (grid_points < 3) throw Validation("--grid-points must be >= 3");
    const auto backends = parse_backends(backends_csv);

    ordered_json config{{"command", command}, {"n", n},     {"alpha", alpha},
                        {"t_f", t_f},         {"backends", backends_csv},
                        {"grid_points", grid_points}};
    try {
        const auto grid = uniform_grid(grid_points);
        const auto table = experiments::compare_trajectories(n, alpha, t_f, backends, grid);
        write_outputs(out, io::compare_csv(table), io::compare_json(table, config));
    } catch (const std::exception& e) {
        std::cerr << command << ": cell (n=" << n << ", alpha=" << alpha << ", t_f=" << t_f
                  << ") failed: " << e.what() << "\n";
        return exit_solver;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-adiabatic two-level dynamics: exact integration, asymptotic "
                 "approximants, and scaling experiments"};
    app.set_config("--config", "", "config file; options live in a [subcommand] section");
    app.footer("Environment: QAWKB_WORKERS limits the sweep worker count.");
    app.require_subcommand(1);

    int n = 1, alpha = 0;
    double t_f = 50.0;
    std::string backends = "exact";
    std::string backend = "exact";
    std::string out = "qawkb_out";
    std::size_t grid_points = 501;
    std::string n_range = "2..10";
    std::string tf_range = "1..200";
    std::size_t tf_points = 200;
    std::string tf_spacing = "geometric";
    experiments::ThresholdSpec th;

    auto* dynamics = app.add_subcommand(
        "dynamics", "per-r amplitudes, populations, norms and distances vs exact");
    dynamics->add_option("--n", n, "qubit count")->capture_default_str();
    dynamics->add_option("--alpha", alpha, "schedule gap power (0..3)")->capture_default_str();
    dynamics->add_option("--tf", t_f, "total evolution time")->capture_default_str();
    dynamics->add_option("--backends", backends, "comma list: exact,wkb0,wkb1,rwkb0,hj0,hj1,adiabatic")
        ->capture_default_str();
    dynamics->add_option("--grid-points", grid_points, "uniform r grid size")
        ->capture_default_str();
    dynamics->add_option("-o,--out", out, "output base path (.csv/.json)")
        ->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "final ground-state probability vs t_f");
    sweep->add_option("--n", n)->capture_default_str();
    sweep->add_option("--alpha", alpha)->capture_default_str();
    sweep->add_option("--backend", backend)->capture_default_str();
    sweep->add_option("--tf", tf_range, "t_f range lo..hi")->capture_default_str();
    sweep->add_option("--tf-points", tf_points)->capture_default_str();
    sweep->add_option("--tf-spacing", tf_spacing, "geometric|linear")->capture_default_str();
    sweep->add_option("-o,--out", out)->capture_default_str();

    auto* threshold = app.add_subcommand("threshold", "threshold time for one cell");
    threshold->add_option("--n", n)->capture_default_str();
    threshold->add_option("--alpha", alpha)->capture_default_str();
    threshold->add_option("--backend", backend)->capture_default_str();
    threshold->add_option("--p-th", th.p_th)->capture_default_str();
    threshold->add_option("--t-lo", th.t_lo)->capture_default_str();
    threshold->add_option("--t-hi", th.t_hi)->capture_default_str();
    threshold->add_option("--ratio", th.ratio)->capture_default_str();
    threshold->add_option("--horizon", th.horizon_factor)->capture_default_str();
    threshold->add_option("--rel-width", th.rel_width)->capture_default_str();
    threshold->add_option("-o,--out", out)->capture_default_str();

    auto* scaling = app.add_subcommand("scaling", "threshold-time scaling fit over n");
    scaling->add_option("--alpha", alpha)->capture_default_str();
    scaling->add_option("--backend", backend)->capture_default_str();
    scaling->add_option("--n", n_range, "n range lo..hi")->capture_default_str();
    scaling->add_option("--p-th", th.p_th)->capture_default_str();
    scaling->add_option("--t-lo", th.t_lo)->capture_default_str();
    scaling->add_option("--t-hi", th.t_hi)->capture_default_str();
    scaling->add_option("-o,--out", out)->capture_default_str();

    auto* compare = app.add_subcommand(
        "compare", "multi-backend trajectory comparison (exact always included)");
    compare->add_option("--n", n)->capture_default_str();
    compare->add_option("--alpha", alpha)->capture_default_str();
    compare->add_option("--tf", t_f)->capture_default_str();
    compare->add_option("--backends", backends)->capture_default_str();
    compare->add_option("--grid-points", grid_points)->capture_default_str();
    compare->add_option("-o,--out", out)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (dynamics->parsed())
            return run_compare_like(n, alpha, t_f, backends, grid_points, out, "dynamics");
        if (compare->parsed())
            return run_compare_like(n, alpha, t_f, backends, grid_points, out, "compare");

        if (sweep->parsed()) {
            if (alpha < 0 || alpha > 3) throw Validation("--alpha must be in 0..3");
            auto b = experiments::backend_from_string(backend);
            if (!b) throw Validation("unknown backend: " + backend);
            const auto [lo, hi] = parse_real_range(tf_range);
            if (tf_points < 2) throw Validation("--tf-points must be >= 2");
            std::vector<double> tfs;
            if (tf_spacing == "geometric") {
                tfs = experiments::geometric_grid(lo, hi, tf_points);
            } else if (tf_spacing == "linear") {
                tfs.resize(tf_points);
                for (std::size_t i = 0; i < tf_points; ++i)
                    tfs[i] = lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(tf_points - 1);
            } else {
                throw Validation("--tf-spacing must be geometric or linear");
            }
            ordered_json config{{"command", "sweep"},       {"n", n},
                                {"alpha", alpha},           {"backend", backend},
                                {"tf", tf_range},           {"tf_points", tf_points},
                                {"tf_spacing", tf_spacing}};
            try {
                const auto rows = experiments::pgs_vs_tf(n, alpha, *b, tfs);
                write_outputs(out, io::sweep_csv(rows), io::sweep_json(rows, config));
            } catch (const std::exception& e) {
                std::cerr << "sweep: cell (n=" << n << ", alpha=" << alpha
                          << ", backend=" << backend << ") failed: " << e.what() << "\n";
                return exit_solver;
            }
            return exit_ok;
        }

        if (threshold->parsed()) {
            if (alpha < 0 || alpha > 3) throw Validation("--alpha must be in 0..3");
            auto b = experiments::backend_from_string(backend);
            if (!b) throw Validation("unknown backend: " + backend);
            if (!(th.p_th > 0.0 && th.p_th < 1.0)) throw Validation("--p-th must be in (0,1)");
            ordered_json config{{"command", "threshold"},
                                {"n", n},
                                {"alpha", alpha},
                                {"backend", backend},
                                {"p_th", th.p_th},
                                {"t_lo", th.t_lo},
                                {"t_hi", th.t_hi},
                                {"ratio", th.ratio},
                                {"horizon", th.horizon_factor},
                                {"rel_width", th.rel_width}};
            try {
                const experiments::Backend list[1] = {*b};
                experiments::SolverContext ctx(n, alpha, list);
                const auto result = experiments::threshold_time(ctx, *b, th);
                write_outputs(out, io::threshold_csv(result),
                              io::threshold_json(result, config));
            } catch (const std::exception& e) {
                std::cerr << "threshold: cell (n=" << n << ", alpha=" << alpha
                          << ", backend=" << backend << ") failed: " << e.what() << "\n";
                return exit_solver;
            }
            return exit_ok;
        }

        if (scaling->parsed()) {
            if (alpha < 0 || alpha > 3) throw Validation("--alpha must be in 0..3");
            auto b = experiments::backend_from_string(backend);
            if (!b) throw Validation("unknown backend: " + backend);
            const auto [lo, hi] = parse_int_range(n_range);
            if (lo < 1) throw Validation("--n lower bound must be >= 1");
            std::vector<int> ns;
            for (int i = lo; i <= hi; ++i) ns.push_back(i);
            if (ns.size() < 3) throw Validation("scaling needs at least 3 values of n");
            ordered_json config{{"command", "scaling"}, {"alpha", alpha},
                                {"backend", backend},   {"n", n_range},
                                {"p_th", th.p_th},      {"t_lo", th.t_lo},
                                {"t_hi", th.t_hi}};
            try {
                const auto result = experiments::scaling_fit(alpha, *b, ns, th);
                write_outputs(out, io::scaling_csv(result), io::scaling_json(result, config));
                std::cout << "slope=" << io::format_double(result.fit.slope)
                          << " r_squared=" << io::format_double(result.fit.r_squared) << "\n";
            } catch (const std::exception& e) {
                std::cerr << "scaling: cell (alpha=" << alpha << ", backend=" << backend
                          << ") failed: " << e.what() << "\n";
                return exit_solver;
            }
            return exit_ok;
        }
    } catch (const Validation& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
