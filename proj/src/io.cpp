#include "qawkb/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qawkb::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        line += fields[i];
    }
    line.push_back('\n');
    return line;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

ordered_json metadata(const ordered_json& config) {
    ordered_json meta;
    meta["version"] = version;
    meta["tolerances"] = {{"ode_abs", numerics::OdeSpec{}.abs_tol},
                          {"ode_rel", numerics::OdeSpec{}.rel_tol},
                          {"quadrature_abs", numerics::QuadratureSpec{}.abs_tol},
                          {"quadrature_rel", numerics::QuadratureSpec{}.rel_tol}};
    meta["config"] = config;
    return meta;
}

std::string compare_csv(const experiments::CompareTable& table) {
    std::string out =
        "r,s,backend,psi_re,psi_im,phi_re,phi_im,pop_marked,norm,trace_dist_vs_exact\n";
    for (const auto& row : table.rows) {
        out += csv_line({format_double(row.r), format_double(row.s),
                         experiments::to_string(row.backend),
                         format_double(row.state.psi.real()),
                         format_double(row.state.psi.imag()),
                         format_double(row.state.phi.real()),
                         format_double(row.state.phi.imag()),
                         format_double(row.pop_marked), format_double(row.norm),
                         format_double(row.dist_vs_exact)});
    }
    return out;
}

ordered_json compare_json(const experiments::CompareTable& table, const ordered_json& config) {
    ordered_json j = metadata(config);
    j["n"] = table.n;
    j["alpha"] = table.alpha;
    j["t_f"] = table.t_f;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"r", row.r},
                        {"s", row.s},
                        {"backend", experiments::to_string(row.backend)},
                        {"psi_re", row.state.psi.real()},
                        {"psi_im", row.state.psi.imag()},
                        {"phi_re", row.state.phi.real()},
                        {"phi_im", row.state.phi.imag()},
                        {"pop_marked", row.pop_marked},
                        {"norm", row.norm},
                        {"trace_dist_vs_exact", row.dist_vs_exact}});
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string sweep_csv(const std::vector<experiments::SweepRow>& rows) {
    std::string out = "t_f,pop_marked,status\n";
    for (const auto& row : rows)
        out += csv_line({format_double(row.t_f), format_double(row.p_gs),
                         row.ok ? "ok" : "failed"});
    return out;
}

ordered_json sweep_json(const std::vector<experiments::SweepRow>& rows,
                        const ordered_json& config) {
    ordered_json j = metadata(config);
    ordered_json out_rows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r = {{"t_f", row.t_f},
                          {"pop_marked", row.p_gs},
                          {"status", row.ok ? "ok" : "failed"}};
        if (!row.ok) r["error"] = row.error;
        out_rows.push_back(std::move(r));
    }
    j["rows"] = std::move(out_rows);
    return j;
}

std::string threshold_csv(const experiments::ThresholdResult& result) {
    std::string out = "n,alpha,backend,p_th,t_f_th,horizon_factor,status,evaluations\n";
    out += csv_line({std::to_string(result.n), std::to_string(result.alpha),
                     experiments::to_string(result.backend), format_double(result.p_th),
                     format_double(result.t_f_th), format_double(result.horizon_factor),
                     to_string(result.status), std::to_string(result.evaluations)});
    return out;
}

ordered_json threshold_json(const experiments::ThresholdResult& result,
                            const ordered_json& config) {
    ordered_json j = metadata(config);
    j["n"] = result.n;
    j["alpha"] = result.alpha;
    j["backend"] = experiments::to_string(result.backend);
    j["p_th"] = result.p_th;
    j["t_f_th"] = result.t_f_th;
    j["horizon_factor"] = result.horizon_factor;
    j["grid_spec"] = result.grid_spec;
    j["status"] = to_string(result.status);
    j["evaluations"] = result.evaluations;
    return j;
}

std::string scaling_csv(const experiments::ScalingResult& result) {
    std::string out = "n,t_f_th,status\n";
    for (std::size_t i = 0; i < result.ns.size(); ++i)
        out += csv_line({std::to_string(result.ns[i]), format_double(result.t_f_ths[i]),
                         to_string(result.statuses[i])});
    return out;
}

ordered_json scaling_json(const experiments::ScalingResult& result,
                          const ordered_json& config) {
    ordered_json j = metadata(config);
    j["alpha"] = result.alpha;
    j["backend"] = experiments::to_string(result.backend);
    j["p_th"] = result.p_th;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < result.ns.size(); ++i)
        rows.push_back({{"n", result.ns[i]},
                        {"t_f_th", result.t_f_ths[i]},
                        {"status", to_string(result.statuses[i])}});
    j["rows"] = std::move(rows);
    j["fit"] = {{"slope", result.fit.slope},
                {"intercept", result.fit.intercept},
                {"r_squared", result.fit.r_squared}};
    return j;
}

}  // namespace qawkb::io
