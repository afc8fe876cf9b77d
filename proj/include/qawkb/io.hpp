#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qawkb/experiments.hpp"

namespace qawkb::io {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* version = "0.1.0";

// Full-precision (17 significant digits) decimal rendering, locale-free.
std::string format_double(double v);

// One CSV line from already-formatted fields.
std::string csv_line(const std::vector<std::string>& fields);

void write_text_file(const std::string& path, const std::string& contents);

// dynamics/compare rows:
// r,s,backend,psi_re,psi_im,phi_re,phi_im,pop_marked,norm,trace_dist_vs_exact
std::string compare_csv(const experiments::CompareTable& table);
ordered_json compare_json(const experiments::CompareTable& table, const ordered_json& config);

// sweep rows: t_f,p_gs,status
std::string sweep_csv(const std::vector<experiments::SweepRow>& rows);
ordered_json sweep_json(const std::vector<experiments::SweepRow>& rows,
                        const ordered_json& config);

std::string threshold_csv(const experiments::ThresholdResult& result);
ordered_json threshold_json(const experiments::ThresholdResult& result,
                            const ordered_json& config);

std::string scaling_csv(const experiments::ScalingResult& result);
ordered_json scaling_json(const experiments::ScalingResult& result,
                          const ordered_json& config);

ordered_json metadata(const ordered_json& config);

}  // namespace qawkb::io
