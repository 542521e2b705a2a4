#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "effcom/scenario.hpp"
#include "effcom/simloop.hpp"

namespace effcom::cli {

/// Top-level run configuration; one JSON document drives a simulation.
struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t horizon = 60;
    std::optional<std::string> trace_csv;  // load this instead of generating
    scenario::MobilitySpec mobility;
    simloop::SimConfig sim;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig load_config_file(const std::string& path);

nlohmann::json report_to_json(const simloop::SimReport& report, const RunConfig& cfg);

/// Writes report.json plus plot-ready CSVs (viability, bits, actions, trace)
/// into out_dir, creating it if needed.
void write_report_files(const simloop::SimReport& report, const scenario::RsrpTrace& trace,
                        const RunConfig& cfg, const std::string& out_dir);

}  // namespace effcom::cli
