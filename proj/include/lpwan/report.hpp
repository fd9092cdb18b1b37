#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpwan/json_io.hpp"
#include "lpwan/trace.hpp"

namespace lpwan {

enum class OutputFormat { Text, Json, Csv };

OutputFormat output_format_from_string(const std::string& name);

// Per-message dwell times, held fixed while the activation period changes so
// traffic models can be compared at equal work per message.
struct MessageCosts {
    double d_tx_s = 0.0;
    double d_rx_s = 0.0;
    double d_proc_s = 0.0;
};

// Everything a subcommand may need; each command validates the subset it
// uses. The device load comes either from an explicit profile+cycle pair or
// from a trace file with a traffic model, never both.
struct RunConfig {
    std::optional<Battery> battery;
    std::optional<PowerProfile> profile;
    std::optional<ActivationCycle> cycle;
    std::optional<std::string> trace_path;
    std::optional<TrafficModel> traffic;
    std::optional<CurrentThresholds> thresholds;
    std::optional<MessageCosts> message;
    ModelConstants constants;
    SimConfig sim;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::string> out_path;
};

// Loads the documented config-file shape, rejecting unknown top-level keys.
RunConfig run_config_from_json(const Json& node);

// Ideal, exponential and linear lifetime side by side for the configured
// battery and load.
std::string cmd_estimate(const RunConfig& config);

// Remaining-capacity table over a list of self-discharge rates (fractions
// per month), one column per rate, monthly rows up to the horizon.
std::string cmd_sweep_d(const RunConfig& config, const std::vector<double>& d_values,
                        int horizon_months);

// Exponential vs linear capacity curves plus a depletion/lifetime summary.
std::string cmd_compare_discharge(const RunConfig& config, int horizon_months);

// Lifetime at each traffic preset with per-message costs held fixed.
std::string cmd_compare_traffic(const RunConfig& config);

struct SimulateReport {
    std::string summary;
    std::string trajectory_csv;
};

// Runs the discharge simulator; the summary reports the gap to the closed
// form when the mode admits one.
SimulateReport cmd_simulate(const RunConfig& config);

// Trace file -> measured PowerProfile + ActivationCycle, as JSON usable in a
// config file.
std::string cmd_ingest(const RunConfig& config);

} // namespace lpwan
