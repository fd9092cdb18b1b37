#pragma once

#include "json.hpp"

#include "lpwan/battery.hpp"
#include "lpwan/duty_cycle.hpp"
#include "lpwan/lifetime.hpp"
#include "lpwan/simulator.hpp"

namespace lpwan {

using Json = nlohmann::json;

// Loaders for the documented JSON object shapes. Every violation is reported
// as ConfigError naming the offending field; percentages are converted to
// fractions on load.

// {"capacity_wh": 5.0, "self_discharge_pct_per_month": 0.5, "usable_fraction": 1.0}
Battery battery_from_json(const Json& node);

// {"p_tx_w": ..., "p_rx_w": ..., "p_proc_w": ..., "p_idle_w": ...}
PowerProfile profile_from_json(const Json& node);

// {"t_activation_s": ..., "alpha_tx": ..., "alpha_rx": ..., "alpha_proc": ...}
// alpha_idle is derived and therefore rejected if present.
ActivationCycle cycle_from_json(const Json& node);

// Partial override of {"k_spm_s": ..., "seconds_per_year_s": ...}.
ModelConstants constants_from_json(const Json& node, const ModelConstants& defaults = {});

// Partial override of {"time_step_s", "discharge_mode", "retransmission_factor",
// "max_sim_time_s", "trajectory_stride"}; mode is "paper_balance" or
// "compound_decay".
SimConfig sim_config_from_json(const Json& node, const SimConfig& defaults = {});

Json battery_to_json(const Battery& battery);
Json profile_to_json(const PowerProfile& profile);
Json cycle_to_json(const ActivationCycle& cycle);
Json constants_to_json(const ModelConstants& constants);
Json sim_config_to_json(const SimConfig& config);
Json estimate_to_json(const LifetimeEstimate& estimate);

} // namespace lpwan
