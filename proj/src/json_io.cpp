#include "lpwan/json_io.hpp"

#include <string>

namespace lpwan {

namespace {

double require_number(const Json& node, const std::string& context, const char* key) {
    if (!node.contains(key)) {
        throw ConfigError(context + ": missing field '" + key + "'");
    }
    const Json& field = node.at(key);
    if (!field.is_number()) {
        throw ConfigError(context + "." + key + ": expected a number");
    }
    return field.get<double>();
}

double optional_number(const Json& node, const std::string& context, const char* key,
                       double fallback) {
    if (!node.contains(key)) {
        return fallback;
    }
    return require_number(node, context, key);
}

void require_object(const Json& node, const std::string& context) {
    if (!node.is_object()) {
        throw ConfigError(context + ": expected a JSON object");
    }
}

} // namespace

Battery battery_from_json(const Json& node) {
    require_object(node, "battery");
    const double capacity_wh = require_number(node, "battery", "capacity_wh");
    const double pct = require_number(node, "battery", "self_discharge_pct_per_month");
    const double usable = optional_number(node, "battery", "usable_fraction", 1.0);
    try {
        return Battery::from_watt_hours(capacity_wh, pct / 100.0, usable);
    } catch (const DomainError& error) {
        throw ConfigError(std::string("battery: ") + error.what());
    }
}

PowerProfile profile_from_json(const Json& node) {
    require_object(node, "profile");
    PowerProfile profile{require_number(node, "profile", "p_tx_w"),
                         require_number(node, "profile", "p_rx_w"),
                         require_number(node, "profile", "p_proc_w"),
                         require_number(node, "profile", "p_idle_w")};
    try {
        profile.validate();
    } catch (const DomainError& error) {
        throw ConfigError(std::string("profile: ") + error.what());
    }
    return profile;
}

ActivationCycle cycle_from_json(const Json& node) {
    require_object(node, "cycle");
    if (node.contains("alpha_idle")) {
        throw ConfigError("cycle.alpha_idle is derived from the other fractions; remove it");
    }
    try {
        return ActivationCycle(require_number(node, "cycle", "t_activation_s"),
                               require_number(node, "cycle", "alpha_tx"),
                               require_number(node, "cycle", "alpha_rx"),
                               require_number(node, "cycle", "alpha_proc"));
    } catch (const DomainError& error) {
        throw ConfigError(std::string("cycle: ") + error.what());
    }
}

ModelConstants constants_from_json(const Json& node, const ModelConstants& defaults) {
    require_object(node, "constants");
    ModelConstants constants = defaults;
    constants.k_spm_s = optional_number(node, "constants", "k_spm_s", defaults.k_spm_s);
    constants.seconds_per_year_s =
        optional_number(node, "constants", "seconds_per_year_s", defaults.seconds_per_year_s);
    try {
        constants.validate();
    } catch (const DomainError& error) {
        throw ConfigError(std::string("constants: ") + error.what());
    }
    return constants;
}

SimConfig sim_config_from_json(const Json& node, const SimConfig& defaults) {
    require_object(node, "simulator");
    SimConfig config = defaults;
    config.time_step_s = optional_number(node, "simulator", "time_step_s", defaults.time_step_s);
    config.retransmission_factor = optional_number(node, "simulator", "retransmission_factor",
                                                   defaults.retransmission_factor);
    config.max_sim_time_s =
        optional_number(node, "simulator", "max_sim_time_s", defaults.max_sim_time_s);
    if (node.contains("trajectory_stride")) {
        const Json& stride = node.at("trajectory_stride");
        if (!stride.is_number_unsigned()) {
            throw ConfigError("simulator.trajectory_stride: expected a non-negative integer");
        }
        config.trajectory_stride = stride.get<std::uint64_t>();
    }
    if (node.contains("discharge_mode")) {
        const Json& mode = node.at("discharge_mode");
        if (!mode.is_string()) {
            throw ConfigError("simulator.discharge_mode: expected a string");
        }
        const std::string name = mode.get<std::string>();
        if (name == "paper_balance") {
            config.discharge_mode = DischargeMode::PaperBalance;
        } else if (name == "compound_decay") {
            config.discharge_mode = DischargeMode::CompoundDecay;
        } else {
            throw ConfigError("simulator.discharge_mode: unknown mode '" + name +
                              "' (expected paper_balance or compound_decay)");
        }
    }
    try {
        config.validate();
    } catch (const DomainError& error) {
        throw ConfigError(std::string("simulator: ") + error.what());
    }
    return config;
}

Json battery_to_json(const Battery& battery) {
    return Json{{"capacity_wh", battery.capacity_j() / kJoulesPerWattHour},
                {"self_discharge_pct_per_month", battery.self_discharge_rate() * 100.0},
                {"usable_fraction", battery.usable_fraction()}};
}

Json profile_to_json(const PowerProfile& profile) {
    return Json{{"p_tx_w", profile.p_tx_w},
                {"p_rx_w", profile.p_rx_w},
                {"p_proc_w", profile.p_proc_w},
                {"p_idle_w", profile.p_idle_w}};
}

Json cycle_to_json(const ActivationCycle& cycle) {
    return Json{{"t_activation_s", cycle.t_activation_s()},
                {"alpha_tx", cycle.alpha_tx()},
                {"alpha_rx", cycle.alpha_rx()},
                {"alpha_proc", cycle.alpha_proc()}};
}

Json constants_to_json(const ModelConstants& constants) {
    return Json{{"k_spm_s", constants.k_spm_s},
                {"seconds_per_year_s", constants.seconds_per_year_s}};
}

Json sim_config_to_json(const SimConfig& config) {
    return Json{{"time_step_s", config.time_step_s},
                {"discharge_mode", config.discharge_mode == DischargeMode::PaperBalance
                                       ? "paper_balance"
                                       : "compound_decay"},
                {"retransmission_factor", config.retransmission_factor},
                {"max_sim_time_s", config.max_sim_time_s},
                {"trajectory_stride", config.trajectory_stride}};
}

Json estimate_to_json(const LifetimeEstimate& estimate) {
    Json node{{"model", to_string(estimate.model)},
              {"infinite", estimate.infinite},
              {"inputs",
               Json{{"effective_capacity_j", estimate.inputs.effective_capacity_j},
                    {"p_avg_w", estimate.inputs.p_avg_w},
                    {"self_discharge_rate_per_month", estimate.inputs.self_discharge_rate},
                    {"k_spm_s", estimate.inputs.k_spm_s}}}};
    if (estimate.infinite) {
        node["lifetime_s"] = nullptr;
        node["lifetime_years"] = nullptr;
    } else {
        node["lifetime_s"] = estimate.lifetime_s;
        node["lifetime_years"] = estimate.lifetime_years;
    }
    return node;
}

} // namespace lpwan
