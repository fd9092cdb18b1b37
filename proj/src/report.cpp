#include "lpwan/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpwan/format_util.hpp"
#include "lpwan/lifetime.hpp"

namespace lpwan {

namespace {

constexpr int kSchemaVersion = 1;

std::string format_g6(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

// Shortest round-trip rendering, handy for labels.
std::string shortest(double value) {
    return Json(value).dump();
}

struct ResolvedLoad {
    PowerProfile profile;
    ActivationCycle cycle{1.0, 0.0, 0.0, 0.0};
    std::string source;
    std::vector<std::string> warnings;
};

std::vector<TraceSample> parse_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("trace.path: cannot open '" + path + "'");
    }
    return parse_trace(in);
}

ResolvedLoad resolve_load(const RunConfig& config) {
    const bool has_pair = config.profile.has_value() && config.cycle.has_value();
    const bool has_trace = config.trace_path.has_value();
    if (has_pair && has_trace) {
        throw ConfigError("supply either profile+cycle or trace, not both");
    }
    if (has_pair) {
        return {*config.profile, *config.cycle, "profile", {}};
    }
    if (has_trace) {
        if (!config.traffic) {
            throw ConfigError("trace.traffic: required to interpret a trace");
        }
        const IngestResult ingest =
            ingest_trace(parse_trace_file(*config.trace_path), *config.traffic,
                         config.thresholds);
        return {ingest.profile, ingest.cycle, "trace:" + *config.trace_path, ingest.warnings};
    }
    if (config.profile || config.cycle) {
        throw ConfigError(config.profile ? "cycle: missing (profile without cycle)"
                                         : "profile: missing (cycle without profile)");
    }
    throw ConfigError("no load configured: supply profile+cycle or trace");
}

const Battery& require_battery(const RunConfig& config) {
    if (!config.battery) {
        throw ConfigError("battery: not configured");
    }
    return *config.battery;
}

// Zero average power means the device never consumes; report the infinite
// marker instead of rejecting the whole run.
LifetimeEstimate exponential_or_infinite(const Battery& battery, double p_avg_w,
                                         const ModelConstants& constants) {
    if (p_avg_w > 0.0) {
        return lifetime_exponential(battery, p_avg_w, constants);
    }
    LifetimeEstimate estimate;
    estimate.infinite = true;
    estimate.model = LifetimeModel::ExponentialSelfDischarge;
    estimate.inputs = {battery.effective_capacity_j(), p_avg_w, battery.self_discharge_rate(),
                       constants.k_spm_s};
    return estimate;
}

std::string estimate_text_line(const LifetimeEstimate& estimate) {
    if (estimate.infinite) {
        return "infinite";
    }
    return format_g6(estimate.lifetime_s) + " s (" + format_fixed2(estimate.lifetime_years) +
           " years)";
}

void estimate_csv_row(std::ostream& out, const std::string& name,
                      const LifetimeEstimate& estimate) {
    out << name << ',' << (estimate.infinite ? "true" : "false") << ',';
    if (estimate.infinite) {
        out << ",\n";
    } else {
        out << format_g17(estimate.lifetime_s) << ',' << format_g17(estimate.lifetime_years)
            << '\n';
    }
}

void append_warning_comments(std::ostream& out, const std::vector<std::string>& warnings) {
    for (const std::string& warning : warnings) {
        out << "# warning: " << warning << '\n';
    }
}

void append_warning_lines(std::ostream& out, const std::vector<std::string>& warnings) {
    for (const std::string& warning : warnings) {
        out << "warning: " << warning << '\n';
    }
}

Json report_skeleton(const char* command) {
    return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

std::string dump(const Json& node) {
    return node.dump(2) + "\n";
}

Json thresholds_to_json(const CurrentThresholds& thresholds) {
    return Json::array({thresholds.idle_proc_a, thresholds.proc_rx_a, thresholds.rx_tx_a});
}

} // namespace

OutputFormat output_format_from_string(const std::string& name) {
    if (name == "text") return OutputFormat::Text;
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw ConfigError("unknown output format '" + name + "' (expected text, json or csv)");
}

RunConfig run_config_from_json(const Json& node) {
    if (!node.is_object()) {
        throw ConfigError("config root: expected a JSON object");
    }
    static const char* known_keys[] = {"battery", "profile", "cycle",      "trace",
                                       "constants", "simulator", "message", "format",
                                       "out"};
    for (const auto& item : node.items()) {
        bool known = false;
        for (const char* key : known_keys) {
            known = known || item.key() == key;
        }
        if (!known) {
            throw ConfigError("unknown config key '" + item.key() + "'");
        }
    }

    RunConfig config;
    if (node.contains("battery")) {
        config.battery = battery_from_json(node.at("battery"));
    }
    if (node.contains("profile")) {
        config.profile = profile_from_json(node.at("profile"));
    }
    if (node.contains("cycle")) {
        config.cycle = cycle_from_json(node.at("cycle"));
    }
    if (node.contains("trace")) {
        const Json& trace = node.at("trace");
        if (!trace.is_object()) {
            throw ConfigError("trace: expected a JSON object");
        }
        if (!trace.contains("path") || !trace.at("path").is_string()) {
            throw ConfigError("trace.path: expected a string");
        }
        config.trace_path = trace.at("path").get<std::string>();
        if (trace.contains("traffic")) {
            if (!trace.at("traffic").is_string()) {
                throw ConfigError("trace.traffic: expected a string");
            }
            try {
                config.traffic = TrafficModel::from_name(trace.at("traffic").get<std::string>());
            } catch (const DomainError& error) {
                throw ConfigError(std::string("trace.traffic: ") + error.what());
            }
        }
        if (trace.contains("thresholds_a")) {
            const Json& list = trace.at("thresholds_a");
            if (!list.is_array() || list.size() != 3 || !list[0].is_number() ||
                !list[1].is_number() || !list[2].is_number()) {
                throw ConfigError("trace.thresholds_a: expected an array of three numbers");
            }
            config.thresholds = CurrentThresholds{list[0].get<double>(), list[1].get<double>(),
                                                  list[2].get<double>()};
        }
    }
    if (node.contains("constants")) {
        config.constants = constants_from_json(node.at("constants"));
    }
    if (node.contains("simulator")) {
        config.sim = sim_config_from_json(node.at("simulator"));
    }
    if (node.contains("message")) {
        const Json& message = node.at("message");
        if (!message.is_object()) {
            throw ConfigError("message: expected a JSON object");
        }
        MessageCosts costs;
        const auto read_cost = [&message](const char* key) {
            if (!message.contains(key) || !message.at(key).is_number()) {
                throw ConfigError(std::string("message.") + key + ": expected a number");
            }
            return message.at(key).get<double>();
        };
        costs.d_tx_s = read_cost("d_tx_s");
        costs.d_rx_s = read_cost("d_rx_s");
        costs.d_proc_s = read_cost("d_proc_s");
        config.message = costs;
    }
    if (node.contains("format")) {
        if (!node.at("format").is_string()) {
            throw ConfigError("format: expected a string");
        }
        config.format = output_format_from_string(node.at("format").get<std::string>());
    }
    if (node.contains("out")) {
        if (!node.at("out").is_string()) {
            throw ConfigError("out: expected a string");
        }
        config.out_path = node.at("out").get<std::string>();
    }
    return config;
}

std::string cmd_estimate(const RunConfig& config) {
    const Battery& battery = require_battery(config);
    const ResolvedLoad load = resolve_load(config);
    const double p_avg = average_power(load.profile, load.cycle);

    const LifetimeEstimate ideal =
        lifetime_ideal(battery.effective_capacity_j(), p_avg, config.constants);
    const LifetimeEstimate exponential = exponential_or_infinite(battery, p_avg, config.constants);
    const LifetimeEstimate linear = lifetime_linear(battery, p_avg, config.constants);

    switch (config.format) {
    case OutputFormat::Json: {
        Json report = report_skeleton("estimate");
        report["inputs"] = Json{{"battery", battery_to_json(battery)},
                                {"profile", profile_to_json(load.profile)},
                                {"cycle", cycle_to_json(load.cycle)},
                                {"constants", constants_to_json(config.constants)},
                                {"p_avg_w", p_avg},
                                {"source", load.source}};
        report["estimates"] = Json{{"ideal", estimate_to_json(ideal)},
                                   {"exponential_self_discharge", estimate_to_json(exponential)},
                                   {"linear_self_discharge", estimate_to_json(linear)}};
        report["warnings"] = load.warnings;
        return dump(report);
    }
    case OutputFormat::Csv: {
        std::ostringstream out;
        append_warning_comments(out, load.warnings);
        out << "model,infinite,lifetime_s,lifetime_years\n";
        estimate_csv_row(out, "ideal", ideal);
        estimate_csv_row(out, "exponential_self_discharge", exponential);
        estimate_csv_row(out, "linear_self_discharge", linear);
        return out.str();
    }
    case OutputFormat::Text: break;
    }
    std::ostringstream out;
    append_warning_lines(out, load.warnings);
    out << "battery: " << shortest(battery.capacity_j() / kJoulesPerWattHour) << " Wh, D = "
        << shortest(battery.self_discharge_rate() * 100.0) << " %/month, usable fraction "
        << shortest(battery.usable_fraction()) << '\n';
    out << "load: p_avg = " << format_g6(p_avg) << " W (" << load.source << ")\n";
    out << "ideal lifetime:       " << estimate_text_line(ideal) << '\n';
    out << "exponential lifetime: " << estimate_text_line(exponential) << '\n';
    out << "linear lifetime:      " << estimate_text_line(linear) << '\n';
    return out.str();
}

std::string cmd_sweep_d(const RunConfig& config, const std::vector<double>& d_values,
                        int horizon_months) {
    const Battery& battery = require_battery(config);
    if (d_values.empty()) {
        throw ConfigError("sweep-d: at least one D value is required");
    }
    if (horizon_months <= 0) {
        throw DomainError("horizon must be a positive number of months");
    }
    std::vector<Battery> variants;
    variants.reserve(d_values.size());
    for (double d : d_values) {
        if (!std::isfinite(d) || d < 0.0 || d >= 1.0) {
            throw DomainError("self-discharge rate D must lie in [0, 1), got " +
                              std::to_string(d));
        }
        variants.emplace_back(battery.capacity_j(), d, battery.usable_fraction());
    }

    std::vector<std::string> columns = {"t_months"};
    for (double d : d_values) {
        columns.push_back("d_" + shortest(d));
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(horizon_months) + 1);
    for (int month = 0; month <= horizon_months; ++month) {
        std::vector<double> row = {static_cast<double>(month)};
        for (const Battery& variant : variants) {
            row.push_back(remaining_capacity_exponential(variant, month));
        }
        rows.push_back(std::move(row));
    }

    if (config.format == OutputFormat::Json) {
        Json report = report_skeleton("sweep-d");
        report["inputs"] = Json{{"battery", battery_to_json(battery)},
                                {"d_values", d_values},
                                {"horizon_months", horizon_months}};
        report["columns"] = columns;
        report["rows"] = rows;
        return dump(report);
    }

    std::ostringstream out;
    if (config.format == OutputFormat::Text) {
        out << "remaining capacity (J) of a " << shortest(battery.capacity_j() / kJoulesPerWattHour)
            << " Wh battery by month\n";
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_g17(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string cmd_compare_discharge(const RunConfig& config, int horizon_months) {
    const Battery& battery = require_battery(config);
    if (horizon_months <= 0) {
        throw DomainError("horizon must be a positive number of months");
    }
    const ResolvedLoad load = resolve_load(config);
    const double p_avg = average_power(load.profile, load.cycle);
    const LifetimeEstimate exponential = exponential_or_infinite(battery, p_avg, config.constants);
    const LifetimeEstimate linear = lifetime_linear(battery, p_avg, config.constants);
    const double rate = battery.self_discharge_rate();
    const bool depletes = rate > 0.0;
    const double depletion_month = depletes ? 1.0 / rate : 0.0;
    const bool gap_defined = !exponential.infinite && !linear.infinite;
    const double gap_s = gap_defined ? exponential.lifetime_s - linear.lifetime_s : 0.0;

    std::vector<std::array<double, 3>> rows;
    rows.reserve(static_cast<std::size_t>(horizon_months) + 1);
    for (int month = 0; month <= horizon_months; ++month) {
        rows.push_back({static_cast<double>(month),
                        remaining_capacity_exponential(battery, month),
                        remaining_capacity_linear(battery, month)});
    }

    if (config.format == OutputFormat::Json) {
        Json report = report_skeleton("compare-discharge");
        report["inputs"] = Json{{"battery", battery_to_json(battery)},
                                {"constants", constants_to_json(config.constants)},
                                {"p_avg_w", p_avg},
                                {"source", load.source},
                                {"horizon_months", horizon_months}};
        report["summary"] =
            Json{{"linear_depletion_month", depletes ? Json(depletion_month) : Json(nullptr)},
                 {"lifetime_exponential_s",
                  exponential.infinite ? Json(nullptr) : Json(exponential.lifetime_s)},
                 {"lifetime_linear_s", linear.infinite ? Json(nullptr) : Json(linear.lifetime_s)},
                 {"lifetime_gap_s", gap_defined ? Json(gap_s) : Json(nullptr)}};
        report["columns"] = {"t_months", "exponential_j", "linear_j"};
        report["rows"] = rows;
        report["warnings"] = load.warnings;
        return dump(report);
    }

    std::ostringstream out;
    const bool text = config.format == OutputFormat::Text;
    const char* prefix = text ? "" : "# ";
    if (!text) {
        append_warning_comments(out, load.warnings);
    } else {
        append_warning_lines(out, load.warnings);
    }
    out << prefix << "linear depletion month: "
        << (depletes ? shortest(depletion_month) : "never") << '\n';
    out << prefix << "lifetime (exponential): " << estimate_text_line(exponential) << '\n';
    out << prefix << "lifetime (linear):      " << estimate_text_line(linear) << '\n';
    out << prefix << "lifetime gap: " << (gap_defined ? format_g6(gap_s) + " s" : "undefined")
        << '\n';
    out << "t_months,exponential_j,linear_j\n";
    for (const auto& row : rows) {
        out << format_g17(row[0]) << ',' << format_g17(row[1]) << ',' << format_g17(row[2])
            << '\n';
    }
    return out.str();
}

std::string cmd_compare_traffic(const RunConfig& config) {
    const Battery& battery = require_battery(config);
    if (!config.message) {
        throw ConfigError("message: per-message durations required for compare-traffic");
    }
    PowerProfile profile;
    std::vector<std::string> warnings;
    if (config.profile) {
        profile = *config.profile;
    } else if (config.trace_path) {
        RunConfig trace_only = config;
        trace_only.cycle.reset();
        const ResolvedLoad load = resolve_load(trace_only);
        profile = load.profile;
        warnings = load.warnings;
    } else {
        throw ConfigError("profile: required for compare-traffic (directly or via trace)");
    }

    const MessageCosts& costs = *config.message;
    struct Row {
        std::string traffic;
        double t_activation_s;
        double p_avg_w;
        LifetimeEstimate estimate;
    };
    std::vector<Row> table;
    for (const TrafficModel& model :
         {TrafficModel::one_msg_per_day(), TrafficModel::one_msg_per_hour(),
          TrafficModel::ten_msg_per_hour()}) {
        const ActivationCycle cycle = cycle_from_durations(costs.d_tx_s, costs.d_rx_s,
                                                           costs.d_proc_s,
                                                           model.t_activation_s());
        const double p_avg = average_power(profile, cycle);
        table.push_back({model.name(), model.t_activation_s(), p_avg,
                         exponential_or_infinite(battery, p_avg, config.constants)});
    }

    if (config.format == OutputFormat::Json) {
        Json report = report_skeleton("compare-traffic");
        report["inputs"] = Json{{"battery", battery_to_json(battery)},
                                {"profile", profile_to_json(profile)},
                                {"constants", constants_to_json(config.constants)},
                                {"message", Json{{"d_tx_s", costs.d_tx_s},
                                                 {"d_rx_s", costs.d_rx_s},
                                                 {"d_proc_s", costs.d_proc_s}}}};
        Json rows = Json::array();
        for (const Row& row : table) {
            rows.push_back(Json{{"traffic", row.traffic},
                                {"t_activation_s", row.t_activation_s},
                                {"p_avg_w", row.p_avg_w},
                                {"estimate", estimate_to_json(row.estimate)}});
        }
        report["rows"] = rows;
        report["warnings"] = warnings;
        return dump(report);
    }

    std::ostringstream out;
    if (config.format == OutputFormat::Text) {
        append_warning_lines(out, warnings);
        for (const Row& row : table) {
            out << row.traffic << ": p_avg = " << format_g6(row.p_avg_w) << " W, lifetime "
                << estimate_text_line(row.estimate) << '\n';
        }
        return out.str();
    }
    append_warning_comments(out, warnings);
    out << "traffic,t_activation_s,p_avg_w,infinite,lifetime_s,lifetime_years\n";
    for (const Row& row : table) {
        out << row.traffic << ',' << format_g17(row.t_activation_s) << ','
            << format_g17(row.p_avg_w) << ',' << (row.estimate.infinite ? "true" : "false")
            << ',';
        if (row.estimate.infinite) {
            out << ",\n";
        } else {
            out << format_g17(row.estimate.lifetime_s) << ','
                << format_g17(row.estimate.lifetime_years) << '\n';
        }
    }
    return out.str();
}

SimulateReport cmd_simulate(const RunConfig& config) {
    const Battery& battery = require_battery(config);
    const ResolvedLoad load = resolve_load(config);
    const SimResult result =
        simulate(battery, load.profile, load.cycle, config.sim, config.constants);

    const ActivationCycle inflated =
        apply_retransmissions(load.cycle, config.sim.retransmission_factor);
    const double p_avg = average_power(load.profile, inflated);
    const bool paper_balance = config.sim.discharge_mode == DischargeMode::PaperBalance;
    LifetimeEstimate closed_form;
    bool gap_defined = false;
    double gap_s = 0.0;
    if (paper_balance) {
        closed_form = exponential_or_infinite(battery, p_avg, config.constants);
        gap_defined =
            !closed_form.infinite && result.termination == SimTermination::Depleted;
        if (gap_defined) {
            gap_s = std::abs(result.lifetime_s - closed_form.lifetime_s);
        }
    }
    const char* termination =
        result.termination == SimTermination::Depleted ? "depleted" : "time_cap_reached";

    SimulateReport report;
    {
        std::ostringstream trajectory;
        write_trajectory_csv(trajectory, result);
        report.trajectory_csv = trajectory.str();
    }

    if (config.format == OutputFormat::Json) {
        Json summary = report_skeleton("simulate");
        summary["inputs"] = Json{{"battery", battery_to_json(battery)},
                                 {"profile", profile_to_json(load.profile)},
                                 {"cycle", cycle_to_json(load.cycle)},
                                 {"simulator", sim_config_to_json(config.sim)},
                                 {"constants", constants_to_json(config.constants)},
                                 {"p_avg_w", p_avg},
                                 {"source", load.source}};
        summary["result"] = Json{{"lifetime_s", result.lifetime_s},
                                 {"lifetime_years",
                                  result.lifetime_s / config.constants.seconds_per_year_s},
                                 {"termination", termination},
                                 {"cycles_completed", result.cycles_completed},
                                 {"trajectory_points", result.trajectory.size()}};
        if (paper_balance) {
            summary["closed_form"] =
                Json{{"lifetime_s",
                      closed_form.infinite ? Json(nullptr) : Json(closed_form.lifetime_s)},
                     {"abs_gap_s", gap_defined ? Json(gap_s) : Json(nullptr)}};
        }
        summary["warnings"] = load.warnings;
        report.summary = dump(summary);
        return report;
    }

    std::ostringstream out;
    const bool text = config.format == OutputFormat::Text;
    if (text) {
        append_warning_lines(out, load.warnings);
        out << "simulated lifetime: " << format_g6(result.lifetime_s) << " s ("
            << format_fixed2(result.lifetime_s / config.constants.seconds_per_year_s)
            << " years)\n";
        out << "termination: " << termination << '\n';
        out << "cycles completed: " << result.cycles_completed << '\n';
        if (paper_balance) {
            out << "closed-form lifetime: " << estimate_text_line(closed_form) << '\n';
            out << "abs gap: " << (gap_defined ? format_g6(gap_s) + " s" : "undefined") << '\n';
        }
    } else {
        append_warning_comments(out, load.warnings);
        out << "field,value\n";
        out << "lifetime_s," << format_g17(result.lifetime_s) << '\n';
        out << "termination," << termination << '\n';
        out << "cycles_completed," << result.cycles_completed << '\n';
        if (paper_balance) {
            out << "closed_form_lifetime_s,"
                << (closed_form.infinite ? "" : format_g17(closed_form.lifetime_s)) << '\n';
            out << "abs_gap_s," << (gap_defined ? format_g17(gap_s) : "") << '\n';
        }
    }
    report.summary = out.str();
    return report;
}

std::string cmd_ingest(const RunConfig& config) {
    if (!config.trace_path) {
        throw ConfigError("trace.path: required for ingest");
    }
    if (!config.traffic) {
        throw ConfigError("trace.traffic: required for ingest");
    }
    const IngestResult ingest = ingest_trace(parse_trace_file(*config.trace_path),
                                             *config.traffic, config.thresholds);

    if (config.format == OutputFormat::Json) {
        Json report = report_skeleton("ingest");
        Json inputs{{"trace_path", *config.trace_path}, {"traffic", config.traffic->name()}};
        if (config.thresholds) {
            inputs["thresholds_a"] = thresholds_to_json(*config.thresholds);
        }
        report["inputs"] = inputs;
        report["profile"] = profile_to_json(ingest.profile);
        report["cycle"] = cycle_to_json(ingest.cycle);
        report["warnings"] = ingest.warnings;
        return dump(report);
    }

    std::ostringstream out;
    if (config.format == OutputFormat::Text) {
        append_warning_lines(out, ingest.warnings);
        out << "p_tx_w = " << format_g6(ingest.profile.p_tx_w) << '\n';
        out << "p_rx_w = " << format_g6(ingest.profile.p_rx_w) << '\n';
        out << "p_proc_w = " << format_g6(ingest.profile.p_proc_w) << '\n';
        out << "p_idle_w = " << format_g6(ingest.profile.p_idle_w) << '\n';
        out << "t_activation_s = " << format_g6(ingest.cycle.t_activation_s()) << '\n';
        out << "alpha_tx = " << format_g6(ingest.cycle.alpha_tx()) << '\n';
        out << "alpha_rx = " << format_g6(ingest.cycle.alpha_rx()) << '\n';
        out << "alpha_proc = " << format_g6(ingest.cycle.alpha_proc()) << '\n';
        out << "alpha_idle = " << format_g6(ingest.cycle.alpha_idle()) << '\n';
        return out.str();
    }
    append_warning_comments(out, ingest.warnings);
    out << "field,value\n";
    out << "p_tx_w," << format_g17(ingest.profile.p_tx_w) << '\n';
    out << "p_rx_w," << format_g17(ingest.profile.p_rx_w) << '\n';
    out << "p_proc_w," << format_g17(ingest.profile.p_proc_w) << '\n';
    out << "p_idle_w," << format_g17(ingest.profile.p_idle_w) << '\n';
    out << "t_activation_s," << format_g17(ingest.cycle.t_activation_s()) << '\n';
    out << "alpha_tx," << format_g17(ingest.cycle.alpha_tx()) << '\n';
    out << "alpha_rx," << format_g17(ingest.cycle.alpha_rx()) << '\n';
    out << "alpha_proc," << format_g17(ingest.cycle.alpha_proc()) << '\n';
    return out.str();
}

} // namespace lpwan
