#include "lpwan/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "lpwan/report.hpp"

namespace lpwan::cli {

namespace {

std::vector<double> parse_double_list(const std::string& text, const char* option) {
    std::vector<double> values;
    std::string::size_type start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string field =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        double value = 0.0;
        const char* begin = field.data();
        const char* end = begin + field.size();
        const auto [parsed_end, errc] = std::from_chars(begin, end, value);
        if (errc != std::errc{} || parsed_end != end || field.empty()) {
            throw ConfigError(std::string(option) + ": cannot parse number '" + field + "'");
        }
        values.push_back(value);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return values;
}

void write_output(const std::optional<std::string>& path, const std::string& content,
                  std::ostream& fallback) {
    if (!path) {
        fallback << content;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file '" + *path + "'");
    }
    file << content;
}

struct CliOptions {
    std::string config_path;
    std::string format;
    std::string out_path;
    std::string traffic;
    double capacity_wh = 0.0;
    double d_pct_month = 0.0;
    double usable_fraction = 0.0;
    bool has_capacity = false;
    bool has_d = false;
    bool has_usable = false;

    // sweep-d / compare-discharge
    std::string d_pct_list;
    int horizon_months = 0;

    // compare-traffic
    double d_tx_s = 0.0;
    double d_rx_s = 0.0;
    double d_proc_s = 0.0;
    bool has_d_tx = false;
    bool has_d_rx = false;
    bool has_d_proc = false;

    // simulate
    double time_step_s = 0.0;
    std::string mode;
    double retransmission_factor = 0.0;
    double max_sim_time_s = 0.0;
    std::uint64_t trajectory_stride = 0;
    std::string trajectory_out;
    bool has_time_step = false;
    bool has_retransmission = false;
    bool has_max_sim_time = false;
    bool has_stride = false;

    // ingest
    std::string trace_path;
    std::string thresholds;
};

RunConfig build_config(const CliOptions& options) {
    RunConfig config;
    if (!options.config_path.empty()) {
        std::ifstream file(options.config_path);
        if (!file) {
            throw ConfigError("cannot open config file '" + options.config_path + "'");
        }
        Json node;
        try {
            node = Json::parse(file);
        } catch (const Json::exception& error) {
            throw ConfigError("config file '" + options.config_path + "': " + error.what());
        }
        config = run_config_from_json(node);
    }

    if (options.has_capacity || options.has_d || options.has_usable) {
        std::optional<double> capacity_wh;
        if (options.has_capacity) {
            capacity_wh = options.capacity_wh;
        } else if (config.battery) {
            capacity_wh = config.battery->capacity_j() / kJoulesPerWattHour;
        }
        if (!capacity_wh) {
            throw ConfigError("--capacity-wh (or a config battery) is required when "
                              "overriding battery fields");
        }
        const double rate = options.has_d ? options.d_pct_month / 100.0
                                          : (config.battery ? config.battery->self_discharge_rate()
                                                            : 0.0);
        const double usable = options.has_usable
                                  ? options.usable_fraction
                                  : (config.battery ? config.battery->usable_fraction() : 1.0);
        try {
            config.battery = Battery::from_watt_hours(*capacity_wh, rate, usable);
        } catch (const DomainError& error) {
            throw ConfigError(std::string("battery override: ") + error.what());
        }
    }

    if (!options.traffic.empty()) {
        try {
            config.traffic = TrafficModel::from_name(options.traffic);
        } catch (const DomainError& error) {
            throw ConfigError(std::string("--traffic: ") + error.what());
        }
    }
    if (!options.format.empty()) {
        config.format = output_format_from_string(options.format);
    }
    if (!options.out_path.empty()) {
        config.out_path = options.out_path;
    }
    if (!options.trace_path.empty()) {
        config.trace_path = options.trace_path;
    }
    if (!options.thresholds.empty()) {
        const std::vector<double> values =
            parse_double_list(options.thresholds, "--thresholds-a");
        if (values.size() != 3) {
            throw ConfigError("--thresholds-a: expected three ascending currents");
        }
        config.thresholds = CurrentThresholds{values[0], values[1], values[2]};
    }

    if (options.has_d_tx || options.has_d_rx || options.has_d_proc) {
        MessageCosts costs = config.message.value_or(MessageCosts{});
        if (options.has_d_tx) costs.d_tx_s = options.d_tx_s;
        if (options.has_d_rx) costs.d_rx_s = options.d_rx_s;
        if (options.has_d_proc) costs.d_proc_s = options.d_proc_s;
        config.message = costs;
    }

    if (options.has_time_step) config.sim.time_step_s = options.time_step_s;
    if (options.has_retransmission) {
        config.sim.retransmission_factor = options.retransmission_factor;
    }
    if (options.has_max_sim_time) config.sim.max_sim_time_s = options.max_sim_time_s;
    if (options.has_stride) config.sim.trajectory_stride = options.trajectory_stride;
    if (!options.mode.empty()) {
        if (options.mode == "paper_balance") {
            config.sim.discharge_mode = DischargeMode::PaperBalance;
        } else if (options.mode == "compound_decay") {
            config.sim.discharge_mode = DischargeMode::CompoundDecay;
        } else {
            throw ConfigError("--mode: unknown mode '" + options.mode +
                              "' (expected paper_balance or compound_decay)");
        }
    }
    return config;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Battery lifetime estimation toolkit for LPWAN end-points"};
    app.fallthrough();
    app.require_subcommand(1);

    CliOptions options;
    app.add_option("--config", options.config_path, "JSON run configuration")
        ->envname("LPWAN_LT_CONFIG");
    app.add_option("--format", options.format, "Output format: text, json or csv");
    app.add_option("--out", options.out_path, "Write the report to this file");
    app.add_option("--traffic", options.traffic, "Traffic model: 1/day, 1/hour or 10/hour");
    auto* capacity = app.add_option("--capacity-wh", options.capacity_wh,
                                    "Battery capacity in watt-hours");
    auto* d_pct = app.add_option("--d-pct-month", options.d_pct_month,
                                 "Self-discharge in percent per month");
    auto* usable = app.add_option("--usable-fraction", options.usable_fraction,
                                  "Usable fraction of the nominal capacity");

    CLI::App* estimate = app.add_subcommand(
        "estimate", "Ideal, exponential and linear lifetime for the configured device");

    CLI::App* sweep = app.add_subcommand(
        "sweep-d", "Remaining-capacity table across self-discharge rates");
    sweep->add_option("--d-pct-list", options.d_pct_list,
                      "Comma separated self-discharge rates, percent per month")
        ->required();
    sweep->add_option("--horizon-months", options.horizon_months, "Number of monthly rows")
        ->required();

    CLI::App* compare_discharge = app.add_subcommand(
        "compare-discharge", "Exponential vs linear discharge curves and lifetimes");
    compare_discharge
        ->add_option("--horizon-months", options.horizon_months, "Number of monthly rows")
        ->required();

    CLI::App* compare_traffic = app.add_subcommand(
        "compare-traffic", "Lifetime per traffic preset at fixed per-message cost");
    auto* opt_d_tx =
        compare_traffic->add_option("--d-tx-s", options.d_tx_s, "Transmit seconds per message");
    auto* opt_d_rx =
        compare_traffic->add_option("--d-rx-s", options.d_rx_s, "Receive seconds per message");
    auto* opt_d_proc = compare_traffic->add_option("--d-proc-s", options.d_proc_s,
                                                   "Compute seconds per message");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Discrete-time discharge simulation of the configured device");
    auto* opt_step =
        simulate->add_option("--time-step-s", options.time_step_s, "Simulation step seconds");
    simulate->add_option("--mode", options.mode,
                         "Discharge mode: paper_balance or compound_decay");
    auto* opt_retx = simulate->add_option("--retransmission-factor",
                                          options.retransmission_factor,
                                          "Multiplier on the transmit fraction, >= 1");
    auto* opt_cap = simulate->add_option("--max-sim-time-s", options.max_sim_time_s,
                                         "Simulated time cap in seconds");
    auto* opt_stride = simulate->add_option("--trajectory-stride", options.trajectory_stride,
                                            "Record every Nth step (0 = automatic)");
    simulate->add_option("--trajectory-out", options.trajectory_out,
                         "Write the trajectory CSV to this file");

    CLI::App* ingest = app.add_subcommand(
        "ingest", "Extract a power profile and activation cycle from a trace CSV");
    ingest->add_option("trace", options.trace_path, "Trace CSV path");
    ingest->add_option("--thresholds-a", options.thresholds,
                       "Three ascending currents separating idle/proc/rx/tx");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error, out, err);
        return code == 0 ? 0 : 2;
    }

    options.has_capacity = capacity->count() > 0;
    options.has_d = d_pct->count() > 0;
    options.has_usable = usable->count() > 0;
    options.has_d_tx = opt_d_tx->count() > 0;
    options.has_d_rx = opt_d_rx->count() > 0;
    options.has_d_proc = opt_d_proc->count() > 0;
    options.has_time_step = opt_step->count() > 0;
    options.has_retransmission = opt_retx->count() > 0;
    options.has_max_sim_time = opt_cap->count() > 0;
    options.has_stride = opt_stride->count() > 0;

    try {
        const RunConfig config = build_config(options);
        if (estimate->parsed()) {
            write_output(config.out_path, cmd_estimate(config), out);
        } else if (sweep->parsed()) {
            std::vector<double> d_values =
                parse_double_list(options.d_pct_list, "--d-pct-list");
            for (double& value : d_values) {
                value /= 100.0;
            }
            write_output(config.out_path, cmd_sweep_d(config, d_values, options.horizon_months),
                         out);
        } else if (compare_discharge->parsed()) {
            write_output(config.out_path,
                         cmd_compare_discharge(config, options.horizon_months), out);
        } else if (compare_traffic->parsed()) {
            write_output(config.out_path, cmd_compare_traffic(config), out);
        } else if (simulate->parsed()) {
            const SimulateReport report = cmd_simulate(config);
            write_output(config.out_path, report.summary, out);
            if (!options.trajectory_out.empty()) {
                write_output(std::optional<std::string>(options.trajectory_out),
                             report.trajectory_csv, out);
            }
        } else if (ingest->parsed()) {
            write_output(config.out_path, cmd_ingest(config), out);
        }
        return 0;
    } catch (const InputError& error) {
        err << "input error: " << error.what() << '\n';
        return 3;
    } catch (const NumericError& error) {
        err << "numeric error: " << error.what() << '\n';
        return 4;
    } catch (const ConfigError& error) {
        err << "config error: " << error.what() << '\n';
        return 2;
    } catch (const DomainError& error) {
        err << "config error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        err << "error: " << error.what() << '\n';
        return 2;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

} // namespace lpwan::cli
