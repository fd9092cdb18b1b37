#include "lpwan/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>

namespace lpwan {

namespace {

constexpr const char* kHeaderBare = "time_s,current_a,voltage_v";
constexpr const char* kHeaderLabeled = "time_s,current_a,voltage_v,state";

std::string strip(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = text.find_last_not_of(" \t");
    return text.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(strip(line.substr(start)));
            return fields;
        }
        fields.push_back(strip(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

double parse_number(const std::string& field, long line_number, const char* column) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [parsed_end, errc] = std::from_chars(begin, end, value);
    if (errc != std::errc{} || parsed_end != end || field.empty()) {
        throw ParseError(line_number,
                         std::string("cannot parse ") + column + " value '" + field + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line_number, std::string(column) + " value '" + field +
                                          "' is not finite");
    }
    return value;
}

struct Accumulator {
    double duration_s = 0.0;
    double energy_j = 0.0;
    std::size_t count = 0;
};

StateSegmentation aggregate(const std::vector<TraceSample>& samples,
                            const std::vector<TraceState>& states) {
    std::array<Accumulator, 4> accumulators;
    const std::size_t n = samples.size();
    const double mean_gap =
        n > 1 ? (samples.back().time_s - samples.front().time_s) / static_cast<double>(n - 1)
              : 0.0;

    StateSegmentation segmentation;
    for (std::size_t i = 0; i < n; ++i) {
        const double gap =
            i + 1 < n ? samples[i + 1].time_s - samples[i].time_s : mean_gap;
        if (i + 1 < n) {
            segmentation.max_sample_gap_s = std::max(segmentation.max_sample_gap_s, gap);
        }
        Accumulator& acc = accumulators[static_cast<std::size_t>(states[i])];
        acc.duration_s += gap;
        acc.energy_j += samples[i].power_w() * gap;
        acc.count += 1;
    }

    for (TraceState state : kTraceStates) {
        const Accumulator& acc = accumulators[static_cast<std::size_t>(state)];
        StateAggregate& out = segmentation.by_state(state);
        out.total_duration_s = acc.duration_s;
        out.mean_power_w = acc.duration_s > 0.0 ? acc.energy_j / acc.duration_s : 0.0;
        out.sample_count = acc.count;
        segmentation.trace_span_s += acc.duration_s;
    }
    return segmentation;
}

} // namespace

std::string to_string(TraceState state) {
    switch (state) {
    case TraceState::Tx: return "tx";
    case TraceState::Rx: return "rx";
    case TraceState::Proc: return "proc";
    case TraceState::Idle: return "idle";
    }
    return "?";
}

std::optional<TraceState> trace_state_from_string(const std::string& text) {
    if (text == "tx") return TraceState::Tx;
    if (text == "rx") return TraceState::Rx;
    if (text == "proc") return TraceState::Proc;
    if (text == "idle") return TraceState::Idle;
    return std::nullopt;
}

const StateAggregate& StateSegmentation::by_state(TraceState state) const {
    switch (state) {
    case TraceState::Tx: return tx;
    case TraceState::Rx: return rx;
    case TraceState::Proc: return proc;
    case TraceState::Idle: break;
    }
    return idle;
}

StateAggregate& StateSegmentation::by_state(TraceState state) {
    switch (state) {
    case TraceState::Tx: return tx;
    case TraceState::Rx: return rx;
    case TraceState::Proc: return proc;
    case TraceState::Idle: break;
    }
    return idle;
}

std::vector<TraceSample> parse_trace(std::istream& in) {
    std::vector<TraceSample> samples;
    std::string line;
    long line_number = 0;
    bool header_seen = false;
    bool labeled = false;

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line == kHeaderBare) {
                labeled = false;
            } else if (line == kHeaderLabeled) {
                labeled = true;
            } else {
                throw ParseError(line_number, "expected header '" + std::string(kHeaderBare) +
                                                  "' or '" + kHeaderLabeled + "', got '" +
                                                  line + "'");
            }
            header_seen = true;
            continue;
        }

        const std::vector<std::string> fields = split_fields(line);
        const std::size_t expected = labeled ? 4 : 3;
        if (fields.size() != expected) {
            throw ParseError(line_number, "expected " + std::to_string(expected) +
                                              " fields, got " + std::to_string(fields.size()));
        }

        TraceSample sample;
        sample.time_s = parse_number(fields[0], line_number, "time_s");
        sample.current_a = parse_number(fields[1], line_number, "current_a");
        sample.voltage_v = parse_number(fields[2], line_number, "voltage_v");
        if (sample.time_s < 0.0) {
            throw ParseError(line_number, "time_s must be non-negative");
        }
        if (sample.current_a < 0.0) {
            throw ParseError(line_number, "current_a must be non-negative");
        }
        if (sample.voltage_v <= 0.0) {
            throw ParseError(line_number, "voltage_v must be positive");
        }
        if (labeled) {
            sample.state = trace_state_from_string(fields[3]);
            if (!sample.state) {
                throw ParseError(line_number, "unknown state '" + fields[3] +
                                                  "' (expected tx, rx, proc or idle)");
            }
        }
        if (!samples.empty() && sample.time_s <= samples.back().time_s) {
            throw SequencingError("line " + std::to_string(line_number) +
                                  ": sample times must be strictly increasing");
        }
        samples.push_back(sample);
    }

    if (!header_seen) {
        throw EmptyInputError("trace contains no header");
    }
    if (samples.empty()) {
        throw EmptyInputError("trace contains no samples");
    }
    return samples;
}

StateSegmentation segment_by_label(const std::vector<TraceSample>& samples) {
    std::vector<TraceState> states;
    states.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!samples[i].state) {
            throw MissingLabelError("sample " + std::to_string(i) + " at t=" +
                                    std::to_string(samples[i].time_s) + " s has no state label");
        }
        states.push_back(*samples[i].state);
    }
    return aggregate(samples, states);
}

StateSegmentation segment_by_threshold(const std::vector<TraceSample>& samples,
                                       const CurrentThresholds& thresholds) {
    if (!(thresholds.idle_proc_a < thresholds.proc_rx_a &&
          thresholds.proc_rx_a < thresholds.rx_tx_a)) {
        throw DomainError("current thresholds must be strictly ascending");
    }
    std::vector<TraceState> states;
    states.reserve(samples.size());
    for (const TraceSample& sample : samples) {
        if (sample.current_a < thresholds.idle_proc_a) {
            states.push_back(TraceState::Idle);
        } else if (sample.current_a < thresholds.proc_rx_a) {
            states.push_back(TraceState::Proc);
        } else if (sample.current_a < thresholds.rx_tx_a) {
            states.push_back(TraceState::Rx);
        } else {
            states.push_back(TraceState::Tx);
        }
    }
    return aggregate(samples, states);
}

IngestResult profile_from_segmentation(const StateSegmentation& segmentation,
                                       const TrafficModel& traffic) {
    const double t_activation = traffic.t_activation_s();
    const double span = segmentation.trace_span_s;
    if (span < t_activation * (1.0 - 1e-9)) {
        throw InsufficientTraceError(
            "trace spans " + std::to_string(span) + " s but the " + traffic.name() +
            " traffic model requires at least one full cycle of " +
            std::to_string(t_activation) + " s");
    }

    IngestResult result{PowerProfile{segmentation.tx.mean_power_w, segmentation.rx.mean_power_w,
                                     segmentation.proc.mean_power_w,
                                     segmentation.idle.mean_power_w},
                        ActivationCycle(t_activation,
                                        segmentation.tx.total_duration_s / span,
                                        segmentation.rx.total_duration_s / span,
                                        segmentation.proc.total_duration_s / span),
                        {}};

    double shortest_state_s = std::numeric_limits<double>::infinity();
    for (TraceState state : kTraceStates) {
        const double duration = segmentation.by_state(state).total_duration_s;
        if (duration > 0.0) {
            shortest_state_s = std::min(shortest_state_s, duration);
        }
    }
    if (segmentation.max_sample_gap_s > shortest_state_s) {
        result.warnings.push_back(
            "max sample gap " + std::to_string(segmentation.max_sample_gap_s) +
            " s exceeds the shortest state duration " + std::to_string(shortest_state_s) +
            " s; short consumption peaks may be missed");
    }
    return result;
}

IngestResult ingest_trace(const std::vector<TraceSample>& samples, const TrafficModel& traffic,
                          const std::optional<CurrentThresholds>& thresholds) {
    if (samples.empty()) {
        throw EmptyInputError("trace contains no samples");
    }

    // Keep only whole activation cycles; a trailing fraction would bias the
    // duty-cycle fractions.
    std::vector<TraceSample> trimmed;
    const std::vector<TraceSample>* effective = &samples;
    std::vector<std::string> warnings;
    {
        const std::size_t n = samples.size();
        const double mean_gap =
            n > 1
                ? (samples.back().time_s - samples.front().time_s) / static_cast<double>(n - 1)
                : 0.0;
        const double span = samples.back().time_s - samples.front().time_s + mean_gap;
        const double t_activation = traffic.t_activation_s();
        const double cycles = span / t_activation;
        const double whole_cycles = std::floor(cycles + 1e-9);
        if (whole_cycles >= 1.0 && cycles - whole_cycles > 1e-9) {
            const double cutoff = samples.front().time_s + whole_cycles * t_activation;
            for (const TraceSample& sample : samples) {
                if (sample.time_s < cutoff) {
                    trimmed.push_back(sample);
                }
            }
            if (trimmed.size() < n) {
                warnings.push_back("trace covers " + std::to_string(cycles) +
                                   " activation cycles; trailing fractional cycle truncated");
                effective = &trimmed;
            }
        }
    }

    const StateSegmentation segmentation = thresholds
                                               ? segment_by_threshold(*effective, *thresholds)
                                               : segment_by_label(*effective);
    IngestResult result = profile_from_segmentation(segmentation, traffic);
    result.warnings.insert(result.warnings.begin(), warnings.begin(), warnings.end());
    return result;
}

} // namespace lpwan
