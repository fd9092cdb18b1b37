#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpwan/duty_cycle.hpp"
#include "lpwan/errors.hpp"

namespace lpwan {

enum class TraceState { Tx, Rx, Proc, Idle };

constexpr std::array<TraceState, 4> kTraceStates = {TraceState::Tx, TraceState::Rx,
                                                    TraceState::Proc, TraceState::Idle};

std::string to_string(TraceState state);
std::optional<TraceState> trace_state_from_string(const std::string& text);

// One measured current/voltage point; power is the instantaneous v*i.
struct TraceSample {
    double time_s = 0.0;
    double current_a = 0.0;
    double voltage_v = 0.0;
    std::optional<TraceState> state;

    double power_w() const { return current_a * voltage_v; }
};

struct StateAggregate {
    double total_duration_s = 0.0;
    double mean_power_w = 0.0;
    std::size_t sample_count = 0;
};

// Per-state aggregates. Each sample owns the interval to the next sample;
// the last sample owns the mean interval, so the state durations always sum
// to trace_span_s.
struct StateSegmentation {
    StateAggregate tx;
    StateAggregate rx;
    StateAggregate proc;
    StateAggregate idle;
    double trace_span_s = 0.0;
    double max_sample_gap_s = 0.0;

    const StateAggregate& by_state(TraceState state) const;
    StateAggregate& by_state(TraceState state);
};

// Ascending current thresholds splitting the four state bands:
// below idle_proc_a -> idle, then proc, then rx, at or above rx_tx_a -> tx.
// Samples exactly at a threshold go to the upper band.
struct CurrentThresholds {
    double idle_proc_a = 0.0;
    double proc_rx_a = 0.0;
    double rx_tx_a = 0.0;
};

// Reads the trace CSV format: header `time_s,current_a,voltage_v[,state]`,
// `#` comment lines ignored, scientific notation accepted. Throws ParseError
// (with line number), SequencingError on non-monotone time and
// EmptyInputError when no data rows are present.
std::vector<TraceSample> parse_trace(std::istream& in);

// Aggregates samples by their labels; every sample must carry one.
StateSegmentation segment_by_label(const std::vector<TraceSample>& samples);

// Aggregates samples by classifying currents against the thresholds.
StateSegmentation segment_by_threshold(const std::vector<TraceSample>& samples,
                                       const CurrentThresholds& thresholds);

struct IngestResult {
    PowerProfile profile;
    ActivationCycle cycle;
    std::vector<std::string> warnings;
};

// Turns a segmentation into the measured model parameters: per-state mean
// powers and duty-cycle fractions over the trace span, with the activation
// period taken from the traffic model. Requires at least one full cycle of
// trace. Appends a warning when the sampling is too coarse for the shortest
// observed state.
IngestResult profile_from_segmentation(const StateSegmentation& segmentation,
                                       const TrafficModel& traffic);

// Full offline-measurement pipeline: optional truncation of a trailing
// fractional cycle, label or threshold segmentation, then parameter
// extraction.
IngestResult ingest_trace(const std::vector<TraceSample>& samples, const TrafficModel& traffic,
                          const std::optional<CurrentThresholds>& thresholds = std::nullopt);

} // namespace lpwan
