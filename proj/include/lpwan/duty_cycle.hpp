#pragma once

#include <string>

#include "lpwan/errors.hpp"

namespace lpwan {

// Average power drawn in each of the four operational states.
struct PowerProfile {
    double p_tx_w = 0.0;
    double p_rx_w = 0.0;
    double p_proc_w = 0.0;
    double p_idle_w = 0.0;

    // Throws DomainError unless all powers are finite and >= 0.
    void validate() const;
};

// One activation period split into tx/rx/proc fractions; the idle fraction is
// always the remainder, so the four fractions sum to one by construction.
class ActivationCycle {
public:
    // Each fraction must lie in [0, 1] and their sum must not exceed 1.
    ActivationCycle(double t_activation_s, double alpha_tx, double alpha_rx, double alpha_proc);

    double t_activation_s() const { return t_activation_s_; }
    double alpha_tx() const { return alpha_tx_; }
    double alpha_rx() const { return alpha_rx_; }
    double alpha_proc() const { return alpha_proc_; }
    double alpha_idle() const;

private:
    double t_activation_s_;
    double alpha_tx_;
    double alpha_rx_;
    double alpha_proc_;
};

// Message-rate presets used to normalize measurements across technologies.
class TrafficModel {
public:
    enum class Preset { OneMsgPerDay, OneMsgPerHour, TenMsgPerHour, Custom };

    static TrafficModel one_msg_per_day() { return TrafficModel(Preset::OneMsgPerDay, 86'400.0); }
    static TrafficModel one_msg_per_hour() { return TrafficModel(Preset::OneMsgPerHour, 3'600.0); }
    static TrafficModel ten_msg_per_hour() { return TrafficModel(Preset::TenMsgPerHour, 360.0); }
    static TrafficModel custom(double t_activation_s);

    // Accepts "1/day", "1/hour" and "10/hour".
    static TrafficModel from_name(const std::string& name);

    Preset preset() const { return preset_; }
    double t_activation_s() const { return t_activation_s_; }
    std::string name() const;

private:
    TrafficModel(Preset preset, double t_activation_s)
        : preset_(preset), t_activation_s_(t_activation_s) {}

    Preset preset_;
    double t_activation_s_;
};

// Per-state energies accumulated over an elapsed time (not per cycle).
struct StateEnergies {
    double e_tx_j = 0.0;
    double e_rx_j = 0.0;
    double e_proc_j = 0.0;
    double e_stby_j = 0.0;

    double total_j() const { return e_tx_j + e_rx_j + e_proc_j + e_stby_j; }
};

// Builds a cycle from per-state dwell times within one activation period.
// Throws InfeasibleCycleError when the dwell times exceed the period.
ActivationCycle cycle_from_durations(double d_tx_s, double d_rx_s, double d_proc_s,
                                     double t_activation_s);

// Transmit fraction implied by sending one message of s_msg bits per
// activation at bitrate b_tx: (s_msg / b_tx) / t_activation.
double alpha_tx_from_message(double s_msg_bits, double b_tx_bps, double t_activation_s);

// Duty-cycle weighted mean power: sum of P_i * alpha_i.
double average_power(const PowerProfile& profile, const ActivationCycle& cycle);

// E_i = P_i * alpha_i * t for each state; the components sum to
// average_power * t.
StateEnergies state_energies_over_period(const PowerProfile& profile,
                                         const ActivationCycle& cycle, double t_s);

// CMOS dynamic power alpha * C * f * V^2, a helper for estimating P_proc.
double dynamic_power(double alpha_dyn, double c_eff_f, double f_hz, double v_v);

// Activation period of a traffic preset, in seconds.
double traffic_model_activation(const TrafficModel& model);

} // namespace lpwan
