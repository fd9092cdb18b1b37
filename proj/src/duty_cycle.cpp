#include "lpwan/duty_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpwan {

namespace {

// Slack for fraction sums assembled from divisions.
constexpr double kAlphaSumSlack = 1e-12;

void require_fraction(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        throw DomainError(std::string(name) + " must lie in [0, 1], got " +
                          std::to_string(value));
    }
}

void require_finite_non_negative(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0) {
        throw DomainError(std::string(name) + " must be finite and >= 0, got " +
                          std::to_string(value));
    }
}

void require_finite_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw DomainError(std::string(name) + " must be finite and > 0, got " +
                          std::to_string(value));
    }
}

} // namespace

void PowerProfile::validate() const {
    require_finite_non_negative(p_tx_w, "p_tx");
    require_finite_non_negative(p_rx_w, "p_rx");
    require_finite_non_negative(p_proc_w, "p_proc");
    require_finite_non_negative(p_idle_w, "p_idle");
}

ActivationCycle::ActivationCycle(double t_activation_s, double alpha_tx, double alpha_rx,
                                 double alpha_proc)
    : t_activation_s_(t_activation_s),
      alpha_tx_(alpha_tx),
      alpha_rx_(alpha_rx),
      alpha_proc_(alpha_proc) {
    require_finite_positive(t_activation_s, "t_activation");
    require_fraction(alpha_tx, "alpha_tx");
    require_fraction(alpha_rx, "alpha_rx");
    require_fraction(alpha_proc, "alpha_proc");
    const double sum = alpha_tx + alpha_rx + alpha_proc;
    if (sum > 1.0 + kAlphaSumSlack) {
        throw InfeasibleCycleError("duty-cycle fractions sum to " + std::to_string(sum) +
                                   ", which exceeds 1");
    }
}

double ActivationCycle::alpha_idle() const {
    return std::max(0.0, 1.0 - (alpha_tx_ + alpha_rx_ + alpha_proc_));
}

TrafficModel TrafficModel::custom(double t_activation_s) {
    if (!std::isfinite(t_activation_s) || t_activation_s <= 0.0) {
        throw DomainError("custom traffic model requires a period > 0 s, got " +
                          std::to_string(t_activation_s));
    }
    return TrafficModel(Preset::Custom, t_activation_s);
}

TrafficModel TrafficModel::from_name(const std::string& name) {
    if (name == "1/day") return one_msg_per_day();
    if (name == "1/hour") return one_msg_per_hour();
    if (name == "10/hour") return ten_msg_per_hour();
    throw DomainError("unknown traffic model '" + name +
                      "' (expected 1/day, 1/hour or 10/hour)");
}

std::string TrafficModel::name() const {
    switch (preset_) {
    case Preset::OneMsgPerDay: return "1/day";
    case Preset::OneMsgPerHour: return "1/hour";
    case Preset::TenMsgPerHour: return "10/hour";
    case Preset::Custom: break;
    }
    return "custom(" + std::to_string(t_activation_s_) + " s)";
}

ActivationCycle cycle_from_durations(double d_tx_s, double d_rx_s, double d_proc_s,
                                     double t_activation_s) {
    require_finite_non_negative(d_tx_s, "tx duration");
    require_finite_non_negative(d_rx_s, "rx duration");
    require_finite_non_negative(d_proc_s, "proc duration");
    require_finite_positive(t_activation_s, "t_activation");
    const double busy = d_tx_s + d_rx_s + d_proc_s;
    if (busy > t_activation_s) {
        throw InfeasibleCycleError("state durations sum to " + std::to_string(busy) +
                                   " s, longer than the " + std::to_string(t_activation_s) +
                                   " s activation period");
    }
    return ActivationCycle(t_activation_s, d_tx_s / t_activation_s, d_rx_s / t_activation_s,
                           d_proc_s / t_activation_s);
}

double alpha_tx_from_message(double s_msg_bits, double b_tx_bps, double t_activation_s) {
    require_finite_positive(s_msg_bits, "message size");
    require_finite_positive(b_tx_bps, "bitrate");
    require_finite_positive(t_activation_s, "t_activation");
    const double airtime_s = s_msg_bits / b_tx_bps;
    if (airtime_s > t_activation_s) {
        throw InfeasibleCycleError("message airtime " + std::to_string(airtime_s) +
                                   " s exceeds the activation period");
    }
    return airtime_s / t_activation_s;
}

double average_power(const PowerProfile& profile, const ActivationCycle& cycle) {
    profile.validate();
    return profile.p_tx_w * cycle.alpha_tx() + profile.p_rx_w * cycle.alpha_rx() +
           profile.p_proc_w * cycle.alpha_proc() + profile.p_idle_w * cycle.alpha_idle();
}

StateEnergies state_energies_over_period(const PowerProfile& profile,
                                         const ActivationCycle& cycle, double t_s) {
    profile.validate();
    require_finite_non_negative(t_s, "elapsed time");
    StateEnergies energies;
    energies.e_tx_j = profile.p_tx_w * cycle.alpha_tx() * t_s;
    energies.e_rx_j = profile.p_rx_w * cycle.alpha_rx() * t_s;
    energies.e_proc_j = profile.p_proc_w * cycle.alpha_proc() * t_s;
    energies.e_stby_j = profile.p_idle_w * cycle.alpha_idle() * t_s;
    return energies;
}

double dynamic_power(double alpha_dyn, double c_eff_f, double f_hz, double v_v) {
    require_fraction(alpha_dyn, "activity factor");
    require_finite_positive(c_eff_f, "effective capacitance");
    require_finite_positive(f_hz, "frequency");
    require_finite_positive(v_v, "supply voltage");
    return alpha_dyn * c_eff_f * f_hz * v_v * v_v;
}

double traffic_model_activation(const TrafficModel& model) {
    return model.t_activation_s();
}

} // namespace lpwan
