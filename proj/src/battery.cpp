#include "lpwan/battery.hpp"

#include <cmath>
#include <string>

namespace lpwan {

namespace {

void require_finite_non_negative(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0) {
        throw DomainError(std::string(name) + " must be finite and >= 0, got " +
                          std::to_string(value));
    }
}

} // namespace

Battery::Battery(double capacity_j, double self_discharge_rate, double usable_fraction)
    : capacity_j_(capacity_j),
      self_discharge_rate_(self_discharge_rate),
      usable_fraction_(usable_fraction) {
    if (!std::isfinite(capacity_j) || capacity_j <= 0.0) {
        throw DomainError("battery capacity must be finite and > 0 J, got " +
                          std::to_string(capacity_j));
    }
    if (!std::isfinite(self_discharge_rate) || self_discharge_rate < 0.0 ||
        self_discharge_rate >= 1.0) {
        throw DomainError("self-discharge rate D must lie in [0, 1) per month, got " +
                          std::to_string(self_discharge_rate));
    }
    if (!std::isfinite(usable_fraction) || usable_fraction <= 0.0 || usable_fraction > 1.0) {
        throw DomainError("usable fraction must lie in (0, 1], got " +
                          std::to_string(usable_fraction));
    }
}

Battery Battery::from_watt_hours(double capacity_wh, double self_discharge_rate,
                                 double usable_fraction) {
    return Battery(capacity_wh * kJoulesPerWattHour, self_discharge_rate, usable_fraction);
}

double charge_from_current_time(double current_a, double duration_s) {
    require_finite_non_negative(current_a, "current");
    require_finite_non_negative(duration_s, "duration");
    return current_a * duration_s;
}

double energy_from_charge(double charge_c, double voltage_v) {
    require_finite_non_negative(charge_c, "charge");
    require_finite_non_negative(voltage_v, "voltage");
    return charge_c * voltage_v;
}

double energy_wh_from_amp_hours(double amp_hours, double voltage_v) {
    require_finite_non_negative(amp_hours, "charge");
    require_finite_non_negative(voltage_v, "voltage");
    return amp_hours * voltage_v;
}

double remaining_capacity_exponential(const Battery& battery, double t_months) {
    require_finite_non_negative(t_months, "time in months");
    return battery.effective_capacity_j() *
           std::pow(1.0 - battery.self_discharge_rate(), t_months);
}

double remaining_capacity_linear(const Battery& battery, double t_months) {
    require_finite_non_negative(t_months, "time in months");
    const double fraction_left = 1.0 - battery.self_discharge_rate() * t_months;
    if (fraction_left <= 0.0) {
        return 0.0;
    }
    return battery.effective_capacity_j() * fraction_left;
}

} // namespace lpwan
