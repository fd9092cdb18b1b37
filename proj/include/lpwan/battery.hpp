#pragma once

#include "lpwan/errors.hpp"

namespace lpwan {

constexpr double kJoulesPerWattHour = 3600.0;

// Single-use battery: nominal capacity, monthly self-discharge rate D and the
// fraction of the nominal capacity actually deliverable above the chip
// voltage threshold.
class Battery {
public:
    // capacity_j > 0, 0 <= self_discharge_rate < 1, 0 < usable_fraction <= 1.
    Battery(double capacity_j, double self_discharge_rate, double usable_fraction = 1.0);

    static Battery from_watt_hours(double capacity_wh, double self_discharge_rate,
                                   double usable_fraction = 1.0);

    double capacity_j() const { return capacity_j_; }
    double self_discharge_rate() const { return self_discharge_rate_; }
    double usable_fraction() const { return usable_fraction_; }
    double effective_capacity_j() const { return capacity_j_ * usable_fraction_; }

private:
    double capacity_j_;
    double self_discharge_rate_;
    double usable_fraction_;
};

// Q = I * t. Inputs must be non-negative.
double charge_from_current_time(double current_a, double duration_s);

// E = Q * V. Inputs must be non-negative.
double energy_from_charge(double charge_c, double voltage_v);

// Industry-unit convenience: amp-hours at an average voltage, in watt-hours.
double energy_wh_from_amp_hours(double amp_hours, double voltage_v);

// Usable capacity left after t months of exponential self-discharge:
// E0 * (1 - D)^t. Constant when D = 0, strictly positive for all finite t.
double remaining_capacity_exponential(const Battery& battery, double t_months);

// Linear variant E0 * (1 - D*t), clamped at zero from t = 1/D onwards.
double remaining_capacity_linear(const Battery& battery, double t_months);

} // namespace lpwan
