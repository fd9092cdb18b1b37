#pragma once

#include <string>

#include "lpwan/battery.hpp"

namespace lpwan {

// Unit bridges between per-month discharge rates, per-second power draw and
// reported years. The defaults are a 30-day month and a 365-day year.
struct ModelConstants {
    double k_spm_s = 2'592'000.0;
    double seconds_per_year_s = 31'536'000.0;

    void validate() const;
};

enum class LifetimeModel {
    Ideal,
    ExponentialSelfDischarge,
    LinearSelfDischarge,
    OracleBisection,
    Simulated,
};

std::string to_string(LifetimeModel model);

enum class DischargeCurve { Exponential, Linear };

// Echo of the parameters a lifetime was solved from.
struct LifetimeInputs {
    double effective_capacity_j = 0.0;
    double p_avg_w = 0.0;
    double self_discharge_rate = 0.0;
    double k_spm_s = 0.0;
};

struct LifetimeEstimate {
    // Distinguished marker for zero consumption with zero self-discharge;
    // when set, lifetime_s and lifetime_years are meaningless.
    bool infinite = false;
    double lifetime_s = 0.0;
    double lifetime_years = 0.0;
    LifetimeModel model = LifetimeModel::Ideal;
    LifetimeInputs inputs;
};

// t = E / P. Zero consumption yields the infinite marker.
LifetimeEstimate lifetime_ideal(double effective_capacity_j, double p_avg_w,
                                const ModelConstants& constants = {});

// Solves p*t = E_eff * (1-D)^(t/k_spm) in closed form. With
// lambda = -ln(1-D)/k_spm the solution is t = W0(lambda*E_eff/p) / lambda,
// which degenerates to E_eff/p as D -> 0.
LifetimeEstimate lifetime_exponential(const Battery& battery, double p_avg_w,
                                      const ModelConstants& constants = {});

// Solves p*t = E_eff * (1 - D*t/k_spm): t = E_eff / (p + E_eff*D/k_spm).
// Finite even at p = 0 when D > 0 (the hard bound k_spm/D).
LifetimeEstimate lifetime_linear(const Battery& battery, double p_avg_w,
                                 const ModelConstants& constants = {});

// Independent check on the closed forms: bisects the depletion time of the
// chosen capacity curve on [0, 200 years] to 1e-6 s (at most 60 halvings).
// Throws BracketError when the device outlives the bracket.
LifetimeEstimate lifetime_oracle(const Battery& battery, double p_avg_w,
                                 const ModelConstants& constants, DischargeCurve curve);

} // namespace lpwan
