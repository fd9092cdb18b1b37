#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lpwan/battery.hpp"
#include "lpwan/duty_cycle.hpp"
#include "lpwan/lifetime.hpp"

namespace lpwan {

enum class DischargeMode {
    // Device dies when cumulative consumption reaches the self-discharge
    // decayed initial capacity E_eff * (1-D)^(t/k_spm).
    PaperBalance,
    // Remaining energy additionally decays each step by (1-D)^(dt/k_spm).
    CompoundDecay,
};

enum class SimTermination { Depleted, TimeCapReached };

struct SimConfig {
    double time_step_s = 1.0;
    DischargeMode discharge_mode = DischargeMode::PaperBalance;
    // Deterministic expectation multiplier on alpha_tx for MAC retransmissions.
    double retransmission_factor = 1.0;
    double max_sim_time_s = 6'307'200'000.0; // 200 years of 365 days
    // Record every Nth step; 0 selects a stride keeping <= 100000 points.
    std::uint64_t trajectory_stride = 0;

    void validate() const;
};

struct TrajectoryPoint {
    double time_s = 0.0;
    double available_j = 0.0;
    double consumed_j = 0.0;
};

struct SimResult {
    double lifetime_s = 0.0;
    SimTermination termination = SimTermination::Depleted;
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t cycles_completed = 0;
};

// Scales alpha_tx by the retransmission factor r >= 1; the idle fraction
// absorbs the difference. Throws InfeasibleCycleError when the inflated
// fractions no longer fit in the period.
ActivationCycle apply_retransmissions(const ActivationCycle& cycle, double factor);

// Steps the proc -> tx -> rx -> idle state machine against the discharging
// battery. Steps are truncated at state boundaries so per-state energy is
// exact for any dt; the depletion instant is interpolated within the final
// step. Deterministic for fixed inputs.
SimResult simulate(const Battery& battery, const PowerProfile& profile,
                   const ActivationCycle& cycle, const SimConfig& config,
                   const ModelConstants& constants = {});

// CSV with header time_s,available_j,consumed_j, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const SimResult& result);

} // namespace lpwan
