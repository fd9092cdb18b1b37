#include "lpwan/simulator.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <string>

#include "lpwan/format_util.hpp"

namespace lpwan {

namespace {

constexpr std::uint64_t kMaxAutoTrajectoryPoints = 100'000;

struct StepOutcome {
    bool depleted = false;
    double depletion_time_s = 0.0;
    double depletion_consumed_j = 0.0;
};

} // namespace

void SimConfig::validate() const {
    if (!std::isfinite(time_step_s) || time_step_s <= 0.0) {
        throw DomainError("time step must be > 0 s, got " + std::to_string(time_step_s));
    }
    if (!std::isfinite(retransmission_factor) || retransmission_factor < 1.0) {
        throw DomainError("retransmission factor must be >= 1, got " +
                          std::to_string(retransmission_factor));
    }
    if (!std::isfinite(max_sim_time_s) || max_sim_time_s <= 0.0) {
        throw DomainError("simulation time cap must be > 0 s, got " +
                          std::to_string(max_sim_time_s));
    }
}

ActivationCycle apply_retransmissions(const ActivationCycle& cycle, double factor) {
    if (!std::isfinite(factor) || factor < 1.0) {
        throw DomainError("retransmission factor must be >= 1, got " + std::to_string(factor));
    }
    const double inflated_tx = factor * cycle.alpha_tx();
    if (inflated_tx > 1.0 ||
        inflated_tx + cycle.alpha_rx() + cycle.alpha_proc() > 1.0 + 1e-12) {
        throw InfeasibleCycleError(
            "retransmission factor " + std::to_string(factor) +
            " inflates the duty-cycle fractions beyond one activation period");
    }
    return ActivationCycle(cycle.t_activation_s(), inflated_tx, cycle.alpha_rx(),
                           cycle.alpha_proc());
}

SimResult simulate(const Battery& battery, const PowerProfile& profile,
                   const ActivationCycle& cycle, const SimConfig& config,
                   const ModelConstants& constants) {
    profile.validate();
    config.validate();
    constants.validate();
    const ActivationCycle inflated = apply_retransmissions(cycle, config.retransmission_factor);

    const double t_activation = inflated.t_activation_s();
    // State order within a cycle; idle last so it absorbs rounding remainder.
    const std::array<double, 4> power_w = {profile.p_proc_w, profile.p_tx_w, profile.p_rx_w,
                                           profile.p_idle_w};
    std::array<double, 4> duration_s = {inflated.alpha_proc() * t_activation,
                                        inflated.alpha_tx() * t_activation,
                                        inflated.alpha_rx() * t_activation, 0.0};
    duration_s[3] =
        std::max(0.0, t_activation - (duration_s[0] + duration_s[1] + duration_s[2]));

    // Per-cycle energy prefix sums keep `consumed` free of step-level drift.
    std::array<double, 5> energy_prefix_j = {0.0, 0.0, 0.0, 0.0, 0.0};
    std::array<double, 5> time_prefix_s = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int s = 0; s < 4; ++s) {
        energy_prefix_j[s + 1] = energy_prefix_j[s] + power_w[s] * duration_s[s];
        time_prefix_s[s + 1] = time_prefix_s[s] + duration_s[s];
    }
    const double cycle_energy_j = energy_prefix_j[4];

    const double effective_capacity = battery.effective_capacity_j();
    const double rate = battery.self_discharge_rate();
    const double lambda = rate > 0.0 ? -std::log1p(-rate) / constants.k_spm_s : 0.0;
    const auto budget_at = [&](double t_s) {
        return effective_capacity * std::exp(-lambda * t_s);
    };

    const double dt = config.time_step_s;
    std::uint64_t stride = config.trajectory_stride;
    if (stride == 0) {
        const double expected_steps = config.max_sim_time_s / dt;
        stride = static_cast<std::uint64_t>(
            std::ceil(expected_steps / static_cast<double>(kMaxAutoTrajectoryPoints)));
        stride = std::max<std::uint64_t>(stride, 1);
    }

    SimResult result;
    const auto record = [&result](double time_s, double available_j, double consumed_j) {
        if (!result.trajectory.empty() && time_s <= result.trajectory.back().time_s) {
            return;
        }
        result.trajectory.push_back({time_s, std::max(0.0, available_j), consumed_j});
    };
    record(0.0, effective_capacity, 0.0);

    // CompoundDecay tracks the remaining energy itself.
    double compound_available = effective_capacity;
    std::uint64_t step_count = 0;
    bool capped = false;
    double final_time = 0.0;
    double final_consumed = 0.0;

    for (std::uint64_t cycle_index = 0; !capped; ++cycle_index) {
        const double cycle_start_s = static_cast<double>(cycle_index) * t_activation;
        const double cycle_consumed_j = static_cast<double>(cycle_index) * cycle_energy_j;
        for (int s = 0; s < 4; ++s) {
            if (duration_s[s] <= 0.0) {
                continue;
            }
            const double state_start_s = cycle_start_s + time_prefix_s[s];
            const double state_consumed_j = cycle_consumed_j + energy_prefix_j[s];
            const double power = power_w[s];
            const std::uint64_t chunks =
                static_cast<std::uint64_t>(std::ceil(duration_s[s] / dt));
            for (std::uint64_t k = 0; k < chunks; ++k) {
                const double local_t0 = static_cast<double>(k) * dt;
                double local_t1 = std::min(static_cast<double>(k + 1) * dt, duration_s[s]);
                double t1 = state_start_s + local_t1;
                if (t1 >= config.max_sim_time_s) {
                    t1 = config.max_sim_time_s;
                    local_t1 = t1 - state_start_s;
                    capped = true;
                }
                const double t0 = state_start_s + local_t0;
                const double chunk = local_t1 - local_t0;
                const double c0 = state_consumed_j + power * local_t0;
                const double c1 = state_consumed_j + power * local_t1;

                StepOutcome outcome;
                double available_after = 0.0;
                if (config.discharge_mode == DischargeMode::PaperBalance) {
                    const double headroom0 = budget_at(t0) - c0;
                    const double headroom1 = budget_at(t1) - c1;
                    if (headroom1 <= 0.0) {
                        const double fraction =
                            headroom0 > headroom1 ? headroom0 / (headroom0 - headroom1) : 1.0;
                        outcome.depleted = true;
                        outcome.depletion_time_s = t0 + fraction * chunk;
                        outcome.depletion_consumed_j = c0 + power * fraction * chunk;
                    }
                    available_after = headroom1;
                } else {
                    const double before = compound_available;
                    const double after =
                        before * std::exp(-lambda * chunk) - power * chunk;
                    if (after <= 0.0) {
                        const double fraction = before / (before - after);
                        outcome.depleted = true;
                        outcome.depletion_time_s = t0 + fraction * chunk;
                        outcome.depletion_consumed_j = c0 + power * fraction * chunk;
                    }
                    compound_available = after;
                    available_after = after;
                }

                if (outcome.depleted) {
                    result.lifetime_s = outcome.depletion_time_s;
                    result.termination = SimTermination::Depleted;
                    result.cycles_completed = cycle_index;
                    record(outcome.depletion_time_s, 0.0, outcome.depletion_consumed_j);
                    return result;
                }

                ++step_count;
                if (step_count % stride == 0) {
                    record(t1, available_after, c1);
                }
                if (capped) {
                    final_time = t1;
                    final_consumed = c1;
                    break;
                }
            }
            if (capped) {
                break;
            }
        }
        if (!capped) {
            result.cycles_completed = cycle_index + 1;
        }
    }

    result.lifetime_s = final_time;
    result.termination = SimTermination::TimeCapReached;
    const double final_available = config.discharge_mode == DischargeMode::PaperBalance
                                       ? budget_at(final_time) - final_consumed
                                       : compound_available;
    record(final_time, final_available, final_consumed);
    return result;
}

void write_trajectory_csv(std::ostream& out, const SimResult& result) {
    out << "time_s,available_j,consumed_j\n";
    for (const TrajectoryPoint& point : result.trajectory) {
        out << format_g17(point.time_s) << ',' << format_g17(point.available_j) << ','
            << format_g17(point.consumed_j) << '\n';
    }
}

} // namespace lpwan
