#include "lpwan/lifetime.hpp"

#include <cmath>

#include "lpwan/errors.hpp"
#include "lpwan/lambert_w.hpp"

namespace lpwan {

namespace {

constexpr double kOracleHorizonYears = 200.0;
constexpr double kOracleToleranceS = 1e-6;
constexpr int kOracleMaxSteps = 60;

LifetimeEstimate finite_estimate(double lifetime_s, LifetimeModel model,
                                 const LifetimeInputs& inputs, const ModelConstants& constants) {
    LifetimeEstimate estimate;
    estimate.lifetime_s = lifetime_s;
    estimate.lifetime_years = lifetime_s / constants.seconds_per_year_s;
    estimate.model = model;
    estimate.inputs = inputs;
    return estimate;
}

LifetimeEstimate infinite_estimate(LifetimeModel model, const LifetimeInputs& inputs) {
    LifetimeEstimate estimate;
    estimate.infinite = true;
    estimate.model = model;
    estimate.inputs = inputs;
    return estimate;
}

void require_power(double p_avg_w, bool allow_zero) {
    if (!std::isfinite(p_avg_w) || p_avg_w < 0.0 || (!allow_zero && p_avg_w == 0.0)) {
        throw DomainError("average power must be finite and " +
                          std::string(allow_zero ? ">= 0" : "> 0") + " W, got " +
                          std::to_string(p_avg_w));
    }
}

} // namespace

void ModelConstants::validate() const {
    if (!std::isfinite(k_spm_s) || k_spm_s <= 0.0) {
        throw DomainError("seconds per month must be > 0, got " + std::to_string(k_spm_s));
    }
    if (!std::isfinite(seconds_per_year_s) || seconds_per_year_s <= 0.0) {
        throw DomainError("seconds per year must be > 0, got " +
                          std::to_string(seconds_per_year_s));
    }
}

std::string to_string(LifetimeModel model) {
    switch (model) {
    case LifetimeModel::Ideal: return "ideal";
    case LifetimeModel::ExponentialSelfDischarge: return "exponential_self_discharge";
    case LifetimeModel::LinearSelfDischarge: return "linear_self_discharge";
    case LifetimeModel::OracleBisection: return "oracle_bisection";
    case LifetimeModel::Simulated: return "simulated";
    }
    return "unknown";
}

LifetimeEstimate lifetime_ideal(double effective_capacity_j, double p_avg_w,
                                const ModelConstants& constants) {
    constants.validate();
    if (!std::isfinite(effective_capacity_j) || effective_capacity_j <= 0.0) {
        throw DomainError("effective capacity must be > 0 J, got " +
                          std::to_string(effective_capacity_j));
    }
    require_power(p_avg_w, /*allow_zero=*/true);
    const LifetimeInputs inputs{effective_capacity_j, p_avg_w, 0.0, constants.k_spm_s};
    if (p_avg_w == 0.0) {
        return infinite_estimate(LifetimeModel::Ideal, inputs);
    }
    return finite_estimate(effective_capacity_j / p_avg_w, LifetimeModel::Ideal, inputs,
                           constants);
}

LifetimeEstimate lifetime_exponential(const Battery& battery, double p_avg_w,
                                      const ModelConstants& constants) {
    constants.validate();
    require_power(p_avg_w, /*allow_zero=*/false);
    const double capacity_j = battery.effective_capacity_j();
    const double rate = battery.self_discharge_rate();
    const LifetimeInputs inputs{capacity_j, p_avg_w, rate, constants.k_spm_s};
    if (rate == 0.0) {
        return finite_estimate(capacity_j / p_avg_w, LifetimeModel::ExponentialSelfDischarge,
                               inputs, constants);
    }
    // Decay constant per second; log1p keeps small rates accurate.
    const double lambda = -std::log1p(-rate) / constants.k_spm_s;
    const double w = lambert_w0(lambda * capacity_j / p_avg_w);
    return finite_estimate(w / lambda, LifetimeModel::ExponentialSelfDischarge, inputs,
                           constants);
}

LifetimeEstimate lifetime_linear(const Battery& battery, double p_avg_w,
                                 const ModelConstants& constants) {
    constants.validate();
    require_power(p_avg_w, /*allow_zero=*/true);
    const double capacity_j = battery.effective_capacity_j();
    const double rate = battery.self_discharge_rate();
    const LifetimeInputs inputs{capacity_j, p_avg_w, rate, constants.k_spm_s};
    if (p_avg_w == 0.0 && rate == 0.0) {
        return infinite_estimate(LifetimeModel::LinearSelfDischarge, inputs);
    }
    const double lifetime_s =
        capacity_j / (p_avg_w + capacity_j * rate / constants.k_spm_s);
    return finite_estimate(lifetime_s, LifetimeModel::LinearSelfDischarge, inputs, constants);
}

LifetimeEstimate lifetime_oracle(const Battery& battery, double p_avg_w,
                                 const ModelConstants& constants, DischargeCurve curve) {
    constants.validate();
    require_power(p_avg_w, /*allow_zero=*/false);

    const auto remaining = [&](double t_s) {
        const double t_months = t_s / constants.k_spm_s;
        return curve == DischargeCurve::Exponential
                   ? remaining_capacity_exponential(battery, t_months)
                   : remaining_capacity_linear(battery, t_months);
    };
    // Depletion is the zero of consumed(t) - remaining(t), negative at t = 0.
    const auto depletion_gap = [&](double t_s) { return p_avg_w * t_s - remaining(t_s); };

    double low = 0.0;
    double high = kOracleHorizonYears * constants.seconds_per_year_s;
    if (depletion_gap(high) < 0.0) {
        throw BracketError("no depletion within " + std::to_string(high) +
                           " s; lifetime exceeds the oracle horizon");
    }
    for (int step = 0; step < kOracleMaxSteps && (high - low) > kOracleToleranceS; ++step) {
        const double mid = 0.5 * (low + high);
        if (depletion_gap(mid) < 0.0) {
            low = mid;
        } else {
            high = mid;
        }
    }

    const LifetimeInputs inputs{battery.effective_capacity_j(), p_avg_w,
                                battery.self_discharge_rate(), constants.k_spm_s};
    return finite_estimate(0.5 * (low + high), LifetimeModel::OracleBisection, inputs,
                           constants);
}

} // namespace lpwan
