#include "lpwan/lambert_w.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpwan/errors.hpp"

namespace lpwan {

namespace {

constexpr double kE = 2.718281828459045235360287;
constexpr double kInvE = 0.367879441171442321595523; // 1/e
constexpr double kBranchSlack = 1e-15;
constexpr int kMaxIterations = 50;

// Series around the branch point in p = sqrt(2*(1 + e*z)); w = -1 at p = 0.
double branch_point_series(double p) {
    return -1.0 +
           p * (1.0 +
                p * (-1.0 / 3.0 +
                     p * (11.0 / 72.0 +
                          p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

double initial_guess(double z) {
    if (z < 0.0) {
        const double p = std::sqrt(std::max(0.0, 2.0 * (1.0 + kE * z)));
        return branch_point_series(p);
    }
    if (z <= kE) {
        return z / (1.0 + z);
    }
    const double log_z = std::log(z);
    return log_z - std::log(log_z);
}

} // namespace

LambertWResult lambert_w0_detailed(double z) {
    if (!(z >= -kInvE - kBranchSlack)) { // also rejects NaN
        throw DomainError("Lambert W argument " + std::to_string(z) +
                          " is below the branch point -1/e");
    }
    if (z <= -kInvE) {
        return {-1.0, 0};
    }

    double w = initial_guess(z);
    // Residual target well inside the promised 1e-12 * max(1, |z|); the
    // relative form keeps the lifetime energy balance tight for small z.
    const double tolerance = 1e-13 * std::max(std::abs(z), 1e-290);

    for (int iteration = 0; iteration <= kMaxIterations; ++iteration) {
        const double ew = std::exp(w);
        const double residual = w * ew - z;
        if (std::abs(residual) <= tolerance) {
            return {w, iteration};
        }
        // Halley step for f(w) = w*e^w - z.
        const double w1 = w + 1.0;
        const double denominator = ew * w1 - (w + 2.0) * residual / (2.0 * w1);
        w -= residual / denominator;
    }
    throw NumericError("Lambert W did not converge for z = " + std::to_string(z));
}

double lambert_w0(double z) {
    return lambert_w0_detailed(z).value;
}

} // namespace lpwan
