#pragma once

namespace lpwan {

struct LambertWResult {
    double value = 0.0;
    int iterations = 0; // Halley steps taken
};

// Principal branch W0 of the Lambert W function, the inverse of x*exp(x) on
// [-1, inf). Valid for z >= -1/e (an absolute slack of 1e-15 is tolerated at
// the branch point, where W0 = -1). The result satisfies
// |w*exp(w) - z| <= 1e-12 * max(1, |z|).
//
// Implementation: a branch-appropriate initial guess (branch-point series for
// z < 0, rational seed on [0, e], asymptotic log form above e) refined by
// Halley steps, capped at 50. Throws DomainError below the branch point and
// NumericError on non-convergence.
LambertWResult lambert_w0_detailed(double z);

double lambert_w0(double z);

} // namespace lpwan
