#pragma once

#include <stdexcept>

namespace scsa {

// Real branches of the Lambert W function, the inverse of w -> w*exp(w).
// W0 covers [-1/e, inf) with W0 >= -1; Wm1 covers [-1/e, 0) with Wm1 <= -1.
// Both are accurate to |W e^W - x| <= 1e-12 * max(1, |x|).

// Branch point: W is real only for x >= -1/e.
inline constexpr double kLambertBranchPoint = -0.36787944117144233;

// Inputs up to 1e-15 below the branch point are treated as the branch point
// itself (callers can land there through rounding of exp terms).
double lambert_w0(double x);
double lambert_wm1(double x);

} // namespace scsa
