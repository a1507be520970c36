#pragma once

namespace arts::math {

// Error function with absolute error below 1e-10 (Cody-style rational
// approximations). Used instead of std::erf so results do not depend on the
// platform's libm.
double erf(double x);
double erfc(double x);

// Inverse standard normal CDF on (0, 1). Acklam's rational approximation
// refined with one Newton step against erfc.
double inv_normal_cdf(double p);

}  // namespace arts::math
