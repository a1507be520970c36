// Test-only numeric oracles, independent of the library's analytic paths:
// adaptive Simpson quadrature and a bisection root finder.
#pragma once

#include <cmath>
#include <functional>

namespace oracle {

namespace detail {

inline double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double m, double fm, double whole, double tol,
                    int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int depth = 48) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return detail::adapt(f, a, fa, b, fb, m, fm, detail::simpson(fa, fm, fb, a, b), tol,
                       depth);
}

// Bisection on [lo, hi]; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
