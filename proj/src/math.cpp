#include "arts/math.hpp"

#include <cmath>
#include <stdexcept>

namespace arts::math {
namespace {

// Rational coefficients from W. J. Cody, "Rational Chebyshev approximation
// for the error function", Math. Comp. 23 (1969). Same constants as the
// netlib SPECFUN calerf routine; absolute error is a few ulp.
constexpr double kErfA[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                             3.77485237685302021e02, 3.20937758913846947e03,
                             1.85777706184603153e-1};
constexpr double kErfB[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                             1.28261652607737228e03, 2.84423683343917062e03};

constexpr double kErfcC[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                              6.61191906371416295e01, 2.98635138197400131e02,
                              8.81952221241769090e02, 1.71204761263407058e03,
                              2.05107837782607147e03, 1.23033935479799725e03,
                              2.15311535474403846e-8};
constexpr double kErfcD[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                              5.37181101862009858e02, 1.62138957456669019e03,
                              3.29079923573345963e03, 4.36261909014324716e03,
                              3.43936767414372164e03, 1.23033935480374942e03};

constexpr double kErfcP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                              1.25781726111229246e-1, 1.60837851487422766e-2,
                              6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kErfcQ[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                              5.27905102951428412e-1, 6.05183413124413191e-2,
                              2.33520497626869185e-3};

constexpr double kThresh = 0.46875;
constexpr double kInvSqrtPi = 5.6418958354775628695e-1;
constexpr double kXBig = 26.543;  // erfc underflows to 0 beyond this

// erf on [-kThresh, kThresh]
double erf_small(double x) {
  const double z = x * x;
  double num = kErfA[4] * z;
  double den = z;
  for (int i = 0; i < 3; ++i) {
    num = (num + kErfA[i]) * z;
    den = (den + kErfB[i]) * z;
  }
  return x * (num + kErfA[3]) / (den + kErfB[3]);
}

// exp(-y^2) evaluated as exp(-ysq^2)*exp(-del) with ysq a 1/16 grid point,
// which keeps the cancellation error of y*y out of the exponential.
double exp_minus_y_sq(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

// erfc on [kThresh, inf)
double erfc_positive(double y) {
  if (y > kXBig) return 0.0;
  if (y <= 4.0) {
    double num = kErfcC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kErfcC[i]) * y;
      den = (den + kErfcD[i]) * y;
    }
    return exp_minus_y_sq(y) * (num + kErfcC[7]) / (den + kErfcD[7]);
  }
  const double z = 1.0 / (y * y);
  double num = kErfcP[5] * z;
  double den = z;
  for (int i = 0; i < 4; ++i) {
    num = (num + kErfcP[i]) * z;
    den = (den + kErfcQ[i]) * z;
  }
  double r = z * (num + kErfcP[4]) / (den + kErfcQ[4]);
  r = (kInvSqrtPi - r) / y;
  return exp_minus_y_sq(y) * r;
}

}  // namespace

double erf(double x) {
  const double y = std::abs(x);
  if (y <= kThresh) return erf_small(x);
  const double r = 1.0 - erfc_positive(y);
  return x < 0.0 ? -r : r;
}

double erfc(double x) {
  const double y = std::abs(x);
  if (y <= kThresh) return 1.0 - erf_small(x);
  const double r = erfc_positive(y);
  return x < 0.0 ? 2.0 - r : r;
}

double inv_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("inv_normal_cdf: p must lie in (0, 1)");

  // Acklam's approximation, |relative error| < 1.15e-9.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  // One Newton step: Phi(x) = erfc(-x/sqrt(2))/2, phi(x) = exp(-x^2/2)/sqrt(2*pi).
  const double sqrt2 = 1.4142135623730950488;
  const double sqrt_two_pi = 2.5066282746310005024;
  const double err = 0.5 * erfc(-x / sqrt2) - p;
  x -= err * sqrt_two_pi * std::exp(0.5 * x * x);
  return x;
}

}  // namespace arts::math
