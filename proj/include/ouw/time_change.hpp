#pragma once
#include <cmath>
#include <complex>

#include "ouw/errors.hpp"
#include "ouw/types.hpp"

namespace ouw {

// below this modulus a point counts as the numerical origin (denormal guard only)
inline constexpr double origin_floor = 1e-300;

// alpha_t = (e^{2 lambda t} - 1) / (2 lambda); identity map at lambda = 0.
// tiny-lambda branch avoids the 0/0 cancellation via the series t(1 + lambda t).
inline double alpha_time(double t, double lambda) {
  if (lambda < 1e-12) return t * (1.0 + lambda * t);
  return std::expm1(2.0 * lambda * t) / (2.0 * lambda);
}

inline double alpha_inverse(double tau, double lambda) {
  if (lambda < 1e-12) return tau * (1.0 - lambda * tau);
  return std::log1p(2.0 * lambda * tau) / (2.0 * lambda);
}

// alpha_time(a + h) - alpha_time(a) without cancellation (h >= 0)
inline double alpha_increment(double a, double h, double lambda) {
  return std::exp(2.0 * lambda * a) * alpha_time(h, lambda);
}

// principal argument of z_next / z_prev, in (-pi, pi]
inline double arg_increment(cplx z_prev, cplx z_next) {
  if (std::abs(z_prev) < origin_floor || std::abs(z_next) < origin_floor)
    throw ZeroPoint("arg_increment: point at numerical origin");
  return std::arg(std::conj(z_prev) * z_next);
}

// log(e^x - 1) for x > 0, stable for both ends
inline double log_expm1(double x) {
  if (x > 30.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

// e^{-lambda(1+a)t} a^{-1/2} sqrt((e^{2 lambda a t}-1)/(e^{2 lambda t}-1)),
// evaluated in log space so large exponents cannot overflow
inline double scaling_factor(double a, double t, double lambda) {
  double ls = -lambda * (1.0 + a) * t - 0.5 * std::log(a) +
              0.5 * (log_expm1(2.0 * lambda * a * t) - log_expm1(2.0 * lambda * t));
  return std::exp(ls);
}

}  // namespace ouw
