#pragma once

namespace ouw {

// Euler's constant, 20 significant digits
inline constexpr double euler_gamma = 0.57721566490153286061;

// Lanczos (g=7, 9 terms), relative error ~1e-14 on the positive axis
double log_gamma(double x);
double gamma_fn(double x);

// standard normal cdf via erfc
double norm_cdf(double x);

// Wichura-style rational approximation, absolute error ~1e-15
double norm_quantile(double p);

// exponential integral E1(x), x > 0 (series for x <= 1, continued fraction beyond)
double expint_e1(double x);

}  // namespace ouw
