#include "ouw/special.hpp"

#include <cmath>
#include <stdexcept>

#include "ouw/types.hpp"

namespace ouw {
namespace {

// Lanczos, g = 7, 9 terms
constexpr double lanczos_c[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_log_gamma(double x) {
  // x >= 0.5 here
  double xm1 = x - 1.0;
  double acc = lanczos_c[0];
  for (int i = 1; i < 9; ++i) acc += lanczos_c[i] / (xm1 + i);
  double base = xm1 + 7.5;
  return 0.91893853320467274178 + (xm1 + 0.5) * std::log(base) - base + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("log_gamma: pole");
  if (x < 0.5) {
    // reflection through sin(pi x)
    return std::log(pi / std::abs(std::sin(pi * x))) - log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("gamma_fn: pole");
  if (x < 0.5) return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
  return std::exp(lanczos_log_gamma(x));
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("norm_quantile: p outside (0,1)");
  // Wichura's rational fits: central |p - 1/2| <= 0.425, then two tail bands
  constexpr double a[8] = {3.3871328727963666080,     1.3314166789178437745e+2,
                           1.9715909503065514427e+3,  1.3731693765509461125e+4,
                           4.5921953931549871457e+4,  6.7265770927008700853e+4,
                           3.3430575583588128105e+4,  2.5090809287301226727e+3};
  constexpr double b[8] = {1.0,                       4.2313330701600911252e+1,
                           6.8718700749205790830e+2,  5.3941960214247511077e+3,
                           2.1213794301586595867e+4,  3.9307895800092710610e+4,
                           2.8729085735721942674e+4,  5.2264952788528545610e+3};
  constexpr double c[8] = {1.42343711074968357734,    4.63033784615654529590,
                           5.76949722146069140550,    3.64784832476320460504,
                           1.27045825245236838258,    2.41780725177450611770e-1,
                           2.27238449892691845833e-2, 7.74545014278341407640e-4};
  constexpr double d[8] = {1.0,                       2.05319162663775882187,
                           1.67638483018380384940,    6.89767334985100004550e-1,
                           1.48103976427480074590e-1, 1.51986665636164571966e-2,
                           5.47593808499534494600e-4, 1.05075007164441684324e-9};
  constexpr double e[8] = {6.65790464350110377720,    5.46378491116411436990,
                           1.78482653991729133580,    2.96560571828504891230e-1,
                           2.65321895265761230930e-2, 1.24266094738807843860e-3,
                           2.71155556874348757815e-5, 2.01033439929228813265e-7};
  constexpr double f[8] = {1.0,                       5.99832206555887937690e-1,
                           1.36929880922735805310e-1, 1.48753612908506148525e-2,
                           7.86869131145613259100e-4, 1.84631831751005468180e-6,
                           1.42151175831644588870e-15};
  auto poly = [](const double (&k)[8], double z) {
    double acc = k[7];
    for (int i = 6; i >= 0; --i) acc = acc * z + k[i];
    return acc;
  };
  double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    double r = 0.180625 - q * q;
    return q * poly(a, r) / poly(b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = poly(c, r) / poly(d, r);
  } else {
    r -= 5.0;
    val = poly(e, r) / poly(f, r);
  }
  return q < 0.0 ? -val : val;
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("expint_e1: needs x > 0");
  if (x <= 1.0) {
    // -gamma - log x + sum (-1)^{k+1} x^k / (k k!)
    double sum = 0.0, p = 1.0;
    for (int k = 1; k < 64; ++k) {
      p *= -x / k;
      double term = p / k;
      sum += term;
      if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
    }
    return -euler_gamma - std::log(x) - sum;
  }
  // continued fraction e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))), Lentz
  double bb = x + 1.0;
  double cc = 1e308;
  double dd = 1.0 / bb;
  double h = dd;
  for (int i = 1; i <= 200; ++i) {
    double an = -double(i) * double(i);
    bb += 2.0;
    dd = 1.0 / (bb + an * dd);
    cc = bb + an / cc;
    double del = cc * dd;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x);
}

}  // namespace ouw
