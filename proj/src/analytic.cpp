#include "ouw/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "ouw/errors.hpp"
#include "ouw/special.hpp"

namespace ouw {

double cauchy_cdf(double x, double scale) {
  return 0.5 + std::atan(x / scale) / pi;
}

double CauchyLaw::cdf(double x) const { return cauchy_cdf(x, scale); }

double CauchyLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("CauchyLaw::quantile: p outside (0,1)");
  return scale * std::tan(pi * (p - 0.5));
}

double expected_log_exit_bm(double c, const QuadratureConfig& q) {
  if (!(c > 0.0)) throw std::domain_error("expected_log_exit_bm: needs c > 0");
  auto g = [c](double z) { return std::log(std::sinh(c * z)) / std::cosh(0.5 * pi * z); };
  // (0,1] carries the log singularity: fold it onto a half line via z = e^{-v}
  double inner = integrate_half_line([&](double v) {
    double z = std::exp(-v);
    return g(z) * z;
  }, 0.0, q);
  double outer = integrate_half_line(g, 1.0, q);
  return 2.0 * (inner + outer) + std::log(2.0) + euler_gamma;
}

double sinh4_moment_integral(double c, const QuadratureConfig& q) {
  if (!(c > 0.0 && c < pi / 8.0))
    throw std::domain_error("sinh4_moment_integral: needs 0 < c < pi/8");
  // sinh^4(cz)/cosh(pi z/2) expanded into pure decaying exponentials:
  // every rate k - pi/2 with k in {4c, 2c, 0, -2c, -4c} is negative for c < pi/8
  auto term = [](double k, double z) {
    return 2.0 * std::exp((k - 0.5 * pi) * z) / (1.0 + std::exp(-pi * z));
  };
  auto f = [&](double z) {
    return (term(4.0 * c, z) + term(-4.0 * c, z) - 4.0 * term(2.0 * c, z) -
            4.0 * term(-2.0 * c, z) + 6.0 * term(0.0, z)) / 16.0;
  };
  return integrate_half_line(f, 0.0, q);
}

double sinh4_moment_closed(double c) {
  if (!(c > 0.0 && c < pi / 8.0))
    throw std::domain_error("sinh4_moment_closed: needs 0 < c < pi/8");
  double s2 = std::sin(c) * std::sin(c);
  return s2 * s2 * (5.0 - 6.0 * s2) / (std::cos(4.0 * c) * std::cos(2.0 * c));
}

double sinh2_moment_closed(double c) {
  if (!(c > 0.0 && c < pi / 4.0))
    throw std::domain_error("sinh2_moment_closed: needs 0 < c < pi/4");
  double s = std::sin(c);
  return s * s / std::cos(2.0 * c);
}

double exit_density_beta(double x, double c) {
  if (!(c > 0.0)) throw std::domain_error("exit_density_beta: needs c > 0");
  return 1.0 / (2.0 * c * std::cosh(pi * x / (2.0 * c)));
}

double laplace_exit_level(double mu, double r, double lambda, const QuadratureConfig& q) {
  if (!(mu > 0.0 && r >= 0.0 && lambda > 0.0))
    throw std::domain_error("laplace_exit_level: needs mu > 0, r >= 0, lambda > 0");
  double kappa = mu / (2.0 * lambda);
  double rs = 2.0 * r * std::sqrt(lambda);  // G(t) = t + rs sqrt(t)

  if (kappa >= 1.0) {
    // t = e^w puts the saddle of kappa w - e^w - rs e^{w/2} in plain view
    double y = 0.5 * (-0.5 * rs + std::sqrt(0.25 * rs * rs + 4.0 * kappa));
    double w_star = 2.0 * std::log(y);
    auto g = [&](double w) {
      double ew = std::exp(w);
      return kappa * w - ew - rs * std::sqrt(ew);
    };
    double m = g(w_star);
    auto h = [&](double w) { return std::exp(g(w) - m); };
    double body = integrate_panel(h, w_star - 70.0, w_star, q) +
                  integrate_panel(h, w_star, w_star + 30.0, q);
    return std::exp(m - log_gamma(kappa)) * body;
  }

  // small kappa: t = y^{1/kappa} absorbs the t^{kappa-1} endpoint singularity
  auto integrand_unit = [&](double y) {
    double t = std::pow(y, 1.0 / kappa);
    return std::exp(-t - rs * std::sqrt(t)) / kappa;
  };
  double head = integrate_panel(integrand_unit, 0.0, 1.0, q);
  double tail = integrate_half_line([&](double t) {
    return std::pow(t, kappa - 1.0) * std::exp(-t - rs * std::sqrt(t));
  }, 1.0, q);
  return std::exp(-log_gamma(kappa)) * (head + tail);
}

double invariant_disk_mass(double r, double lambda) {
  if (!(r >= 0.0 && lambda > 0.0))
    throw std::domain_error("invariant_disk_mass: needs r >= 0, lambda > 0");
  return -std::expm1(-lambda * r * r);
}

}  // namespace ouw
