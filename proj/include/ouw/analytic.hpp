#pragma once
#include "ouw/quadrature.hpp"
#include "ouw/types.hpp"

namespace ouw {

// Cauchy law C_sigma; quantile is the inverse of cdf
struct CauchyLaw {
  double scale = 1.0;
  double cdf(double x) const;
  double quantile(double p) const;
};

double cauchy_cdf(double x, double scale);

// E[log of the symmetric-cone exit time of planar BM] as an explicit integral:
// 2 int_0^inf dz/cosh(pi z/2) log(sinh(cz)) + log 2 + euler_gamma
double expected_log_exit_bm(double c, const QuadratureConfig& q = {});

// int_0^inf sinh^4(cz)/cosh(pi z/2) dz, convergent for c < pi/8
double sinh4_moment_integral(double c, const QuadratureConfig& q = {});

// closed form of the same integral: (1/8)(sec 4c - 4 sec 2c + 3),
// evaluated in the cancellation-free rewrite sin^4 c (5 - 6 sin^2 c)/(cos 4c cos 2c)
double sinh4_moment_closed(double c);

// (sec 2c - 1)/2 = sin^2 c / cos 2c; equals the mean symmetric-cone exit time
double sinh2_moment_closed(double c);

// density (1/2c)/cosh(x pi / 2c) of the Brownian coordinate at the cone exit
double exit_density_beta(double x, double c);

// E[exp(-mu T)] for the level-r hitting time of the time-changed radial process:
// (1/Gamma(kappa)) int_0^inf t^{kappa-1} e^{-t - 2 r sqrt(lambda t)} dt, kappa = mu/(2 lambda)
double laplace_exit_level(double mu, double r, double lambda, const QuadratureConfig& q = {});

// mass of the invariant Gaussian measure on the disk of radius r: 1 - e^{-lambda r^2}
double invariant_disk_mass(double r, double lambda);

}  // namespace ouw
