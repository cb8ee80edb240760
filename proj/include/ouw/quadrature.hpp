#pragma once
#include <functional>

namespace ouw {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 12;            // tanh-sinh level doublings per panel
  double truncation_threshold = 1e-16;  // tail panels cut below this fraction of the total
};

// tanh-sinh rule on a finite panel; integrable endpoint singularities are fine
double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       const QuadratureConfig& q);

// integral over [a, infinity) by doubling panels; stops once panels fall below
// truncation_threshold of the running total after the peak has passed
double integrate_half_line(const std::function<double(double)>& f, double a,
                           const QuadratureConfig& q);

}  // namespace ouw
