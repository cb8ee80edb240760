#pragma once
#include <functional>

#include "ouw/simulate.hpp"
#include "ouw/time_change.hpp"

namespace ouw {

// cumulative winding angle, log-radius, and the inside/outside split along a path.
// theta[k] = theta_plus[k] + theta_minus[k] holds bitwise: each sub-increment is
// added to exactly one bucket and theta is kept as their sum.
struct WindingTrace {
  TimeGrid grid;
  std::vector<double> theta;
  std::vector<double> log_r;
  std::vector<double> theta_plus;   // accrued while |z| >= 1 (left-endpoint rule)
  std::vector<double> theta_minus;  // accrued while |z| < 1
};

enum class Refiner { NONE, BRIDGE };

inline constexpr double default_guard_angle = pi / 4.0;
// a bridge excursion freezes once its cell clock underflows (~1070 halvings
// below a 0.01 grid), so this cap never binds on finite values; it is a
// backstop against non-finite input only
inline constexpr int default_max_depth = 1200;

namespace detail {

// shared walk over all (sub-)increments of a path. For every accepted
// sub-increment the visitor sees (s_left, z_left, dtheta, grid_step_index).
// Steps whose principal-arg increment exceeds the guard are split by exact
// bridge midpoints (BM bridge for BM paths, bridge in alpha-time for OU)
// until the guard is met; the refinement draws come from a dedicated salted
// stream in depth-first order, so a second walk over the same path reproduces
// them bitwise. Throws RefinementExhausted past max_depth.
void walk_winding(const PlanarPath& path, double guard_angle, Refiner refiner, int max_depth,
                  const std::function<void(double, cplx, double, std::size_t)>& visit);

}  // namespace detail

WindingTrace track_winding(const PlanarPath& path, double guard_angle = default_guard_angle,
                           Refiner refiner = Refiner::BRIDGE, int max_depth = default_max_depth);

// terminal (theta_plus, theta_minus); their sum equals theta.back() exactly
std::pair<double, double> decompose(const WindingTrace& trace);

// winding and radial time-change identities evaluated on one shared stream:
// theta deviation = max_k |theta_ou(t_k) - theta_bm(alpha_k)|,
// radial deviation = max_k |log r_ou(t_k) - (log r_bm(alpha_k) - lambda t_k)|.
// Both are pure floating-point noise because the summed complex ratios are
// identical up to a positive real factor.
struct IdentityDeviation {
  double theta = 0.0;
  double log_r = 0.0;
};
IdentityDeviation winding_identity_check(const PlanarPath& shared_bm, double lambda);

// winding accrued on [1, horizon] while |z| >= s^nu (big variant) or
// |z| <= s^{-nu} (small variant); gated at sub-step resolution with the same
// refinement draws as track_winding, so nu = 0 (big) reproduces the
// theta_plus increments on [1, horizon] bitwise. Pass nu = -infinity for an
// always-on indicator.
double nu_winding(const WindingTrace& trace, const PlanarPath& path, double nu,
                  bool small_variant = false, double guard_angle = default_guard_angle,
                  Refiner refiner = Refiner::BRIDGE, int max_depth = default_max_depth);

// winding accumulated on (t0, 1]: plain principal-arg sums over the grid steps
// (no refinement, so interval additivity is exact)
double interval_winding(const PlanarPath& path, double t0);

// built-in bounded test functions for time averages
struct TestFunction {
  enum class Kind { DISK, ANNULUS, ONE } kind = Kind::DISK;
  double r1 = 1.0;
  double r2 = 2.0;
  static TestFunction disk(double r) { return {Kind::DISK, r, 0.0}; }
  static TestFunction annulus(double a, double b) { return {Kind::ANNULUS, a, b}; }
  static TestFunction one() { return {Kind::ONE, 0.0, 0.0}; }
  double operator()(cplx z) const;
};

// left-Riemann time average (1/T) sum f(z_k) dt_k
double ergodic_average(const PlanarPath& path, const TestFunction& f);

}  // namespace ouw
