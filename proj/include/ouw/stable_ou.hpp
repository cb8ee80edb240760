#pragma once
// one-sided stable subordinators, isotropic stable noise, and the
// stable-driven OU process with jump-aware winding tracking

#include <cstddef>
#include <vector>

#include "ouw/rng.hpp"
#include "ouw/simulate.hpp"
#include "ouw/types.hpp"
#include "ouw/windings.hpp"

namespace ouw {

struct SubordinatorPath {
  TimeGrid grid;
  std::vector<double> s;  // s[0] = 0, nondecreasing
  double index = 0.5;     // in (0,1); equals alpha/2 when driving an isotropic process
};

struct OuspJump {
  std::size_t step = 0;  // increment index k: discontinuity lands between t_k and t_{k+1}
  cplx dv;               // realized jump of the path at that step
};

// stable-driven OU path started at 1+0i.  v satisfies the sampled recursion
// exactly; du keeps every raw driving increment so identities can be re-checked
// per step, jumps flags the increments classified as genuine jumps.
struct OuspPath {
  TimeGrid grid;
  std::vector<cplx> v;
  std::vector<cplx> du;
  std::vector<OuspJump> jumps;
  OuParams params;
  SeedSpec seed;
};

// one standard one-sided stable draw, E[exp(-u S)] = exp(-u^index), via
// Kanter's two-uniform construction (exact in law, no rejection)
double sample_positive_stable(double index, Rng& rng);
double sample_positive_stable(double index, SeedSpec seed);

// independent increments, S(dt) distributed as dt^{1/index} * standard draw
SubordinatorPath sample_subordinator(const TimeGrid& grid, double index, SeedSpec seed);

// planar BM read off at clock 2*S(t), started from 1+0i; increments are
// isotropic alpha-stable with E[exp(i<v, U_t - U_0>)] = exp(-t |v|^alpha)
PlanarPath sample_isotropic_stable(const TimeGrid& grid, double alpha, SeedSpec seed);

// an increment counts as a jump when |du| > jump_factor * dclock^{1/alpha}
inline constexpr double default_jump_factor = 3.0;

// v_{k+1} = e^{-lambda dt} (v_k + du_k), driving noise run on the lambda*t
// clock.  zero_noise forces du = 0 (pure decay, for fixtures).
OuspPath sample_ousp(const TimeGrid& grid, const OuParams& params, SeedSpec seed,
                     bool zero_noise = false);

// Euler form of the same law with prescaled noise on the plain t clock:
// v_{k+1} = (1 - lambda dt) v_k + lambda^{1/alpha} du~_k
OuspPath sample_ousp_euler_scaled(const TimeGrid& grid, const OuParams& params, SeedSpec seed);

// winding of a jump path.  Quasi-continuous steps must stay under guard_angle
// (RefinementExhausted otherwise: no stable bridge exists, callers discard and
// count).  Jump steps contribute the principal arg of their chord at any angle;
// SegmentThroughOrigin if such a chord passes within 1e-12 of the origin.
WindingTrace track_winding_jumps(const OuspPath& path, double guard_angle = default_guard_angle);

struct OuspWindingSplit {
  std::vector<double> theta_continuous;  // cumulative arg from quasi-continuous steps
  std::vector<double> theta_jump;        // cumulative arg from jump chords
  std::size_t n_jumps = 0;
};
// same walk as track_winding_jumps; the tracked theta equals the sum of the
// two parts exactly (each step's increment is booked in exactly one of them)
OuspWindingSplit winding_split(const OuspPath& path, double guard_angle = default_guard_angle);

// log |v_k| series; ZeroPoint if the path touches the numerical origin
std::vector<double> ousp_radial(const OuspPath& path);

// per-step reconstruction residuals for the decay-form recursion: the angular
// step minus arg(1 + du/v) and the log-radial step minus (-lambda dt +
// log|1 + du/v|).  Steps rotating past guard_angle are excluded from the max.
struct OuspResiduals {
  double max_theta = 0.0;
  double max_log_r = 0.0;
  std::size_t n_steps = 0;
};
OuspResiduals sde_residuals(const OuspPath& path, double guard_angle = default_guard_angle);

// the normalizing constant of the isotropic Levy measure C |x|^{-2-alpha},
// three ways: the closed form alpha 2^{alpha-1} Gamma(1+alpha/2) / (pi
// Gamma(1-alpha/2)), a commonly misprinted variant with 2^{alpha/2-1}, and a
// numerical assembly from the subordination integral.  printed_consistent
// flags whether the variant agrees with the quadrature (it does not except in
// the alpha -> 0 limit).
struct LevyConstantForms {
  double closed = 0.0;
  double printed = 0.0;
  double quadrature = 0.0;
  bool printed_consistent = false;
};
LevyConstantForms levy_constant_forms(double alpha);

}  // namespace ouw
