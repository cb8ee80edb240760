#pragma once
#include <optional>

#include "ouw/rng.hpp"
#include "ouw/types.hpp"

namespace ouw {

enum class Boundary { SINGLE, DOUBLE };

struct ExitSample {
  double c = 0.0;
  Boundary boundary = Boundary::DOUBLE;
  double t_bm = 0.0;    // BM winding exit time (or the horizon when censored)
  double t_ou = 0.0;    // transformed value; filled by apply_transform
  bool censored = false;
};

struct ExitOptions {
  double rho = 0.0075;           // angular-variance per step ~ rho * dist^2 near the boundary
  double dh_max = 0.06;          // cap keeps per-step rotation well inside the guard
  double dist_floor_frac = 0.05; // resolution floor as a fraction of min(c, 1)
  double h_cap = 1e5;            // angular-variance budget safety cap
  bool adaptive = true;          // false: constant angular-variance steps (= rho), seed-aligned across c
  double guard_angle = pi / 4.0;
  // refinement freezes once a chord's clock underflows (~1040 halvings below
  // dh_max), so this backstop never binds on finite input
  int max_depth = 1200;
};

// First time the BM winding from 1 reaches c (SINGLE: theta = c; DOUBLE: |theta| = c).
// Steps are sized by angular variance (dt = dH |z|^2) so the cost per path is
// nearly independent of c; every step draws one bridge uniform used for the
// boundary-crossing correction, and crossing times are interpolated inside the
// final sub-step. step > 0 overrides rho. censored = true once t exceeds the horizon.
ExitSample sample_exit_bm(double c, Boundary boundary, double horizon, double step, SeedSpec seed,
                          const ExitOptions& opt = {});

// (1/2 lambda) log(1 + 2 lambda t); equals alpha_inverse(t, lambda)
double transform_exit(double t_bm, double lambda);

// fills t_ou = transform_exit(t_bm) (censored samples carry the transformed horizon)
ExitSample apply_transform(ExitSample s, double lambda);

// independent-discretization cross-check: exact OU transitions stepped directly
// in process time with fine near-boundary resolution, no bridge correction.
// horizon is in OU time; t_bm is filled with alpha_time(t_ou).
ExitSample sample_exit_ou_direct(double c, Boundary boundary, double horizon, double lambda,
                                 double step, SeedSpec seed);

// the winding of an independent OU at the level-r hitting time of the driving
// real OU, both from 1; the hitting time is drawn exactly via T = r^2/N^2 on the
// alpha clock. Law: Cauchy with scale arcsinh(r). Throws CensoredDraw if the
// drawn horizon exceeds the internal cap.
double sample_bougerol_exit(double r, double lambda, SeedSpec seed);

// BM winding at a fixed alpha-time horizon (no boundary), same engine
double bm_winding_at(double tau, SeedSpec seed, const ExitOptions& opt = {});

// 2 lambda t * P(transformed exit time > t), estimated over n_paths BM exits
// (exit time > t iff the BM exit exceeds alpha_time(t)); also returns the
// censored fraction among the survivors' runs
struct TailEstimate {
  double statistic = 0.0;    // 2 lambda t * P_hat
  double p_hat = 0.0;
  double se_statistic = 0.0;
  std::size_t n = 0;
};
TailEstimate tail_probability(double c, double lambda, double t, std::size_t n_paths,
                              std::uint64_t master_seed, double step = 0.0075);

enum class Regime { SMALL_C, LARGE_C };

// rescaled exit-time sample for one c: SMALL_C returns T/c^2 over the symmetric
// cone; LARGE_C returns lambda*T_ou/c over the single boundary (censored draws
// are +infinity for quantile purposes). Horizons follow the stated defaults:
// 50 c^2 for SMALL_C, alpha_inverse(e^{3c}/(2 lambda)) for LARGE_C.
struct RescaledExit {
  std::vector<double> values;    // censored entries excluded
  std::size_t n_total = 0;
  std::size_t n_censored = 0;
  double censor_level = 0.0;     // rescaled value of the horizon
};
RescaledExit rescaled_exit_stats(double c, double lambda, Regime regime, Boundary boundary,
                                 std::size_t n_paths, std::uint64_t master_seed,
                                 double step = 0.0075);

// large-lambda: estimate(lambda) = mean(log(1 + 2 lambda T)) - log(2 lambda)
//   (equals 2 lambda * mean transformed exit time, re-centred);
// small-lambda: slope(lambda) = mean((alpha_inverse(T, lambda) - T)/lambda).
// Both transform one shared BM exit set per call (coupled across lambdas).
struct LambdaPoint {
  double lambda = 0.0;
  double estimate = 0.0;
  double se = 0.0;
};
std::vector<LambdaPoint> lambda_large_estimates(double c, const std::vector<double>& lambdas,
                                                std::size_t n_paths, std::uint64_t master_seed);
std::vector<LambdaPoint> lambda_small_slopes(double c, const std::vector<double>& lambdas,
                                             std::size_t n_paths, std::uint64_t master_seed);
// mean exit time of the same symmetric-cone sample, with its SE
LambdaPoint mean_exit_time(double c, std::size_t n_paths, std::uint64_t master_seed);

}  // namespace ouw
