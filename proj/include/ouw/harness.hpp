#pragma once
// experiment registry: each experiment draws its own seeds, runs one study,
// and reports gated checks plus free-form metrics

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ouw/simulate.hpp"
#include "ouw/stable_ou.hpp"
#include "ouw/types.hpp"
#include "ouw/windings.hpp"

namespace ouw {

enum class Experiment {
  SPITZER,        // long-time winding law vs Cauchy
  SMALL_TIME,     // short-time Gaussian winding limit
  RADIAL_LARGE,   // long-time radius: log-decay and stationary modulus law
  RADIAL_SMALL,   // short-time radius marginal from the origin
  EXIT_IDENTITY,  // cone-exit engine vs time-changed direct engine
  BOUGEROL,       // hitting-time identity through an exact radial draw
  TAIL_4C_PI,     // double-cone survival tail constant 4c/pi
  LAMBDA_LARGE,   // exit-time means at large drift rates
  LAMBDA_SMALL,   // drift-rate sensitivity of the exit-time mean
  ANGLE_SMALL,    // narrow-cone exit-time moments
  ANGLE_LARGE,    // wide-cone exit-time scale
  BIG_SMALL,      // positive/negative winding split at long times
  NU_WINDINGS,    // threshold-filtered winding laws across nu
  ERGODIC,        // single-path occupation average vs invariant mass
  INTERVAL,       // late-interval winding law vs Cauchy
  OUSP_SCALING,   // stable-driven OU: rate-scaling of the winding law
  OUSP_SDE,       // stable-driven OU: per-step identity residuals
  SUBORDINATOR,   // one-sided stable draws: Laplace transform and closed form
};

std::vector<Experiment> all_experiments();
std::string_view experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::SPITZER;
  double lambda = 1.0;
  double alpha = 2.0;       // driving-noise index where it applies
  double c = 0.5;           // cone half-angle, where it applies
  double t_end = 0.0;       // horizon; 0 picks the experiment default
  double step = 0.0;        // grid or engine step override; 0 picks the default
  std::size_t n_paths = 0;  // 0 picks the experiment default
  std::uint64_t master_seed = 20250825;
};
ExperimentConfig default_config(Experiment e);

// round-trip through the versioned JSON schema in docs/config.schema.json
std::string config_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

enum class GateKind {
  ABS_TOL,      // pass iff |value - target| <= tol
  UPPER_BOUND,  // pass iff value <= target
  LOWER_BOUND,  // pass iff value >= target
};

struct GateResult {
  std::string name;
  GateKind kind = GateKind::ABS_TOL;
  double value = 0.0;
  double target = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct Metric {
  std::string name;
  double value = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<GateResult> gates;
  std::vector<Metric> metrics;
  double wall_seconds = 0.0;
  bool pass = true;  // conjunction of gate passes
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentReport> run_all(std::uint64_t master_seed = 20250825);

ExperimentReport run_spitzer(const ExperimentConfig& cfg);
ExperimentReport run_small_time(const ExperimentConfig& cfg);
ExperimentReport run_radial_large(const ExperimentConfig& cfg);
ExperimentReport run_radial_small(const ExperimentConfig& cfg);
ExperimentReport run_exit_identity(const ExperimentConfig& cfg);
ExperimentReport run_bougerol(const ExperimentConfig& cfg);
ExperimentReport run_tail_4c_pi(const ExperimentConfig& cfg);
ExperimentReport run_lambda_large(const ExperimentConfig& cfg);
ExperimentReport run_lambda_small(const ExperimentConfig& cfg);
ExperimentReport run_angle_small(const ExperimentConfig& cfg);
ExperimentReport run_angle_large(const ExperimentConfig& cfg);
ExperimentReport run_big_small(const ExperimentConfig& cfg);
ExperimentReport run_nu_windings(const ExperimentConfig& cfg);
ExperimentReport run_ergodic(const ExperimentConfig& cfg);
ExperimentReport run_interval(const ExperimentConfig& cfg);
ExperimentReport run_ousp_scaling(const ExperimentConfig& cfg);
ExperimentReport run_ousp_sde(const ExperimentConfig& cfg);
ExperimentReport run_subordinator(const ExperimentConfig& cfg);

// derive the per-experiment master seed; path streams then index from 0
std::uint64_t experiment_seed(std::uint64_t master_seed, Experiment e);

// uniform grid for winding studies: dt <= min(0.01, 0.01 / lambda)
TimeGrid grid_for(double lambda, double horizon);

// streaming formats (see docs/formats.md)
void write_path_csv(const PlanarPath& path, std::ostream& os);      // t,re,im
void write_trace_csv(const WindingTrace& trace, std::ostream& os);  // t,theta,log_r,theta_plus,theta_minus
void write_jumps_csv(const OuspPath& path, std::ostream& os);       // t,dRe,dIm
void write_path_json(const PlanarPath& path, std::ostream& os);
void write_trace_json(const WindingTrace& trace, std::ostream& os);

// one line, no newline; timing is excluded so the bytes depend only on the seed
std::string report_json(const ExperimentReport& report);
// one JSON object per line; the first line is an isolated timestamp object
void write_reports_jsonl(const std::vector<ExperimentReport>& reports, const std::string& path);
std::string render_report_table(const std::vector<ExperimentReport>& reports);

}  // namespace ouw
