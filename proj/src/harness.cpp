#include "ouw/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "ouw/analytic.hpp"
#include "ouw/errors.hpp"
#include "ouw/exit_cone.hpp"
#include "ouw/parallel.hpp"
#include "ouw/special.hpp"
#include "ouw/stats.hpp"
#include "ouw/time_change.hpp"

namespace ouw {
namespace {

using nlohmann::json;

struct NameEntry {
  Experiment e;
  std::string_view name;
};

constexpr NameEntry kNames[] = {
    {Experiment::SPITZER, "spitzer"},
    {Experiment::SMALL_TIME, "small-time"},
    {Experiment::RADIAL_LARGE, "radial-large"},
    {Experiment::RADIAL_SMALL, "radial-small"},
    {Experiment::EXIT_IDENTITY, "exit-identity"},
    {Experiment::BOUGEROL, "bougerol"},
    {Experiment::TAIL_4C_PI, "tail-4c-pi"},
    {Experiment::LAMBDA_LARGE, "lambda-large"},
    {Experiment::LAMBDA_SMALL, "lambda-small"},
    {Experiment::ANGLE_SMALL, "angle-small"},
    {Experiment::ANGLE_LARGE, "angle-large"},
    {Experiment::BIG_SMALL, "big-small"},
    {Experiment::NU_WINDINGS, "nu-windings"},
    {Experiment::ERGODIC, "ergodic"},
    {Experiment::INTERVAL, "interval"},
    {Experiment::OUSP_SCALING, "ousp-scaling"},
    {Experiment::OUSP_SDE, "ousp-sde"},
    {Experiment::SUBORDINATOR, "subordinator"},
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

GateResult abs_gate(std::string name, double value, double target, double tol,
                    std::string note = "") {
  GateResult g;
  g.name = std::move(name);
  g.kind = GateKind::ABS_TOL;
  g.value = value;
  g.target = target;
  g.tol = tol;
  g.pass = std::isfinite(value) && std::abs(value - target) <= tol;
  g.note = std::move(note);
  return g;
}

GateResult upper_gate(std::string name, double value, double bound, std::string note = "") {
  GateResult g;
  g.name = std::move(name);
  g.kind = GateKind::UPPER_BOUND;
  g.value = value;
  g.target = bound;
  g.pass = std::isfinite(value) && value <= bound;
  g.note = std::move(note);
  return g;
}

GateResult lower_gate(std::string name, double value, double bound, std::string note = "") {
  GateResult g;
  g.name = std::move(name);
  g.kind = GateKind::LOWER_BOUND;
  g.value = value;
  g.target = bound;
  g.pass = std::isfinite(value) && value >= bound;
  g.note = std::move(note);
  return g;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// run fn over paths; each fills a fixed-width row. Discarding exceptions
// (guard/origin/censor events) blank the row with NaN and are counted.
std::vector<double> collect_rows(std::size_t n_paths, std::size_t width,
                                 const std::function<void(std::size_t, double*)>& fn,
                                 std::size_t* discarded = nullptr) {
  std::vector<double> rows(n_paths * width, std::nan(""));
  std::atomic<std::size_t> bad{0};
  parallel_for(n_paths, [&](std::size_t i) {
    try {
      fn(i, rows.data() + i * width);
    } catch (const RefinementExhausted&) {
      ++bad;
    } catch (const SegmentThroughOrigin&) {
      ++bad;
    } catch (const ZeroPoint&) {
      ++bad;
    } catch (const CensoredDraw&) {
      ++bad;
    }
  });
  if (discarded) *discarded = bad.load();
  return rows;
}

std::vector<double> column(const std::vector<double>& rows, std::size_t width, std::size_t col) {
  std::vector<double> out;
  out.reserve(rows.size() / width);
  for (std::size_t i = col; i < rows.size(); i += width)
    if (!std::isnan(rows[i])) out.push_back(rows[i]);
  return out;
}

double fraction_above(const std::vector<double>& xs, double bound) {
  std::size_t k = 0;
  for (double v : xs)
    if (std::abs(v) > bound) ++k;
  return xs.empty() ? std::nan("") : double(k) / double(xs.size());
}

void finish(ExperimentReport& rep, const Timer& timer) {
  rep.wall_seconds = timer.seconds();
  rep.pass = true;
  for (const auto& g : rep.gates) rep.pass = rep.pass && g.pass;
}

std::size_t pick(std::size_t cfg_value, std::size_t fallback) {
  return cfg_value == 0 ? fallback : cfg_value;
}
double pick(double cfg_value, double fallback) { return cfg_value == 0.0 ? fallback : cfg_value; }

}  // namespace

std::vector<Experiment> all_experiments() {
  std::vector<Experiment> out;
  for (const auto& e : kNames) out.push_back(e.e);
  return out;
}

std::string_view experiment_name(Experiment e) {
  for (const auto& n : kNames)
    if (n.e == e) return n.name;
  throw std::invalid_argument("experiment_name: unknown experiment");
}

std::optional<Experiment> experiment_from_name(std::string_view name) {
  for (const auto& n : kNames)
    if (n.name == name) return n.e;
  return std::nullopt;
}

std::uint64_t experiment_seed(std::uint64_t master_seed, Experiment e) {
  return master_seed ^ mix64(fnv1a(experiment_name(e)));
}

TimeGrid grid_for(double lambda, double horizon) {
  return TimeGrid::uniform(horizon, std::min(0.01, 0.01 / std::max(lambda, 1e-12)));
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::SPITZER: c.t_end = 15.0; c.n_paths = 100000; c.step = 0.01; break;
    case Experiment::SMALL_TIME: c.t_end = 1e-4; c.n_paths = 100000; break;
    case Experiment::RADIAL_LARGE: c.t_end = 40.0; c.n_paths = 100000; break;
    case Experiment::RADIAL_SMALL: c.t_end = 1e-4; c.n_paths = 100000; break;
    case Experiment::EXIT_IDENTITY: c.c = 0.5; c.t_end = 1000.0; c.n_paths = 100000; break;
    case Experiment::BOUGEROL: c.c = 1.1752011936438014569; c.n_paths = 100000; break;
    case Experiment::TAIL_4C_PI: c.c = 0.3; c.t_end = 8.0; c.n_paths = 1000000; break;
    case Experiment::LAMBDA_LARGE: c.c = 0.3; c.n_paths = 100000; break;
    case Experiment::LAMBDA_SMALL: c.c = 0.2; c.n_paths = 200000; break;
    case Experiment::ANGLE_SMALL: c.c = 0.05; c.n_paths = 100000; break;
    case Experiment::ANGLE_LARGE: c.c = 6.0; c.n_paths = 10000; break;
    case Experiment::BIG_SMALL: c.t_end = 15.0; c.n_paths = 100000; c.step = 0.01; break;
    case Experiment::NU_WINDINGS: c.t_end = 60.0; c.n_paths = 20000; c.step = 0.01; break;
    case Experiment::ERGODIC: c.t_end = 200.0; c.n_paths = 1; c.step = 0.002; break;
    case Experiment::INTERVAL: c.t_end = 10.0; c.n_paths = 100000; c.step = 0.01; break;
    case Experiment::OUSP_SCALING:
      c.lambda = 2.0; c.alpha = 1.0; c.t_end = 3.0; c.step = 5e-4; c.n_paths = 100000; break;
    case Experiment::OUSP_SDE:
      c.lambda = 1.0; c.alpha = 1.0; c.t_end = 5.0; c.step = 1e-3; c.n_paths = 100; break;
    case Experiment::SUBORDINATOR: c.n_paths = 1000000; break;
  }
  return c;
}

std::string config_json(const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["experiment"] = std::string(experiment_name(cfg.experiment));
  j["lambda"] = cfg.lambda;
  j["alpha"] = cfg.alpha;
  j["c"] = cfg.c;
  j["t_end"] = cfg.t_end;
  j["step"] = cfg.step;
  j["n_paths"] = cfg.n_paths;
  j["master_seed"] = cfg.master_seed;
  return j.dump();
}

ExperimentConfig config_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("schema_version", 0) != 1)
    throw std::invalid_argument("config_from_json: unsupported schema_version");
  auto e = experiment_from_name(j.at("experiment").get<std::string>());
  if (!e) throw std::invalid_argument("config_from_json: unknown experiment");
  ExperimentConfig cfg = default_config(*e);
  if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
  if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
  if (j.contains("c")) cfg.c = j["c"].get<double>();
  if (j.contains("t_end")) cfg.t_end = j["t_end"].get<double>();
  if (j.contains("step")) cfg.step = j["step"].get<double>();
  if (j.contains("n_paths")) cfg.n_paths = j["n_paths"].get<std::size_t>();
  if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
  return cfg;
}

// ---------------------------------------------------------------------------
// experiments

ExperimentReport run_spitzer(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::SPITZER);
  double lambda = cfg.lambda;
  double t_end = pick(cfg.t_end, 15.0);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  TimeGrid grid = cfg.step > 0.0 ? TimeGrid::uniform(t_end, std::min(cfg.step, 0.01 / std::max(lambda, 1.0)))
                                 : grid_for(lambda, t_end);
  std::size_t steps = grid.size() - 1;
  std::size_t rec[3] = {steps / 3, 2 * steps / 3, steps};
  double times[3] = {grid.t[rec[0]], grid.t[rec[1]], grid.t[rec[2]]};

  OuParams params;
  params.lambda = lambda;
  std::size_t discarded = 0;
  auto rows = collect_rows(n, 3, [&](std::size_t i, double* row) {
    PlanarPath p = sample_ou_exact(grid, params, {ms, i});
    WindingTrace tr = track_winding(p);
    for (int j = 0; j < 3; ++j) row[j] = tr.theta[rec[j]];
  }, &discarded);

  double ks[3];
  for (int j = 0; j < 3; ++j) {
    auto th = column(rows, 3, j);
    for (double& v : th) v /= times[j];
    EmpiricalDist d(std::move(th));
    ks[j] = ks_distance(d, [&](double x) { return cauchy_cdf(x, lambda); });
    rep.metrics.push_back({"ks_t" + std::to_string(int(times[j])), ks[j]});
    if (j == 2) {
      double iqr_scale = d.half_iqr();
      rep.gates.push_back(abs_gate("scale_recovery", iqr_scale, lambda, 0.10 * lambda,
                                   "half-IQR of theta/t vs drift rate"));
    }
  }
  rep.gates.push_back(upper_gate("ks_decreasing_mid", ks[1], ks[0]));
  rep.gates.push_back(upper_gate("ks_decreasing_final", ks[2], ks[1]));
  rep.gates.push_back(upper_gate("ks_final", ks[2], 0.05));
  rep.gates.push_back(upper_gate("discard_fraction", double(discarded) / double(n), 1e-4));

  // flat-clock comparison: the same statistic for plain BM converges only at
  // log rate, reported side by side.  Auxiliary metric, so a capped sample is
  // enough (ks noise ~0.01).
  std::size_t n_bm = std::min<std::size_t>(n, 20000);
  auto bm_rows = collect_rows(n_bm, 1, [&](std::size_t i, double* row) {
    row[0] = bm_winding_at(t_end, {ms, 2'000'000 + i});
  });
  auto bm_theta = column(bm_rows, 1, 0);
  for (double& v : bm_theta) v = 2.0 * v / std::log(t_end);
  EmpiricalDist bm_d(std::move(bm_theta));
  rep.metrics.push_back(
      {"ks_bm_log_clock", ks_distance(bm_d, [](double x) { return cauchy_cdf(x, 1.0); })});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_small_time(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::SMALL_TIME);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double t_small = pick(cfg.t_end, 1e-4);

  auto theta_stat = [](double lambda, double t, double s, Rng& rng) {
    // one exact transition from 1; at these horizons a full turn is impossible
    double h = s * t;
    double sd = std::sqrt(ou_step_variance(h, lambda));
    cplx z = std::exp(-lambda * h) * cplx{1.0, 0.0} + sd * rng.gaussian_pair();
    return arg_increment({1.0, 0.0}, z) / std::sqrt(t);
  };

  // decreasing KS across shrinking t at the configured rate
  double ks_t[3];
  double ts[3] = {1e-2, 1e-3, t_small};
  for (int j = 0; j < 3; ++j) {
    auto rows = collect_rows(n, 1, [&](std::size_t i, double* row) {
      Rng rng({ms, i}, kSaltPath + std::uint64_t(j + 1));
      row[0] = theta_stat(cfg.lambda, ts[j], 1.0, rng);
    });
    EmpiricalDist d(column(rows, 1, 0));
    ks_t[j] = ks_distance(d, [](double x) { return norm_cdf(x); });
    char buf[64];
    std::snprintf(buf, sizeof buf, "ks_t_%g", ts[j]);
    rep.metrics.push_back({buf, ks_t[j]});
  }
  rep.gates.push_back(upper_gate("ks_decreasing_mid", ks_t[1], ks_t[0]));
  rep.gates.push_back(upper_gate("ks_decreasing_final", ks_t[2], ks_t[1]));

  // the three drift rates at the smallest t; all should look standard normal
  double lams[3] = {0.1, cfg.lambda, 10.0};
  double ks_l[3];
  for (int j = 0; j < 3; ++j) {
    auto rows = collect_rows(n, 1, [&](std::size_t i, double* row) {
      Rng rng({ms, i}, kSaltPath + std::uint64_t(10 + j));
      row[0] = theta_stat(lams[j], t_small, 1.0, rng);
    });
    EmpiricalDist d(column(rows, 1, 0));
    ks_l[j] = ks_distance(d, [](double x) { return norm_cdf(x); });
    char buf[64];
    std::snprintf(buf, sizeof buf, "ks_lambda_%g", lams[j]);
    rep.gates.push_back(upper_gate(buf, ks_l[j], 0.02));
  }
  double ks_min = std::min({ks_l[0], ks_l[1], ks_l[2]});
  double ks_max = std::max({ks_l[0], ks_l[1], ks_l[2]});
  rep.gates.push_back(upper_gate("ks_lambda_spread", ks_max / ks_min, 2.0,
                                 "rate-insensitivity of the short-time law"));

  // variance of the statistic at doubled time matches the BM limit clock
  auto rows = collect_rows(n, 1, [&](std::size_t i, double* row) {
    Rng rng({ms, i}, kSaltPath + 20);
    row[0] = theta_stat(cfg.lambda, t_small, 2.0, rng);
  });
  EmpiricalDist d2(column(rows, 1, 0));
  rep.gates.push_back(abs_gate("variance_s2", d2.sample_variance(), 2.0, 0.10));

  finish(rep, timer);
  return rep;
}

ExperimentReport run_radial_large(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::RADIAL_LARGE);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double lambda = cfg.lambda;
  double ts[3] = {10.0, 20.0, pick(cfg.t_end, 40.0)};

  auto rows = collect_rows(n, 4, [&](std::size_t i, double* row) {
    Rng rng({ms, i}, kSaltPath);
    for (int j = 0; j < 3; ++j) {
      double t = ts[j];
      double sd = std::sqrt(ou_step_variance(t, lambda));
      cplx z = std::exp(-lambda * t) * cplx{1.0, 0.0} + sd * rng.gaussian_pair();
      row[j] = std::log(std::abs(z)) / t;
      if (j == 2) row[3] = std::norm(z);
    }
  });

  double p[3];
  for (int j = 0; j < 3; ++j) {
    p[j] = fraction_above(column(rows, 4, j), 0.05);
    rep.metrics.push_back({"p_t" + std::to_string(int(ts[j])), p[j]});
  }
  rep.gates.push_back(upper_gate("p_decreasing_mid", p[1], p[0]));
  rep.gates.push_back(upper_gate("p_decreasing_final", p[2], p[1]));
  rep.gates.push_back(upper_gate("p_final", p[2], 0.01,
                                 "stationary-law floor sits near 0.018 at this horizon"));

  EmpiricalDist r2(column(rows, 4, 3));
  double ks = ks_distance(r2, [&](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-lambda * x); });
  rep.gates.push_back(upper_gate("ks_modulus_sq_exponential", ks, 0.01));

  finish(rep, timer);
  return rep;
}

ExperimentReport run_radial_small(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::RADIAL_SMALL);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double lambda = cfg.lambda;
  double t = pick(cfg.t_end, 1e-4);

  // started at the origin the short-time radius is an exact planar Gaussian
  // modulus; the half-normal comparison is recorded, not asserted
  double ss[2] = {1.0, 2.0};
  for (int j = 0; j < 2; ++j) {
    double h = ss[j] * t;
    double sd = std::sqrt(ou_step_variance(h, lambda));
    auto rows = collect_rows(n, 1, [&](std::size_t i, double* row) {
      Rng rng({ms, i}, kSaltPath + std::uint64_t(j));
      row[0] = std::abs(sd * rng.gaussian_pair()) / std::sqrt(t);
    });
    EmpiricalDist d(column(rows, 1, 0));
    double sigma = sd / std::sqrt(t);
    double ks_ray = ks_distance(d, [sigma](double x) {
      return x <= 0.0 ? 0.0 : -std::expm1(-0.5 * x * x / (sigma * sigma));
    });
    double s_clock = ss[j];
    double ks_half = ks_distance(d, [s_clock](double x) {
      return x <= 0.0 ? 0.0 : std::erf(x / std::sqrt(2.0 * s_clock));
    });
    std::string tag = "_s" + std::to_string(int(ss[j]));
    rep.gates.push_back(upper_gate("ks_rayleigh" + tag, ks_ray, 0.02));
    rep.metrics.push_back({"ks_half_normal" + tag, ks_half});
  }

  finish(rep, timer);
  return rep;
}

ExperimentReport run_exit_identity(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::EXIT_IDENTITY);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double lambda = cfg.lambda;
  double c = pick(cfg.c, 0.5);
  double horizon_bm = pick(cfg.t_end, 1000.0);
  double horizon_ou = alpha_inverse(horizon_bm, lambda);

  std::size_t cens_a = 0, cens_b = 0;
  double worst = 0.0;
  {
    std::vector<double> slot(n, std::nan(""));
    std::vector<double> dev(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
      ExitSample s = sample_exit_bm(c, Boundary::DOUBLE, horizon_bm, cfg.step, {ms, i});
      s = apply_transform(s, lambda);
      dev[i] = std::abs(s.t_ou - transform_exit(s.t_bm, lambda));
      if (!s.censored) slot[i] = s.t_ou;
    });
    for (double v : dev) worst = std::max(worst, v);
    std::vector<double> a;
    for (double v : slot) {
      if (std::isnan(v)) ++cens_a; else a.push_back(v);
    }
    std::vector<double> b;
    {
      std::vector<double> slot_b(n, std::nan(""));
      parallel_for(n, [&](std::size_t i) {
        ExitSample s = sample_exit_ou_direct(c, Boundary::DOUBLE, horizon_ou, lambda, 0.0,
                                             {ms, n + i});
        if (!s.censored) slot_b[i] = s.t_ou;
      });
      for (double v : slot_b) {
        if (std::isnan(v)) ++cens_b; else b.push_back(v);
      }
    }
    EmpiricalDist da(std::move(a)), db(std::move(b));
    rep.gates.push_back(upper_gate("transform_bitwise", worst, 0.0,
                                   "time-change of exit draws reproduced exactly"));
    rep.gates.push_back(upper_gate("ks_two_engines", ks_two_sample(da, db), 0.015));
  }
  rep.metrics.push_back({"censored_fraction_bm_engine", double(cens_a) / double(n)});
  rep.metrics.push_back({"censored_fraction_direct_engine", double(cens_b) / double(n)});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_bougerol(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::BOUGEROL);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double r = pick(cfg.c, 1.1752011936438014569);  // sinh(1)
  double scale = std::asinh(r);

  std::size_t discarded = 0;
  auto rows = collect_rows(n, 1, [&](std::size_t i, double* row) {
    row[0] = sample_bougerol_exit(r, cfg.lambda, {ms, i});
  }, &discarded);
  EmpiricalDist d(column(rows, 1, 0));
  rep.gates.push_back(upper_gate(
      "ks_cauchy_arcsinh", ks_distance(d, [&](double x) { return cauchy_cdf(x, scale); }),
      0.015));
  // the winding clock has a stable-1/2-type tail, so a fixed step budget always
  // loses a small fraction of draws; the loss clips the far Cauchy tail and
  // shifts the KS statistic by at most the fraction itself, an order below the
  // KS gate.  Driving it under 1e-4 would need a ~700x larger budget.
  GateResult disc =
      upper_gate("discard_fraction", double(discarded) / double(n), 1e-2);
  disc.note = "step-budget censoring; bounded bias, see ks gate headroom";
  rep.gates.push_back(disc);
  rep.metrics.push_back({"target_scale", scale});
  rep.metrics.push_back({"half_iqr", d.half_iqr()});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_tail_4c_pi(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::TAIL_4C_PI);
  std::size_t n = pick(cfg.n_paths, std::size_t{1000000});
  double c = pick(cfg.c, 0.3);
  double t = pick(cfg.t_end, 8.0);

  TailEstimate te = tail_probability(c, cfg.lambda, t, n, ms,
                                     cfg.step > 0.0 ? cfg.step : 0.0075);
  double target = 4.0 * c / pi;
  rep.gates.push_back(abs_gate("tail_constant", te.statistic, target, 0.10 * target,
                               "late-time survival scaled by the clock rate"));
  rep.metrics.push_back({"p_hat", te.p_hat});
  rep.metrics.push_back({"se_statistic", te.se_statistic});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_lambda_large(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::LAMBDA_LARGE);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double c = pick(cfg.c, 0.3);

  double target = expected_log_exit_bm(c);
  auto pts = lambda_large_estimates(c, {10.0, 30.0, 100.0}, n, ms);
  double gap[3];
  for (int j = 0; j < 3; ++j) {
    gap[j] = pts[j].estimate - target;
    char buf[32];
    std::snprintf(buf, sizeof buf, "gap_lambda_%g", pts[j].lambda);
    rep.metrics.push_back({buf, gap[j]});
    std::snprintf(buf, sizeof buf, "se_lambda_%g", pts[j].lambda);
    rep.metrics.push_back({buf, pts[j].se});
  }
  rep.metrics.push_back({"target_log_mean", target});
  rep.gates.push_back(upper_gate("gap_shrinking_mid", gap[1], gap[0]));
  rep.gates.push_back(upper_gate("gap_shrinking_final", gap[2], gap[1]));
  rep.gates.push_back(abs_gate("gap_final", gap[2], 0.0, 3.0 * pts[2].se + 0.05,
                               "clock-rate correction decays like 1/(rate * exit time)"));

  finish(rep, timer);
  return rep;
}

ExperimentReport run_lambda_small(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::LAMBDA_SMALL);
  std::size_t n = pick(cfg.n_paths, std::size_t{200000});
  double c = pick(cfg.c, 0.2);

  double slope_target = -sinh4_moment_closed(c) / 3.0;
  auto pts = lambda_small_slopes(c, {0.4, 0.2}, n, ms);
  for (const auto& p : pts) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "slope_lambda_%g", p.lambda);
    rep.metrics.push_back({buf, p.estimate});
  }
  const LambdaPoint& at = pts.back();
  rep.gates.push_back(abs_gate("slope_small_rate", at.estimate, slope_target,
                               3.0 * at.se + 0.10 * std::abs(slope_target),
                               "first-order drift sensitivity of the mean exit time"));

  LambdaPoint mt = mean_exit_time(c, n, ms);
  rep.gates.push_back(abs_gate("mean_exit_time", mt.estimate, sinh2_moment_closed(c),
                               3.0 * mt.se));
  rep.metrics.push_back({"mean_exit_se", mt.se});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_angle_small(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::ANGLE_SMALL);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double c = pick(cfg.c, 0.05);

  RescaledExit re = rescaled_exit_stats(c, cfg.lambda, Regime::SMALL_C, Boundary::DOUBLE, n, ms,
                                        cfg.step > 0.0 ? cfg.step : 0.0075);
  double m1 = 0.0, m2 = 0.0;
  for (double v : re.values) {
    m1 += v;
    m2 += v * v;
  }
  m1 /= double(re.values.size());
  m2 /= double(re.values.size());
  rep.gates.push_back(abs_gate("mean_rescaled", m1, 1.0, 0.05));
  rep.gates.push_back(abs_gate("second_moment_rescaled", m2, 5.0 / 3.0, 0.05 * (5.0 / 3.0)));
  rep.gates.push_back(
      upper_gate("censored_fraction", double(re.n_censored) / double(re.n_total), 0.01));

  finish(rep, timer);
  return rep;
}

ExperimentReport run_angle_large(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::ANGLE_LARGE);
  std::size_t n = pick(cfg.n_paths, std::size_t{10000});
  double c = pick(cfg.c, 6.0);

  RescaledExit re = rescaled_exit_stats(c, cfg.lambda, Regime::LARGE_C, Boundary::SINGLE, n, ms,
                                        cfg.step > 0.0 ? cfg.step : 0.0075);
  // median over the full draw with censored values at +infinity; valid while
  // the censor level stays above the median
  double med;
  std::vector<double> vals = re.values;
  std::sort(vals.begin(), vals.end());
  double pos = 0.5 * double(re.n_total - 1);
  auto lo = std::size_t(pos);
  if (lo + 1 < vals.size()) {
    med = vals[lo] + (pos - double(lo)) * (vals[lo + 1] - vals[lo]);
  } else {
    med = re.censor_level;  // censoring swallowed the median; fails visibly
  }
  rep.gates.push_back(abs_gate("median_rescaled", med, 1.0, 0.10,
                               "rate * transformed exit / angle at a wide angle"));
  rep.metrics.push_back({"censored_fraction", double(re.n_censored) / double(re.n_total)});
  rep.metrics.push_back({"censor_level", re.censor_level});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_big_small(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::BIG_SMALL);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double lambda = cfg.lambda;
  double t_end = pick(cfg.t_end, 15.0);
  TimeGrid grid = cfg.step > 0.0
                      ? TimeGrid::uniform(t_end, std::min(cfg.step, 0.01 / std::max(lambda, 1.0)))
                      : grid_for(lambda, t_end);
  std::size_t steps = grid.size() - 1;
  std::size_t rec[3] = {steps / 3, 2 * steps / 3, steps};
  double times[3] = {grid.t[rec[0]], grid.t[rec[1]], grid.t[rec[2]]};

  OuParams params;
  params.lambda = lambda;
  std::size_t discarded = 0;
  auto rows = collect_rows(n, 6, [&](std::size_t i, double* row) {
    PlanarPath p = sample_ou_exact(grid, params, {ms, i});
    WindingTrace tr = track_winding(p);
    for (int j = 0; j < 3; ++j) {
      row[j] = tr.theta_plus[rec[j]];
      row[3 + j] = tr.theta_minus[rec[j]];
    }
  }, &discarded);

  double p_plus[3];
  for (int j = 0; j < 3; ++j) {
    auto xs = column(rows, 6, j);
    for (double& v : xs) v /= times[j];
    p_plus[j] = fraction_above(xs, 0.1);
    rep.metrics.push_back({"p_plus_t" + std::to_string(int(times[j])), p_plus[j]});
  }
  rep.gates.push_back(upper_gate("p_plus_decreasing_mid", p_plus[1], p_plus[0]));
  rep.gates.push_back(upper_gate("p_plus_decreasing_final", p_plus[2], p_plus[1]));
  rep.gates.push_back(upper_gate("p_plus_final", p_plus[2], 0.02,
                                 "outside-part drift vanishes only on longer horizons"));

  auto minus15 = column(rows, 6, 5);
  for (double& v : minus15) v /= times[2];
  EmpiricalDist dm(std::move(minus15));
  rep.gates.push_back(upper_gate(
      "ks_minus_cauchy", ks_distance(dm, [&](double x) { return cauchy_cdf(x, lambda); }),
      0.06));
  rep.gates.push_back(upper_gate("discard_fraction", double(discarded) / double(n), 1e-4));

  finish(rep, timer);
  return rep;
}

ExperimentReport run_nu_windings(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::NU_WINDINGS);
  std::size_t n = pick(cfg.n_paths, std::size_t{20000});
  double lambda = cfg.lambda;
  double t_end = pick(cfg.t_end, 60.0);
  TimeGrid grid = TimeGrid::uniform(t_end, cfg.step > 0.0 ? cfg.step : 0.01);

  const double nus[3] = {0.1, 0.5, -0.25};
  OuParams params;
  params.lambda = lambda;
  std::size_t discarded = 0;
  auto rows = collect_rows(n, 3, [&](std::size_t i, double* row) {
    PlanarPath p = sample_ou_exact(grid, params, {ms, i});
    double acc[3] = {0.0, 0.0, 0.0};
    detail::walk_winding(p, default_guard_angle, Refiner::BRIDGE, default_max_depth,
                         [&](double s, cplx z_left, double dtheta, std::size_t) {
                           if (s < 1.0) return;
                           double lz = 0.5 * std::log(std::norm(z_left));
                           double ls = std::log(s);
                           for (int j = 0; j < 3; ++j)
                             if (lz >= nus[j] * ls) acc[j] += dtheta;
                         });
    for (int j = 0; j < 3; ++j) row[j] = acc[j];
  }, &discarded);

  double pr[3];
  for (int j = 0; j < 3; ++j) {
    auto xs = column(rows, 3, j);
    for (double& v : xs) v /= t_end;
    pr[j] = fraction_above(xs, 0.1);
    char buf[32];
    std::snprintf(buf, sizeof buf, "p_nu_%g", nus[j]);
    rep.metrics.push_back({buf, pr[j]});
  }
  rep.gates.push_back(upper_gate("degenerate_nu_0.1", pr[0], 0.05));
  rep.gates.push_back(upper_gate("degenerate_nu_0.5", pr[1], 0.05));
  rep.gates.push_back(lower_gate("nondegenerate_nu_-0.25", pr[2], 0.5));
  rep.gates.push_back(upper_gate("discard_fraction", double(discarded) / double(n), 1e-3));

  finish(rep, timer);
  return rep;
}

ExperimentReport run_ergodic(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::ERGODIC);
  double lambda = cfg.lambda;
  double t_end = pick(cfg.t_end, 200.0);
  TimeGrid grid = TimeGrid::uniform(t_end, cfg.step > 0.0 ? cfg.step : 0.002);

  OuParams params;
  params.lambda = lambda;
  PlanarPath p = sample_ou_exact(grid, params, {ms, 0});
  double avg = ergodic_average(p, TestFunction::disk(1.0));
  double target = invariant_disk_mass(1.0, lambda);
  // one path at this horizon scatters with std about 0.027 across seeds, so
  // the 0.02 window passes a bit over half the time; the seed is never shopped
  rep.gates.push_back(abs_gate("occupation_unit_disk", avg, target, 0.02,
                               "single-path time average vs invariant mass"));
  rep.metrics.push_back({"target_mass", target});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_interval(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::INTERVAL);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  double lambda = cfg.lambda;
  double t_end = pick(cfg.t_end, 10.0);
  double dt = cfg.step > 0.0 ? cfg.step : 0.01;
  // late-interval windings of a path issued from the origin: winding on
  // (t0*T, T] over T, for shrinking start fractions t0.  The window form keeps
  // every arm's winding depth at the same representable scale; the literal
  // t0-rescaled statistic at t0 = 0.01 puts ~17% of its mass below radius
  // e^{-361}, unreachable in double (see the matching gate note).
  double s0 = 0.005 * t_end;  // before the earliest window boundary
  TimeGrid grid = TimeGrid::uniform(t_end - s0, dt);

  const double t0s[3] = {0.1, 0.03, 0.01};
  std::size_t rec[3];
  for (int j = 0; j < 3; ++j) {
    double u = t0s[j] * t_end - s0;
    rec[j] = std::size_t(u / (grid.horizon() / double(grid.size() - 1)) + 0.5);
    if (rec[j] >= grid.size()) rec[j] = grid.size() - 1;
  }

  // exact from-origin marginal at s0, then the homogeneous dynamics
  double sd0 = std::sqrt(ou_step_variance(s0, lambda));
  double decay = std::exp(-lambda * grid.dt(0));
  double sd = std::sqrt(ou_step_variance(grid.dt(0), lambda));
  OuParams params;
  params.lambda = lambda;
  std::size_t discarded = 0;
  auto rows = collect_rows(n, 3, [&](std::size_t i, double* row) {
    Rng rng({ms, i}, kSaltPath);
    PlanarPath p;
    p.grid = grid;
    p.kind = PathKind::OU_EXACT;
    p.params = params;
    p.seed = {ms, i};
    p.z.resize(grid.size());
    p.z[0] = sd0 * rng.gaussian_pair();
    for (std::size_t k = 0; k + 1 < grid.size(); ++k)
      p.z[k + 1] = decay * p.z[k] + sd * rng.gaussian_pair();
    p.params.z0 = p.z[0];
    WindingTrace tr = track_winding(p);
    for (int j = 0; j < 3; ++j) row[j] = tr.theta.back() - tr.theta[rec[j]];
  }, &discarded);

  double ks[3];
  for (int j = 0; j < 3; ++j) {
    auto xs = column(rows, 3, j);
    for (double& v : xs) v /= t_end;
    EmpiricalDist d(std::move(xs));
    ks[j] = ks_distance(d, [&](double x) { return cauchy_cdf(x, lambda); });
    char buf[32];
    std::snprintf(buf, sizeof buf, "ks_t0_%g", t0s[j]);
    rep.metrics.push_back({buf, ks[j]});
  }
  rep.gates.push_back(upper_gate("ks_decreasing_mid", ks[1], ks[0]));
  rep.gates.push_back(upper_gate("ks_decreasing_final", ks[2], ks[1]));
  rep.gates.push_back(upper_gate("discard_fraction", double(discarded) / double(n), 1e-3));

  finish(rep, timer);
  return rep;
}

ExperimentReport run_ousp_scaling(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::OUSP_SCALING);
  std::size_t n = pick(cfg.n_paths, std::size_t{100000});
  TimeGrid grid = TimeGrid::uniform(pick(cfg.t_end, 3.0), cfg.step > 0.0 ? cfg.step : 5e-4);
  OuParams params;
  params.lambda = cfg.lambda;
  params.alpha = cfg.alpha;

  std::size_t bad_a = 0, bad_b = 0;
  auto rows_a = collect_rows(n, 1, [&](std::size_t i, double* row) {
    OuspPath p = sample_ousp(grid, params, {ms, i});
    row[0] = track_winding_jumps(p).theta.back();
  }, &bad_a);
  auto rows_b = collect_rows(n, 1, [&](std::size_t i, double* row) {
    OuspPath p = sample_ousp_euler_scaled(grid, params, {ms, n + i});
    row[0] = track_winding_jumps(p).theta.back();
  }, &bad_b);

  EmpiricalDist da(column(rows_a, 1, 0)), db(column(rows_b, 1, 0));
  rep.gates.push_back(upper_gate("ks_rate_scaling", ks_two_sample(da, db), 0.02,
                                 "clock construction vs prescaled-noise construction"));
  rep.gates.push_back(upper_gate("discard_fraction_clock", double(bad_a) / double(n), 1e-3));
  rep.gates.push_back(upper_gate("discard_fraction_scaled", double(bad_b) / double(n), 1e-3));
  rep.metrics.push_back({"half_iqr_clock", da.half_iqr()});
  rep.metrics.push_back({"half_iqr_scaled", db.half_iqr()});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_ousp_sde(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::OUSP_SDE);
  std::size_t n = pick(cfg.n_paths, std::size_t{100});
  TimeGrid grid = TimeGrid::uniform(pick(cfg.t_end, 5.0), cfg.step > 0.0 ? cfg.step : 1e-3);
  OuParams params;
  params.lambda = cfg.lambda;
  params.alpha = cfg.alpha;

  double worst_theta = 0.0, worst_log = 0.0, jumps = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    OuspPath p = sample_ousp(grid, params, {ms, i});
    OuspResiduals r = sde_residuals(p);
    worst_theta = std::max(worst_theta, r.max_theta);
    worst_log = std::max(worst_log, r.max_log_r);
    jumps += double(p.jumps.size());
  }
  rep.gates.push_back(upper_gate("angular_residual", worst_theta, 1e-9,
                                 "per-step angular identity along the sampled recursion"));
  rep.gates.push_back(upper_gate("radial_residual", worst_log, 1e-9,
                                 "per-step log-radial identity along the sampled recursion"));
  rep.metrics.push_back({"mean_jumps_per_path", jumps / double(n)});

  finish(rep, timer);
  return rep;
}

ExperimentReport run_subordinator(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.config = cfg;
  std::uint64_t ms = experiment_seed(cfg.master_seed, Experiment::SUBORDINATOR);
  std::size_t n = pick(cfg.n_paths, std::size_t{1000000});

  const double indices[3] = {0.25, 0.5, 0.75};
  const double mus[3] = {0.5, 1.0, 2.0};
  const double tts[2] = {0.5, 1.0};
  for (int ix = 0; ix < 3; ++ix) {
    double index = indices[ix];
    std::vector<double> draws(n);
    parallel_for(n, [&](std::size_t i) {
      draws[i] = sample_positive_stable(index, SeedSpec{ms, std::uint64_t(ix) * n + i});
    });
    double dmin = draws[0];
    for (double v : draws) dmin = std::min(dmin, v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "positive_index_%g", index);
    rep.gates.push_back(lower_gate(buf, dmin, 0.0, "support of the one-sided law"));

    for (double mu : mus) {
      for (double tt : tts) {
        double scale = mu * std::pow(tt, 1.0 / index);
        double m = 0.0, s2 = 0.0;
        for (double v : draws) m += std::exp(-scale * v);
        m /= double(n);
        for (double v : draws) {
          double x = std::exp(-scale * v) - m;
          s2 += x * x;
        }
        double se = std::sqrt(s2 / double(n - 1) / double(n));
        double target = std::exp(-tt * std::pow(mu, index));
        std::snprintf(buf, sizeof buf, "laplace_i%g_mu%g_t%g", index, mu, tt);
        rep.gates.push_back(abs_gate(buf, m, target, 3.0 * se));
      }
    }
    if (index == 0.5) {
      EmpiricalDist d(std::move(draws));
      double ks = ks_distance(d, [](double s) {
        return s <= 0.0 ? 0.0 : std::erfc(0.5 / std::sqrt(s));
      });
      rep.gates.push_back(upper_gate("ks_half_index_closed_form", ks, 0.005));
    }
  }

  finish(rep, timer);
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::SPITZER: return run_spitzer(cfg);
    case Experiment::SMALL_TIME: return run_small_time(cfg);
    case Experiment::RADIAL_LARGE: return run_radial_large(cfg);
    case Experiment::RADIAL_SMALL: return run_radial_small(cfg);
    case Experiment::EXIT_IDENTITY: return run_exit_identity(cfg);
    case Experiment::BOUGEROL: return run_bougerol(cfg);
    case Experiment::TAIL_4C_PI: return run_tail_4c_pi(cfg);
    case Experiment::LAMBDA_LARGE: return run_lambda_large(cfg);
    case Experiment::LAMBDA_SMALL: return run_lambda_small(cfg);
    case Experiment::ANGLE_SMALL: return run_angle_small(cfg);
    case Experiment::ANGLE_LARGE: return run_angle_large(cfg);
    case Experiment::BIG_SMALL: return run_big_small(cfg);
    case Experiment::NU_WINDINGS: return run_nu_windings(cfg);
    case Experiment::ERGODIC: return run_ergodic(cfg);
    case Experiment::INTERVAL: return run_interval(cfg);
    case Experiment::OUSP_SCALING: return run_ousp_scaling(cfg);
    case Experiment::OUSP_SDE: return run_ousp_sde(cfg);
    case Experiment::SUBORDINATOR: return run_subordinator(cfg);
  }
  throw std::invalid_argument("run_experiment: unknown experiment");
}

std::vector<ExperimentReport> run_all(std::uint64_t master_seed) {
  std::vector<ExperimentReport> out;
  for (Experiment e : all_experiments()) {
    ExperimentConfig cfg = default_config(e);
    cfg.master_seed = master_seed;
    out.push_back(run_experiment(cfg));
  }
  return out;
}

// ---------------------------------------------------------------------------
// persistence

std::string report_json(const ExperimentReport& report) {
  // wall_seconds stays out: report bytes must be reproducible for a fixed seed
  json j;
  j["experiment"] = std::string(experiment_name(report.config.experiment));
  j["config"] = json::parse(config_json(report.config));
  j["pass"] = report.pass;
  json gates = json::array();
  for (const auto& g : report.gates) {
    json gj;
    gj["name"] = g.name;
    gj["kind"] = g.kind == GateKind::ABS_TOL ? "abs_tol"
                 : g.kind == GateKind::UPPER_BOUND ? "upper_bound" : "lower_bound";
    gj["value"] = g.value;
    gj["target"] = g.target;
    gj["tol"] = g.tol;
    gj["pass"] = g.pass;
    if (!g.note.empty()) gj["note"] = g.note;
    gates.push_back(gj);
  }
  j["gates"] = gates;
  json metrics = json::array();
  for (const auto& m : report.metrics) metrics.push_back({{"name", m.name}, {"value", m.value}});
  j["metrics"] = metrics;
  return j.dump();
}

void write_reports_jsonl(const std::vector<ExperimentReport>& reports, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_reports_jsonl: cannot open " + path);
  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  os << json{{"timestamp", stamp}}.dump() << "\n";  // isolated: rest is reproducible
  for (const auto& r : reports) os << report_json(r) << "\n";
}

std::string render_report_table(const std::vector<ExperimentReport>& reports) {
  std::string out;
  char line[256];
  std::size_t failed = 0;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-14s %-4s  %5.1fs  %zu gate(s)\n",
                  std::string(experiment_name(r.config.experiment)).c_str(),
                  r.pass ? "ok" : "FAIL", r.wall_seconds, r.gates.size());
    out += line;
    for (const auto& g : r.gates) {
      if (g.pass) continue;
      ++failed;
      if (g.kind == GateKind::ABS_TOL)
        std::snprintf(line, sizeof line, "    %-32s |%.6g - %.6g| > %.3g\n", g.name.c_str(),
                      g.value, g.target, g.tol);
      else
        std::snprintf(line, sizeof line, "    %-32s %.6g %s %.6g\n", g.name.c_str(), g.value,
                      g.kind == GateKind::UPPER_BOUND ? ">" : "<", g.target);
      out += line;
    }
  }
  std::snprintf(line, sizeof line, "%zu experiment(s), %zu failing gate(s)\n", reports.size(),
                failed);
  out += line;
  return out;
}

void write_path_csv(const PlanarPath& path, std::ostream& os) {
  os << "t,re,im\n";
  os.precision(17);
  for (std::size_t k = 0; k < path.grid.size(); ++k)
    os << path.grid.t[k] << ',' << path.z[k].real() << ',' << path.z[k].imag() << '\n';
}

void write_trace_csv(const WindingTrace& trace, std::ostream& os) {
  os << "t,theta,log_r,theta_plus,theta_minus\n";
  os.precision(17);
  for (std::size_t k = 0; k < trace.grid.size(); ++k)
    os << trace.grid.t[k] << ',' << trace.theta[k] << ',' << trace.log_r[k] << ','
       << trace.theta_plus[k] << ',' << trace.theta_minus[k] << '\n';
}

void write_jumps_csv(const OuspPath& path, std::ostream& os) {
  os << "t,dRe,dIm\n";
  os.precision(17);
  for (const auto& j : path.jumps)
    os << path.grid.t[j.step + 1] << ',' << j.dv.real() << ',' << j.dv.imag() << '\n';
}

void write_path_json(const PlanarPath& path, std::ostream& os) {
  json j;
  j["t"] = path.grid.t;
  std::vector<double> re(path.z.size()), im(path.z.size());
  for (std::size_t k = 0; k < path.z.size(); ++k) {
    re[k] = path.z[k].real();
    im[k] = path.z[k].imag();
  }
  j["re"] = re;
  j["im"] = im;
  os << j.dump() << '\n';
}

void write_trace_json(const WindingTrace& trace, std::ostream& os) {
  json j;
  j["t"] = trace.grid.t;
  j["theta"] = trace.theta;
  j["log_r"] = trace.log_r;
  j["theta_plus"] = trace.theta_plus;
  j["theta_minus"] = trace.theta_minus;
  os << j.dump() << '\n';
}

}  // namespace ouw
