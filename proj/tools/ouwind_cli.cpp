// command-line front end: path sampling, closed-form evaluation, and the
// gated verification experiments
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ouw/analytic.hpp"
#include "ouw/harness.hpp"
#include "ouw/simulate.hpp"
#include "ouw/stable_ou.hpp"
#include "ouw/windings.hpp"

using namespace ouw;
using nlohmann::json;

namespace {

std::ostream& open_sink(const std::string& out, std::ofstream& file) {
  if (out.empty()) return std::cout;
  file.open(out);
  if (!file) throw CLI::RuntimeError("cannot open " + out, 3);
  return file;
}

int cmd_simulate(double lambda, double alpha, double t_end, double step, std::uint64_t seed,
                 std::uint64_t stream, bool trace, bool jumps, const std::string& out,
                 const std::string& format) {
  TimeGrid grid = TimeGrid::uniform(t_end, step);
  OuParams params;
  params.lambda = lambda;
  params.alpha = alpha;
  std::ofstream file;
  std::ostream& os = open_sink(out, file);
  bool csv = format == "csv";
  if (alpha >= 2.0) {
    PlanarPath path = sample_ou_exact(grid, params, {seed, stream});
    if (trace) {
      WindingTrace tr = track_winding(path);
      csv ? write_trace_csv(tr, os) : write_trace_json(tr, os);
    } else {
      csv ? write_path_csv(path, os) : write_path_json(path, os);
    }
    return 0;
  }
  OuspPath path = sample_ousp(grid, params, {seed, stream});
  if (jumps) {
    write_jumps_csv(path, os);
    return 0;
  }
  if (trace) {
    WindingTrace tr = track_winding_jumps(path);
    csv ? write_trace_csv(tr, os) : write_trace_json(tr, os);
    return 0;
  }
  // jump paths reuse the planar writers: same t,re,im shape
  PlanarPath flat;
  flat.grid = path.grid;
  flat.z = path.v;
  flat.kind = PathKind::OU_EULER;
  flat.params = path.params;
  flat.seed = path.seed;
  csv ? write_path_csv(flat, os) : write_path_json(flat, os);
  return 0;
}

int cmd_analytic(const std::string& op, double lambda, double r, double c, double mu, double x,
                 double alpha) {
  double v = 0.0;
  if (op == "disk-mass") {
    v = invariant_disk_mass(r, lambda);
  } else if (op == "exit-log-mean") {
    v = expected_log_exit_bm(c);
  } else if (op == "sinh4-closed") {
    v = sinh4_moment_closed(c);
  } else if (op == "sinh4-integral") {
    v = sinh4_moment_integral(c);
  } else if (op == "sinh2") {
    v = sinh2_moment_closed(c);
  } else if (op == "exit-density") {
    v = exit_density_beta(x, c);
  } else if (op == "laplace") {
    v = laplace_exit_level(mu, r, lambda);
  } else if (op == "cauchy-cdf") {
    v = cauchy_cdf(x, lambda);
  } else if (op == "levy-constant") {
    LevyConstantForms f = levy_constant_forms(alpha);
    std::printf("closed=%.17g quadrature=%.17g printed_variant=%.17g\n", f.closed, f.quadrature,
                f.printed);
    return 0;
  } else {
    std::fprintf(stderr, "unknown --op %s\n", op.c_str());
    return 2;
  }
  std::printf("%.17g\n", v);
  return 0;
}

int cmd_verify(const std::string& target, const std::string& config_path,
               std::optional<double> lambda, std::optional<double> alpha, std::optional<double> c,
               std::optional<double> t_end, std::optional<std::uint64_t> paths,
               std::optional<double> step, std::optional<std::uint64_t> seed,
               const std::string& out) {
  std::vector<ExperimentReport> reports;
  if (target == "all") {
    reports = run_all(seed.value_or(20250825));
  } else {
    std::optional<Experiment> e = experiment_from_name(target);
    if (!e) {
      std::fprintf(stderr, "unknown experiment '%s'; known:", target.c_str());
      for (Experiment known : all_experiments())
        std::fprintf(stderr, " %s", std::string(experiment_name(known)).c_str());
      std::fprintf(stderr, " all\n");
      return 2;
    }
    ExperimentConfig cfg = default_config(*e);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::fprintf(stderr, "cannot read %s\n", config_path.c_str());
        return 3;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = config_from_json(ss.str());
      if (cfg.experiment != *e) {
        std::fprintf(stderr, "config file is for '%s', not '%s'\n",
                     std::string(experiment_name(cfg.experiment)).c_str(), target.c_str());
        return 2;
      }
    }
    if (lambda) cfg.lambda = *lambda;
    if (alpha) cfg.alpha = *alpha;
    if (c) cfg.c = *c;
    if (t_end) cfg.t_end = *t_end;
    if (paths) cfg.n_paths = *paths;
    if (step) cfg.step = *step;
    if (seed) cfg.master_seed = *seed;
    reports.push_back(run_experiment(cfg));
  }
  std::fputs(render_report_table(reports).c_str(), stdout);
  if (!out.empty()) write_reports_jsonl(reports, out);
  for (const auto& rep : reports)
    if (!rep.pass) return 1;
  return 0;
}

// rebuild reports from a JSONL file written by verify --out (timestamp line skipped)
int cmd_report(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::fprintf(stderr, "cannot read %s\n", in_path.c_str());
    return 3;
  }
  std::vector<ExperimentReport> reports;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (!j.contains("experiment")) continue;  // header line
    ExperimentReport rep;
    rep.config = config_from_json(j.at("config").dump());
    rep.pass = j.at("pass").get<bool>();
    for (const auto& gj : j.at("gates")) {
      GateResult g;
      g.name = gj.at("name").get<std::string>();
      std::string kind = gj.at("kind").get<std::string>();
      g.kind = kind == "abs_tol" ? GateKind::ABS_TOL
               : kind == "upper_bound" ? GateKind::UPPER_BOUND : GateKind::LOWER_BOUND;
      g.value = gj.at("value").get<double>();
      g.target = gj.at("target").get<double>();
      g.tol = gj.at("tol").get<double>();
      g.pass = gj.at("pass").get<bool>();
      if (gj.contains("note")) g.note = gj.at("note").get<std::string>();
      rep.gates.push_back(g);
    }
    for (const auto& mj : j.at("metrics")) {
      rep.metrics.push_back({mj.at("name").get<std::string>(), mj.at("value").get<double>()});
    }
    reports.push_back(std::move(rep));
  }
  std::fputs(render_report_table(reports).c_str(), stdout);
  for (const auto& rep : reports)
    if (!rep.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"winding and exit statistics of complex Ornstein-Uhlenbeck processes"};
  app.require_subcommand(1);

  // simulate
  double s_lambda = 1.0, s_alpha = 2.0, s_t = 10.0, s_step = 0.01;
  std::uint64_t s_seed = 20250825, s_stream = 0;
  bool s_trace = false, s_jumps = false;
  std::string s_out, s_format = "csv";
  CLI::App* sim = app.add_subcommand("simulate", "sample one path and write it out");
  sim->add_option("--lambda", s_lambda, "drift rate")->check(CLI::NonNegativeNumber);
  sim->add_option("--alpha", s_alpha, "noise index in (0,2]; 2 = Brownian driving noise");
  sim->add_option("--t", s_t, "horizon");
  sim->add_option("--step", s_step, "grid step");
  sim->add_option("--seed", s_seed, "master seed");
  sim->add_option("--stream", s_stream, "stream id under the master seed");
  sim->add_flag("--trace", s_trace, "emit the winding trace instead of the raw path");
  sim->add_flag("--jumps", s_jumps, "emit the realized jump list (stable noise only)");
  sim->add_option("--out", s_out, "output file (default stdout)");
  sim->add_option("--format", s_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // analytic
  std::string a_op;
  double a_lambda = 1.0, a_r = 1.0, a_c = 0.5, a_mu = 1.0, a_x = 0.0, a_alpha = 1.0;
  CLI::App* ana = app.add_subcommand("analytic", "evaluate a closed form or quadrature");
  ana->add_option("--op", a_op,
                  "disk-mass | exit-log-mean | sinh4-closed | sinh4-integral | sinh2 | "
                  "exit-density | laplace | cauchy-cdf | levy-constant")
      ->required();
  ana->add_option("--lambda", a_lambda, "drift rate / scale");
  ana->add_option("--r", a_r, "radius or level");
  ana->add_option("--c", a_c, "cone half-angle");
  ana->add_option("--mu", a_mu, "transform argument");
  ana->add_option("--x", a_x, "evaluation point");
  ana->add_option("--alpha", a_alpha, "noise index");

  // verify
  std::string v_target, v_config, v_out;
  std::optional<double> v_lambda, v_alpha, v_c, v_t, v_step;
  std::optional<std::uint64_t> v_paths, v_seed;
  CLI::App* ver = app.add_subcommand("verify", "run gated experiments; exit 0 iff all gates pass");
  ver->add_option("experiment", v_target, "experiment name, or 'all'")->required();
  ver->add_option("--config", v_config, "JSON config file (single experiment only)");
  ver->add_option("--lambda", v_lambda, "override drift rate");
  ver->add_option("--alpha", v_alpha, "override noise index");
  ver->add_option("--c", v_c, "override cone half-angle");
  ver->add_option("--t", v_t, "override horizon");
  ver->add_option("--paths", v_paths, "override path count");
  ver->add_option("--step", v_step, "override step");
  ver->add_option("--seed", v_seed, "override master seed");
  ver->add_option("--out", v_out, "write reports as JSONL");

  // report
  std::string r_in;
  CLI::App* rep = app.add_subcommand("report", "render a saved JSONL report file");
  rep->add_option("--in", r_in, "JSONL file from verify --out")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return cmd_simulate(s_lambda, s_alpha, s_t, s_step, s_seed, s_stream, s_trace, s_jumps,
                          s_out, s_format);
    if (ana->parsed()) return cmd_analytic(a_op, a_lambda, a_r, a_c, a_mu, a_x, a_alpha);
    if (ver->parsed())
      return cmd_verify(v_target, v_config, v_lambda, v_alpha, v_c, v_t, v_paths, v_step, v_seed,
                        v_out);
    if (rep->parsed()) return cmd_report(r_in);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
