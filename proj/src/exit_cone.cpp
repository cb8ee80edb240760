#include "ouw/exit_cone.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ouw/errors.hpp"
#include "ouw/parallel.hpp"
#include "ouw/simulate.hpp"
#include "ouw/time_change.hpp"

namespace ouw {
namespace {

struct Sub {
  double dt;
  cplx za, zb;
};

// split one BM step by exact bridge midpoints until every chord rotates by at
// most guard; substeps come out left to right.  Below dt ~ 1e-315 the midpoint
// noise underflows and a chord cannot be split meaningfully, so the excursion
// is frozen there; winding interior to such a chord is covered by the callers'
// crossing-probability term, not the polyline.
void emit_substeps(double dt, cplx za, cplx zb, int depth, int max_depth, double guard,
                   Rng& refine, std::vector<Sub>& out) {
  double dth = arg_increment(za, zb);
  if (std::abs(dth) <= guard || dt < 1e-315) {
    out.push_back({dt, za, zb});
    return;
  }
  if (depth >= max_depth)
    throw RefinementExhausted("exit engine: refinement depth exhausted");
  cplx mid = 0.5 * (za + zb) + std::sqrt(0.25 * dt) * refine.gaussian_pair();
  emit_substeps(0.5 * dt, za, mid, depth + 1, max_depth, guard, refine, out);
  emit_substeps(0.5 * dt, mid, zb, depth + 1, max_depth, guard, refine, out);
}

}  // namespace

ExitSample sample_exit_bm(double c, Boundary boundary, double horizon, double step, SeedSpec seed,
                          const ExitOptions& opt) {
  if (!(c > 0.0) || !(horizon > 0.0))
    throw std::domain_error("sample_exit_bm: needs c > 0 and horizon > 0");
  ExitSample out;
  out.c = c;
  out.boundary = boundary;

  Rng path_rng(seed, kSaltExit);
  Rng bridge_rng(seed, kSaltBridge);
  Rng refine_rng(seed, kSaltRefine);
  double rho = step > 0.0 ? step : opt.rho;
  double floor2 = opt.dist_floor_frac * std::min(c, 1.0);
  floor2 *= floor2;

  double t = 0.0, theta = 0.0, budget = 0.0;
  cplx z = {1.0, 0.0};
  std::vector<Sub> subs;
  for (;;) {
    if (t >= horizon || budget > opt.h_cap) {
      out.t_bm = std::min(t, horizon);
      if (t >= horizon) out.t_bm = horizon;
      out.t_ou = out.t_bm;
      out.censored = true;
      return out;
    }
    double dist = boundary == Boundary::SINGLE ? c - theta : c - std::abs(theta);
    double dh = opt.adaptive ? std::min(opt.dh_max, rho * std::max(dist * dist, floor2)) : rho;
    double dt = dh * std::norm(z);
    cplx z_next = z + std::sqrt(dt) * path_rng.gaussian_pair();

    subs.clear();
    emit_substeps(dt, z, z_next, 0, opt.max_depth, opt.guard_angle, refine_rng, subs);

    double t_sub = t;
    bool exited = false;
    double t_exit = 0.0;
    for (const Sub& s : subs) {
      double u = bridge_rng.uniform();  // one per substep, exit or not
      if (!exited) {
        double dth = arg_increment(s.za, s.zb);
        double th_a = theta, th_b = theta + dth;
        double da = c - th_a, db = c - th_b;
        if (db <= 0.0) {
          t_exit = t_sub + (da / (th_b - th_a)) * s.dt;
          exited = true;
        } else if (boundary == Boundary::DOUBLE && th_b <= -c) {
          t_exit = t_sub + ((th_a + c) / (th_a - th_b)) * s.dt;
          exited = true;
        } else {
          double dh_eff = s.dt / (std::abs(s.za) * std::abs(s.zb));
          double p_up = std::exp(-2.0 * da * db / dh_eff);
          double p_dn = boundary == Boundary::DOUBLE
                            ? std::exp(-2.0 * (th_a + c) * (th_b + c) / dh_eff)
                            : 0.0;
          if (u < p_up) {
            t_exit = t_sub + (da / (da + db)) * s.dt;
            exited = true;
          } else if (u < p_up + p_dn) {
            t_exit = t_sub + ((th_a + c) / ((th_a + c) + (th_b + c))) * s.dt;
            exited = true;
          }
        }
        theta = th_b;
        t_sub += s.dt;
      }
    }
    if (exited) {
      if (t_exit > horizon) {
        out.t_bm = horizon;
        out.t_ou = horizon;
        out.censored = true;
      } else {
        out.t_bm = t_exit;
        out.t_ou = t_exit;
      }
      return out;
    }
    z = z_next;
    t += dt;
    budget += dh;
  }
}

double transform_exit(double t_bm, double lambda) { return alpha_inverse(t_bm, lambda); }

ExitSample apply_transform(ExitSample s, double lambda) {
  s.t_ou = transform_exit(s.t_bm, lambda);
  return s;
}

ExitSample sample_exit_ou_direct(double c, Boundary boundary, double horizon, double lambda,
                                 double step, SeedSpec seed) {
  if (!(c > 0.0) || !(horizon > 0.0) || !(lambda > 0.0))
    throw std::domain_error("sample_exit_ou_direct: bad parameters");
  ExitSample out;
  out.c = c;
  out.boundary = boundary;

  Rng rng(seed, kSaltExit);
  double rho = step > 0.0 ? step : 0.002;
  double floor2 = 0.05 * std::min(c, 1.0);
  floor2 *= floor2;
  double dt_cap = 0.05 / lambda;

  double t = 0.0, theta = 0.0;
  cplx z = {1.0, 0.0};
  for (;;) {
    if (t >= horizon) {
      out.t_ou = horizon;
      out.t_bm = alpha_time(horizon, lambda);
      out.censored = true;
      return out;
    }
    double dist = boundary == Boundary::SINGLE ? c - theta : c - std::abs(theta);
    double dh = std::min(0.06, rho * std::max(dist * dist, floor2));
    double dt = std::min(dh * std::norm(z), dt_cap);
    cplx z_next = std::exp(-lambda * dt) * z +
                  std::sqrt(ou_step_variance(dt, lambda)) * rng.gaussian_pair();
    double dth = arg_increment(z, z_next);
    double th_b = theta + dth;
    bool up = th_b >= c;
    bool dn = boundary == Boundary::DOUBLE && th_b <= -c;
    if (up || dn) {
      double frac = up ? (c - theta) / dth : (theta + c) / (theta - th_b);
      double t_exit = t + frac * dt;
      if (t_exit > horizon) {
        out.t_ou = horizon;
        out.t_bm = alpha_time(horizon, lambda);
        out.censored = true;
      } else {
        out.t_ou = t_exit;
        out.t_bm = alpha_time(t_exit, lambda);
      }
      return out;
    }
    theta = th_b;
    z = z_next;
    t += dt;
  }
}

double bm_winding_at(double tau, SeedSpec seed, const ExitOptions& opt) {
  if (!(tau > 0.0)) throw std::domain_error("bm_winding_at: needs tau > 0");
  Rng path_rng(seed, kSaltExit);
  Rng refine_rng(seed, kSaltRefine);
  double t = 0.0, theta = 0.0;
  cplx z = {1.0, 0.0};
  std::vector<Sub> subs;
  for (std::size_t iter = 0; t < tau; ++iter) {
    if (iter > 5'000'000)
      throw CensoredDraw("bm_winding_at: step budget exhausted before the horizon");
    double dt = std::min(opt.dh_max * std::norm(z), tau - t);
    cplx z_next = z + std::sqrt(dt) * path_rng.gaussian_pair();
    subs.clear();
    emit_substeps(dt, z, z_next, 0, opt.max_depth, opt.guard_angle, refine_rng, subs);
    for (const Sub& s : subs) theta += arg_increment(s.za, s.zb);
    z = z_next;
    t += dt;
  }
  return theta;
}

double sample_bougerol_exit(double r, double lambda, SeedSpec seed) {
  if (!(r > 0.0) || !(lambda > 0.0))
    throw std::domain_error("sample_bougerol_exit: needs r > 0, lambda > 0");
  // level-r hitting time of the driver, exact in law on the clock scale
  Rng level_rng(seed, kSaltPath);
  double nrm = level_rng.gaussian();
  double tau = r * r / (nrm * nrm);
  if (!(tau <= 1e18)) throw CensoredDraw("sample_bougerol_exit: drawn horizon beyond cap");
  return bm_winding_at(tau, seed);
}

TailEstimate tail_probability(double c, double lambda, double t, std::size_t n_paths,
                              std::uint64_t master_seed, double step) {
  if (n_paths == 0) throw std::invalid_argument("tail_probability: n_paths == 0");
  double horizon = alpha_time(t, lambda);
  std::vector<unsigned char> survived(n_paths, 0);
  parallel_for(n_paths, [&](std::size_t i) {
    ExitSample s = sample_exit_bm(c, Boundary::SINGLE, horizon, step, {master_seed, i});
    survived[i] = s.censored ? 1 : 0;
  });
  std::size_t k = 0;
  for (auto v : survived) k += v;
  TailEstimate out;
  out.n = n_paths;
  out.p_hat = double(k) / double(n_paths);
  double scale = 2.0 * lambda * t;
  out.statistic = scale * out.p_hat;
  out.se_statistic = scale * std::sqrt(out.p_hat * (1.0 - out.p_hat) / double(n_paths));
  return out;
}

RescaledExit rescaled_exit_stats(double c, double lambda, Regime regime, Boundary boundary,
                                 std::size_t n_paths, std::uint64_t master_seed, double step) {
  if (n_paths == 0) throw std::invalid_argument("rescaled_exit_stats: n_paths == 0");
  RescaledExit out;
  out.n_total = n_paths;
  std::vector<double> slot(n_paths);
  if (regime == Regime::SMALL_C) {
    double horizon = 50.0 * c * c;
    out.censor_level = 50.0;
    parallel_for(n_paths, [&](std::size_t i) {
      ExitSample s = sample_exit_bm(c, boundary, horizon, step, {master_seed, i});
      slot[i] = s.censored ? std::nan("") : s.t_bm / (c * c);
    });
  } else {
    double horizon_bm = std::exp(3.0 * c) / (2.0 * lambda);
    double horizon_ou = alpha_inverse(horizon_bm, lambda);
    out.censor_level = lambda * horizon_ou / c;
    parallel_for(n_paths, [&](std::size_t i) {
      ExitSample s = sample_exit_bm(c, boundary, horizon_bm, step, {master_seed, i});
      slot[i] = s.censored ? std::nan("")
                           : lambda * transform_exit(s.t_bm, lambda) / c;
    });
  }
  out.values.reserve(n_paths);
  for (double v : slot) {
    if (std::isnan(v))
      ++out.n_censored;
    else
      out.values.push_back(v);
  }
  return out;
}

namespace {

// one shared symmetric-cone exit set; throws if more than 1% of the draws
// were censored (the transformed means below would then be invalid)
std::vector<double> bm_double_exits(double c, std::size_t n_paths, std::uint64_t master_seed) {
  constexpr double horizon = 1e7;
  std::vector<double> slot(n_paths);
  parallel_for(n_paths, [&](std::size_t i) {
    ExitSample s = sample_exit_bm(c, Boundary::DOUBLE, horizon, 0.0, {master_seed, i});
    slot[i] = s.censored ? std::nan("") : s.t_bm;
  });
  std::vector<double> out;
  out.reserve(n_paths);
  std::size_t censored = 0;
  for (double v : slot) {
    if (std::isnan(v))
      ++censored;
    else
      out.push_back(v);
  }
  if (double(censored) > 0.01 * double(n_paths))
    throw CensoredDraw("bm_double_exits: censored fraction above 1%");
  return out;
}

LambdaPoint summarize(double lambda, const std::vector<double>& xs) {
  double m = 0.0;
  for (double v : xs) m += v;
  m /= double(xs.size());
  double s2 = 0.0;
  for (double v : xs) s2 += (v - m) * (v - m);
  s2 /= double(xs.size() - 1);
  return {lambda, m, std::sqrt(s2 / double(xs.size()))};
}

}  // namespace

std::vector<LambdaPoint> lambda_large_estimates(double c, const std::vector<double>& lambdas,
                                                std::size_t n_paths, std::uint64_t master_seed) {
  auto exits = bm_double_exits(c, n_paths, master_seed);
  std::vector<LambdaPoint> out;
  out.reserve(lambdas.size());
  std::vector<double> xs(exits.size());
  for (double lambda : lambdas) {
    for (std::size_t i = 0; i < exits.size(); ++i)
      xs[i] = std::log1p(2.0 * lambda * exits[i]);
    LambdaPoint p = summarize(lambda, xs);
    p.estimate -= std::log(2.0 * lambda);
    out.push_back(p);
  }
  return out;
}

std::vector<LambdaPoint> lambda_small_slopes(double c, const std::vector<double>& lambdas,
                                             std::size_t n_paths, std::uint64_t master_seed) {
  auto exits = bm_double_exits(c, n_paths, master_seed);
  std::vector<LambdaPoint> out;
  out.reserve(lambdas.size());
  std::vector<double> xs(exits.size());
  for (double lambda : lambdas) {
    for (std::size_t i = 0; i < exits.size(); ++i)
      xs[i] = (alpha_inverse(exits[i], lambda) - exits[i]) / lambda;
    out.push_back(summarize(lambda, xs));
  }
  return out;
}

LambdaPoint mean_exit_time(double c, std::size_t n_paths, std::uint64_t master_seed) {
  auto exits = bm_double_exits(c, n_paths, master_seed);
  return summarize(0.0, exits);
}

}  // namespace ouw
