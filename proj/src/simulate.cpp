#include "ouw/simulate.hpp"

#include <cmath>

#include "ouw/errors.hpp"
#include "ouw/time_change.hpp"

namespace ouw {

double ou_step_variance(double h, double lambda) {
  if (lambda < 1e-12) return h * (1.0 - lambda * h);
  return -std::expm1(-2.0 * lambda * h) / (2.0 * lambda);
}

PlanarPath sample_bm(const TimeGrid& grid, cplx z0, SeedSpec seed) {
  grid.validate();
  PlanarPath p;
  p.grid = grid;
  p.kind = PathKind::BM;
  p.params.lambda = 0.0;
  p.params.z0 = z0;
  p.seed = seed;
  Rng rng(seed, kSaltPath);
  p.z.resize(grid.size());
  p.z[0] = z0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    p.z[k + 1] = p.z[k] + std::sqrt(grid.dt(k)) * rng.gaussian_pair();
  return p;
}

PlanarPath sample_ou_exact(const TimeGrid& grid, const OuParams& params, SeedSpec seed) {
  grid.validate();
  params.validate();
  PlanarPath p;
  p.grid = grid;
  p.kind = PathKind::OU_EXACT;
  p.params = params;
  p.seed = seed;
  Rng rng(seed, kSaltPath);
  p.z.resize(grid.size());
  p.z[0] = params.z0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double h = grid.dt(k);
    double decay = std::exp(-params.lambda * h);
    double sd = std::sqrt(ou_step_variance(h, params.lambda));
    p.z[k + 1] = decay * p.z[k] + sd * rng.gaussian_pair();
  }
  return p;
}

SharedOu sample_ou_shared(const TimeGrid& grid, const OuParams& params, SeedSpec seed) {
  grid.validate();
  params.validate();
  SharedOu out;
  out.bm.kind = PathKind::BM;
  out.bm.params.lambda = 0.0;
  out.bm.params.z0 = params.z0;
  out.bm.seed = seed;
  out.ou.grid = grid;
  out.ou.kind = PathKind::OU_EXACT;
  out.ou.params = params;
  out.ou.seed = seed;

  std::size_t n = grid.size();
  out.bm.grid.t.resize(n);
  out.bm.z.resize(n);
  out.ou.z.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.bm.grid.t[k] = alpha_time(grid.t[k], params.lambda);

  Rng rng(seed, kSaltPath);
  out.bm.z[0] = params.z0;
  out.ou.z[0] = params.z0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double da = alpha_increment(grid.t[k], grid.dt(k), params.lambda);
    out.bm.z[k + 1] = out.bm.z[k] + std::sqrt(da) * rng.gaussian_pair();
    out.ou.z[k + 1] = std::exp(-params.lambda * grid.t[k + 1]) * out.bm.z[k + 1];
  }
  return out;
}

PlanarPath sample_ou_euler(const TimeGrid& grid, const OuParams& params, SeedSpec seed) {
  grid.validate();
  params.validate();
  double cap = 0.1 / std::max(params.lambda, 1.0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    if (grid.dt(k) > cap * (1.0 + 1e-12))
      throw StepTooLarge("sample_ou_euler: step exceeds 0.1/max(lambda,1)");
  PlanarPath p;
  p.grid = grid;
  p.kind = PathKind::OU_EULER;
  p.params = params;
  p.seed = seed;
  Rng rng(seed, kSaltPath);
  p.z.resize(grid.size());
  p.z[0] = params.z0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double h = grid.dt(k);
    p.z[k + 1] = p.z[k] - params.lambda * p.z[k] * h + std::sqrt(h) * rng.gaussian_pair();
  }
  return p;
}

PlanarPath refine_bridge(const PlanarPath& path, std::size_t k, std::size_t n_sub, SeedSpec seed) {
  if (path.kind != PathKind::BM && path.kind != PathKind::OU_EXACT)
    throw UnsupportedKind("refine_bridge: only BM and exact OU have exact bridges");
  if (k + 1 >= path.grid.size()) throw std::invalid_argument("refine_bridge: step out of range");

  double t_a = path.grid.t[k];
  double h = path.grid.dt(k);
  double lambda = path.kind == PathKind::OU_EXACT ? path.params.lambda : 0.0;

  PlanarPath out;
  out.kind = path.kind;
  out.params = path.params;
  out.seed = seed;
  out.grid.t.resize(n_sub + 2);
  out.z.resize(n_sub + 2);
  out.grid.t.front() = t_a;
  out.grid.t.back() = path.grid.t[k + 1];
  out.z.front() = path.z[k];
  out.z.back() = path.z[k + 1];

  // work in the local scaled frame w(u) = e^{lambda u} z(t_a + u): a Brownian
  // bridge in the local clock a(u), immune to large absolute e^{lambda t} factors
  Rng rng(seed, kSaltBridge);
  double u_prev = 0.0;
  cplx w_prev = path.z[k];
  double a_end = alpha_time(h, lambda);
  cplx w_end = std::exp(lambda * h) * path.z[k + 1];
  for (std::size_t j = 1; j <= n_sub; ++j) {
    double u = h * double(j) / double(n_sub + 1);
    double a_prev = alpha_time(u_prev, lambda);
    double a_here = alpha_time(u, lambda);
    double frac = (a_here - a_prev) / (a_end - a_prev);
    cplx mean = w_prev + frac * (w_end - w_prev);
    double var = (a_here - a_prev) * (a_end - a_here) / (a_end - a_prev);
    cplx w = mean + std::sqrt(var) * rng.gaussian_pair();
    out.grid.t[j] = t_a + u;
    out.z[j] = std::exp(-lambda * u) * w;
    u_prev = u;
    w_prev = w;
  }
  return out;
}

RealOuPath sample_real_ou(const TimeGrid& grid, double lambda, SeedSpec seed) {
  grid.validate();
  if (lambda < 0.0) throw std::invalid_argument("sample_real_ou: lambda must be >= 0");
  RealOuPath p;
  p.grid = grid;
  p.lambda = lambda;
  p.seed = seed;
  Rng rng(seed, kSaltPath);
  p.xi.resize(grid.size());
  p.xi[0] = 1.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double h = grid.dt(k);
    p.xi[k + 1] = std::exp(-lambda * h) * p.xi[k] +
                  std::sqrt(ou_step_variance(h, lambda)) * rng.gaussian();
  }
  return p;
}

}  // namespace ouw
