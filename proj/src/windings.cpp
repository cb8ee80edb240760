#include "ouw/windings.hpp"

#include <cmath>
#include <cstdint>

#include "ouw/errors.hpp"

namespace ouw {
namespace detail {
namespace {

struct WalkCtx {
  const PlanarPath* path = nullptr;
  double guard = default_guard_angle;
  Refiner refiner = Refiner::BRIDGE;
  int max_depth = default_max_depth;
  Rng* rng = nullptr;
  const std::function<void(double, cplx, double, std::size_t)>* visit = nullptr;
  // current grid step
  double t_left = 0.0, lambda = 0.0;
  std::size_t step = 0;
};

// one cell [u_a, u_a + du] of the current step, in the local scaled frame
// w(u) = e^{lambda u} z(t_left + u) where w is a Brownian bridge in the local
// clock alpha_time(u, lambda).  A cell is accepted only when its chord turns
// less than the guard AND its clock mass is small next to the squared endpoint
// radii: a near-origin chord can have a tiny turn while the bridge between its
// endpoints loops the origin with O(1) probability, and exactly those loops
// carry the heavy winding tail.  The 1/2 margin keeps the per-cell probability
// of a hidden loop near e^{-39} while holding the cell count (which grows like
// the square of the dive depth, i.e. the angular clock) to ~2 per clock unit.
void descend(WalkCtx& c, double u_a, double du, int depth, cplx w_a, cplx w_b, cplx z_a,
             cplx z_b) {
  double dtheta = arg_increment(z_a, z_b);
  // below du ~ 1e-315 a cell cannot be split further in double (its clock mass
  // and bridge variance underflow), so the dive is frozen there: winding
  // structure below radius ~e^{-361} is truncated symmetrically.  That clips
  // the far Cauchy tail at quantiles ~361/horizon, far outside any gate.
  bool radially_safe = c.refiner == Refiner::NONE || du < 1e-315 ||
                       du <= 0.5 * std::min(std::norm(z_a), std::norm(z_b));
  if (std::abs(dtheta) <= c.guard && radially_safe) {
    (*c.visit)(c.t_left + u_a, z_a, dtheta, c.step);
    return;
  }
  if (c.refiner == Refiner::NONE)
    throw RefinementExhausted("walk_winding: guard exceeded with refinement disabled");
  if (c.path->kind != PathKind::BM && c.path->kind != PathKind::OU_EXACT)
    throw UnsupportedKind("walk_winding: no exact bridge for this path kind");
  if (depth >= c.max_depth)
    throw RefinementExhausted("walk_winding: max refinement depth reached");

  // du stays a power-of-two multiple of h (exact); u rounding is harmless, it
  // only feeds smooth coefficients
  double half = 0.5 * du;
  double u_m = u_a + half;
  double a1 = alpha_increment(u_a, half, c.lambda);
  double a2 = alpha_increment(u_m, half, c.lambda);
  double frac = a1 / (a1 + a2);
  cplx mean = w_a + frac * (w_b - w_a);
  double var = a1 * a2 / (a1 + a2);
  cplx w_m = mean + std::sqrt(var) * c.rng->gaussian_pair();
  cplx z_m = std::exp(-c.lambda * u_m) * w_m;

  descend(c, u_a, half, depth + 1, w_a, w_m, z_a, z_m);
  descend(c, u_m, half, depth + 1, w_m, w_b, z_m, z_b);
}

}  // namespace

void walk_winding(const PlanarPath& path, double guard_angle, Refiner refiner, int max_depth,
                  const std::function<void(double, cplx, double, std::size_t)>& visit) {
  if (path.z.size() != path.grid.size() || path.grid.size() < 2)
    throw std::invalid_argument("walk_winding: malformed path");
  Rng rng(path.seed, kSaltRefine);
  WalkCtx c;
  c.path = &path;
  c.guard = guard_angle;
  c.refiner = refiner;
  c.max_depth = max_depth;
  c.rng = &rng;
  c.visit = &visit;
  c.lambda = path.kind == PathKind::OU_EXACT ? path.params.lambda : 0.0;
  for (std::size_t k = 0; k + 1 < path.grid.size(); ++k) {
    double h = path.grid.dt(k);
    c.t_left = path.grid.t[k];
    c.step = k;
    cplx w_b = std::exp(c.lambda * h) * path.z[k + 1];
    descend(c, 0.0, h, 0, path.z[k], w_b, path.z[k], path.z[k + 1]);
  }
}

}  // namespace detail

WindingTrace track_winding(const PlanarPath& path, double guard_angle, Refiner refiner,
                           int max_depth) {
  std::size_t n = path.grid.size();
  WindingTrace tr;
  tr.grid = path.grid;
  tr.theta.assign(n, 0.0);
  tr.log_r.assign(n, 0.0);
  tr.theta_plus.assign(n, 0.0);
  tr.theta_minus.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double r = std::abs(path.z[k]);
    if (r < origin_floor) throw ZeroPoint("track_winding: path point at numerical origin");
    tr.log_r[k] = std::log(r);
  }

  double plus = 0.0, minus = 0.0;
  std::size_t cur = 0;
  auto flush_through = [&](std::size_t upto) {  // steps [cur, upto) are complete
    for (std::size_t j = cur; j < upto; ++j) {
      tr.theta_plus[j + 1] = plus;
      tr.theta_minus[j + 1] = minus;
      tr.theta[j + 1] = plus + minus;
    }
    cur = upto;
  };
  detail::walk_winding(path, guard_angle, refiner, max_depth,
                       [&](double, cplx z_left, double dtheta, std::size_t k) {
                         if (k != cur) flush_through(k);
                         if (std::abs(z_left) >= 1.0)
                           plus += dtheta;
                         else
                           minus += dtheta;
                       });
  flush_through(n - 1);
  return tr;
}

std::pair<double, double> decompose(const WindingTrace& trace) {
  return {trace.theta_plus.back(), trace.theta_minus.back()};
}

IdentityDeviation winding_identity_check(const PlanarPath& shared_bm, double lambda) {
  const auto& a = shared_bm.grid.t;  // clock values alpha(t_k)
  const auto& b = shared_bm.z;
  IdentityDeviation dev;
  double th_bm = 0.0, th_ou = 0.0;
  double t_prev = alpha_inverse(a[0], lambda);
  cplx z_prev = std::exp(-lambda * t_prev) * b[0];
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    double t_next = alpha_inverse(a[k + 1], lambda);
    cplx z_next = std::exp(-lambda * t_next) * b[k + 1];
    th_bm += arg_increment(b[k], b[k + 1]);
    th_ou += arg_increment(z_prev, z_next);
    dev.theta = std::max(dev.theta, std::abs(th_ou - th_bm));
    double lr_ou = std::log(std::abs(z_next));
    double lr_bm = std::log(std::abs(b[k + 1]));
    dev.log_r = std::max(dev.log_r, std::abs(lr_ou - (lr_bm - lambda * t_next)));
    t_prev = t_next;
    z_prev = z_next;
  }
  return dev;
}

double nu_winding(const WindingTrace& trace, const PlanarPath& path, double nu,
                  bool small_variant, double guard_angle, Refiner refiner, int max_depth) {
  if (trace.grid.size() != path.grid.size())
    throw std::invalid_argument("nu_winding: trace does not match path");
  bool always_on = std::isinf(nu) && nu < 0.0;
  double acc = 0.0;
  detail::walk_winding(path, guard_angle, refiner, max_depth,
                       [&](double s, cplx z_left, double dtheta, std::size_t) {
                         if (s < 1.0) return;
                         bool on;
                         if (always_on) {
                           on = true;
                         } else {
                           double thresh = std::pow(s, small_variant ? -nu : nu);
                           on = small_variant ? std::abs(z_left) <= thresh
                                              : std::abs(z_left) >= thresh;
                         }
                         if (on) acc += dtheta;
                       });
  return acc;
}

double interval_winding(const PlanarPath& path, double t0) {
  if (!(t0 > 0.0 && t0 < 1.0)) throw std::domain_error("interval_winding: needs 0 < t0 < 1");
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < path.grid.size(); ++k) {
    if (path.grid.t[k] >= t0 - 1e-12 && path.grid.t[k + 1] <= 1.0 + 1e-12)
      acc += arg_increment(path.z[k], path.z[k + 1]);
  }
  return acc;
}

double TestFunction::operator()(cplx z) const {
  double r = std::abs(z);
  switch (kind) {
    case Kind::DISK: return r <= r1 ? 1.0 : 0.0;
    case Kind::ANNULUS: return (r >= r1 && r <= r2) ? 1.0 : 0.0;
    case Kind::ONE: return 1.0;
  }
  return 0.0;
}

double ergodic_average(const PlanarPath& path, const TestFunction& f) {
  double span = path.grid.t.back() - path.grid.t.front();
  if (!(span > 0.0)) throw std::invalid_argument("ergodic_average: empty time span");
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < path.grid.size(); ++k) acc += f(path.z[k]) * path.grid.dt(k);
  return acc / span;
}

}  // namespace ouw
