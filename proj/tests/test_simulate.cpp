#include <doctest.h>

#include <cmath>

#include "ouw/errors.hpp"
#include "ouw/simulate.hpp"
#include "ouw/time_change.hpp"

using namespace ouw;

TEST_SUITE_BEGIN("simulate");

TEST_CASE("ou step variance limits") {
  CHECK(ou_step_variance(0.4, 0.0) == doctest::Approx(0.4));
  CHECK(ou_step_variance(0.3, 2.0) == doctest::Approx(-std::expm1(-1.2) / 4.0).epsilon(1e-14));
  // series branch joins the exact branch
  CHECK(ou_step_variance(0.7, 0.99e-12) ==
        doctest::Approx(ou_step_variance(0.7, 1.01e-12)).epsilon(1e-10));
}

TEST_CASE("bm path determinism and start point") {
  TimeGrid g = TimeGrid::uniform(2.0, 0.1);
  PlanarPath a = sample_bm(g, {0.5, -1.0}, {11, 4});
  PlanarPath b = sample_bm(g, {0.5, -1.0}, {11, 4});
  PlanarPath c = sample_bm(g, {0.5, -1.0}, {11, 5});
  CHECK(a.z[0] == cplx{0.5, -1.0});
  REQUIRE(a.z.size() == g.size());
  bool same = true, diff = false;
  for (std::size_t k = 0; k < g.size(); ++k) {
    same = same && a.z[k] == b.z[k];
    diff = diff || a.z[k] != c.z[k];
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("bm increment variance") {
  TimeGrid g = TimeGrid::uniform(1.0, 0.02);
  double s2 = 0.0;
  std::size_t count = 0;
  for (std::uint64_t i = 0; i < 400; ++i) {
    PlanarPath p = sample_bm(g, {0.0, 0.0}, {77, i});
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
      cplx dz = p.z[k + 1] - p.z[k];
      s2 += std::norm(dz) / g.dt(k);  // E = 2 per unit time (two coordinates)
      ++count;
    }
  }
  s2 /= double(count);
  CHECK(s2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("exact ou marginal moments") {
  double lambda = 1.3, t = 0.7;
  TimeGrid g = TimeGrid::uniform(t, 0.35);
  OuParams params;
  params.lambda = lambda;
  double m = 0.0;
  const std::size_t n = 20000;
  for (std::uint64_t i = 0; i < n; ++i) {
    PlanarPath p = sample_ou_exact(g, params, {123, i});
    cplx zt = p.z.back();
    m += std::norm(zt);
  }
  m /= double(n);
  double mean_expected = std::exp(-2.0 * lambda * t) + 2.0 * ou_step_variance(t, lambda);
  // |Z_t|^2 has std close to its mean here; 3 SE gate with a safe margin
  CHECK(m == doctest::Approx(mean_expected).epsilon(0.05));
}

TEST_CASE("shared sampler ties the two paths bitwise") {
  double lambda = 0.8;
  TimeGrid g = TimeGrid::uniform(3.0, 0.01);
  OuParams params;
  params.lambda = lambda;
  SharedOu s = sample_ou_shared(g, params, {20250825, 17});
  REQUIRE(s.bm.z.size() == s.ou.z.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(s.bm.grid.t[k] == alpha_time(g.t[k], lambda));
    cplx rebuilt = std::exp(-lambda * g.t[k]) * s.bm.z[k];
    CHECK(s.ou.z[k] == rebuilt);
  }
}

TEST_CASE("euler sampler rejects coarse grids") {
  OuParams params;
  params.lambda = 5.0;
  CHECK_THROWS_AS(sample_ou_euler(TimeGrid::uniform(1.0, 0.05), params, {1, 1}), StepTooLarge);
  CHECK_NOTHROW(sample_ou_euler(TimeGrid::uniform(1.0, 0.02), params, {1, 1}));
}

TEST_CASE("euler variance recursion and bias halving") {
  // per-coordinate variance of the Euler chain follows v' = a^2 v + dt exactly;
  // its bias against the exact OU variance should halve with the step
  double lambda = 1.0, T = 1.0;
  auto euler_var = [&](double dt) {
    std::size_t n = std::size_t(T / dt + 0.5);
    double a = 1.0 - lambda * dt, v = 0.0;
    for (std::size_t k = 0; k < n; ++k) v = a * a * v + dt;
    return v;
  };
  double exact = ou_step_variance(T, lambda);
  double b1 = std::abs(euler_var(0.05) - exact);
  double b2 = std::abs(euler_var(0.025) - exact);
  CHECK(b1 / b2 >= 1.4);
  CHECK(b1 / b2 <= 2.6);

  // the sampler matches its own recursion statistically; the chain is linear,
  // so subtracting the deterministic decay of z0 isolates the noise part
  TimeGrid g = TimeGrid::uniform(T, 0.05);
  OuParams params;
  params.lambda = lambda;
  cplx drift = std::pow(1.0 - lambda * 0.05, 20.0) * params.z0;
  double m = 0.0;
  const std::size_t n = 20000;
  for (std::uint64_t i = 0; i < n; ++i) {
    PlanarPath p = sample_ou_euler(g, params, {55, i});
    m += std::norm(p.z.back() - drift);
  }
  m /= 2.0 * double(n);  // per coordinate
  double se = euler_var(0.05) * std::sqrt(2.0 / double(2 * n));
  CHECK(std::abs(m - euler_var(0.05)) <= 3.0 * se + 1e-12);
}

TEST_CASE("bridge refinement endpoints and law") {
  double lambda = 1.0;
  TimeGrid g = TimeGrid::uniform(1.0, 0.5);
  OuParams params;
  params.lambda = lambda;

  // endpoints are kept bitwise; interior points follow the conditional mean
  double resid = 0.0;
  const std::size_t n = 20000;
  std::size_t k = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    PlanarPath p = sample_ou_exact(g, params, {301, i});
    PlanarPath r = refine_bridge(p, k, 1, {301, i});
    REQUIRE(r.z.size() == 3);
    CHECK(r.z.front() == p.z[k]);
    CHECK(r.z.back() == p.z[k + 1]);
    CHECK(r.grid.t.front() == doctest::Approx(g.t[k]));
    CHECK(r.grid.t.back() == doctest::Approx(g.t[k + 1]));

    // conditional mean of the midpoint in the alpha-scaled frame
    double t_a = g.t[k], t_m = r.grid.t[1], h = g.dt(k);
    double a_end = alpha_increment(t_a, h, lambda);
    double a_mid = alpha_increment(t_a, t_m - t_a, lambda);
    double frac = a_mid / a_end;
    cplx w_a = std::exp(lambda * t_a) * p.z[k];
    cplx w_b = std::exp(lambda * g.t[k + 1]) * p.z[k + 1];
    cplx mean_w = w_a + frac * (w_b - w_a);
    cplx mid_w = std::exp(lambda * t_m) * r.z[1];
    resid += std::norm(mid_w - mean_w);
  }
  // mean squared residual equals twice the bridge variance (two coordinates)
  double t_a = g.t[k], h = g.dt(k);
  double a_end = alpha_increment(t_a, h, lambda);
  double a_mid = alpha_increment(t_a, 0.5 * h, lambda);
  double var = a_mid * (a_end - a_mid) / a_end;
  resid /= double(n);
  CHECK(resid == doctest::Approx(2.0 * var).epsilon(0.05));
}

TEST_CASE("bridge refinement rejects unsupported kinds") {
  TimeGrid g = TimeGrid::uniform(1.0, 0.05);
  OuParams params;
  PlanarPath p = sample_ou_euler(g, params, {3, 3});
  CHECK_THROWS_AS(refine_bridge(p, 0, 1, {3, 3}), UnsupportedKind);
}

TEST_CASE("real ou driver") {
  TimeGrid g = TimeGrid::uniform(4.0, 0.01);
  RealOuPath p = sample_real_ou(g, 1.0, {88, 0});
  CHECK(p.xi[0] == 1.0);
  REQUIRE(p.xi.size() == g.size());
  double m = 0.0;
  const std::size_t n = 5000;
  for (std::uint64_t i = 0; i < n; ++i) {
    RealOuPath q = sample_real_ou(g, 1.0, {88, i});
    m += q.xi.back() * q.xi.back();
  }
  m /= double(n);
  double expected = std::exp(-8.0) + ou_step_variance(4.0, 1.0);
  CHECK(m == doctest::Approx(expected).epsilon(0.07));
}

TEST_SUITE_END();
