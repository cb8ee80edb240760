#include <doctest.h>

#include <cmath>

#include "ouw/errors.hpp"
#include "ouw/stable_ou.hpp"
#include "ouw/stats.hpp"

using namespace ouw;

TEST_SUITE_BEGIN("stable");

TEST_CASE("half-index draw matches the assembled formula") {
  // the shortcut branch must consume the same draws and produce the same value
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng probe({100, i});
    double th = pi * probe.uniform();
    double w = probe.exponential();
    double a = 0.5;
    double generic = std::exp(std::log(std::sin(a * th)) + std::log(std::sin(a * th)) -
                              2.0 * std::log(std::sin(th)) - std::log(w));
    CHECK(sample_positive_stable(0.5, SeedSpec{100, i}) ==
          doctest::Approx(generic).epsilon(1e-12));
  }
}

TEST_CASE("half-index law has the known closed cdf") {
  const std::size_t n = 20000;
  std::vector<double> xs(n);
  for (std::uint64_t i = 0; i < n; ++i) xs[i] = sample_positive_stable(0.5, SeedSpec{101, i});
  EmpiricalDist d(std::move(xs));
  double ks = ks_distance(d, [](double s) {
    return s <= 0.0 ? 0.0 : std::erfc(0.5 / std::sqrt(s));
  });
  CHECK(ks <= 0.02);
}

TEST_CASE("one-sided draws are positive and laplace-exact") {
  for (double index : {0.25, 0.5, 0.75}) {
    const std::size_t n = 50000;
    double m = 0.0, v = 0.0, dmin = 1e300;
    for (std::uint64_t i = 0; i < n; ++i) {
      double s = sample_positive_stable(index, SeedSpec{102, i});
      dmin = std::min(dmin, s);
      double f = std::exp(-s);  // E = exp(-1) for every index at mu = 1
      m += f;
      v += f * f;
    }
    m /= double(n);
    double se = std::sqrt((v / n - m * m) / n);
    CHECK(dmin > 0.0);
    CHECK(std::abs(m - std::exp(-1.0)) <= 3.0 * se);
  }
}

TEST_CASE("index out of range throws") {
  CHECK_THROWS(sample_positive_stable(0.0, SeedSpec{1, 1}));
  CHECK_THROWS(sample_positive_stable(1.0, SeedSpec{1, 1}));
}

TEST_CASE("subordinator self-similarity") {
  // S(2h) =law 4 S(h) at the half index; h = 1, independent streams
  const std::size_t n = 100000;
  std::vector<double> a(n), b(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    a[i] = std::pow(2.0, 1.0 / 0.5) * sample_positive_stable(0.5, SeedSpec{103, i});
    b[i] = 4.0 * sample_positive_stable(0.5, SeedSpec{104, i});
  }
  EmpiricalDist da(std::move(a)), db(std::move(b));
  CHECK(ks_two_sample(da, db) <= 0.01);
}

TEST_CASE("subordinator paths are nondecreasing and scale with the step") {
  TimeGrid g = TimeGrid::uniform(1.0, 0.25);
  SubordinatorPath p = sample_subordinator(g, 0.5, {105, 0});
  REQUIRE(p.s.size() == g.size());
  CHECK(p.s[0] == 0.0);
  for (std::size_t k = 0; k + 1 < p.s.size(); ++k) CHECK(p.s[k + 1] >= p.s[k]);

  // increments over dt=0.25 at index 1/2 are 0.25^2 * standard draws
  const std::size_t n = 20000;
  std::vector<double> inc(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    SubordinatorPath q = sample_subordinator(g, 0.5, {106, i});
    inc[i] = (q.s[1] - q.s[0]) / (0.25 * 0.25);
  }
  EmpiricalDist d(std::move(inc));
  double ks = ks_distance(d, [](double s) {
    return s <= 0.0 ? 0.0 : std::erfc(0.5 / std::sqrt(s));
  });
  CHECK(ks <= 0.02);
}

TEST_CASE("isotropic increments have the stable characteristic function") {
  double alpha = 1.0, t = 0.7, v = 1.1;
  TimeGrid g = TimeGrid::uniform(t, t / 4.0);
  const std::size_t n = 100000;
  double m = 0.0, s2 = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    PlanarPath p = sample_isotropic_stable(g, alpha, {107, i});
    cplx dz = p.z.back() - p.z.front();
    double f = std::cos(v * dz.real());
    m += f;
    s2 += f * f;
  }
  m /= double(n);
  double se = std::sqrt((s2 / n - m * m) / n);
  CHECK(std::abs(m - std::exp(-t * std::pow(v, alpha))) <= 3.0 * se);
}

TEST_CASE("near-gaussian index stays close to the gaussian cf") {
  double alpha = 1.95, t = 0.5;
  TimeGrid g = TimeGrid::uniform(t, t / 2.0);
  const std::size_t n = 50000;
  for (double v : {0.6, 1.2}) {
    double m = 0.0, s2 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      PlanarPath p = sample_isotropic_stable(g, alpha, {108, i});
      cplx dz = p.z.back() - p.z.front();
      double f = std::cos(v * dz.real());
      m += f;
      s2 += f * f;
    }
    m /= double(n);
    double se = std::sqrt((s2 / n - m * m) / n);
    CHECK(std::abs(m - std::exp(-t * std::pow(v, alpha))) <= 3.0 * se);
  }
}

TEST_CASE("zero-noise recursion is pure decay") {
  TimeGrid g = TimeGrid::uniform(2.0, 0.01);
  OuParams params;
  params.lambda = 1.5;
  params.alpha = 1.0;
  OuspPath p = sample_ousp(g, params, {109, 0}, true);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::abs(p.v[k] - std::exp(-1.5 * g.t[k])) <= 1e-12);
  }
  CHECK(p.jumps.empty());
}

TEST_CASE("jump bookkeeping matches the recorded increments") {
  TimeGrid g = TimeGrid::uniform(1.0, 1e-3);
  OuParams params;
  params.lambda = 2.0;
  params.alpha = 1.0;
  OuspPath p = sample_ousp(g, params, {110, 4});
  double decay = std::exp(-params.lambda * 1e-3);
  double thr = default_jump_factor * std::pow(params.lambda * 1e-3, 1.0);
  std::size_t recomputed = 0;
  for (std::size_t k = 0; k + 1 < g.size(); ++k)
    if (std::abs(p.du[k]) > thr) ++recomputed;
  CHECK(p.jumps.size() == recomputed);
  for (const auto& j : p.jumps) {
    CHECK(std::abs(p.du[j.step]) > thr);
    CHECK(std::abs(j.dv - decay * p.du[j.step]) <= 1e-14 * std::abs(j.dv));
  }
  CHECK_FALSE(p.jumps.empty());  // alpha = 1 on 1000 steps essentially always jumps
}

TEST_CASE("step cap for the jump recursion") {
  OuParams params;
  params.lambda = 30.0;
  params.alpha = 1.0;
  CHECK_THROWS_AS(sample_ousp(TimeGrid::uniform(1.0, 0.05), params, {1, 1}), StepTooLarge);
}

TEST_CASE("jump-aware walk on manual paths") {
  auto make = [](std::vector<cplx> v, std::vector<std::size_t> jump_steps) {
    OuspPath p;
    p.grid = TimeGrid::uniform_n(double(v.size() - 1), v.size() - 1);
    p.du.assign(v.size() - 1, {0.0, 0.0});
    p.v = std::move(v);
    for (std::size_t s : jump_steps) p.jumps.push_back({s, {0.0, 0.0}});
    p.params.lambda = 1.0;
    p.params.alpha = 1.0;
    return p;
  };

  // a marked jump may rotate by any principal angle
  OuspPath quarter = make({{1.0, 0.0}, {0.0, 1.0}}, {0});
  CHECK(track_winding_jumps(quarter).theta.back() == doctest::Approx(pi / 2));

  // jump along the positive axis carries no angle
  OuspPath stretch = make({{1.0, 0.0}, {2.0, 0.0}}, {0});
  CHECK(track_winding_jumps(stretch).theta.back() == 0.0);

  // unmarked large rotation must be refused (no bridge exists for jumps)
  OuspPath sweep = make({{1.0, 0.0}, {-1.0, 1e-6}}, {});
  CHECK_THROWS_AS(track_winding_jumps(sweep), RefinementExhausted);

  // marked chord straight through the origin is ill-posed
  OuspPath through = make({{1.0, 0.0}, {-1.0, 0.0}}, {0});
  CHECK_THROWS_AS(track_winding_jumps(through), SegmentThroughOrigin);
}

TEST_CASE("winding split books every step exactly once") {
  TimeGrid g = TimeGrid::uniform(2.0, 1e-3);
  OuParams params;
  params.lambda = 2.0;
  params.alpha = 1.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    OuspPath p = sample_ousp(g, params, {111, i});
    try {
      WindingTrace tr = track_winding_jumps(p);
      OuspWindingSplit sp = winding_split(p);
      CHECK(sp.n_jumps == p.jumps.size());
      CHECK(std::abs(sp.theta_continuous.back() + sp.theta_jump.back() - tr.theta.back()) <=
            1e-12);
    } catch (const RefinementExhausted&) {
      // rare small-modulus sweep; acceptable for this fixture
    }
  }
}

TEST_CASE("per-step identity residuals vanish") {
  TimeGrid g = TimeGrid::uniform(2.0, 1e-3);
  OuParams params;
  params.lambda = 1.0;
  params.alpha = 1.0;
  OuspPath p = sample_ousp(g, params, {112, 0});
  OuspResiduals r = sde_residuals(p);
  CHECK(r.max_theta <= 1e-9);
  CHECK(r.max_log_r <= 1e-9);
  CHECK(r.n_steps > 0);

  std::vector<double> lr = ousp_radial(p);
  REQUIRE(lr.size() == g.size());
  CHECK(lr[0] == doctest::Approx(0.0));
}

TEST_CASE("stationarity onset of the jump recursion") {
  // |V| law at T and 2T should already agree at T = 10/lambda
  double lambda = 1.0, alpha = 1.0;
  double T = 10.0 / lambda;
  TimeGrid g = TimeGrid::uniform(2.0 * T, 0.02 / lambda);
  OuParams params;
  params.lambda = lambda;
  params.alpha = alpha;
  const std::size_t n = 100000;
  std::size_t half = (g.size() - 1) / 2;
  std::vector<double> at_T(n), at_2T(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    OuspPath p = sample_ousp(g, params, {113, i});
    at_T[i] = std::abs(p.v[half]);
    at_2T[i] = std::abs(p.v.back());
  }
  EmpiricalDist da(std::move(at_T)), db(std::move(at_2T));
  CHECK(ks_two_sample(da, db) <= 0.02);
}

TEST_CASE("rate-scaling of the two constructions at matched seeds") {
  // smoke-scale version of the full experiment
  TimeGrid g = TimeGrid::uniform(1.0, 2e-3);
  OuParams params;
  params.lambda = 2.0;
  params.alpha = 1.0;
  const std::size_t n = 5000;
  std::vector<double> a, b;
  for (std::uint64_t i = 0; i < n; ++i) {
    try {
      a.push_back(track_winding_jumps(sample_ousp(g, params, {114, i})).theta.back());
    } catch (const RefinementExhausted&) {
    } catch (const SegmentThroughOrigin&) {
    }
    try {
      b.push_back(
          track_winding_jumps(sample_ousp_euler_scaled(g, params, {115, i})).theta.back());
    } catch (const RefinementExhausted&) {
    } catch (const SegmentThroughOrigin&) {
    }
  }
  REQUIRE(a.size() > n * 95 / 100);
  REQUIRE(b.size() > n * 95 / 100);
  EmpiricalDist da(std::move(a)), db(std::move(b));
  CHECK(ks_two_sample(da, db) <= 0.05);
}

TEST_CASE("levy constant: derived form equals the defining integral") {
  LevyConstantForms f06 = levy_constant_forms(0.6);
  LevyConstantForms f10 = levy_constant_forms(1.0);
  LevyConstantForms f14 = levy_constant_forms(1.4);
  CHECK(f06.closed == doctest::Approx(0.100072892064877836).epsilon(1e-12));
  CHECK(f10.closed == doctest::Approx(0.159154943091895336).epsilon(1e-12));
  CHECK(f14.closed == doctest::Approx(0.178600382438444734).epsilon(1e-12));
  CHECK(f10.closed == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-12));
  for (const auto& f : {f06, f10, f14}) {
    CHECK(f.quadrature == doctest::Approx(f.closed).epsilon(1e-8));
    // the alternative printed normalization disagrees with the integral
    CHECK_FALSE(f.printed_consistent);
    CHECK(std::abs(f.printed - f.quadrature) > 1e-3 * f.quadrature);
  }
}

TEST_SUITE_END();
