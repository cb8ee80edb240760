#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ouw/errors.hpp"
#include "ouw/quadrature.hpp"
#include "ouw/rng.hpp"
#include "ouw/special.hpp"
#include "ouw/stats.hpp"
#include "ouw/time_change.hpp"
#include "ouw/types.hpp"

using namespace ouw;

TEST_SUITE_BEGIN("core");

TEST_CASE("alpha clock round trips across drift rates") {
  for (double lambda : {1e-15, 1e-9, 1e-3, 0.5, 3.0, 50.0}) {
    for (double t : {1e-8, 0.01, 0.7, 5.0}) {
      double a = alpha_time(t, lambda);
      CHECK(alpha_inverse(a, lambda) == doctest::Approx(t).epsilon(1e-12));
      CHECK(a >= t * (1.0 - 1e-12));  // clock runs at least as fast as real time
    }
  }
  CHECK(alpha_time(3.0, 0.0) == 3.0);
  CHECK(alpha_inverse(3.0, 0.0) == 3.0);
}

TEST_CASE("alpha clock series matches the exact branch at the switch") {
  // the tiny-lambda series must join the expm1 branch without a jump
  double t = 2.5;
  double lo = alpha_time(t, 0.99e-12), hi = alpha_time(t, 1.01e-12);
  CHECK(std::abs(lo - hi) <= 1e-12 * t);
}

TEST_CASE("alpha increments telescope") {
  double lambda = 1.7;
  for (double a : {0.0, 0.3, 2.0}) {
    for (double h : {1e-4, 0.25}) {
      double direct = alpha_time(a + h, lambda) - alpha_time(a, lambda);
      CHECK(alpha_increment(a, h, lambda) == doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("principal arg increments") {
  CHECK(arg_increment({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(pi / 2));
  CHECK(arg_increment({0.0, 1.0}, {1.0, 0.0}) == doctest::Approx(-pi / 2));
  CHECK(arg_increment({1.0, 0.0}, {2.0, 0.0}) == 0.0);
  CHECK(std::abs(arg_increment({1.0, 0.0}, {-1.0, 1e-8})) <= pi);
  CHECK_THROWS_AS(arg_increment({0.0, 0.0}, {1.0, 0.0}), ZeroPoint);
}

TEST_CASE("rng streams are deterministic and disjoint") {
  Rng a({42, 7}), b({42, 7});
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c({42, 8}), d({42, 7}, kSaltBridge);
  Rng e({42, 7});
  std::set<std::uint64_t> firsts{Rng({42, 7}).next_u64(), c.next_u64(), d.next_u64()};
  CHECK(firsts.size() == 3);
  (void)e;
}

TEST_CASE("rng uniforms stay inside the open interval") {
  Rng r({20250825, 0});
  for (int i = 0; i < 200000; ++i) {
    double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("rng gaussian moments") {
  Rng r({20250825, 1});
  const int n = 400000;
  double m = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = r.gaussian();
    m += g;
    s2 += g * g;
  }
  m /= n;
  s2 = s2 / n - m * m;
  CHECK(std::abs(m) <= 3.0 / std::sqrt(double(n)));
  CHECK(std::abs(s2 - 1.0) <= 3.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("gaussian pair equals two sequential gaussians") {
  Rng a({9, 9}), b({9, 9});
  cplx p = a.gaussian_pair();
  CHECK(p.real() == b.gaussian());
  CHECK(p.imag() == b.gaussian());
}

TEST_CASE("panel quadrature on classical integrals") {
  QuadratureConfig q;
  CHECK(integrate_panel([](double x) { return x * x; }, 0.0, 1.0, q) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // integrable endpoint singularity
  CHECK(integrate_panel([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, q) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate_panel([](double x) { return std::log(x); }, 0.0, 1.0, q) ==
        doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("half-line quadrature finds the mass") {
  QuadratureConfig q;
  CHECK(integrate_half_line([](double x) { return std::exp(-x); }, 0.0, q) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_half_line([](double x) { return x * std::exp(-x); }, 0.0, q) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // peak far from the origin must not be truncated away
  CHECK(integrate_half_line([](double x) { return std::exp(-0.5 * (x - 30.0) * (x - 30.0)); },
                            0.0, q) ==
        doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-10));
}

TEST_CASE("gamma function against high-precision values") {
  CHECK(gamma_fn(0.1) == doctest::Approx(9.5135076986687318363).epsilon(1e-13));
  CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055160273).epsilon(1e-13));
  CHECK(gamma_fn(3.7) == doctest::Approx(4.1706517837966031654).epsilon(1e-13));
  CHECK(gamma_fn(10.3) == doctest::Approx(716430.68906237524455).epsilon(1e-13));
  CHECK(gamma_fn(27.5) == doctest::Approx(2.085885192762266851e27).epsilon(1e-12));
  CHECK(gamma_fn(49.5) == doctest::Approx(8.6676018431352723453e61).epsilon(1e-12));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
}

TEST_CASE("normal cdf and quantile") {
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_cdf(-1.0) + norm_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(norm_quantile(1e-10) == doctest::Approx(-6.3613409024040562047).epsilon(1e-13));
  CHECK(norm_quantile(1e-4) == doctest::Approx(-3.7190164854556805644).epsilon(1e-13));
  CHECK(norm_quantile(0.3) == doctest::Approx(-0.52440051270804078404).epsilon(1e-13));
  CHECK(norm_quantile(0.975) == doctest::Approx(1.9599639845400542355).epsilon(1e-13));
  // reference value for the double nearest 0.9999999, not the decimal: the
  // quantile slope 1/phi(5.2) ~ 1.9e6 makes that distinction visible here
  CHECK(norm_quantile(0.9999999) == doctest::Approx(5.1993375822906610937).epsilon(1e-12));

  for (double p : {1e-8, 0.01, 0.25, 0.5, 0.9, 0.999}) {
    CHECK(norm_cdf(norm_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("exponential integral") {
  CHECK(expint_e1(0.25) == doctest::Approx(1.0442826344437381945).epsilon(1e-12));
  CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552027368).epsilon(1e-12));
  // series identity near zero: E1(x) ~ -gamma - log x + x
  double x = 1e-6;
  CHECK(expint_e1(x) == doctest::Approx(-euler_gamma - std::log(x) + x).epsilon(1e-9));
}

TEST_CASE("ks distance on quantile-matched points is minimal") {
  const std::size_t n = 1000;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = (double(i) + 0.5) / double(n);
  EmpiricalDist d(std::move(xs));
  double ks = ks_distance(d, [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); });
  CHECK(ks <= 0.5 / double(n) + 1e-12);
}

TEST_CASE("ks distance of a point mass") {
  EmpiricalDist d(std::vector<double>(500, 0.3));
  double ks = ks_distance(d, [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); });
  CHECK(ks == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("ks distance of a large uniform sample is small") {
  Rng r({20250825, 3});
  std::vector<double> xs(100000);
  for (double& x : xs) x = r.uniform();
  EmpiricalDist d(std::move(xs));
  double ks = ks_distance(d, [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); });
  CHECK(ks <= 0.01);
}

TEST_CASE("two-sample ks") {
  std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  EmpiricalDist da(a), db(a);
  CHECK(ks_two_sample(da, db) == doctest::Approx(0.0));
  EmpiricalDist dc(std::vector<double>{10.0, 11.0, 12.0});
  CHECK(ks_two_sample(da, dc) == doctest::Approx(1.0));
}

TEST_CASE("empirical summaries") {
  EmpiricalDist d(std::vector<double>{4.0, 1.0, 3.0, 2.0, 5.0});
  CHECK(d.quantile(0.5) == doctest::Approx(3.0));
  CHECK(d.quantile(0.0) == doctest::Approx(1.0));
  CHECK(d.quantile(1.0) == doctest::Approx(5.0));
  CHECK(d.mean() == doctest::Approx(3.0));
  CHECK(d.sample_variance() == doctest::Approx(2.5));
  CHECK_THROWS(EmpiricalDist(std::vector<double>{}));
}

TEST_CASE("grid construction") {
  TimeGrid g = TimeGrid::uniform(1.0, 0.3);
  CHECK(g.size() == 5);  // ceil(1/0.3) = 4 steps
  CHECK(g.t.front() == 0.0);
  CHECK(g.t.back() == 1.0);
  TimeGrid h = TimeGrid::uniform_n(2.0, 8);
  CHECK(h.size() == 9);
  CHECK(h.t.back() == 2.0);
  CHECK(h.dt(3) == doctest::Approx(0.25));
}

TEST_SUITE_END();
