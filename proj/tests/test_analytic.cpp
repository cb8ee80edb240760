#include <doctest.h>

#include <cmath>

#include "ouw/analytic.hpp"
#include "ouw/special.hpp"
#include "ouw/types.hpp"

using namespace ouw;

TEST_SUITE_BEGIN("analytic");

TEST_CASE("cauchy law basics") {
  CHECK(cauchy_cdf(0.0, 2.0) == doctest::Approx(0.5));
  CHECK(cauchy_cdf(2.0, 2.0) == doctest::Approx(0.75));
  CHECK(cauchy_cdf(-2.0, 2.0) == doctest::Approx(0.25));
  CauchyLaw law{0.7};
  for (double p : {0.01, 0.3, 0.5, 0.77, 0.99})
    CHECK(law.cdf(law.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("expected log exit time of the symmetric cone") {
  CHECK(expected_log_exit_bm(0.2) == doctest::Approx(-3.5016435203435898722).epsilon(1e-10));
  CHECK(expected_log_exit_bm(0.3) == doctest::Approx(-2.6743828367377945492).epsilon(1e-10));
  CHECK(expected_log_exit_bm(0.5) == doctest::Approx(-1.6019529398724959666).epsilon(1e-10));
  CHECK(expected_log_exit_bm(pi / 4) == doctest::Approx(-0.58902795122174225995).epsilon(1e-10));
}

TEST_CASE("expected log exit time: narrow-cone growth is 2 log c") {
  double r3 = expected_log_exit_bm(1e-3) / std::log(1e-3);
  double r4 = expected_log_exit_bm(1e-4) / std::log(1e-4);
  CHECK(r4 >= 2.0);
  CHECK(r4 <= 2.1);
  CHECK(r4 <= r3);  // ratio falls toward 2 as the cone narrows
}

TEST_CASE("sinh^4 integral equals its closed form") {
  CHECK(sinh4_moment_integral(pi / 16) == doctest::Approx(0.0105805951504398967).epsilon(1e-11));
  CHECK(sinh4_moment_closed(pi / 16) == doctest::Approx(0.0105805951504398967).epsilon(1e-13));
  for (int j = 1; j <= 20; ++j) {
    double c = (pi / 8) * double(j) / 21.0;
    CHECK(std::abs(sinh4_moment_integral(c) - sinh4_moment_closed(c)) <= 1e-9);
  }
}

TEST_CASE("sinh^4 closed form has the 5c^4 narrow-cone limit") {
  double c = 0.01;
  CHECK(sinh4_moment_closed(c) / (5.0 * c * c * c * c) ==
        doctest::Approx(1.0008138876971072737).epsilon(1e-12));
}

TEST_CASE("sinh^2 closed form") {
  CHECK(sinh2_moment_closed(0.2) == doctest::Approx(0.042852214191619351557).epsilon(1e-13));
  CHECK(sinh2_moment_closed(0.3) == doctest::Approx(0.10581415725615835231).epsilon(1e-13));
  // narrow cone: mean exit time ~ c^2
  CHECK(sinh2_moment_closed(0.01) == doctest::Approx(1e-4).epsilon(3e-4));
}

TEST_CASE("exit-coordinate density normalizes") {
  double c = 0.4;
  QuadratureConfig q;
  double mass = 2.0 * integrate_half_line([c](double x) { return exit_density_beta(x, c); },
                                          0.0, q);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(exit_density_beta(0.0, c) == doctest::Approx(1.0 / (2.0 * c)).epsilon(1e-14));
}

TEST_CASE("laplace transform of the level hitting time") {
  CHECK(laplace_exit_level(1.0, 2.0, 1.0) ==
        doctest::Approx(0.25539567631050574387).epsilon(1e-8));
  CHECK(laplace_exit_level(5.0, 2.0, 1.0) ==
        doctest::Approx(0.010881477074944541062).epsilon(1e-8));
  CHECK(laplace_exit_level(1.0, 4.0, 1.0) ==
        doctest::Approx(0.13699945762505730436).epsilon(1e-8));
  // tiny transform argument: the value must sit just below 1
  CHECK(laplace_exit_level(1e-3, 2.0, 1.0) ==
        doctest::Approx(0.99827327553418585016).epsilon(1e-8));
  CHECK(laplace_exit_level(1.0, 2.0, 1e-3) ==
        doctest::Approx(0.059265878117842444744).epsilon(1e-8));
}

TEST_CASE("laplace transform small-rate limit") {
  // as the drift rate vanishes the transform tends to exp(-r sqrt(2 mu))
  double v = laplace_exit_level(1.0, 2.0, 1e-6);
  CHECK(v == doctest::Approx(0.059105906567649636157).epsilon(1e-8));
  CHECK(std::abs(v - std::exp(-2.0 * std::sqrt(2.0))) <= 1e-4);
}

TEST_CASE("invariant disk mass") {
  CHECK(invariant_disk_mass(1.0, 1.0) == doctest::Approx(0.6321205588285576784).epsilon(1e-14));
  CHECK(invariant_disk_mass(30.0, 1.0) == doctest::Approx(1.0));
  CHECK(invariant_disk_mass(1e-4, 2.0) == doctest::Approx(2e-8).epsilon(1e-7));
}

TEST_SUITE_END();
