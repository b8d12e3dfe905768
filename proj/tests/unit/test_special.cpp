#include <doctest.h>

#include <cmath>
#include <numbers>

#include "antisym/errors.hpp"
#include "antisym/special.hpp"

using namespace antisym;

namespace {
/// Reference constant built from std::tgamma.
double c_ref(int n, double s) {
  return s * std::pow(std::numbers::pi, -0.5 * n) * std::pow(4.0, s) * std::tgamma(0.5 * (n + 2 * s)) /
         std::tgamma(1 - s);
}
}  // namespace

TEST_SUITE("special") {
  TEST_CASE("gamma matches std::tgamma") {
    for (double x : {1e-3, 0.1, 0.5, 0.75, 1.0, 1.5, 2.0, 3.3, 7.25, 20.0, 50.5}) {
      CAPTURE(x);
      CHECK(special::gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(special::gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(special::gamma_fn(-1.5), std::domain_error);
  }

  TEST_CASE("normalizing constants") {
    for (int n = 1; n <= 3; ++n)
      for (double s : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        const Params p(n, s);
        CAPTURE(n);
        CAPTURE(s);
        CHECK(special::c_ns(p) == doctest::Approx(c_ref(n, s)).epsilon(1e-13));
        CHECK(special::gamma_ns(p) ==
              doctest::Approx(std::sin(std::numbers::pi * s) * std::tgamma(0.5 * n) /
                              std::pow(std::numbers::pi, 0.5 * n + 1))
                  .epsilon(1e-13));
        CHECK(special::tilde_c_ns(p) == doctest::Approx(c_ref(1, s) / (2 * s)).epsilon(1e-13));
        CHECK(special::c_ns(p) * special::halfspace_integral_closed(p) ==
              doctest::Approx(special::tilde_c_ns(p)).epsilon(1e-12));
      }
  }

  TEST_CASE("n = 1, s = 1/2 closed values") {
    const Params p(1, 0.5);
    CHECK(special::c_ns(p) == doctest::Approx(1 / std::numbers::pi).epsilon(1e-14));
    CHECK(special::gamma_ns(p) == doctest::Approx(1 / std::numbers::pi).epsilon(1e-14));
    CHECK(special::tilde_c_ns(p) == doctest::Approx(1 / std::numbers::pi).epsilon(1e-14));
    CHECK(special::halfspace_integral_closed(p) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("sphere areas") {
    CHECK(special::unit_sphere_area(1) == doctest::Approx(2.0));
    CHECK(special::unit_sphere_area(2) == doctest::Approx(2 * std::numbers::pi));
    CHECK(special::unit_sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Params(0, 0.5), UsageError);
    CHECK_THROWS_AS(Params(4, 0.5), UsageError);
    CHECK_THROWS_AS(Params(1, 0.0), UsageError);
    CHECK_THROWS_AS(Params(1, 1.0), UsageError);
  }
}
