#include <doctest.h>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <cmath>

#include "antisym/errors.hpp"
#include "antisym/fields.hpp"
#include "antisym/fraclap.hpp"
#include "antisym/prng.hpp"
#include "antisym/special.hpp"

using namespace antisym;

namespace {

/// (-Delta)^s exp(-|x|^2) = 4^s Gamma(n/2+s)/Gamma(n/2) 1F1(n/2+s; n/2; -|x|^2).
double gaussian_fraclap(int n, double s, double r2) {
  return std::pow(4.0, s) * std::tgamma(0.5 * n + s) / std::tgamma(0.5 * n) *
         boost::math::hypergeometric_1F1(0.5 * n + s, 0.5 * n, -r2);
}

}  // namespace

TEST_SUITE("fraclap") {
  TEST_CASE("classical route reproduces the Gaussian closed form") {
    for (int n = 1; n <= 2; ++n)
      for (double s : {0.25, 0.5, 0.75}) {
        const Params p(n, s);
        const auto q = quad::QuadSpec::defaults(n);
        const FieldSpec g = make::gaussian(Point(n), 1.0);
        for (double t : {0.0, 0.3, 1.1, 2.5}) {
          Point x = Point::axis(n, t);
          if (n == 2) x[1] = 0.2;
          CAPTURE(n);
          CAPTURE(s);
          CAPTURE(t);
          const FraclapResult r = classical_fraclap_eval(g, x, p, q);
          CHECK(r.value == doctest::Approx(gaussian_fraclap(n, s, x.norm2())).epsilon(1e-7));
          CHECK(r.route == "second_difference");
        }
      }
  }

  TEST_CASE("excision route agrees with the second-difference route") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const FieldSpec g = make::gaussian(Point{0.0}, 1.0);
    for (double t : {0.2, 0.9}) {
      const double exact = gaussian_fraclap(1, 0.5, t * t);
      CHECK(classical_fraclap_excision(g, Point{t}, p, q).value == doctest::Approx(exact).epsilon(1e-5));
    }
  }

  TEST_CASE("antisymmetric form equals the classical operator") {
    for (int n = 1; n <= 2; ++n)
      for (double s : {0.25, 0.75}) {
        const Params p(n, s);
        const auto q = quad::QuadSpec::defaults(n);
        const FieldSpec u = make::antisym_gaussian(Point::axis(n, 0.8), 0.6);
        Point x = Point::axis(n, 0.5);
        if (n == 2) x[1] = -0.3;
        const double a = antisym_fraclap(u, x, p, q), c = classical_fraclap(u, x, p, q);
        CAPTURE(n);
        CAPTURE(s);
        CHECK(std::abs(a - c) <= 1e-7);
        CHECK(definition_gap(u, {x}, p, q) == doctest::Approx(std::abs(a - c)));
      }
  }

  TEST_CASE("x1 is s-harmonic in the half-space") {
    for (double s : {0.25, 0.5, 0.75}) {
      const Params p(1, s);
      for (double t : {0.01, 0.5, 3.0}) CHECK(std::abs(antisym_fraclap(make::monomial_x1(1), Point{t}, p,
                                                                      quad::QuadSpec::defaults(1))) <= 1e-7);
    }
  }

  TEST_CASE("points below the x1 floor are refused") {
    const Params p(1, 0.5);
    CHECK_THROWS_AS(antisym_fraclap(make::monomial_x1(1), Point{1e-4}, p, quad::QuadSpec::defaults(1)),
                    NumericalRejection);
  }

  TEST_CASE("kernel difference is accurate near the plane and sandwiched") {
    SplitMix64 rng(9);
    for (int n = 1; n <= 3; ++n) {
      const Params p(n, 0.5);
      const double e = n + 1.0;
      for (int i = 0; i < 200; ++i) {
        Point x(n), y(n);
        x[0] = rng.uniform(0.5, 2.0);
        y[0] = rng.uniform(0.5, 2.0);
        for (int k = 1; k < n; ++k) {
          x[k] = rng.uniform(-1, 1);
          y[k] = rng.uniform(-1, 1);
        }
        const double direct = std::pow(distance2(x, y), -e / 2) - std::pow(distance2(reflect(x), y), -e / 2);
        CHECK(kernel_difference(x, y, p) == doctest::Approx(direct).epsilon(1e-10));
        const auto ks = kernel_sandwich(x, y, p);
        CHECK(ks.lower <= ks.value);
        CHECK(ks.value <= ks.upper);
      }
      // Deep in the cancellation regime the difference stays positive and ~ 2e x1 y1 / |x-y|^{e+2}.
      const Point a = Point::axis(n, 1e-9);
      Point c = Point::axis(n, 2e-9);
      if (n > 1) c[1] = 1.0;
      else c[0] = 3.0;
      const double k = kernel_difference(a, c, p);
      CHECK(k > 0.0);
      const auto ks = kernel_sandwich(a, c, p);
      CHECK(k == doctest::Approx(ks.upper).epsilon(1e-6));
    }
  }

  TEST_CASE("derivative limit converges as h shrinks") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const FieldSpec v = make::odd_cubic_bump(1);
    const auto a = derivative_limit_pair(v, p, q, 4e-3);
    const auto b = derivative_limit_pair(v, p, q, 1e-3);
    CHECK(a.second == doctest::Approx(b.second).epsilon(1e-12));
    CHECK(std::abs(b.first - b.second) < std::abs(a.first - a.second));
    CHECK(std::abs(b.first - b.second) <= 1e-4 * std::abs(b.second));
  }

  TEST_CASE("pointwise and rescaled kernel bounds are finite") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const auto r = pointwise_bound_check(random_nonneg_antisym(2, 3, p), Point{0.7}, p, q);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.anorm > 0.0);
    const auto k = rescaled_kernel_bound_check(0.5, Point{1.0}, p, 2000, 4);
    CHECK(std::isfinite(k.max_ratio));
    CHECK(k.max_ratio > 0.0);
    CHECK(k.samples == 2000);
  }
}
