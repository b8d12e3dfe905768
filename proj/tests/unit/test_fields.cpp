#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "antisym/errors.hpp"
#include "antisym/fields.hpp"
#include "antisym/norms.hpp"
#include "antisym/prng.hpp"
#include "antisym/special.hpp"

using namespace antisym;

namespace {

Point random_point(SplitMix64& rng, int n, double box) {
  Point x(n);
  for (int k = 0; k < n; ++k) x[k] = rng.uniform(-box, box);
  return x;
}

std::vector<FieldSpec> antisymmetric_families(int n) {
  return {make::monomial_x1(n),
          make::antisym_gaussian(Point::axis(n, 1.0), 0.7, 2.0),
          random_nonneg_antisym(7, 3, Params(n, 0.5)),
          make::odd_cubic_bump(n, 1.5, 0.5),
          make::odd_step(n),
          antisymmetrize(make::gaussian(Point::axis(n, 0.4), 1.0)),
          make::linear_combination({{2.0, make::monomial_x1(n)}, {-1.0, make::odd_step(n)}})};
}

}  // namespace

TEST_SUITE("fields") {
  TEST_CASE("antisymmetric families are odd under reflection") {
    SplitMix64 rng(3);
    for (int n = 1; n <= 3; ++n)
      for (const auto& f : antisymmetric_families(n)) {
        CAPTURE(f.family_name());
        CHECK(f.meta().antisymmetric);
        for (int i = 0; i < 50; ++i) {
          const Point x = random_point(rng, n, 3.0);
          CHECK(evaluate(f, reflect(x)) == doctest::Approx(-evaluate(f, x)).epsilon(1e-12).scale(1e-300));
        }
      }
  }

  TEST_CASE("random data are nonnegative on the half-space and reproducible") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Params p(2, 0.5);
      const FieldSpec a = random_nonneg_antisym(seed, 4, p);
      const FieldSpec b = random_nonneg_antisym(seed, 4, p);
      SplitMix64 rng(seed);
      for (int i = 0; i < 100; ++i) {
        Point x = random_point(rng, 2, 6.0);
        x[0] = std::abs(x[0]);
        CHECK(evaluate(a, x) >= 0.0);
        CHECK(evaluate(a, x) == evaluate(b, x));
      }
    }
  }

  TEST_CASE("SplitMix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
  }

  TEST_CASE("cutoffs take their prescribed values") {
    for (int n = 1; n <= 3; ++n) {
      const FieldSpec z1 = make::zeta1(n, 0.5), z2 = make::zeta2(n, 0.5);
      CHECK(evaluate(z1, Point::axis(n, -0.6)) == 1.0);
      CHECK(evaluate(z1, Point::axis(n, 0.0)) == 0.0);
      CHECK(evaluate(z1, Point::axis(n, 2.0)) == 0.0);
      CHECK(evaluate(z2, Point::axis(n, -2.0)) == 1.0);
      CHECK(evaluate(z2, Point::axis(n, -2.45)) == 1.0);
      CHECK(evaluate(z2, Point::axis(n, -0.9)) == 0.0);
      CHECK(evaluate(z2, Point::axis(n, 2.0)) == 0.0);
    }
    CHECK(smoothstep(0.5) == doctest::Approx(0.5));
    CHECK(smoothstep(-1.0) == 0.0);
    CHECK(smoothstep(2.0) == 1.0);
  }

  TEST_CASE("second difference agrees with direct subtraction") {
    SplitMix64 rng(11);
    for (const auto& f : antisymmetric_families(2)) {
      for (int i = 0; i < 30; ++i) {
        const Point x = random_point(rng, 2, 2.0);
        const Point z = random_point(rng, 2, 0.5);
        const double direct = 2 * evaluate(f, x) - evaluate(f, x + z) - evaluate(f, x - z);
        CHECK(std::abs(second_difference(f, x, z) - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
      }
    }
  }

  TEST_CASE("JSON round trip preserves values") {
    SplitMix64 rng(5);
    for (const auto& f : antisymmetric_families(3)) {
      const FieldSpec g = field_from_json(to_json(f));
      CHECK(g.family_name() == f.family_name());
      for (int i = 0; i < 20; ++i) {
        const Point x = random_point(rng, 3, 3.0);
        CHECK(evaluate(g, x) == evaluate(f, x));
      }
    }
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(make::zeta1(1, 1.5), UsageError);
    CHECK_THROWS_AS(make::zeta2(1, 2.0), UsageError);
    CHECK_THROWS_AS(make::odd_cubic_bump(1, -1.0), UsageError);
    CHECK_THROWS_AS(evaluate(make::monomial_x1(2), Point{1.0}), UsageError);
  }

  TEST_CASE("norms of x1 and of constants in closed form") {
    for (int n = 1; n <= 3; ++n)
      for (double s : {0.25, 0.5, 0.75}) {
        const Params p(n, s);
        const auto q = quad::QuadSpec::defaults(n);
        const double area = special::unit_sphere_area(n);
        const double e = n + 2 * s + 2;
        const double a_exact = area / (2 * n) * std::numbers::pi / (e * std::sin(std::numbers::pi * (n + 2) / e));
        const double l_exact =
            area * std::numbers::pi / ((n + 2 * s) * std::sin(std::numbers::pi * n / (n + 2 * s)));
        CAPTURE(n);
        CAPTURE(s);
        CHECK(anorm(make::monomial_x1(n), p, q) == doctest::Approx(a_exact).epsilon(1e-7));
        CHECK(lsnorm(make::constant(n, 1.0), p, q) == doctest::Approx(l_exact).epsilon(1e-7));
      }
    CHECK(anorm(make::monomial_x1(1), Params(1, 0.5), quad::QuadSpec::defaults(1)) ==
          doctest::Approx(std::numbers::pi / (2 * std::numbers::sqrt2)).epsilon(1e-9));
  }

  TEST_CASE("divergent norms are rejected") {
    const Params p(1, 0.25);
    CHECK_THROWS_AS(lsnorm(make::monomial_x1(1), p, quad::QuadSpec::defaults(1)), NumericalRejection);
  }
}
