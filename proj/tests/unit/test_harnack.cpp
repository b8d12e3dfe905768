#include <doctest.h>

#include <cstdlib>

#include "antisym/errors.hpp"
#include "antisym/harnack.hpp"

using namespace antisym;

TEST_SUITE("harnack") {
  TEST_CASE("boundary quotient of x1 is identically one") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const HarnackReport r = boundary_quotient_profile(make::monomial_x1(1), p, q, 32);
    CHECK(r.sup_quotient == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.inf_quotient == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.points == 16);
    CHECK(r.c_lower <= r.c_upper);
  }

  TEST_CASE("interior ratio for x1 is (1 + rho/2)/(1 - rho/2)") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    for (double rho : {0.25, 0.5}) {
      const HarnackReport r = interior_harnack_check(make::monomial_x1(1), rho, p, q, 64);
      CHECK(r.ratio == doctest::Approx((1 + rho / 2) / (1 - rho / 2)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(interior_harnack_check(make::monomial_x1(1), 0.75, p, q, 64), UsageError);
  }

  TEST_CASE("zero data is degenerate and negative data is rejected") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    CHECK(boundary_quotient_profile(make::zero(1), p, q, 16).degenerate);
    CHECK_THROWS_AS(boundary_quotient_profile(make::scaled(make::monomial_x1(1), -1.0), p, q, 16), NumericalRejection);
    CHECK_THROWS_AS(boundary_quotient_profile(make::gaussian(Point{1.0}, 1.0), p, q, 16), NumericalRejection);
  }

  TEST_CASE("ratio is invariant under scaling and under rebuilding the data from its half-space values") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const FieldSpec g = random_nonneg_antisym(6, 4, p);
    const double r = boundary_quotient_profile(g, p, q, 32).ratio;
    CHECK(boundary_quotient_profile(make::scaled(g, 3.5), p, q, 32).ratio == doctest::Approx(r).epsilon(1e-12));
    const FieldSpec h = make::scaled(antisymmetrize(make::halfspace_restriction(g)), 0.5);
    CHECK(boundary_quotient_profile(h, p, q, 32).ratio == doctest::Approx(r).epsilon(1e-9));
  }

  TEST_CASE("battery is independent of the worker count") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4};
    setenv("ANTISYM_THREADS", "1", 1);
    const auto a = comparability_battery(seeds, p, q, 32);
    setenv("ANTISYM_THREADS", "3", 1);
    const auto b = comparability_battery(seeds, p, q, 32);
    unsetenv("ANTISYM_THREADS");
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
      CHECK(a.reports[i].ratio == b.reports[i].ratio);
      CHECK(a.reports[i].anorm_value == b.reports[i].anorm_value);
    }
    CHECK(a.all_positive);
    CHECK(a.band_lower > 0.0);
  }

  TEST_CASE("counterexample construction keeps u_k in [0, 1] and M_bar consistent") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const auto r = counterexample_run({1, 2, 4}, p, q, 32);
    CHECK(r.m_bar > 0.0);
    CHECK(std::abs(r.m_bar - r.m_bar_bisection) <= r.grid_quantum);
    CHECK(r.min_u >= 0.0);
    CHECK(r.max_u <= 1.0);
    CHECK(r.ratios.size() == 3);
    CHECK_THROWS_AS(counterexample_run({2, 1}, p, q, 32), UsageError);
  }
}
