#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "antisym/errors.hpp"
#include "antisym/poisson.hpp"
#include "antisym/special.hpp"

using namespace antisym;

namespace {

/// psi(t) = n(n+2) gamma_{n,s}/2 * B(a, 1-s) I_{m^2}(a, 1-s), a = s + n/2 + 1, m = min(1, 1/t).
double psi_ref(double t, const Params& p) {
  const double a = p.s + 0.5 * p.n + 1.0, b = 1.0 - p.s;
  const double m = t <= 1.0 ? 1.0 : 1.0 / t;
  return p.n * (p.n + 2.0) * special::gamma_ns(p) / 2.0 * boost::math::beta(a, b, m * m);
}

}  // namespace

TEST_SUITE("poisson") {
  TEST_CASE("exterior datum y1 is reproduced inside the ball") {
    for (int n = 1; n <= 2; ++n)
      for (double s : {0.25, 0.5, 0.75}) {
        const Params p(n, s);
        const auto q = quad::QuadSpec::defaults(n);
        const BallProblem bp(1.0, make::monomial_x1(n), p);
        Point x = Point::axis(n, 0.3);
        if (n == 2) x[1] = 0.4;
        CAPTURE(n);
        CAPTURE(s);
        CHECK(poisson_eval_antisym(bp, x, q) == doctest::Approx(0.3).epsilon(1e-8));
      }
  }

  TEST_CASE("constant data give constant solutions, also in translated balls") {
    for (int n = 1; n <= 2; ++n) {
      const Params p(n, 0.5);
      const auto q = quad::QuadSpec::defaults(n);
      const BallProblem a(1.0, make::constant(n, 1.0), p);
      const BallProblem b(1.0, make::constant(n, 1.0), p, Point::axis(n, 2.0));
      CHECK(poisson_eval(a, Point::axis(n, 0.6), q) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(poisson_eval(b, Point::axis(n, 2.3), q) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("classical and antisymmetric routes agree") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const BallProblem bp(1.0, random_nonneg_antisym(4, 3, p), p);
    CHECK(poisson_eval(bp, Point{0.4}, q) == doctest::Approx(poisson_eval_antisym(bp, Point{0.4}, q)).epsilon(1e-8));
    CHECK(poisson_eval_antisym(bp, Point{0.0}, q) == 0.0);
  }

  TEST_CASE("near-boundary evaluation needs explicit permission") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const BallProblem bp(1.0, make::constant(1, 1.0), p);
    CHECK_THROWS_AS(poisson_eval(bp, Point{0.97}, q), NumericalRejection);
    CHECK(poisson_eval(bp, Point{0.97}, q, true) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("psi matches the incomplete beta closed form") {
    for (int n = 1; n <= 3; ++n)
      for (double s : {0.25, 0.5, 0.75}) {
        const Params p(n, s);
        const auto q = quad::QuadSpec::defaults(n);
        for (double t : {0.0, 0.4, 1.0, 1.3, 2.0, 10.0, 100.0}) {
          CAPTURE(n);
          CAPTURE(s);
          CAPTURE(t);
          CHECK(psi_radial(t, p, q) == doctest::Approx(psi_ref(t, p)).epsilon(1e-9));
        }
      }
    CHECK(psi_eval(Point{0.0}, Params(1, 0.5), quad::QuadSpec::defaults(1)) ==
          doctest::Approx(2 / std::numbers::pi).epsilon(1e-12));
  }

  TEST_CASE("mean-value formulas on exact data") {
    for (double s : {0.25, 0.5, 0.75}) {
      const Params p(1, s);
      const auto q = quad::QuadSpec::defaults(1);
      for (double r : {0.25, 0.5, 1.0}) {
        CHECK(mean_value_classic(make::constant(1, 1.0), r, p, q) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(mean_value_antisym_gradient(make::monomial_x1(1), r, p, q) == doctest::Approx(1.0).epsilon(1e-8));
      }
      CHECK(gradient_via_psi(make::monomial_x1(1), p, q) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("tabulated solution interpolates and reflects") {
    const Params p(2, 0.5);
    const auto q = quad::QuadSpec::defaults(2);
    const PoissonSolution u(make::monomial_x1(2), 1.0, p, q, 1.0 / 8);
    CHECK(u.antisymmetric());
    CHECK(u(Point{0.33, 0.21}) == doctest::Approx(0.33).epsilon(1e-7));
    CHECK(u(Point{-0.33, 0.21}) == doctest::Approx(-0.33).epsilon(1e-7));
    CHECK(u(Point{1.7, 0.0}) == 1.7);
  }

  TEST_CASE("barrier is odd and positive on the half-ball") {
    const Params p(1, 0.5);
    const auto q = quad::QuadSpec::defaults(1);
    const double a = barrier_phi3(Point{0.3}, p, q);
    CHECK(a > 0.0);
    CHECK(barrier_phi3(Point{-0.3}, p, q) == doctest::Approx(-a).epsilon(1e-10));
  }
}
