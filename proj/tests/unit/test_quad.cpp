#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "antisym/errors.hpp"
#include "antisym/quad.hpp"
#include "antisym/special.hpp"

using namespace antisym;
using namespace antisym::quad;

namespace {

struct Case {
  const char* name;
  int dim;
  double lo, hi;
  Integrand f;
  double exact;
};

/// Integrands with closed-form values, including endpoint and edge singularities.
std::vector<Case> honesty_library() {
  const double e = std::numbers::e;
  const double spi = std::sqrt(std::numbers::pi) * std::erf(3.0);
  return {
      {"x^5", 1, 0, 1, [](auto x) { return std::pow(x[0], 5); }, 1.0 / 6},
      {"exp", 1, 0, 1, [](auto x) { return std::exp(x[0]); }, e - 1},
      {"runge", 1, 0, 1, [](auto x) { return 1 / (1 + 25 * x[0] * x[0]); }, std::atan(5.0) / 5},
      {"sqrt", 1, 0, 1, [](auto x) { return std::sqrt(x[0]); }, 2.0 / 3},
      {"log", 1, 0, 1, [](auto x) { return x[0] > 0 ? std::log(x[0]) : 0.0; }, -1.0},
      {"cos20", 1, 0, 1, [](auto x) { return std::cos(20 * x[0]); }, std::sin(20.0) / 20},
      {"exp2", 2, 0, 1, [](auto x) { return std::exp(x[0] + x[1]); }, (e - 1) * (e - 1)},
      {"inv2", 2, 0, 1, [](auto x) { return 1 / (1 + x[0] + x[1]); }, 3 * std::log(3.0) - 4 * std::log(2.0)},
      {"gauss2", 2, -3, 3, [](auto x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); }, spi * spi},
      {"sqrtxy", 2, 0, 1, [](auto x) { return std::sqrt(x[0] * x[1]); }, 4.0 / 9},
      {"xyz", 3, 0, 1, [](auto x) { return x[0] * x[1] * x[2]; }, 1.0 / 8},
      {"exp3", 3, 0, 1, [](auto x) { return std::exp(-x[0] - x[1] - x[2]); }, std::pow(1 - 1 / e, 3)},
  };
}

Box cube(int dim, double lo, double hi) {
  Box b;
  for (int k = 0; k < dim; ++k) {
    b.lo[k] = lo;
    b.hi[k] = hi;
  }
  return b;
}

}  // namespace

TEST_SUITE("quad") {
  TEST_CASE("error bounds are honest on the reference library") {
    QuadSpec q;
    q.rel_tol = 1e-9;
    for (const auto& c : honesty_library()) {
      CAPTURE(c.name);
      const Estimate r = cubature(c.dim, c.f, {cube(c.dim, c.lo, c.hi)}, q);
      CHECK(std::abs(r.value - c.exact) <= r.error + 1e-15);
      CHECK(std::abs(r.value - c.exact) <= 1e-8 * std::abs(c.exact));
    }
  }

  TEST_CASE("cubature is deterministic") {
    QuadSpec q;
    const auto c = honesty_library()[8];
    const Estimate a = cubature(2, c.f, {cube(2, c.lo, c.hi)}, q);
    const Estimate b = cubature(2, c.f, {cube(2, c.lo, c.hi)}, q);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
    CHECK(a.evaluations == b.evaluations);
  }

  TEST_CASE("budget exhaustion raises QuadratureError") {
    QuadSpec q;
    q.rel_tol = 1e-14;
    q.abs_tol = 0;
    q.max_evaluations = 200;
    CHECK_THROWS_AS(integrate_1d([](double x) { return std::cos(400 * x); }, 0, 10, q), QuadratureError);
  }

  TEST_CASE("one-dimensional endpoint singularity") {
    QuadSpec q;
    q.rel_tol = 1e-6;
    const Estimate r = integrate_1d([](double x) { return x > 0 ? 1 / std::sqrt(x) : 0.0; }, 0, 1, q);
    CHECK(std::abs(r.value - 2.0) <= r.error);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("Gauss-Jacobi moments match beta functions") {
    for (double a : {-0.75, -0.5, 0.0, 0.3})
      for (double b : {-0.5, 0.0, 1.5})
        for (int m : {0, 3, 7}) {
          const GaussRule g = gauss_jacobi(12, a, b);
          double sum = 0;
          for (std::size_t i = 0; i < g.nodes.size(); ++i) sum += g.weights[i] * std::pow(1 + g.nodes[i], m);
          const double exact = std::pow(2.0, a + b + m + 1) * boost::math::beta(a + 1, b + m + 1);
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(m);
          CHECK(sum == doctest::Approx(exact).epsilon(1e-12));
        }
  }

  TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const GaussRule g = gauss_legendre(8);
    double sum = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) sum += g.weights[i] * std::pow(g.nodes[i], 14);
    CHECK(sum == doctest::Approx(2.0 / 15).epsilon(1e-13));
  }

  TEST_CASE("ray integral recovers ball volumes") {
    QuadSpec q;
    for (int n = 1; n <= 3; ++n) {
      const auto segs = both_hemispheres(RadialMap::linear(0, 1), 2, 2);
      const Estimate r = ray_integral(n, segs, [](const RayPoint&) { return 1.0; }, q);
      CHECK(r.value == doctest::Approx(special::unit_sphere_area(n) / n).epsilon(1e-10));
    }
  }

  TEST_CASE("half-space integral is stable under tail doubling") {
    for (int n = 1; n <= 3; ++n) {
      const Params p(n, 0.5);
      QuadSpec q = QuadSpec::defaults(n);
      const Point m = Point::axis(n, -1.0);
      auto f = [&](const Point& z) { return std::pow(distance2(m, z), -0.5 * (n + 1.0)); };
      const double a = integrate_halfspace_weighted(f, p, q, TailModel{2.0, 1.0}).value;
      q.truncation_radius *= 2;
      const double b = integrate_halfspace_weighted(f, p, q, TailModel{2.0, 1.0}).value;
      CAPTURE(n);
      CHECK(a == doctest::Approx(b).epsilon(1e-7));
      CHECK(a == doctest::Approx(special::halfspace_integral_closed(p)).epsilon(1e-7));
    }
  }

  TEST_CASE("exterior-ball integral with the endpoint weight") {
    for (int n = 1; n <= 3; ++n)
      for (double s : {0.25, 0.5, 0.75}) {
        const Params p(n, s);
        const QuadSpec q = QuadSpec::defaults(n);
        const Estimate r = integrate_exterior_ball(
            [&](const Point& y) { return std::pow(y.norm2(), -0.5 * n - 1.0); }, 1.0, p, q, TailModel{3.0 + 2 * s, 1.0});
        /// int_1^inf (rho^2-1)^{-s} rho^{-3} d rho = B(s+1, 1-s)/2 (substitute t = rho^{-2}).
        const double exact = special::unit_sphere_area(n) * 0.5 * boost::math::beta(1 - s, s + 1);
        CAPTURE(n);
        CAPTURE(s);
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-7));
      }
  }

  TEST_CASE("quadrature settings validation") {
    QuadSpec q;
    q.rel_tol = -1;
    CHECK_THROWS_AS(q.validate(), UsageError);
    CHECK(QuadSpec::defaults(3).angular_points == 32);
    CHECK(QuadSpec::defaults(2).angular_points == 64);
  }
}
