#include "antisym/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "antisym/errors.hpp"
#include "antisym/fields.hpp"
#include "antisym/fraclap.hpp"
#include "antisym/harnack.hpp"
#include "antisym/io.hpp"
#include "antisym/poisson.hpp"
#include "antisym/prng.hpp"
#include "antisym/special.hpp"

namespace antisym {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerance settings of q carried over to dimension n.
quad::QuadSpec for_dim(const quad::QuadSpec& q, int n) {
  quad::QuadSpec r = q;
  if (n == 3) r.angular_points = std::min(q.angular_points, 32);
  return r;
}

struct Check {
  bool passed = false;
  double measured = 0.0;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

Check constant_identity(const quad::QuadSpec& q0) {
  double worst_int = 0.0, worst_id = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (double s : {0.25, 0.5, 0.75}) {
      const Params p(n, s);
      const quad::QuadSpec q = for_dim(q0, n);
      const Point m = Point::axis(n, -1.0);
      const double e = -0.5 * (n + 2.0 * s);
      const auto est = quad::integrate_halfspace_weighted(
          [&](const Point& z) { return std::pow(distance2(m, z), e); }, p, q, quad::TailModel{1.0 + 2.0 * s, 1.0});
      const double closed = special::halfspace_integral_closed(p);
      worst_int = std::max(worst_int, std::abs(est.value / closed - 1.0));
      worst_id = std::max(worst_id, std::abs(special::c_ns(p) * est.value / special::tilde_c_ns(p) - 1.0));
    }
  const double m = std::max(worst_int, worst_id);
  return {m <= 1e-6, m, "max rel err integral " + fmt(worst_int) + ", identity " + fmt(worst_id)};
}

std::vector<FieldSpec> smooth_compact_battery(int n) {
  return {make::odd_cubic_bump(n, 1.0, 1.0), make::odd_cubic_bump(n, 1.5, 0.5), make::odd_cubic_bump(n, 2.0, 2.0),
          make::odd_cubic_bump(n, 0.75, 1.0),
          make::linear_combination({{1.0, make::odd_cubic_bump(n, 1.0, 1.0)}, {-0.3, make::odd_cubic_bump(n, 2.0, 1.0)}})};
}

Check definition_equivalence(const Params& p0, const quad::QuadSpec& q0) {
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n) {
    const Params p(n, p0.s);
    const quad::QuadSpec q = for_dim(q0, n);
    SplitMix64 rng(20 + n);
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) {
      Point x(n);
      x[0] = rng.uniform(0.05, 1.5);
      for (int k = 1; k < n; ++k) x[k] = rng.uniform(-1.0, 1.0);
      pts.push_back(x);
    }
    for (const auto& f : smooth_compact_battery(n)) worst = std::max(worst, definition_gap(f, pts, p, q));
  }
  return {worst <= 1e-5, worst, "max |classical - antisymmetric| over 5 fields x 10 points, n = 1, 2"};
}

Check kernel_sandwich_check() {
  long violations = 0, pairs = 0;
  for (int n = 1; n <= 3; ++n)
    for (double s : {0.25, 0.5, 0.75}) {
      const Params p(n, s);
      SplitMix64 rng(1000 + 10 * n + static_cast<int>(4 * s));
      for (int i = 0; i < 10000; ++i) {
        Point x(n), y(n);
        const double sx = std::exp(rng.uniform(-4.0, 2.0)), sy = std::exp(rng.uniform(-4.0, 2.0));
        x[0] = sx * rng.uniform(1e-3, 1.0);
        y[0] = sy * rng.uniform(1e-3, 1.0);
        for (int k = 1; k < n; ++k) {
          x[k] = sx * rng.uniform(-1.0, 1.0);
          y[k] = sy * rng.uniform(-1.0, 1.0);
        }
        if (distance2(x, y) == 0.0) continue;
        const auto ks = kernel_sandwich(x, y, p);
        ++pairs;
        if (!(ks.lower <= ks.value && ks.value <= ks.upper)) ++violations;
      }
    }
  return {violations == 0, static_cast<double>(violations), std::to_string(violations) + " violations in " +
                                                                std::to_string(pairs) + " pairs"};
}

Check x1_harmonic(const quad::QuadSpec& q0) {
  double worst = 0.0;
  for (int n = 1; n <= 2; ++n)
    for (double s : {0.25, 0.5, 0.75}) {
      const Params p(n, s);
      const quad::QuadSpec q = for_dim(q0, n);
      const FieldSpec u = make::monomial_x1(n);
      for (int i = 0; i < 20; ++i) {
        Point x(n);
        x[0] = 0.2 + 1.8 * i / 19.0;
        if (n > 1) x[1] = 0.3;
        worst = std::max(worst, std::abs(antisym_fraclap(u, x, p, q)));
      }
    }
  return {worst <= 2e-5, worst, "max |(-Delta)^s x1| at 20 points, n = 1, 2, s = 0.25, 0.5, 0.75"};
}

std::vector<FieldSpec> random_data(const Params& p, int count) {
  std::vector<FieldSpec> out;
  for (int i = 1; i <= count; ++i) out.push_back(random_nonneg_antisym(static_cast<std::uint64_t>(i), 4, p));
  return out;
}

Check mean_value(const Params& p, const quad::QuadSpec& q) {
  std::vector<FieldSpec> data{make::monomial_x1(p.n)};
  for (auto& g : random_data(p, 5)) data.push_back(g);
  double spread = 0.0, y1_err = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double lo = kInf, hi = -kInf, sum = 0.0;
    for (double r : {0.25, 0.5, 1.0}) {
      const double v = mean_value_antisym_gradient(data[i], r, p, q);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      if (i == 0) y1_err = std::max(y1_err, std::abs(v - 1.0));
    }
    spread = std::max(spread, (hi - lo) / std::abs(sum / 3.0));
  }
  return {spread <= 1e-2 && y1_err <= 1e-3, spread,
          "max relative spread over r " + fmt(spread) + " (tol 1e-2); |value - 1| for y1 " + fmt(y1_err) +
              " (tol 1e-3)"};
}

Check psi_checks(const Params& p, const quad::QuadSpec& q) {
  const double h = 1e-3;
  double worst = 0.0;
  for (const auto& g : random_data(p, 5)) {
    const BallProblem bp(1.0, g, p);
    const double fd = (poisson_eval(bp, Point::axis(p.n, h), q) - poisson_eval(bp, Point::axis(p.n, -h), q)) /
                      (2.0 * h);
    const double via = gradient_via_psi(g, p, q);
    worst = std::max(worst, std::abs(via - fd) / std::abs(fd));
  }
  double lo = kInf, hi = 0.0;
  const double e = p.n + 2.0 * p.s + 2.0;
  for (int i = 0; i <= 64; ++i) {
    const double t = i == 0 ? 0.0 : std::pow(10.0, -3.0 + 5.0 * (i - 1) / 63.0);
    const double v = psi_eval(Point::axis(p.n, t), p, q) * (1.0 + std::pow(t, e));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double sandwich = hi / lo;
  return {worst <= 1e-2 && sandwich <= 50.0, worst,
          "max rel diff psi route vs central difference " + fmt(worst) + " (tol 1e-2); psi sandwich max/min " +
              fmt(sandwich) + " (tol 50)"};
}

Check poisson_reproduction(const quad::QuadSpec& q) {
  double worst = 0.0;
  for (double s : {0.5, 0.75}) {
    const Params p(1, s);
    const BallProblem bp(1.0, make::monomial_x1(1), p);
    for (int i = 1; i <= 64; ++i) {
      const double x = 0.5 * i / 64.0;
      worst = std::max(worst, std::abs(poisson_eval_antisym(bp, Point{x}, q) - x));
    }
  }
  return {worst <= 1e-3, worst, "max |u(x) - x1| on 64 points of (0, 1/2], s = 0.5, 0.75"};
}

std::vector<std::uint64_t> seeds_1_to(int count) {
  std::vector<std::uint64_t> s;
  for (int i = 1; i <= count; ++i) s.push_back(static_cast<std::uint64_t>(i));
  return s;
}

Check harnack_protocol(const Params& p, const quad::QuadSpec& q, BatteryKind kind) {
  const int g1 = default_grid_n(p.n);
  const auto seeds = seeds_1_to(50);
  const auto a = comparability_battery(seeds, p, q, g1, kind);
  const auto b = comparability_battery(seeds, p, q, 2 * g1, kind);
  const double dl = std::abs(a.band_lower / b.band_lower - 1.0);
  const double du = std::abs(a.band_upper / b.band_upper - 1.0);
  const bool band_ok = a.all_positive && b.all_positive && a.band_lower > 0.0 && std::isfinite(a.band_upper) &&
                       dl <= 0.2 && du <= 0.2;
  const FieldSpec g = random_nonneg_antisym(1, 4, p);
  const FieldSpec g35 = make::scaled(g, 3.5);
  auto report = [&](const FieldSpec& f) {
    return kind == BatteryKind::Boundary ? boundary_quotient_profile(f, p, q, g1)
                                         : interior_harnack_check(f, 0.5, p, q, g1);
  };
  const double scale_diff = std::abs(report(g).ratio - report(g35).ratio);
  std::ostringstream os;
  os << "band [" << fmt(a.band_lower) << ", " << fmt(a.band_upper) << "] at grid " << g1 << ", ["
     << fmt(b.band_lower) << ", " << fmt(b.band_upper) << "] at grid " << 2 * g1 << "; max ratio "
     << fmt(a.max_ratio) << "; all positive " << (a.all_positive && b.all_positive) << "; |ratio(3.5u) - ratio(u)| "
     << fmt(scale_diff);
  bool ok = band_ok && scale_diff <= 1e-10;
  double measured = std::max(dl, du);
  if (kind == BatteryKind::Interior) {
    const double r = interior_harnack_check(make::monomial_x1(p.n), 0.5, p, q, g1).ratio;
    const double err = std::abs(r - 5.0 / 3.0);
    os << "; ratio for y1 " << fmt(r) << " (|err| " << fmt(err) << ", tol 2e-3)";
    ok = ok && err <= 2e-3;
  }
  return {ok, measured, os.str()};
}

Check counterexample_check(const Params& p0, const quad::QuadSpec& q0) {
  const Params p(2, p0.s);
  quad::QuadSpec q = for_dim(q0, 2);
  q.rel_tol = std::max(q.rel_tol, 1e-6);
  const auto run = counterexample_run({1, 2, 4, 8, 16, 32}, p, q, 16);
  bool increasing = true;
  for (std::size_t i = 1; i < run.ratios.size(); ++i) increasing = increasing && run.ratios[i] > run.ratios[i - 1];
  const double growth = run.ratios.back() / run.ratios.front();
  const bool nonneg = run.min_u >= 0.0;
  const bool agree = std::abs(run.m_bar - run.m_bar_bisection) <= run.grid_quantum;
  std::ostringstream os;
  os << "n = 2; M_bar " << fmt(run.m_bar) << " (bisection " << fmt(run.m_bar_bisection) << ", quantum "
     << fmt(run.grid_quantum) << "); argmin of v/w in B_1/2(2e1): " << run.argmin_in_half_ball << "; ratios";
  for (double r : run.ratios) os << ' ' << fmt(r);
  os << "; strictly increasing " << increasing << "; ratio(32)/ratio(1) " << fmt(growth) << " (need >= 10); min u "
     << fmt(run.min_u);
  return {increasing && growth >= 10.0 && nonneg && agree, growth, os.str()};
}

Check derivative_limit(const Params& p, const quad::QuadSpec& q) {
  const FieldSpec v = make::odd_cubic_bump(p.n);
  const auto a = derivative_limit_pair(v, p, q, 2e-3);
  const auto b = derivative_limit_pair(v, p, q, 1e-3);
  const double ea = std::abs(a.first - a.second), eb = std::abs(b.first - b.second);
  const double factor = ea / eb;
  return {factor >= 1.5 && factor <= 3.0, factor,
          "|lhs - rhs| " + fmt(ea) + " at h = 2e-3, " + fmt(eb) + " at h = 1e-3; factor " + fmt(factor) +
              " (band [1.5, 3])"};
}

Check barrier(const Params& p, const quad::QuadSpec& q) {
  double lo = kInf, hi = 0.0;
  for (int i = 1; i <= 64; ++i) {
    const double x = 0.5 * i / 64.0;
    const double v = barrier_phi3(Point::axis(p.n, x), p, q) / x;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double r = lo > 0.0 ? hi / lo : kInf;
  return {r <= 20.0, r, "max/min of phi3(x)/x1 on 64 points of (0, 1/2] e1: " + fmt(hi) + " / " + fmt(lo)};
}

struct CriterionDef {
  const char* name;
  double tolerance;
  double time_limit;
};

constexpr CriterionDef kCriteria[kCriterionCount] = {
    {"constant identity and half-space integral", 1e-6, 30},
    {"definition equivalence", 1e-5, 180},
    {"kernel sandwich", 0, 5},
    {"s-harmonicity of x1", 2e-5, 120},
    {"antisymmetric mean-value formula", 1e-2, 120},
    {"gradient through psi and psi sandwich", 1e-2, 180},
    {"Poisson reproduction of x1", 1e-3, 60},
    {"boundary Harnack battery", 0.2, 600},
    {"interior Harnack battery", 0.2, 300},
    {"counterexample without antisymmetry", 10, 600},
    {"derivative limit convergence", 1.5, 120},
    {"barrier two-sided linear bound", 20, 120},
};

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

CriterionResult run_criterion(int id, const Params& p, const quad::QuadSpec& q) {
  if (id < 1 || id > kCriterionCount) throw UsageError("criterion id must be in 1..12");
  p.validate();
  q.validate();
  const CriterionDef& def = kCriteria[id - 1];
  CriterionResult res;
  res.id = id;
  res.name = def.name;
  res.tolerance = def.tolerance;
  res.time_limit = def.time_limit;
  const auto t0 = std::chrono::steady_clock::now();
  const quad::QuadSpec qn = for_dim(q, p.n);
  Check c;
  try {
    switch (id) {
      case 1: c = constant_identity(q); break;
      case 2: c = definition_equivalence(p, q); break;
      case 3: c = kernel_sandwich_check(); break;
      case 4: c = x1_harmonic(q); break;
      case 5: c = mean_value(p, qn); break;
      case 6: c = psi_checks(p, qn); break;
      case 7: c = poisson_reproduction(for_dim(q, 1)); break;
      case 8: c = harnack_protocol(p, qn, BatteryKind::Boundary); break;
      case 9: c = harnack_protocol(p, qn, BatteryKind::Interior); break;
      case 10: c = counterexample_check(p, q); break;
      case 11: c = derivative_limit(p, qn); break;
      case 12: c = barrier(p, qn); break;
    }
  } catch (const NumericalRejection& e) {
    c = {false, std::numeric_limits<double>::quiet_NaN(), std::string("rejected: ") + e.what()};
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = c.passed && res.seconds <= res.time_limit;
  res.measured = c.measured;
  res.detail = c.detail;
  if (c.passed && !res.passed) res.detail += "; exceeded time limit";
  return res;
}

ValidationReport validate_all(const Params& p, const quad::QuadSpec& q) {
  ValidationReport r;
  r.params = p;
  for (int id = 1; id <= kCriterionCount; ++id) r.criteria.push_back(run_criterion(id, p, q));
  return r;
}

json to_json(const CriterionResult& c) {
  return json{{"id", c.id},           {"name", c.name},       {"passed", c.passed},
              {"measured", c.measured}, {"tolerance", c.tolerance}, {"detail", c.detail},
              {"seconds", c.seconds},   {"time_limit", c.time_limit}};
}

json to_json(const ValidationReport& r) {
  json j{{"params", to_json(r.params)}, {"all_passed", r.all_passed()}, {"criteria", json::array()}};
  for (const auto& c : r.criteria) j["criteria"].push_back(to_json(c));
  return j;
}

}  // namespace antisym
