#include "antisym/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "antisym/parallel.hpp"
#include "antisym/prng.hpp"
#include "rays.hpp"

namespace antisym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lattice points c + h i with |h i| <= radius, in lexicographic index order.
std::vector<Point> ball_lattice(const Point& c, double radius, double h) {
  const int n = c.dim();
  const int m = static_cast<int>(std::floor(radius / h + 1e-9));
  const int side = 2 * m + 1;
  long total = 1;
  for (int k = 0; k < n; ++k) total *= side;
  std::vector<Point> pts;
  for (long flat = 0; flat < total; ++flat) {
    long t = flat;
    Point off(n);
    for (int k = 0; k < n; ++k) {
      off[k] = (static_cast<int>(t % side) - m) * h;
      t /= side;
    }
    if (off.norm2() <= radius * radius * (1.0 + 1e-12)) pts.push_back(c + off);
  }
  return pts;
}

std::string describe(const char* what, const Point& c, double radius, double h, long count) {
  std::ostringstream os;
  os << what << " lattice step " << h << " in closed ball radius " << radius << " about (";
  for (int k = 0; k < c.dim(); ++k) os << (k ? "," : "") << c[k];
  os << "), " << count << " points";
  return os.str();
}

void require_nonneg_antisym(const FieldSpec& g, const Params& p, const char* what) {
  if (g.dim() != p.n) throw UsageError(std::string(what) + ": data dimension does not match n");
  if (!g.meta().antisymmetric) throw NumericalRejection(std::string(what) + ": data is not antisymmetric");
  SplitMix64 rng(0x5EED);
  for (int i = 0; i < 4096; ++i) {
    Point y(p.n);
    y[0] = rng.uniform(0.0, 8.0);
    for (int k = 1; k < p.n; ++k) y[k] = rng.uniform(-8.0, 8.0);
    const double v = evaluate(g, y);
    if (v < 0.0)
      throw NumericalRejection(std::string(what) + ": data is negative in the half-space (hypothesis violated)");
  }
}

std::vector<double> evaluate_all(const std::vector<Point>& pts, const std::function<double(const Point&)>& f) {
  std::vector<double> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = f(pts[i]); });
  return out;
}

}  // namespace

int default_grid_n(int n) { return n == 3 ? 32 : 64; }

double anorm_of_solution(const PoissonSolution& u, const Params& p, const quad::QuadSpec& q) {
  using namespace quad;
  const FieldSpec& g = u.data();
  const double reach = g.meta().support_radius ? *g.meta().support_radius : kInf;
  const double decay = std::max(g.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 1.0 + 2.0 * p.s))
    throw NumericalRejection("anorm: weighted half-space norm of the data diverges");
  const double R = u.radius();
  std::vector<RaySegment> segs;
  const RadialMap inner = RadialMap::linear(0.0, R);
  segs.push_back({inner, Hemisphere::Upper, detail::radial_cells(inner, u.step(), p.n), q.angular_cells()});
  for (const auto& m : detail::outward(R, R, reach, std::max(q.truncation_radius, 2.0 * R), 2.0 + 2.0 * p.s - decay))
    segs.push_back({m, Hemisphere::Upper, detail::radial_cells(m, std::min(1.0, g.meta().length_scale), p.n),
                    q.angular_cells()});
  const double e = p.n + 2.0 * p.s + 2.0;
  return ray_integral(
             p.n, segs,
             [&](const RayPoint& r) {
               const Point y = r.rho * r.omega;
               return y[0] * std::abs(u(y)) / (1.0 + std::pow(r.rho, e));
             },
             q)
      .value;
}

HarnackReport boundary_quotient_profile(const FieldSpec& g, const Params& p, const quad::QuadSpec& q, int grid_n,
                                        std::uint64_t seed) {
  p.validate();
  q.validate();
  if (grid_n < 4) throw UsageError("boundary_quotient_profile: grid_n must be >= 4");
  require_nonneg_antisym(g, p, "boundary_quotient_profile");
  const double h = 1.0 / grid_n;
  std::vector<Point> pts;
  for (const Point& x : ball_lattice(Point(p.n), 0.5, h))
    if (x[0] >= h * (1.0 - 1e-9)) pts.push_back(x);
  const BallProblem bp(1.0, g, p);
  const std::vector<double> vals = evaluate_all(pts, [&](const Point& x) { return poisson_eval_antisym(bp, x, q); });

  HarnackReport rep;
  rep.seed = seed;
  rep.points = static_cast<long>(pts.size());
  rep.grid_spec = describe("half-ball x1 >= step,", Point(p.n), 0.5, h, rep.points);
  rep.sup_quotient = -kInf;
  rep.inf_quotient = kInf;
  bool all_zero = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double qv = vals[i] / pts[i][0];
    all_zero = all_zero && vals[i] == 0.0;
    rep.sup_quotient = std::max(rep.sup_quotient, qv);
    rep.inf_quotient = std::min(rep.inf_quotient, qv);
  }
  if (all_zero) {
    rep = HarnackReport{0, 0, 0, 0, 0, 0, rep.grid_spec, seed, rep.points, true};
    return rep;
  }
  if (!(rep.inf_quotient > 0.0))
    throw NumericalRejection("boundary_quotient_profile: u <= 0 at a grid point; positivity check failed");
  rep.ratio = rep.sup_quotient / rep.inf_quotient;
  const PoissonSolution u(g, 1.0, p, q);
  rep.anorm_value = anorm_of_solution(u, p, q);
  rep.c_lower = rep.inf_quotient / rep.anorm_value;
  rep.c_upper = rep.sup_quotient / rep.anorm_value;
  return rep;
}

HarnackReport interior_harnack_check(const FieldSpec& g, double rho, const Params& p, const quad::QuadSpec& q,
                                     int grid_n, std::uint64_t seed) {
  p.validate();
  q.validate();
  if (!(rho > 0.0 && rho <= 0.5)) throw UsageError("interior_harnack_check: rho must lie in (0, 0.5]");
  if (grid_n < 4) throw UsageError("interior_harnack_check: grid_n must be >= 4");
  require_nonneg_antisym(g, p, "interior_harnack_check");
  const double h = 1.0 / grid_n;
  const Point c = Point::axis(p.n, 1.0);
  const std::vector<Point> pts = ball_lattice(c, 0.5 * rho, h);
  const BallProblem bp(2.0, g, p);
  const std::vector<double> vals = evaluate_all(pts, [&](const Point& x) { return poisson_eval_antisym(bp, x, q); });

  HarnackReport rep;
  rep.seed = seed;
  rep.points = static_cast<long>(pts.size());
  rep.grid_spec = describe("interior", c, 0.5 * rho, h, rep.points);
  rep.sup_quotient = *std::max_element(vals.begin(), vals.end());
  rep.inf_quotient = *std::min_element(vals.begin(), vals.end());
  if (rep.sup_quotient == 0.0 && rep.inf_quotient == 0.0) {
    rep.degenerate = true;
    return rep;
  }
  if (!(rep.inf_quotient > 0.0))
    throw NumericalRejection("interior_harnack_check: u <= 0 at a grid point; positivity check failed");
  rep.ratio = rep.sup_quotient / rep.inf_quotient;
  const PoissonSolution u(g, 2.0, p, q);
  rep.anorm_value = anorm_of_solution(u, p, q);
  rep.c_lower = rep.inf_quotient / rep.anorm_value;
  rep.c_upper = rep.sup_quotient / rep.anorm_value;
  return rep;
}

BatterySummary comparability_battery(const std::vector<std::uint64_t>& seeds, const Params& p,
                                     const quad::QuadSpec& q, int grid_n, BatteryKind kind, int bump_count,
                                     double rho) {
  BatterySummary sum;
  if (seeds.empty()) return sum;
  sum.reports.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    const FieldSpec g = random_nonneg_antisym(seeds[i], bump_count, p);
    sum.reports[i] = kind == BatteryKind::Boundary ? boundary_quotient_profile(g, p, q, grid_n, seeds[i])
                                                   : interior_harnack_check(g, rho, p, q, grid_n, seeds[i]);
  });
  sum.band_lower = kInf;
  sum.band_upper = 0.0;
  for (const auto& r : sum.reports) {
    const bool ok = !r.degenerate && r.inf_quotient > 0.0 && std::isfinite(r.ratio);
    sum.all_positive = sum.all_positive && ok;
    sum.band_lower = std::min(sum.band_lower, r.c_lower);
    sum.band_upper = std::max(sum.band_upper, r.c_upper);
    sum.max_ratio = std::max(sum.max_ratio, r.ratio);
  }
  return sum;
}

CounterexampleRun counterexample_run(const std::vector<int>& ks, const Params& p, const quad::QuadSpec& q,
                                     int grid_n, const CounterexampleOptions& opt) {
  p.validate();
  q.validate();
  if (grid_n < 4) throw UsageError("counterexample_run: grid_n must be >= 4");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1) throw UsageError("counterexample_run: ks must be positive");
    if (i > 0 && ks[i] <= ks[i - 1]) throw UsageError("counterexample_run: ks must be increasing");
  }
  const Point c = Point::axis(p.n, 2.0);
  const FieldSpec z1 = make::zeta1(p.n, opt.zeta1_transition);
  const FieldSpec z2 = make::zeta2(p.n, opt.zeta2_transition);
  const BallProblem bv(1.0, z1, p, c);
  const BallProblem bw(1.0, z2, p, c);

  auto quotients = [&](double h, std::vector<Point>& pts, std::vector<double>& v, std::vector<double>& w) {
    pts = ball_lattice(c, opt.trusted_fraction, h);
    // v and w are invariant under rotations about the e1 axis: evaluate once per (x1, |x'|) orbit.
    std::map<std::pair<long, long>, std::size_t> orbit;
    std::vector<Point> reps;
    std::vector<std::size_t> slot(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point d = pts[i] - c;
      long r2 = 0;
      for (int k = 1; k < p.n; ++k) {
        const long j = std::lround(d[k] / h);
        r2 += j * j;
      }
      const auto key = std::make_pair(std::lround(d[0] / h), r2);
      auto [it, fresh] = orbit.try_emplace(key, reps.size());
      if (fresh) {
        Point rep(p.n);
        rep[0] = pts[i][0];
        if (p.n > 1) rep[1] = h * std::sqrt(static_cast<double>(r2));
        reps.push_back(rep);
      }
      slot[i] = it->second;
    }
    const auto rv = evaluate_all(reps, [&](const Point& x) { return poisson_eval(bv, x, q); });
    const auto rw = evaluate_all(reps, [&](const Point& x) { return poisson_eval(bw, x, q); });
    v.resize(pts.size());
    w.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      v[i] = rv[slot[i]];
      w[i] = rw[slot[i]];
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!(w[i] > 0.0))
        throw NumericalRejection("counterexample_run: w <= 0 at a grid point; maximum principle violated");
  };

  CounterexampleRun run;
  run.ks = ks;
  const double h = 1.0 / grid_n;
  std::vector<Point> pts;
  std::vector<double> v, w;
  quotients(h, pts, v, w);
  run.points = static_cast<long>(pts.size());
  run.grid_spec = describe("counterexample", c, opt.trusted_fraction, h, run.points);
  std::size_t arg = 0;
  run.m_bar = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = v[i] / w[i];
    if (r < run.m_bar) {
      run.m_bar = r;
      arg = i;
    }
  }
  run.argmin = pts[arg];
  run.argmin_in_half_ball = distance2(run.argmin, c) <= 0.25 * (1.0 + 1e-12);
  // Grid quantum: largest change of v/w between the argmin and its lattice neighbours.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d2 = distance2(pts[i], run.argmin);
    if (d2 > 0.0 && d2 <= p.n * h * h * (1.0 + 1e-9))
      run.grid_quantum = std::max(run.grid_quantum, std::abs(v[i] / w[i] - run.m_bar));
  }

  // Bisection on a lattice of half the step: smallest M with min(v - M w) <= 0.
  {
    std::vector<Point> fp;
    std::vector<double> fv, fw;
    quotients(0.5 * h, fp, fv, fw);
    auto min_val = [&](double M) {
      double mn = kInf;
      for (std::size_t i = 0; i < fp.size(); ++i) mn = std::min(mn, fv[i] - M * fw[i]);
      return mn;
    };
    double lo = 0.0, hi = 1.0;
    while (min_val(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (min_val(mid) > 0.0 ? lo : hi) = mid;
    }
    run.m_bar_bisection = hi;
  }

  std::vector<std::size_t> half;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (distance2(pts[i], c) <= 0.25 * (1.0 + 1e-12)) half.push_back(i);
  run.min_u = kInf;
  run.max_u = -kInf;
  for (int k : ks) {
    const double M = run.m_bar - 1.0 / k;
    double sup = -kInf, inf = kInf;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double u = v[i] - M * w[i];
      run.min_u = std::min(run.min_u, u);
      run.max_u = std::max(run.max_u, u);
    }
    for (std::size_t i : half) {
      const double u = v[i] - M * w[i];
      sup = std::max(sup, u);
      inf = std::min(inf, u);
    }
    // Exterior values: the datum z1 - M z2 on sample points outside the ball.
    SplitMix64 rng(static_cast<std::uint64_t>(k));
    for (int i = 0; i < 2000; ++i) {
      Point y(p.n);
      for (int d = 0; d < p.n; ++d) y[d] = rng.uniform(-6.0, 6.0);
      if (distance2(y, c) < 1.0) continue;
      const double u = evaluate(z1, y) - M * evaluate(z2, y);
      if (y[0] >= 0.0) run.min_u = std::min(run.min_u, u);
      run.max_u = std::max(run.max_u, u);
    }
    run.sups.push_back(sup);
    run.infs.push_back(inf);
    run.ratios.push_back(sup / inf);
  }
  return run;
}

}  // namespace antisym
