#include "antisym/quad.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "antisym/special.hpp"

namespace antisym::quad {

QuadSpec QuadSpec::defaults(int n) {
  QuadSpec q;
  q.angular_points = n == 3 ? 32 : 64;
  return q;
}

void QuadSpec::validate() const {
  if (!(rel_tol >= 1e-12)) throw UsageError("QuadSpec: rel_tol must be >= 1e-12");
  if (!(abs_tol >= 0.0)) throw UsageError("QuadSpec: abs_tol must be >= 0");
  if (!(truncation_radius >= 10.0)) throw UsageError("QuadSpec: truncation_radius must be >= 10");
  if (!(pv_excision > 0.0 && pv_excision <= 1e-2))
    throw UsageError("QuadSpec: pv_excision must lie in (0, 1e-2]");
  if (max_subdivision_depth < 1) throw UsageError("QuadSpec: max_subdivision_depth must be positive");
  if (angular_points < 4) throw UsageError("QuadSpec: angular_points must be >= 4");
  if (max_evaluations < 1000) throw UsageError("QuadSpec: max_evaluations must be >= 1000");
}

int QuadSpec::angular_cells() const { return std::max(2, angular_points / 4); }

void TailModel::check() const {
  if (!(decay_exponent > 1.0)) {
    throw NumericalRejection("tail decay exponent " + std::to_string(decay_exponent) +
                             " <= 1: integral over the unbounded region diverges");
  }
}

double TailModel::remainder(double R) const {
  check();
  return constant_bound * std::pow(R, 1.0 - decay_exponent) / (decay_exponent - 1.0);
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Region {
  Box box;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
  int split_dim = 0;
  long id = 0;
};

struct RuleResult {
  double value;
  double error;
  int split_dim;
};

double checked(double v) {
  if (!std::isfinite(v)) throw NumericalRejection("integrand returned a non-finite value");
  return v;
}

RuleResult gk15(const Integrand& f, const Box& b) {
  const double c = 0.5 * (b.lo[0] + b.hi[0]);
  const double h = 0.5 * (b.hi[0] - b.lo[0]);
  double x[1];
  auto ev = [&](double t) {
    x[0] = t;
    return checked(f(std::span<const double>(x, 1)));
  };
  const double fc = ev(c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = ev(c - dx), f2 = ev(c + dx);
    rk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
  }
  return {rk * h, std::abs((rk - rg) * h), 0};
}

RuleResult genz_malik(int d, const Integrand& f, const Box& b) {
  static const double l2 = std::sqrt(9.0 / 70.0);
  static const double l4 = std::sqrt(9.0 / 10.0);
  static const double l5 = std::sqrt(9.0 / 19.0);
  const double w1 = (12824.0 - 9120.0 * d + 400.0 * d * d) / 19683.0;
  const double w2 = 980.0 / 6561.0;
  const double w3 = (1820.0 - 400.0 * d) / 19683.0;
  const double w4 = 200.0 / 19683.0;
  const double w5 = 6859.0 / 19683.0 / static_cast<double>(1 << d);
  const double e1 = (729.0 - 950.0 * d + 50.0 * d * d) / 729.0;
  const double e2 = 245.0 / 486.0;
  const double e3 = (265.0 - 100.0 * d) / 1458.0;
  const double e4 = 25.0 / 729.0;
  const double ratio = (l2 * l2) / (l4 * l4);

  std::array<double, kMaxDim> c{}, h{};
  double vol = 1.0;
  for (int i = 0; i < d; ++i) {
    c[i] = 0.5 * (b.lo[i] + b.hi[i]);
    h[i] = 0.5 * (b.hi[i] - b.lo[i]);
    vol *= 2.0 * h[i];
  }
  std::array<double, kMaxDim> p = c;
  auto ev = [&]() { return checked(f(std::span<const double>(p.data(), d))); };

  const double f0 = ev();
  double s2 = 0.0, s3 = 0.0, s4 = 0.0, s5 = 0.0;
  std::array<double, kMaxDim> diff{};
  for (int i = 0; i < d; ++i) {
    p[i] = c[i] - l2 * h[i];
    const double a1 = ev();
    p[i] = c[i] + l2 * h[i];
    const double a2 = ev();
    p[i] = c[i] - l4 * h[i];
    const double b1 = ev();
    p[i] = c[i] + l4 * h[i];
    const double b2 = ev();
    p[i] = c[i];
    s2 += a1 + a2;
    s3 += b1 + b2;
    diff[i] = std::abs(a1 + a2 - 2.0 * f0 - ratio * (b1 + b2 - 2.0 * f0));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int si = -1; si <= 1; si += 2) {
        for (int sj = -1; sj <= 1; sj += 2) {
          p[i] = c[i] + si * l4 * h[i];
          p[j] = c[j] + sj * l4 * h[j];
          s4 += ev();
        }
      }
      p[i] = c[i];
      p[j] = c[j];
    }
  }
  for (int mask = 0; mask < (1 << d); ++mask) {
    for (int i = 0; i < d; ++i) p[i] = c[i] + ((mask >> i) & 1 ? l5 : -l5) * h[i];
    s5 += ev();
  }
  const double r7 = vol * (w1 * f0 + w2 * s2 + w3 * s3 + w4 * s4 + w5 * s5);
  const double r5 = vol * (e1 * f0 + e2 * s2 + e3 * s3 + e4 * s4);

  int split = 0;
  double best = -1.0;
  const double dmax = *std::max_element(diff.begin(), diff.begin() + d);
  for (int i = 0; i < d; ++i) {
    // Among (nearly) tied fourth differences prefer the widest side.
    const double key = dmax > 0.0 && diff[i] < 0.999 * dmax ? -1.0 : h[i];
    if (key > best) {
      best = key;
      split = i;
    }
  }
  return {r7, std::abs(r7 - r5), split};
}

int evals_per_rule(int d) { return d == 1 ? 15 : 1 + 4 * d + 2 * d * (d - 1) + (1 << d); }


double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += v[i];
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

Estimate cubature(int dim, const Integrand& f, const std::vector<Box>& boxes, const QuadSpec& q) {
  if (dim < 1 || dim > kMaxDim) throw UsageError("cubature: dimension must be 1, 2 or 3");
  if (boxes.empty()) return {};
  auto rule = [&](const Box& b) { return dim == 1 ? gk15(f, b) : genz_malik(dim, f, b); };
  const long per_rule = evals_per_rule(dim);

  std::vector<Region> store;
  store.reserve(boxes.size() * 4);
  long evals = 0;
  long next_id = 0;
  for (const Box& b : boxes) {
    const RuleResult r = rule(b);
    evals += per_rule;
    store.push_back({b, r.value, r.error, 0, r.split_dim, next_id++});
  }

  // Regions live in a deque-like vector of indices; pointers must be stable, so
  // the heap holds indices into `store`.
  std::vector<char> alive(store.size(), 1);
  auto cmp = [&](long a, long b) {
    const Region& ra = store[a];
    const Region& rb = store[b];
    if (ra.error != rb.error) return ra.error < rb.error;
    return ra.id > rb.id;
  };
  std::priority_queue<long, std::vector<long>, decltype(cmp)> heap(cmp);
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i < store.size(); ++i) {
    heap.push(static_cast<long>(i));
    total += store[i].value;
    total_err += store[i].error;
  }

  auto recompute = [&] {
    total = 0.0;
    total_err = 0.0;
    for (std::size_t i = 0; i < store.size(); ++i) {
      if (!alive[i]) continue;
      total += store[i].value;
      total_err += store[i].error;
    }
  };

  long iterations = 0;
  while (total_err > std::max(q.abs_tol, q.rel_tol * std::abs(total))) {
    if (heap.empty()) {
      throw QuadratureError("cubature: maximum subdivision depth reached", total, total_err);
    }
    if (evals + 2 * per_rule > q.max_evaluations) {
      throw QuadratureError("cubature: evaluation budget exhausted", total, total_err);
    }
    const long idx = heap.top();
    heap.pop();
    if (store[idx].depth >= q.max_subdivision_depth) continue;  // retired; error stays in total
    const Region parent = store[idx];
    alive[idx] = 0;
    total -= parent.value;
    total_err -= parent.error;
    const int sd = parent.split_dim;
    const double mid = 0.5 * (parent.box.lo[sd] + parent.box.hi[sd]);
    Box left = parent.box, right = parent.box;
    left.hi[sd] = mid;
    right.lo[sd] = mid;
    for (const Box& child : {left, right}) {
      const RuleResult r = rule(child);
      evals += per_rule;
      store.push_back({child, r.value, r.error, parent.depth + 1, r.split_dim, next_id++});
      alive.push_back(1);
      total += r.value;
      total_err += r.error;
      heap.push(static_cast<long>(store.size() - 1));
    }
    if (++iterations % 1024 == 0) recompute();
  }

  std::vector<double> vals, errs;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (!alive[i]) continue;
    vals.push_back(store[i].value);
    errs.push_back(store[i].error);
  }
  return {pairwise_sum(vals, 0, vals.size()), pairwise_sum(errs, 0, errs.size()), evals};
}

Estimate integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadSpec& q, int cells) {
  if (cells < 1) cells = 1;
  std::vector<Box> boxes;
  for (int i = 0; i < cells; ++i) {
    Box bx;
    bx.lo[0] = a + (b - a) * i / cells;
    bx.hi[0] = i + 1 == cells ? b : a + (b - a) * (i + 1) / cells;
    boxes.push_back(bx);
  }
  return cubature(1, [&](std::span<const double> t) { return f(t[0]); }, boxes, q);
}

GaussRule gauss_jacobi(int npts, double alpha, double beta) {
  if (npts < 1) throw UsageError("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0 && beta > -1.0)) throw UsageError("gauss_jacobi: alpha, beta must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(npts), sub(std::max(npts - 1, 1));
  for (int k = 0; k < npts; ++k) {
    const double t = 2.0 * k + ab;
    diag[k] = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (t * (t + 2.0));
  }
  for (int k = 1; k < npts; ++k) {
    const double t = 2.0 * k + ab;
    double num, den;
    if (k == 1) {
      num = 4.0 * (1.0 + alpha) * (1.0 + beta);
      den = (2.0 + ab) * (2.0 + ab) * (3.0 + ab);
    } else {
      num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
      den = t * t * (t + 1.0) * (t - 1.0);
    }
    sub[k - 1] = std::sqrt(num / den);
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * special::gamma_fn(alpha + 1.0) * special::gamma_fn(beta + 1.0) /
                     special::gamma_fn(ab + 2.0);
  GaussRule rule;
  if (npts == 1) {
    rule.nodes = {diag[0]};
    rule.weights = {mu0};
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(npts - 1), Eigen::ComputeEigenvectors);
  rule.nodes.resize(npts);
  rule.weights.resize(npts);
  for (int i = 0; i < npts; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

GaussRule gauss_legendre(int npts) { return gauss_jacobi(npts, 0.0, 0.0); }

// ---------------------------------------------------------------------------

namespace {

struct AngularRange {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
};

AngularRange angular_range(int n, Hemisphere h) {
  AngularRange r;
  const double pi = std::numbers::pi;
  if (n == 2) {
    r.lo[0] = h == Hemisphere::Upper ? -pi / 2 : pi / 2;
    r.hi[0] = r.lo[0] + pi;
  } else if (n == 3) {
    r.lo[0] = h == Hemisphere::Upper ? 0.0 : -1.0;
    r.hi[0] = r.lo[0] + 1.0;
    r.lo[1] = 0.0;
    r.hi[1] = 2.0 * pi;
  }
  return r;
}

Point direction(int n, Hemisphere h, std::span<const double> ang) {
  Point w(n);
  if (n == 1) {
    w[0] = h == Hemisphere::Upper ? 1.0 : -1.0;
  } else if (n == 2) {
    w[0] = std::cos(ang[0]);
    w[1] = std::sin(ang[0]);
  } else {
    const double c = ang[0];
    const double r = std::sqrt(std::max(0.0, 1.0 - c * c));
    w[0] = c;
    w[1] = r * std::cos(ang[1]);
    w[2] = r * std::sin(ang[1]);
  }
  return w;
}

/// Maps t in [0,1] to (rho, offset, drho/dt). Returns false when the point is outside
/// the segment's range (e.g. a slab segment in a direction that never leaves the start).
bool radial_eval(const RadialMap& m, double t, const Point& omega, double& rho, double& off, double& jac) {
  switch (m.kind) {
    case RadialKind::Linear:
      off = (m.b - m.a) * t;
      rho = m.a + off;
      jac = m.b - m.a;
      return true;
    case RadialKind::Power: {
      const double tk = std::pow(t, m.k);
      off = (m.b - m.a) * tk;
      rho = m.a + off;
      jac = (m.b - m.a) * m.k * (t > 0.0 ? tk / t : (m.k == 1.0 ? 1.0 : 0.0));
      return true;
    }
    case RadialKind::PowerEnd: {
      const double u = 1.0 - t;
      const double uk = std::pow(u, m.k);
      const double back = (m.b - m.a) * uk;
      rho = m.b - back;
      off = (m.b - m.a) - back;
      jac = (m.b - m.a) * m.k * (u > 0.0 ? uk / u : (m.k == 1.0 ? 1.0 : 0.0));
      return true;
    }
    case RadialKind::Log: {
      const double L = std::log(m.b / m.a);
      const double e = std::expm1(t * L);
      off = m.a * e;
      rho = m.a + off;
      jac = rho * L;
      return true;
    }
    case RadialKind::Tail: {
      const double q = m.k;
      const double u = 1.0 - t;
      if (u <= 0.0) return false;
      const double p = -1.0 / (q - 1.0);
      rho = m.a * std::pow(u, p);
      if (!(rho < 1e150)) return false;
      off = m.a * std::expm1(p * std::log(u));
      jac = m.a / (q - 1.0) * rho / m.a / u;
      return true;
    }
    case RadialKind::SlabLog: {
      const double w1 = -omega[0];
      if (!(w1 > 0.0)) return false;
      const double rmax = std::min(m.b / w1, 1e12 * m.a);
      if (rmax <= m.a) return false;
      const double L = std::log(rmax / m.a);
      off = m.a * std::expm1(t * L);
      rho = m.a + off;
      jac = rho * L;
      return true;
    }
  }
  return false;
}

}  // namespace

Estimate ray_integral(int n, const std::vector<RaySegment>& segments, const RayIntegrand& f, const QuadSpec& q) {
  if (n < 1 || n > kMaxDim) throw UsageError("ray_integral: dimension must be 1, 2 or 3");
  std::vector<Box> boxes;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const RaySegment& seg = segments[k];
    if (seg.radial.kind == RadialKind::SlabLog && seg.hemisphere != Hemisphere::Lower)
      throw UsageError("ray_integral: slab segments live in the lower hemisphere");
    const AngularRange ar = angular_range(n, seg.hemisphere);
    const int rc = std::max(1, seg.radial_cells);
    const int ac = n == 1 ? 1 : std::max(1, seg.angular_cells);
    const int ac2 = n == 3 ? 2 * ac : 1;
    for (int i = 0; i < rc; ++i) {
      for (int j = 0; j < ac; ++j) {
        for (int l = 0; l < ac2; ++l) {
          Box b;
          b.lo[0] = static_cast<double>(k) + static_cast<double>(i) / rc;
          b.hi[0] = static_cast<double>(k) + static_cast<double>(i + 1) / rc;
          if (n >= 2) {
            const double w = (ar.hi[0] - ar.lo[0]) / ac;
            b.lo[1] = ar.lo[0] + w * j;
            b.hi[1] = j + 1 == ac ? ar.hi[0] : ar.lo[0] + w * (j + 1);
          }
          if (n == 3) {
            const double w = (ar.hi[1] - ar.lo[1]) / ac2;
            b.lo[2] = ar.lo[1] + w * l;
            b.hi[2] = l + 1 == ac2 ? ar.hi[1] : ar.lo[1] + w * (l + 1);
          }
          boxes.push_back(b);
        }
      }
    }
  }
  const Integrand g = [&](std::span<const double> x) {
    const int k = std::clamp(static_cast<int>(std::floor(x[0])), 0, static_cast<int>(segments.size()) - 1);
    const RaySegment& seg = segments[k];
    const double t = x[0] - k;
    RayPoint rp;
    rp.segment = k;
    rp.omega = direction(n, seg.hemisphere, x.subspan(1));
    double jac = 0.0;
    if (!radial_eval(seg.radial, t, rp.omega, rp.rho, rp.offset, jac)) return 0.0;
    const double val = f(rp);
    if (val == 0.0) return 0.0;
    return val * std::pow(rp.rho, n - 1) * jac;
  };
  return cubature(n, g, boxes, q);
}

std::vector<RaySegment> both_hemispheres(const RadialMap& m, int radial_cells, int angular_cells) {
  return {RaySegment{m, Hemisphere::Upper, radial_cells, angular_cells},
          RaySegment{m, Hemisphere::Lower, radial_cells, angular_cells}};
}

}  // namespace antisym::quad

#include "rays.hpp"

namespace antisym::quad {

Estimate integrate_exterior_ball(const PointIntegrand& f, double r, const Params& p, const QuadSpec& q,
                                 const TailModel& tail, const IntegrandShape& shape) {
  p.validate();
  q.validate();
  if (!(r > 0.0)) throw UsageError("integrate_exterior_ball: radius must be positive");
  if (!std::isfinite(shape.reach)) tail.check();
  if (shape.reach <= r) return {};
  std::vector<RadialMap> maps;
  const double near_end = std::min(2.0 * r, shape.reach);
  maps.push_back(RadialMap::power(r, near_end, 1.0 / (1.0 - p.s)));
  for (const auto& m : detail::outward(near_end, near_end, shape.reach, std::max(q.truncation_radius, 4.0 * r),
                                       tail.decay_exponent))
    maps.push_back(m);
  const std::size_t per = maps.size();
  const double scale = std::min({1.0, shape.length_scale, r});
  const auto segs = shape.half_space ? detail::segments(maps, {Hemisphere::Upper}, scale, p.n, q)
                                     : detail::segments(maps, {Hemisphere::Upper, Hemisphere::Lower}, scale, p.n, q);
  return ray_integral(
      p.n, segs,
      [&](const RayPoint& rp) {
        const double d = rp.segment % per == 0 ? rp.offset * (2.0 * r + rp.offset) : rp.rho * rp.rho - r * r;
        if (!(d > 0.0)) return 0.0;
        const double v = f(rp.rho * rp.omega);
        return v == 0.0 ? 0.0 : v * std::pow(d, -p.s);
      },
      q);
}

Estimate integrate_halfspace_weighted(const PointIntegrand& f, const Params& p, const QuadSpec& q,
                                      const TailModel& tail, const IntegrandShape& shape) {
  p.validate();
  q.validate();
  if (!std::isfinite(shape.reach)) tail.check();
  const auto maps = detail::outward(0.0, 1.0, shape.reach, q.truncation_radius, tail.decay_exponent);
  const auto segs = detail::segments(maps, {Hemisphere::Upper}, std::min(1.0, shape.length_scale), p.n, q);
  return ray_integral(p.n, segs, [&](const RayPoint& rp) { return f(rp.rho * rp.omega); }, q);
}

}  // namespace antisym::quad
