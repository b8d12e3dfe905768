#include "antisym/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <Eigen/Dense>
#include <array>
#include <numbers>

#include "antisym/norms.hpp"
#include "antisym/prng.hpp"
#include "antisym/special.hpp"
#include "rays.hpp"

namespace antisym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double reach_of(const FieldSpec& u) {
  return u.meta().support_radius ? *u.meta().support_radius : kInf;
}

void require_smooth(const FieldSpec& u, const char* what) {
  if (u.meta().smoothness != Smoothness::Smooth)
    throw NumericalRejection(std::string(what) + ": field family '" + u.family_name() + "' is not smooth");
}

void require_ls(const FieldSpec& u, const Params& p, const char* what) {
  if (std::isfinite(reach_of(u))) return;
  if (!(std::max(u.meta().decay_exponent, 0.0) < 2.0 * p.s))
    throw NumericalRejection(std::string(what) + ": field is not in the tail-weighted L^1 class (decay exponent " +
                             std::to_string(u.meta().decay_exponent) + " >= 2s)");
}

double near_scale(const FieldSpec& u) { return 0.5 * std::min(1.0, u.meta().length_scale); }

}  // namespace

double kernel_difference_exp(const Point& x, const Point& y, double e) {
  const double a = distance2(x, y);
  if (a == 0.0) throw UsageError("kernel_difference: x and y coincide");
  const double t = 4.0 * std::max(x[0], 0.0) * std::max(y[0], 0.0);
  if (t == 0.0) return 0.0;
  return -std::pow(a, -0.5 * e) * std::expm1(-0.5 * e * std::log1p(t / a));
}

double kernel_difference(const Point& x, const Point& y, const Params& p) {
  p.validate();
  require_dim(x, p.n, "kernel_difference");
  require_dim(y, p.n, "kernel_difference");
  if (x[0] < 0.0 || y[0] < 0.0) throw UsageError("kernel_difference: points must lie in the closed half-space");
  return kernel_difference_exp(x, y, p.n + 2.0 * p.s);
}

KernelSandwich kernel_sandwich(const Point& x, const Point& y, const Params& p) {
  const double e = p.n + 2.0 * p.s;
  KernelSandwich k;
  k.value = kernel_difference(x, y, p);
  const double num = 2.0 * e * x[0] * y[0];
  k.lower = num / std::pow(distance2(reflect(x), y), 0.5 * (e + 2.0));
  k.upper = num / std::pow(distance2(x, y), 0.5 * (e + 2.0));
  return k;
}

namespace quad {

Estimate integrate_pv_second_difference(const FieldSpec& u, const Point& x, const Params& p, const QuadSpec& q) {
  p.validate();
  q.validate();
  require_dim(x, p.n, "integrate_pv_second_difference");
  if (u.dim() != p.n) throw UsageError("integrate_pv_second_difference: field dimension mismatch");
  require_smooth(u, "integrate_pv_second_difference");
  require_ls(u, p, "integrate_pv_second_difference");
  const double e = p.n + 2.0 * p.s;
  const double reach = reach_of(u);
  const double rc = reach + x.norm();
  const double l0 = std::min(near_scale(u), std::isfinite(rc) ? rc : kInf);
  const double decay = std::max(u.meta().decay_exponent, 0.0);

  std::vector<RadialMap> maps{RadialMap::power(0.0, l0, 1.0 / (2.0 - 2.0 * p.s))};
  for (const auto& m : detail::outward(l0, l0, std::isfinite(rc) ? rc : kInf, q.truncation_radius,
                                       1.0 + 2.0 * p.s - decay))
    maps.push_back(m);
  const auto segs = detail::segments(maps, {Hemisphere::Upper}, std::min(1.0, u.meta().length_scale), p.n, q);
  Estimate est = ray_integral(
      p.n, segs, [&](const RayPoint& r) { return second_difference(u, x, r.rho * r.omega) * std::pow(r.rho, -e); }, q);
  if (std::isfinite(rc) && rc > 0.0) {
    // Beyond rc only 2u(x) survives in the second difference.
    const double half_sphere = 0.5 * special::unit_sphere_area(p.n);
    est.value += 2.0 * evaluate(u, x) * half_sphere * std::pow(std::max(rc, l0), -2.0 * p.s) / (2.0 * p.s);
  }
  return est;
}

Estimate integrate_pv_excision(const FieldSpec& u, const Point& x, const Params& p, const QuadSpec& q) {
  p.validate();
  q.validate();
  require_dim(x, p.n, "integrate_pv_excision");
  require_smooth(u, "integrate_pv_excision");
  require_ls(u, p, "integrate_pv_excision");
  const double e = p.n + 2.0 * p.s;
  const double reach = reach_of(u);
  const double rc = reach + x.norm();
  const double decay = std::max(u.meta().decay_exponent, 0.0);
  const double ux = evaluate(u, x);
  const double l0 = near_scale(u);

  auto excised = [&](double eps) {
    std::vector<RadialMap> maps{RadialMap::log(eps, l0)};
    const double far = std::isfinite(rc) ? std::max(rc, 2.0 * l0) : kInf;
    for (const auto& m : detail::outward(l0, l0, far, q.truncation_radius, 1.0 + 2.0 * p.s - decay)) maps.push_back(m);
    const auto segs = detail::segments(maps, {Hemisphere::Upper, Hemisphere::Lower},
                                       std::min(1.0, u.meta().length_scale), p.n, q);
    Estimate est = ray_integral(
        p.n, segs, [&](const RayPoint& r) { return (ux - evaluate(u, x + r.rho * r.omega)) * std::pow(r.rho, -e); },
        q);
    if (std::isfinite(far)) est.value += ux * special::unit_sphere_area(p.n) * std::pow(far, -2.0 * p.s) / (2.0 * p.s);
    return est;
  };

  // I(eps) = I0 + a eps^{2-2s} + b eps^{4-2s} + O(eps^{6-2s}).
  const double e0 = q.pv_excision;
  const std::array<double, 3> eps = {e0, e0 / 2.0, e0 / 4.0};
  std::array<Estimate, 3> I;
  for (int i = 0; i < 3; ++i) I[i] = excised(eps[i]);
  const double a1 = 2.0 - 2.0 * p.s, a2 = 4.0 - 2.0 * p.s;
  Eigen::Matrix3d M;
  Eigen::Vector3d rhs;
  for (int i = 0; i < 3; ++i) {
    M(i, 0) = 1.0;
    M(i, 1) = std::pow(eps[i] / e0, a1);
    M(i, 2) = std::pow(eps[i] / e0, a2);
    rhs[i] = I[i].value;
  }
  // Weights w with I0 = w . I: first row of M^{-1}.
  const Eigen::Matrix3d Minv = M.inverse();
  double value = 0.0, err = 0.0;
  for (int i = 0; i < 3; ++i) {
    value += Minv(0, i) * I[i].value;
    err += std::abs(Minv(0, i)) * I[i].error;
  }
  // Two-point extrapolation as a truncation-error indicator.
  const double r1 = std::pow(0.5, a1);
  const double two_point = (I[2].value - r1 * I[1].value) / (1.0 - r1);
  err += std::abs(two_point - value);
  long evals = I[0].evaluations + I[1].evaluations + I[2].evaluations;
  return {value, err, evals};
}

}  // namespace quad

FraclapResult classical_fraclap_eval(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q) {
  const quad::Estimate est = quad::integrate_pv_second_difference(u, x, p, q);
  const double c = special::c_ns(p);
  return {c * est.value, c * est.error, "second_difference"};
}

double classical_fraclap(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q) {
  return classical_fraclap_eval(u, x, p, q).value;
}

FraclapResult classical_fraclap_excision(const FieldSpec& u, const Point& x, const Params& p,
                                         const quad::QuadSpec& q) {
  const quad::Estimate est = quad::integrate_pv_excision(u, x, p, q);
  const double c = special::c_ns(p);
  return {c * est.value, c * est.error, "excision_limit"};
}

FraclapResult antisym_fraclap_eval(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q) {
  using namespace quad;
  p.validate();
  q.validate();
  require_dim(x, p.n, "antisym_fraclap");
  if (u.dim() != p.n) throw UsageError("antisym_fraclap: field dimension mismatch");
  if (!u.meta().antisymmetric)
    throw NumericalRejection("antisym_fraclap: field '" + u.family_name() + "' is not antisymmetric");
  if (!(x[0] >= kXMin))
    throw NumericalRejection("antisym_fraclap: x1 = " + std::to_string(x[0]) +
                             " is below the floor 1e-3; the pointwise constant blows up as x1 -> 0+");
  require_smooth(u, "antisym_fraclap");
  const double reach = reach_of(u);
  const double decay = std::max(u.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 1.0 + 2.0 * p.s))
    throw NumericalRejection("antisym_fraclap: weighted half-space norm diverges for this field");

  const double e = p.n + 2.0 * p.s;
  const double x1 = x[0];
  const double delta = std::min(0.5 * x1, near_scale(u));
  const double ux = evaluate(u, x);
  const Point xs = reflect(x);
  const double scale = std::min(1.0, u.meta().length_scale);

  // Segment 0 (both hemispheres): ball B_delta(x), second difference minus reflected kernel.
  // Upper hemisphere beyond delta: rays to infinity. Lower hemisphere: rays stop at the plane.
  std::vector<RaySegment> segs;
  const RadialMap inner = RadialMap::power(0.0, delta, 1.0 / (2.0 - 2.0 * p.s));
  for (Hemisphere h : {Hemisphere::Upper, Hemisphere::Lower})
    segs.push_back({inner, h, detail::radial_cells(inner, scale, p.n), q.angular_cells()});
  const std::size_t first_outer = segs.size();
  const double rc = std::isfinite(reach) ? reach + x.norm() : kInf;
  std::vector<RadialMap> up;
  if (std::isfinite(rc) && rc > delta) up.push_back(RadialMap::log(delta, rc));
  const double start = up.empty() ? delta : rc;
  const double far = std::max(q.truncation_radius, 2.0 * start);
  up.push_back(RadialMap::log(start, far));
  up.push_back(RadialMap::tail(far, 2.0 + 2.0 * p.s - decay));
  for (const auto& m : up) segs.push_back({m, Hemisphere::Upper, detail::radial_cells(m, scale, p.n), q.angular_cells()});
  const RadialMap slab = RadialMap::slab_log(delta, x1);
  segs.push_back({slab, Hemisphere::Lower, detail::radial_cells(slab, scale, p.n), q.angular_cells()});

  const Estimate est = ray_integral(
      p.n, segs,
      [&](const RayPoint& r) {
        const Point z = r.rho * r.omega;
        const Point y = x + z;
        if (static_cast<std::size_t>(r.segment) < first_outer) {
          const double pv = 0.5 * second_difference(u, x, z) * std::pow(r.rho, -e);
          const double refl = (ux - evaluate(u, y)) * std::pow(distance2(xs, y), -0.5 * e);
          return pv - refl;
        }
        if (y[0] <= 0.0) return 0.0;
        return kernel_difference_exp(x, y, e) * (ux - evaluate(u, y));
      },
      q);
  const double c = special::c_ns(p);
  const double boundary = special::c_ns(Params(1, p.s)) / p.s * ux * std::pow(x1, -2.0 * p.s);
  return {c * est.value + boundary, c * est.error, "antisymmetric"};
}

double antisym_fraclap(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q) {
  return antisym_fraclap_eval(u, x, p, q).value;
}

double definition_gap(const FieldSpec& u, const std::vector<Point>& pts, const Params& p, const quad::QuadSpec& q) {
  if (!u.meta().antisymmetric) throw NumericalRejection("definition_gap: field is not antisymmetric");
  if (!u.meta().support_radius) throw NumericalRejection("definition_gap: field must be compactly supported");
  double gap = 0.0;
  for (const Point& x : pts) {
    gap = std::max(gap, std::abs(classical_fraclap(u, x, p, q) - antisym_fraclap(u, x, p, q)));
  }
  return gap;
}

std::pair<double, double> derivative_limit_pair(const FieldSpec& v, const Params& p, const quad::QuadSpec& q,
                                                double h) {
  p.validate();
  if (!(h > 0.0)) throw UsageError("derivative_limit_pair: h must be positive");
  if (!v.meta().antisymmetric) throw NumericalRejection("derivative_limit_pair: field is not antisymmetric");
  if (!v.meta().support_radius) throw NumericalRejection("derivative_limit_pair: field must be compactly supported");
  require_smooth(v, "derivative_limit_pair");
  const double hd = 1e-6;
  const double slope = (evaluate(v, Point::axis(p.n, hd)) - evaluate(v, Point::axis(p.n, -hd))) / (2.0 * hd);
  if (std::abs(slope) > 1e-10)
    throw NumericalRejection("derivative_limit_pair: field has nonzero slope " + std::to_string(slope) +
                             " at the origin");
  const double reach = *v.meta().support_radius;
  if (reach == 0.0) return {0.0, 0.0};
  const double lhs = classical_fraclap(v, Point::axis(p.n, h), p, q) / h;
  const double e = p.n + 2.0 * p.s + 2.0;
  const quad::RadialMap m = quad::RadialMap::power(0.0, reach, 1.0 / (2.0 - 2.0 * p.s));
  const std::vector<quad::RaySegment> segs{
      {m, quad::Hemisphere::Upper, detail::radial_cells(m, std::min(1.0, v.meta().length_scale), p.n),
       q.angular_cells()}};
  const quad::Estimate I = quad::ray_integral(
      p.n, segs,
      [&](const quad::RayPoint& r) {
        const Point y = r.rho * r.omega;
        return y[0] * evaluate(v, y) * std::pow(r.rho, -e);
      },
      q);
  const double rhs = -2.0 * special::c_ns(p) * (p.n + 2.0 * p.s) * I.value;
  return {lhs, rhs};
}

PointwiseBoundReport pointwise_bound_check(const FieldSpec& u, const Point& x, const Params& p,
                                           const quad::QuadSpec& q) {
  PointwiseBoundReport rep;
  rep.fraclap_abs = std::abs(antisym_fraclap(u, x, p, q));
  rep.anorm = anorm(u, p, q);
  const int n = p.n;
  const double r = x[0] / 4.0;
  const double hd = r / 10.0;
  const int m = 5;
  double mu = 0.0, mg = 0.0, mh = 0.0;
  std::array<int, kMaxDim> idx{};
  const int total = static_cast<int>(std::pow(m, n));
  for (int flat = 0; flat < total; ++flat) {
    int t = flat;
    Point y = x;
    for (int k = 0; k < n; ++k) {
      idx[k] = t % m;
      t /= m;
      y[k] += r * (2.0 * idx[k] / (m - 1) - 1.0);
    }
    if (distance2(y, x) > r * r * (1.0 + 1e-12)) continue;
    const double u0 = evaluate(u, y);
    mu = std::max(mu, std::abs(u0));
    double g2 = 0.0;
    for (int i = 0; i < n; ++i) {
      Point e_i(n);
      e_i[i] = hd;
      const double up = evaluate(u, y + e_i), dn = evaluate(u, y - e_i);
      g2 += std::pow((up - dn) / (2.0 * hd), 2);
      mh = std::max(mh, std::abs(up - 2.0 * u0 + dn) / (hd * hd));
      for (int j = i + 1; j < n; ++j) {
        Point e_j(n);
        e_j[j] = hd;
        const double mixed = (evaluate(u, y + e_i + e_j) - evaluate(u, y + e_i - e_j) - evaluate(u, y - e_i + e_j) +
                              evaluate(u, y - e_i - e_j)) /
                             (4.0 * hd * hd);
        mh = std::max(mh, std::abs(mixed));
      }
    }
    mg = std::max(mg, std::sqrt(g2));
  }
  rep.cbeta_norm = mu + mg + mh;
  const double denom = rep.cbeta_norm + rep.anorm;
  rep.ratio = denom > 0.0 ? rep.fraclap_abs / denom : 0.0;
  return rep;
}

RescaledKernelReport rescaled_kernel_bound_check(double R, const Point& a, const Params& p, long samples,
                                                 std::uint64_t seed, int shells) {
  p.validate();
  if (!(R > 0.0 && R < 1.0)) throw UsageError("rescaled_kernel_bound_check: R must lie in (0,1)");
  require_dim(a, p.n, "rescaled_kernel_bound_check");
  if (a[0] < 0.0) throw UsageError("rescaled_kernel_bound_check: a must lie in the closed half-space");
  const int n = p.n;
  const double e = n + 2.0 * p.s;
  SplitMix64 rng(seed);
  auto normal = [&] {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  RescaledKernelReport rep;
  rep.R = R;
  rep.shell_max.assign(shells, 0.0);
  while (rep.samples < samples) {
    Point x = a;
    do {
      for (int k = 0; k < n; ++k) x[k] = a[k] + rng.uniform(-0.5 * R, 0.5 * R);
    } while (!(distance2(x, a) < 0.25 * R * R && x[0] >= 0.0));
    Point dir(n);
    double nn = 0.0;
    do {
      for (int k = 0; k < n; ++k) dir[k] = n == 1 ? (rng.uniform() < 0.5 ? -1.0 : 1.0) : normal();
      nn = dir.norm();
    } while (nn == 0.0);
    dir *= 1.0 / nn;
    const double lr = rng.uniform(0.0, shells * std::log(2.0));
    const Point y = a + (R * std::exp(lr)) * dir;
    if (!(y[0] > 0.0)) continue;
    ++rep.samples;
    const int shell = std::min(shells - 1, static_cast<int>(lr / std::log(2.0)));
    const double den = std::pow(R, -e - 2.0) * x[0] * y[0];
    const double ratio =
        den > 0.0 ? kernel_difference_exp(x, y, e) * (1.0 + std::pow(y.norm(), e + 2.0)) / den : 0.0;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.shell_max[shell] = std::max(rep.shell_max[shell], ratio);
  }
  return rep;
}

}  // namespace antisym
