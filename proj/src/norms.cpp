#include "antisym/norms.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rays.hpp"

namespace antisym {

namespace {

double reach_of(const FieldSpec& u) {
  return u.meta().support_radius ? *u.meta().support_radius : std::numeric_limits<double>::infinity();
}

}  // namespace

quad::Estimate anorm_estimate(const FieldSpec& u, const Params& p, const quad::QuadSpec& q) {
  p.validate();
  q.validate();
  if (u.dim() != p.n) throw UsageError("anorm: field dimension does not match n");
  const double reach = reach_of(u);
  const double decay = std::max(u.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 1.0 + 2.0 * p.s)) {
    throw NumericalRejection("anorm: decay exponent " + std::to_string(u.meta().decay_exponent) +
                             " >= 1+2s, weighted half-space norm diverges");
  }
  if (reach == 0.0) return {};
  const double e = p.n + 2.0 * p.s + 2.0;
  const auto maps = detail::outward(0.0, 1.0, reach, q.truncation_radius, 2.0 + 2.0 * p.s - decay);
  const auto segs = detail::segments(maps, {quad::Hemisphere::Upper}, std::min(1.0, u.meta().length_scale), p.n, q);
  return quad::ray_integral(
      p.n, segs,
      [&](const quad::RayPoint& r) {
        const Point x = r.rho * r.omega;
        return x[0] * std::abs(evaluate(u, x)) / (1.0 + std::pow(r.rho, e));
      },
      q);
}

double anorm(const FieldSpec& u, const Params& p, const quad::QuadSpec& q) { return anorm_estimate(u, p, q).value; }

quad::Estimate lsnorm_estimate(const FieldSpec& u, const Params& p, const quad::QuadSpec& q) {
  p.validate();
  q.validate();
  if (u.dim() != p.n) throw UsageError("lsnorm: field dimension does not match n");
  const double reach = reach_of(u);
  const double decay = std::max(u.meta().decay_exponent, 0.0);
  if (!std::isfinite(reach) && !(decay < 2.0 * p.s)) {
    throw NumericalRejection("lsnorm: decay exponent " + std::to_string(u.meta().decay_exponent) +
                             " >= 2s, tail norm diverges");
  }
  if (reach == 0.0) return {};
  const double e = p.n + 2.0 * p.s;
  const auto maps = detail::outward(0.0, 1.0, reach, q.truncation_radius, 1.0 + 2.0 * p.s - decay);
  const auto segs = detail::segments(maps, {quad::Hemisphere::Upper, quad::Hemisphere::Lower},
                                     std::min(1.0, u.meta().length_scale), p.n, q);
  return quad::ray_integral(
      p.n, segs,
      [&](const quad::RayPoint& r) { return std::abs(evaluate(u, r.rho * r.omega)) / (1.0 + std::pow(r.rho, e)); },
      q);
}

double lsnorm(const FieldSpec& u, const Params& p, const quad::QuadSpec& q) { return lsnorm_estimate(u, p, q).value; }

}  // namespace antisym
