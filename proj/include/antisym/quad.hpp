#pragma once

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "antisym/params.hpp"

namespace antisym::quad {

/// Quadrature controls shared by every integral in the library.
struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_subdivision_depth = 40;
  double truncation_radius = 50.0;
  double pv_excision = 1e-4;
  /// Initial angular resolution (cells per angular coordinate is derived from it).
  int angular_points = 64;
  long max_evaluations = 20'000'000;

  /// Defaults for dimension n (angular_points 64 for n <= 2, 32 for n = 3).
  static QuadSpec defaults(int n);
  void validate() const;
  /// Initial angular cells per angular coordinate.
  int angular_cells() const;
};

/// Integrand tail: |f(rho)| rho^{n-1} <= C rho^{-q} for large rho.
struct TailModel {
  double decay_exponent = 2.0;
  double constant_bound = 1.0;

  /// Throws NumericalRejection unless q > 1.
  void check() const;
  /// Bound on the integral over (R, inf).
  double remainder(double R) const;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

struct Box {
  std::array<double, kMaxDim> lo{};
  std::array<double, kMaxDim> hi{};
};

using Integrand = std::function<double(std::span<const double>)>;

/// h-adaptive cubature over a union of boxes in R^dim (dim 1: Gauss-Kronrod 7/15,
/// dim 2-3: Genz-Malik 7/5). Stops when the summed error bound is below
/// max(abs_tol, rel_tol |I|). Throws QuadratureError when the evaluation budget or
/// depth limit is exhausted first. Deterministic.
Estimate cubature(int dim, const Integrand& f, const std::vector<Box>& boxes, const QuadSpec& q);

/// One-dimensional integral over [a,b] split into `cells` equal initial pieces.
Estimate integrate_1d(const std::function<double(double)>& f, double a, double b, const QuadSpec& q,
                      int cells = 1);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^alpha (1+x)^beta.
GaussRule gauss_jacobi(int npts, double alpha, double beta);
GaussRule gauss_legendre(int npts);

// ---------------------------------------------------------------------------
// Integrals in polar coordinates about a centre: y = c + rho * omega.

enum class Hemisphere { Upper, Lower };  ///< omega1 > 0 or omega1 < 0

enum class RadialKind {
  Linear,    ///< rho = a + (b-a) t
  Power,     ///< rho = a + (b-a) t^k, clusters at a
  PowerEnd,  ///< rho = b - (b-a) (1-t)^k, clusters at b
  Log,       ///< rho = a (b/a)^t, a > 0
  Tail,      ///< rho = a (1-t)^{-1/(q-1)} on [a, inf), k holds q
  SlabLog,   ///< rho = a (h/(a |omega1|))^t up to the plane omega1 rho = -h; b holds h
};

struct RadialMap {
  RadialKind kind = RadialKind::Linear;
  double a = 0.0;
  double b = 1.0;
  double k = 1.0;

  static RadialMap linear(double a, double b) { return {RadialKind::Linear, a, b, 1.0}; }
  static RadialMap power(double a, double b, double k) { return {RadialKind::Power, a, b, k}; }
  static RadialMap power_end(double a, double b, double k) { return {RadialKind::PowerEnd, a, b, k}; }
  static RadialMap log(double a, double b) { return {RadialKind::Log, a, b, 1.0}; }
  static RadialMap tail(double a, double q) { return {RadialKind::Tail, a, 0.0, q}; }
  static RadialMap slab_log(double a, double h) { return {RadialKind::SlabLog, a, h, 1.0}; }
};

struct RaySegment {
  RadialMap radial;
  Hemisphere hemisphere = Hemisphere::Upper;
  int radial_cells = 1;
  int angular_cells = 1;
};

struct RayPoint {
  double rho = 0.0;
  /// rho - radial.a, computed without cancellation.
  double offset = 0.0;
  Point omega;
  int segment = 0;
};

using RayIntegrand = std::function<double(const RayPoint&)>;

/// Integral of f(rho, omega) rho^{n-1} d rho d omega over the given segments.
Estimate ray_integral(int n, const std::vector<RaySegment>& segments, const RayIntegrand& f,
                      const QuadSpec& q);

/// Both hemispheres of one radial map.
std::vector<RaySegment> both_hemispheres(const RadialMap& m, int radial_cells, int angular_cells);

}  // namespace antisym::quad

namespace antisym::quad {

using PointIntegrand = std::function<double(const Point&)>;

/// Geometry hints for integrals of field-dependent integrands.
struct IntegrandShape {
  /// |f| vanishes (below 1e-16) for |y| > reach.
  double reach = std::numeric_limits<double>::infinity();
  /// Smallest feature length of f; controls the initial partition.
  double length_scale = 1.0;
  /// Restrict to the half-space {y1 > 0}.
  bool half_space = false;
};

/// int_{|y|>r} f(y) (|y|^2 - r^2)^{-s} dy (over y1 > 0 only when shape.half_space). The radial substitution
/// rho = r + r t^{1/(1-s)} removes the endpoint singularity.
Estimate integrate_exterior_ball(const PointIntegrand& f, double r, const Params& p, const QuadSpec& q,
                                 const TailModel& tail, const IntegrandShape& shape = {});

/// int_{y1>0} f(y) dy.
Estimate integrate_halfspace_weighted(const PointIntegrand& f, const Params& p, const QuadSpec& q,
                                      const TailModel& tail, const IntegrandShape& shape = {});

}  // namespace antisym::quad
