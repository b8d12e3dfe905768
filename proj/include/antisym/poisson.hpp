#pragma once

#include <memory>
#include <vector>

#include "antisym/fields.hpp"
#include "antisym/quad.hpp"

namespace antisym {

/// Exterior data g on R^n minus B_r(center). The antisymmetric route needs center1 = 0.
struct BallProblem {
  double radius = 1.0;
  FieldSpec data;
  Params params;
  Point center;

  BallProblem(double r, FieldSpec g, Params p);
  BallProblem(double r, FieldSpec g, Params p, Point c);
};

/// Points with |x - center| > kTrustedFraction * r are refused unless explicitly allowed.
inline constexpr double kTrustedFraction = 0.95;

/// s-harmonic extension of g into the ball through the Poisson kernel.
quad::Estimate poisson_eval_estimate(const BallProblem& bp, const Point& x, const quad::QuadSpec& q,
                                     bool allow_near_boundary = false);
double poisson_eval(const BallProblem& bp, const Point& x, const quad::QuadSpec& q, bool allow_near_boundary = false);

/// Same extension for antisymmetric g using the reflected kernel; accepts data that
/// only has finite weighted half-space norm (e.g. g = y1).
quad::Estimate poisson_eval_antisym_estimate(const BallProblem& bp, const Point& x, const quad::QuadSpec& q,
                                             bool allow_near_boundary = false);
double poisson_eval_antisym(const BallProblem& bp, const Point& x, const quad::QuadSpec& q,
                            bool allow_near_boundary = false);

/// The s-harmonic function u in B_R(0) with u = g outside, tabulated on a lattice of
/// step h inside the ball and interpolated multilinearly. Antisymmetric data are
/// tabulated on x1 >= 0 only and extended by reflection.
class PoissonSolution {
 public:
  PoissonSolution(const FieldSpec& g, double R, const Params& p, const quad::QuadSpec& q, double h = 1.0 / 64.0);

  double operator()(const Point& y) const;
  double radius() const noexcept { return R_; }
  double step() const noexcept { return h_; }
  bool antisymmetric() const noexcept { return antisym_; }
  const FieldSpec& data() const noexcept { return g_; }
  /// Field view (for norms): same values as operator().
  long node_count() const noexcept { return static_cast<long>(values_.size()); }

 private:
  double node(const std::array<int, kMaxDim>& idx) const;

  FieldSpec g_;
  double R_;
  double h_;
  int n_;
  bool antisym_;
  int lo1_;  // first index along x1
  int m_;    // nodes per side: index range [-m_, m_]
  std::vector<double> values_;
};

/// gamma_{n,s} int_{|y|>r} r^{2s} u(y) / ((|y|^2-r^2)^s |y|^n) dy with u = g outside B_1
/// and the s-harmonic extension inside (used when r < 1).
double mean_value_classic(const FieldSpec& g, double r, const Params& p, const quad::QuadSpec& q);

/// 2 n gamma_{n,s} int_{y1>0, |y|>r} r^{2s} y1 u(y) / ((|y|^2-r^2)^s |y|^{n+2}) dy, r <= 1,
/// u as above. Equals d1 u(0).
double mean_value_antisym_gradient(const FieldSpec& g, double r, const Params& p, const quad::QuadSpec& q);

/// n(n+2) gamma_{n,s} int_0^{min(1,1/|y|)} rho^{2s+n+1} (1-rho^2)^{-s} d rho.
double psi_eval(const Point& y, const Params& p, const quad::QuadSpec& q);
double psi_radial(double t, const Params& p, const quad::QuadSpec& q);

/// int_{R^n} y1 psi(y) u(y) dy, interior values from the tabulated solution.
double gradient_via_psi(const FieldSpec& g, const Params& p, const quad::QuadSpec& q);
double gradient_via_psi(const PoissonSolution& u, const Params& p, const quad::QuadSpec& q);

/// s-harmonic function in B_1 with exterior datum phi(y1), phi the odd C^2 step.
double barrier_phi3(const Point& x, const Params& p, const quad::QuadSpec& q);

}  // namespace antisym
