#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "antisym/fields.hpp"
#include "antisym/quad.hpp"

namespace antisym {

/// Smallest x1 accepted by antisym_fraclap.
inline constexpr double kXMin = 1e-3;

struct FraclapResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::string route;
};

/// |x-y|^{-e} - |x_*-y|^{-e} for x, y in the closed half-space, without cancellation.
double kernel_difference_exp(const Point& x, const Point& y, double e);
/// Kernel difference with e = n + 2s.
double kernel_difference(const Point& x, const Point& y, const Params& p);

struct KernelSandwich {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};
/// 2e x1 y1 / |x_*-y|^{e+2} <= K <= 2e x1 y1 / |x-y|^{e+2}, e = n + 2s.
KernelSandwich kernel_sandwich(const Point& x, const Point& y, const Params& p);

namespace quad {
/// (1/2) int (2u(x) - u(x+z) - u(x-z)) / |z|^{n+2s} dz over R^n.
Estimate integrate_pv_second_difference(const FieldSpec& u, const Point& x, const Params& p, const QuadSpec& q);
/// lim_{eps->0} int_{|z|>eps} (u(x) - u(x+z)) / |z|^{n+2s} dz by Richardson extrapolation in eps.
Estimate integrate_pv_excision(const FieldSpec& u, const Point& x, const Params& p, const QuadSpec& q);
}  // namespace quad

/// Fractional Laplacian on R^n (second-difference route).
FraclapResult classical_fraclap_eval(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q);
double classical_fraclap(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q);
/// Same operator through the excision limit; used as an independent cross-check.
FraclapResult classical_fraclap_excision(const FieldSpec& u, const Point& x, const Params& p,
                                         const quad::QuadSpec& q);

/// Half-space form for antisymmetric u: kernel difference integral plus the
/// boundary term (c_{1,s}/s) u(x) x1^{-2s}.
FraclapResult antisym_fraclap_eval(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q);
double antisym_fraclap(const FieldSpec& u, const Point& x, const Params& p, const quad::QuadSpec& q);

/// max over pts of |classical - antisymmetric form|.
double definition_gap(const FieldSpec& u, const std::vector<Point>& pts, const Params& p, const quad::QuadSpec& q);

/// (classical_fraclap(v, h e1) / h, -2 c_{n,s} (n+2s) int_{y1>0} y1 v(y) |y|^{-(n+2s+2)} dy).
std::pair<double, double> derivative_limit_pair(const FieldSpec& v, const Params& p, const quad::QuadSpec& q,
                                                double h);

struct PointwiseBoundReport {
  double fraclap_abs = 0.0;
  double cbeta_norm = 0.0;
  double anorm = 0.0;
  double ratio = 0.0;
};
PointwiseBoundReport pointwise_bound_check(const FieldSpec& u, const Point& x, const Params& p,
                                           const quad::QuadSpec& q);

struct RescaledKernelReport {
  double R = 0.0;
  double max_ratio = 0.0;
  /// Maxima over dyadic shells 2^k R <= |y-a| < 2^{k+1} R (0 where no sample fell).
  std::vector<double> shell_max;
  long samples = 0;
};
/// Samples x in B+_{R/2}(a), y in the half-space outside B_R(a) and reports
/// max K(x,y) (1+|y|^{n+2s+2}) / (R^{-n-2s-2} x1 y1).
RescaledKernelReport rescaled_kernel_bound_check(double R, const Point& a, const Params& p, long samples = 10000,
                                                 std::uint64_t seed = 1, int shells = 8);

}  // namespace antisym
