#pragma once

#include "antisym/params.hpp"

namespace antisym::special {

/// Gamma function for real x > 0 (Lanczos approximation, reflection for x < 1/2).
/// Throws std::domain_error for non-positive arguments.
double gamma_fn(double x);

/// Normalizing constant of the fractional Laplacian,
/// s * pi^{-n/2} * 4^s * Gamma((n+2s)/2) / Gamma(1-s).
double c_ns(const Params& p);

/// Poisson-kernel constant sin(pi s) Gamma(n/2) / pi^{n/2+1}.
double gamma_ns(const Params& p);

/// c_{1,s} / (2s); independent of n.
double tilde_c_ns(const Params& p);

/// Closed form of the integral of |e1 + z|^{-(n+2s)} over the half-space {z1 > 0}.
double halfspace_integral_closed(const Params& p);

/// Surface area of the unit sphere S^{n-1}.
double unit_sphere_area(int n);

}  // namespace antisym::special
