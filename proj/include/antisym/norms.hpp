#pragma once

#include "antisym/fields.hpp"
#include "antisym/quad.hpp"

namespace antisym {

/// Weighted norm over the half-space: int_{x1>0} x1 |u(x)| / (1 + |x|^{n+2s+2}) dx.
/// Rejects fields whose declared decay makes the integral diverge.
double anorm(const FieldSpec& u, const Params& p, const quad::QuadSpec& q);
quad::Estimate anorm_estimate(const FieldSpec& u, const Params& p, const quad::QuadSpec& q);

/// Tail norm over R^n: int |u(x)| / (1 + |x|^{n+2s}) dx.
double lsnorm(const FieldSpec& u, const Params& p, const quad::QuadSpec& q);
quad::Estimate lsnorm_estimate(const FieldSpec& u, const Params& p, const quad::QuadSpec& q);

}  // namespace antisym
