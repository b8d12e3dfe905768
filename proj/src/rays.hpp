#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "antisym/quad.hpp"

namespace antisym::detail {

/// Initial radial cells so that each spans at most about `scale` in rho.
inline int radial_cells(const quad::RadialMap& m, double scale, int n) {
  using quad::RadialKind;
  const int cap = n == 1 ? 400 : 24;
  double span = 1.0;
  switch (m.kind) {
    case RadialKind::Linear:
    case RadialKind::Power:
    case RadialKind::PowerEnd:
      span = (m.b - m.a) / scale;
      break;
    case RadialKind::Log:
      span = m.b * std::log(m.b / m.a) / scale;
      break;
    case RadialKind::Tail:
      span = 2.0;
      break;
    case RadialKind::SlabLog:
      span = 2.0 * std::max(1.0, m.b / scale);
      break;
  }
  return std::clamp(static_cast<int>(std::ceil(span)), 1, cap);
}

inline std::vector<quad::RaySegment> segments(const std::vector<quad::RadialMap>& maps,
                                              std::initializer_list<quad::Hemisphere> hemis, double scale, int n,
                                              const quad::QuadSpec& q) {
  std::vector<quad::RaySegment> out;
  for (quad::Hemisphere h : hemis) {
    for (const auto& m : maps) out.push_back({m, h, radial_cells(m, scale, n), q.angular_cells()});
  }
  return out;
}

/// Maps covering [start, inf): a core piece up to `core`, a log piece up to `far`
/// and a tail with exponent q beyond it. With a finite `reach` the layout stops there.
inline std::vector<quad::RadialMap> outward(double start, double core, double reach, double far, double tail_q,
                                            double first_power = 1.0) {
  std::vector<quad::RadialMap> maps;
  const double stop = std::isfinite(reach) ? std::max(reach, start) : far;
  if (stop <= start) return maps;
  const double c = std::min(core, stop);
  if (c > start) maps.push_back(first_power == 1.0 ? quad::RadialMap::linear(start, c)
                                                   : quad::RadialMap::power(start, c, first_power));
  if (stop > c) maps.push_back(c > 0.0 ? quad::RadialMap::log(c, stop) : quad::RadialMap::linear(c, stop));
  if (!std::isfinite(reach)) maps.push_back(quad::RadialMap::tail(far, tail_q));
  return maps;
}

}  // namespace antisym::detail
